#include "twistcat/field.hpp"

namespace twistcat {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(long ch) : characteristic(ch) {
  if (ch != 0 && !is_prime(ch))
    throw FieldError("characteristic must be 0 or prime, got " + std::to_string(ch));
}

std::string FieldSpec::name() const {
  return characteristic == 0 ? "Q" : "F" + std::to_string(characteristic);
}

long mod_inverse(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw FieldError("division by zero in F_" + std::to_string(p));
  // extended Euclid
  long r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1; r0 = r1; r1 = r2;
    long s2 = s0 - q * s1; s0 = s1; s1 = s2;
  }
  long inv = s0 % p;
  if (inv < 0) inv += p;
  return inv;
}

static long mod_mul(long a, long b, long p) {
  return static_cast<long>((__int128)a * b % p);
}

Scalar Scalar::zero(const FieldSpec& f) { return from_int(0, f); }
Scalar Scalar::one(const FieldSpec& f) { return from_int(1, f); }

Scalar Scalar::from_int(long n, const FieldSpec& f) {
  Scalar s;
  s.char_ = f.characteristic;
  if (f.is_rational()) {
    s.q_ = mpq_class(n);
  } else {
    long r = n % f.characteristic;
    if (r < 0) r += f.characteristic;
    s.res_ = r;
  }
  return s;
}

Scalar Scalar::from_fraction(long num, long den, const FieldSpec& f) {
  if (den == 0) throw FieldError("zero denominator");
  if (f.is_rational()) {
    Scalar s;
    s.char_ = 0;
    s.q_ = mpq_class(num, den);
    s.q_.canonicalize();
    return s;
  }
  long p = f.characteristic;
  if (den % p == 0) throw FieldError("denominator not invertible in " + f.name());
  return from_int(num, f) * residue(mod_inverse(den, p), p);
}

Scalar Scalar::rational(const mpq_class& q) {
  Scalar s;
  s.char_ = 0;
  s.q_ = q;
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::residue(long r, long p) {
  Scalar s;
  s.char_ = p;
  r %= p;
  if (r < 0) r += p;
  s.res_ = r;
  return s;
}

bool Scalar::is_zero() const { return char_ == 0 ? q_ == 0 : res_ == 0; }
bool Scalar::is_one() const { return char_ == 0 ? q_ == 1 : res_ == 1; }

void Scalar::check_same_field(const Scalar& o) const {
  if (char_ != o.char_)
    throw FieldError("characteristic mismatch: " + std::to_string(char_) +
                     " vs " + std::to_string(o.char_));
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar s;
  s.char_ = char_;
  if (char_ == 0) { s.q_ = q_ + o.q_; s.q_.canonicalize(); }
  else s.res_ = (res_ + o.res_) % char_;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar s;
  s.char_ = char_;
  if (char_ == 0) { s.q_ = q_ * o.q_; s.q_.canonicalize(); }
  else s.res_ = mod_mul(res_, o.res_, char_);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.char_ = char_;
  if (char_ == 0) s.q_ = -q_;
  else s.res_ = res_ == 0 ? 0 : char_ - res_;
  return s;
}

Scalar Scalar::inverse() const {
  Scalar s;
  s.char_ = char_;
  if (char_ == 0) {
    if (q_ == 0) throw FieldError("division by zero in Q");
    s.q_ = 1 / q_;
  } else {
    s.res_ = mod_inverse(res_, char_);
  }
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (char_ != o.char_) return false;
  return char_ == 0 ? q_ == o.q_ : res_ == o.res_;
}

std::string Scalar::str() const {
  if (char_ == 0) return q_.get_str();
  return std::to_string(res_);
}

Scalar Scalar::parse(const std::string& s, const FieldSpec& f) {
  if (f.is_rational()) {
    mpq_class q(s);
    q.canonicalize();
    return rational(q);
  }
  return from_int(std::stol(s), f);
}

}  // namespace twistcat
