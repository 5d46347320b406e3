#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace twistcat {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground field: the rationals (characteristic 0) or a prime field F_p.
struct FieldSpec {
  long characteristic = 0;

  FieldSpec() = default;
  explicit FieldSpec(long ch);

  bool is_rational() const { return characteristic == 0; }
  bool operator==(const FieldSpec&) const = default;
  std::string name() const;
};

// An exact scalar.  Characteristic 0 scalars are reduced fractions of
// arbitrary-precision integers; characteristic p scalars are canonical
// residues in [0, p).  No floating point anywhere.
class Scalar {
 public:
  Scalar() : char_(0), res_(0) {}
  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(long n, const FieldSpec& f);
  static Scalar from_fraction(long num, long den, const FieldSpec& f);
  static Scalar rational(const mpq_class& q);
  static Scalar residue(long r, long p);

  const FieldSpec field() const { return FieldSpec(char_); }
  long characteristic() const { return char_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Canonical text form: "a/b" over Q (b omitted when 1), residue over F_p.
  std::string str() const;
  static Scalar parse(const std::string& s, const FieldSpec& f);

  const mpq_class& rat() const { return q_; }
  long res() const { return res_; }

 private:
  void check_same_field(const Scalar& o) const;
  long char_;
  long res_;
  mpq_class q_;
};

long mod_inverse(long a, long p);
bool is_prime(long n);

}  // namespace twistcat
