#ifndef GMMP_SCALAR_HPP
#define GMMP_SCALAR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace gmmp {

/// The base field: Q when characteristic is 0, otherwise GF(p).
struct Field {
  std::uint64_t characteristic = 0;

  static Field rationals() { return Field{0}; }
  /// Throws PreconditionError unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return characteristic == 0; }
  std::string str() const;

  friend bool operator==(const Field&, const Field&) = default;
};

/// Exact element of Q or GF(p). Rationals are kept reduced with positive
/// denominator; residues in [0, p).
class Scalar {
public:
  Scalar() = default;
  Scalar(Field field, long value);
  Scalar(Field field, const mpq_class& value);

  static Scalar zero(Field f) { return Scalar(f, 0L); }
  static Scalar one(Field f) { return Scalar(f, 1L); }

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  /// True for a rational with negative sign; residues are never negative.
  bool is_negative() const;

  /// The rational value; only valid over Q.
  const mpq_class& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Equality requires equal fields; comparing across fields throws.
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string str() const;

private:
  void check(const Scalar& o) const;

  Field field_{};
  mpq_class q_{0};
  std::uint64_t r_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace gmmp

#endif
