#include "gmmp/scalar.hpp"

#include <ostream>

#include "gmmp/error.hpp"

namespace gmmp {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_integer(const mpz_class& z, std::uint64_t p) {
  mpz_class m = z % static_cast<unsigned long>(p);
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (1ull << 31) || !is_prime(p))
    throw PreconditionError("field characteristic must be a prime below 2^31, got " +
                            std::to_string(p));
  return Field{p};
}

std::string Field::str() const {
  return is_rational() ? std::string("Q") : "GF(" + std::to_string(characteristic) + ")";
}

Scalar::Scalar(Field field, long value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
  } else {
    long m = value % static_cast<long>(field_.characteristic);
    if (m < 0) m += static_cast<long>(field_.characteristic);
    r_ = static_cast<std::uint64_t>(m);
  }
}

Scalar::Scalar(Field field, const mpq_class& value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
    q_.canonicalize();
    return;
  }
  const std::uint64_t p = field_.characteristic;
  std::uint64_t den = reduce_integer(value.get_den(), p);
  if (den == 0)
    throw MathError("denominator " + value.get_den().get_str() + " vanishes in GF(" +
                    std::to_string(p) + ")");
  r_ = mul_mod(reduce_integer(value.get_num(), p), pow_mod(den, p - 2, p), p);
}

void Scalar::check(const Scalar& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch();
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }
bool Scalar::is_negative() const { return field_.is_rational() && q_ < 0; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  Scalar out = *this;
  if (field_.is_rational())
    out.q_ = 1 / q_;
  else
    out.r_ = pow_mod(r_, field_.characteristic - 2, field_.characteristic);
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check(o);
  if (field_.is_rational())
    q_ += o.q_;
  else
    r_ = (r_ + o.r_) % field_.characteristic;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check(o);
  if (field_.is_rational())
    q_ -= o.q_;
  else
    r_ = (r_ + field_.characteristic - o.r_) % field_.characteristic;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check(o);
  if (field_.is_rational())
    q_ *= o.q_;
  else
    r_ = mul_mod(r_, o.r_, field_.characteristic);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check(o);
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (field_.is_rational())
    out.q_ = -q_;
  else
    out.r_ = (field_.characteristic - r_) % field_.characteristic;
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check(b);
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::str() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace gmmp
