#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

namespace moritalab::exact {

/// Arbitrary-precision integer with an inline int64 fast path.
///
/// Values that fit in int64 are stored inline; anything larger is promoted to
/// a heap-allocated GMP integer. Overflow is detected on every operation, so
/// results are always exact. Invariant: big_ is engaged iff the value does not
/// fit in int64.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : small_(v) {}
  Integer(long v) noexcept : small_(v) {}
  Integer(long long v) noexcept : small_(v) {}
  Integer(unsigned v) noexcept : small_(v) {}
  Integer(unsigned long v) noexcept : small_(static_cast<std::int64_t>(v)) {}
  explicit Integer(const mpz_class& v);
  explicit Integer(std::string_view decimal);

  Integer(const Integer& other);
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&&) noexcept = default;
  ~Integer() = default;

  bool is_small() const noexcept { return !big_; }
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  int sign() const noexcept;
  bool fits_int64() const noexcept { return !big_; }
  /// Only valid when fits_int64().
  std::int64_t to_int64() const noexcept { return small_; }
  mpz_class to_mpz() const;
  std::string str() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);
  Integer operator-() const;

  friend Integer operator+(Integer lhs, const Integer& rhs) { return lhs += rhs; }
  friend Integer operator-(Integer lhs, const Integer& rhs) { return lhs -= rhs; }
  friend Integer operator*(Integer lhs, const Integer& rhs) { return lhs *= rhs; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

  friend Integer abs(const Integer& a);
  /// Floor division; b != 0.
  friend Integer floor_div(const Integer& a, const Integer& b);
  /// Euclidean remainder in [0, |b|); b != 0.
  friend Integer mod(const Integer& a, const Integer& b);
  /// Exact division; b must divide a.
  friend Integer exact_div(const Integer& a, const Integer& b);
  friend bool divides(const Integer& d, const Integer& a);
  /// Nonnegative gcd; gcd(0, 0) = 0.
  friend Integer gcd(const Integer& a, const Integer& b);
  friend Integer lcm(const Integer& a, const Integer& b);

  friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

 private:
  void set_big(mpz_class v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

Integer abs(const Integer& a);
Integer floor_div(const Integer& a, const Integer& b);
Integer mod(const Integer& a, const Integer& b);
Integer exact_div(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Bezout coefficients: g = s*a + t*b with g = gcd(a, b) >= 0.
struct Bezout {
  Integer g, s, t;
};
Bezout extended_gcd(const Integer& a, const Integer& b);

}  // namespace moritalab::exact
