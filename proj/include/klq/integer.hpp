#pragma once

// Arbitrary-precision integer with an inline int64 fast path. Values that
// leave the int64 range are promoted to a GMP integer and demoted again as
// soon as they fit.

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace klq {

class Integer {
public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(implicit)
  Integer(int v) : small_(v) {}           // NOLINT(implicit)
  explicit Integer(const mpz_class& v);

  /// Parses an optionally signed decimal string; throws std::invalid_argument.
  static Integer from_string(std::string_view text);

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && small_ == 0; }
  int sign() const;
  bool fits_int64() const { return !big_; }
  /// Precondition: fits_int64().
  std::int64_t to_int64() const;
  mpz_class to_mpz() const;
  std::string to_string() const;

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  /// Exact division; precondition b divides a.
  static Integer div_exact(const Integer& a, const Integer& b);
  static Integer gcd(const Integer& a, const Integer& b);
  Integer abs() const { return sign() < 0 ? -*this : *this; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

private:
  void normalize();

  std::int64_t small_ = 0;
  // Immutable once set; shared between copies.
  std::shared_ptr<const mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& x);

}  // namespace klq
