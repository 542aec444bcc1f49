#pragma once

#include <iosfwd>
#include <string>

#include "klq/laurent.hpp"

namespace klq {

/// Quotient of two Laurent polynomials in one indeterminate, kept reduced:
/// no common polynomial factor, no common integer content, denominator with
/// positive leading coefficient and lowest exponent 0.
class RationalFunction {
public:
  RationalFunction() : den_(1) {}
  RationalFunction(LaurentPoly num);  // NOLINT(implicit)
  RationalFunction(int c) : RationalFunction(LaurentPoly(c)) {}  // NOLINT(implicit)
  /// Throws std::domain_error on a zero denominator.
  RationalFunction(LaurentPoly num, LaurentPoly den);

  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// True when the denominator is a unit of Z[x, x^-1] (here: exactly 1).
  bool is_laurent() const { return den_ == LaurentPoly(1); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  std::string to_string() const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
  void normalize();

  LaurentPoly num_;
  LaurentPoly den_;
};

/// Greatest common divisor in Z[x] of two polynomials given as Laurent
/// polynomials with nonnegative exponents; primitive, positive leading
/// coefficient. gcd(0, 0) = 0.
LaurentPoly polynomial_gcd(const LaurentPoly& a, const LaurentPoly& b);

std::ostream& operator<<(std::ostream& os, const RationalFunction& r);

}  // namespace klq
