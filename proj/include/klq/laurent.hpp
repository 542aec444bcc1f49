#pragma once

// Exact Laurent polynomials in one indeterminate v with integer coefficients.

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "klq/integer.hpp"

namespace klq {

/// Sparse element of Z[v, v^-1]. Terms are kept sorted by exponent and never
/// carry a zero coefficient, so structural equality is ring equality.
class LaurentPoly {
public:
  using Term = std::pair<int, Integer>;

  LaurentPoly() = default;
  LaurentPoly(Integer c);  // NOLINT(implicit): constant polynomial
  LaurentPoly(int c) : LaurentPoly(Integer(c)) {}  // NOLINT(implicit)
  LaurentPoly(std::initializer_list<Term> terms);
  /// Accepts terms in any order with repeated exponents; canonicalizes.
  static LaurentPoly from_terms(std::vector<Term> terms);

  /// c * v^e
  static LaurentPoly monomial(int e, Integer c = 1);
  static LaurentPoly v() { return monomial(1); }
  static LaurentPoly v_inv() { return monomial(-1); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Precondition: nonzero.
  int min_degree() const { return terms_.front().first; }
  int max_degree() const { return terms_.back().first; }
  Integer coefficient(int e) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  /// this += c * v^e * p, without building the intermediate product.
  void add_scaled(const LaurentPoly& p, const Integer& c, int e = 0);

  /// Multiply by v^k.
  LaurentPoly shifted(int k) const;
  LaurentPoly scaled(const Integer& c) const;

  /// v -> v^-1.
  LaurentPoly bar() const;
  /// Specialization v = 1 (sum of coefficients).
  Integer eval_one() const;
  /// Substitutes v -> v^k (k may be negative).
  LaurentPoly substitute_power(int k) const;

  bool is_bar_invariant() const { return bar() == *this; }
  /// True iff every coefficient is >= 0.
  bool is_nonnegative() const;

  std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace klq
