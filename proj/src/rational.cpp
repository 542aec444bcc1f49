#include "klq/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <vector>

namespace klq {

namespace {

using Dense = std::vector<Integer>;  // low degree first, no trailing zeros

Dense to_dense(const LaurentPoly& p) {
  Dense d;
  if (p.is_zero()) return d;
  if (p.min_degree() < 0) throw std::logic_error("to_dense: negative exponent");
  d.resize(static_cast<std::size_t>(p.max_degree()) + 1);
  for (const auto& [e, c] : p.terms()) d[static_cast<std::size_t>(e)] = c;
  return d;
}

LaurentPoly from_dense(const Dense& d) {
  std::vector<LaurentPoly::Term> t;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d[i].is_zero()) t.emplace_back(static_cast<int>(i), d[i]);
  }
  return LaurentPoly::from_terms(std::move(t));
}

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

Integer content(const Dense& d) {
  Integer g = 0;
  for (const auto& c : d) {
    g = Integer::gcd(g, c);
    if (g == Integer(1)) break;
  }
  return g;
}

Dense primitive_part(Dense d) {
  const Integer c = content(d);
  if (c.is_zero()) return d;
  for (auto& x : d) x = Integer::div_exact(x, c);
  if (d.back().sign() < 0) {
    for (auto& x : d) x = -x;
  }
  return d;
}

// Pseudo-remainder of a by b (b nonzero).
Dense pseudo_remainder(Dense a, const Dense& b) {
  const Integer lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const Integer la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& x : a) x *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

// Exact division in Z[x]; precondition b divides a.
Dense exact_quotient(Dense a, const Dense& b) {
  if (a.empty()) return a;
  Dense q(a.size() - b.size() + 1);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Integer c = Integer::div_exact(a.back(), b.back());
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("exact_quotient: nonzero remainder");
  return q;
}

}  // namespace

LaurentPoly polynomial_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  Dense x = primitive_part(to_dense(a));
  Dense y = primitive_part(to_dense(b));
  if (x.empty()) return from_dense(y);
  if (y.empty()) return from_dense(x);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    Dense r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(std::move(r));
  }
  return from_dense(primitive_part(std::move(x)));
}

RationalFunction::RationalFunction(LaurentPoly num) : num_(std::move(num)), den_(1) {}

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  // Units x^k move into the numerator.
  const int shift = num_.min_degree() - den_.min_degree();
  Dense n = to_dense(num_.shifted(-num_.min_degree()));
  Dense d = to_dense(den_.shifted(-den_.min_degree()));
  if (d.size() > 1) {
    const Dense g = to_dense(polynomial_gcd(from_dense(n), from_dense(d)));
    if (g.size() > 1) {
      n = exact_quotient(std::move(n), g);
      d = exact_quotient(std::move(d), g);
    }
  }
  const Integer c = Integer::gcd(content(n), content(d));
  if (c != Integer(1)) {
    for (auto& x : n) x = Integer::div_exact(x, c);
    for (auto& x : d) x = Integer::div_exact(x, c);
  }
  if (d.back().sign() < 0) {
    for (auto& x : n) x = -x;
    for (auto& x : d) x = -x;
  }
  num_ = from_dense(n).shifted(shift);
  den_ = from_dense(d);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_laurent() && b.is_laurent()) return RationalFunction(a.num_ * b.num_);
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("division by zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string() const {
  if (is_laurent()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

}  // namespace klq
