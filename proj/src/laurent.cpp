#include "klq/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace klq {

LaurentPoly::LaurentPoly(Integer c) {
  if (!c.is_zero()) terms_.emplace_back(0, std::move(c));
}

LaurentPoly::LaurentPoly(std::initializer_list<Term> terms)
    : LaurentPoly(from_terms(std::vector<Term>(terms))) {}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.first < b.first; });
  LaurentPoly out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
      if (out.terms_.back().second.is_zero()) out.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

LaurentPoly LaurentPoly::monomial(int e, Integer c) {
  LaurentPoly p;
  if (!c.is_zero()) p.terms_.emplace_back(e, std::move(c));
  return p;
}

Integer LaurentPoly::coefficient(int e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, int x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

void LaurentPoly::add_scaled(const LaurentPoly& p, const Integer& c, int e) {
  if (p.is_zero() || c.is_zero()) return;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + p.terms_.size());
  auto a = terms_.begin();
  auto b = p.terms_.begin();
  while (a != terms_.end() || b != p.terms_.end()) {
    if (b == p.terms_.end() || (a != terms_.end() && a->first < b->first + e)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first + e < a->first) {
      merged.emplace_back(b->first + e, b->second * c);
      ++b;
    } else {
      Integer s = a->second + b->second * c;
      if (!s.is_zero()) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  add_scaled(o, 1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  add_scaled(o, -1);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.shifted(a.terms_[0].first).scaled(a.terms_[0].second);
  if (b.size() == 1) return a.shifted(b.terms_[0].first).scaled(b.terms_[0].second);
  const int lo = a.min_degree() + b.min_degree();
  const int hi = a.max_degree() + b.max_degree();
  std::vector<Integer> dense(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) dense[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
  }
  LaurentPoly r;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!dense[i].is_zero()) r.terms_.emplace_back(lo + static_cast<int>(i), std::move(dense[i]));
  }
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.first += k;
  return r;
}

LaurentPoly LaurentPoly::scaled(const Integer& c) const {
  if (c.is_zero()) return {};
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

LaurentPoly LaurentPoly::bar() const { return substitute_power(-1); }

LaurentPoly LaurentPoly::substitute_power(int k) const {
  if (k == 0) return LaurentPoly(eval_one());
  LaurentPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) r.terms_.emplace_back(e * k, c);
  if (k < 0) std::reverse(r.terms_.begin(), r.terms_.end());
  return r;
}

Integer LaurentPoly::eval_one() const {
  Integer s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

bool LaurentPoly::is_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.sign() > 0; });
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest power first, the way these are usually written.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Integer(1);
    if (e == 0) {
      os << mag;
      continue;
    }
    if (!unit) os << mag << "*";
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

}  // namespace klq
