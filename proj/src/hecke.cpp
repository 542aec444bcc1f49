#include "klq/hecke.hpp"

#include "klq/errors.hpp"

namespace klq {

HeckeElt HeckeElt::basis(ElemId w, LaurentPoly c) {
  HeckeElt h;
  if (!c.is_zero()) h.coeffs_.emplace(w, std::move(c));
  return h;
}

LaurentPoly HeckeElt::coefficient(ElemId w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? LaurentPoly() : it->second;
}

void HeckeElt::add(ElemId w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void HeckeElt::add_scaled(const HeckeElt& o, const LaurentPoly& c) {
  if (c.is_zero()) return;
  const bool monomial = c.size() == 1;
  for (const auto& [w, p] : o.coeffs_) {
    if (monomial) {
      auto [it, inserted] = coeffs_.try_emplace(w);
      it->second.add_scaled(p, c.terms()[0].second, c.terms()[0].first);
      if (it->second.is_zero()) coeffs_.erase(it);
    } else {
      add(w, p * c);
    }
  }
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  add_scaled(o, 1);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  add_scaled(o, -1);
  return *this;
}

HeckeElt HeckeElt::scaled(const LaurentPoly& c) const {
  HeckeElt r;
  r.add_scaled(*this, c);
  return r;
}

HeckeElt HeckeElt::shifted(int k) const {
  HeckeElt r = *this;
  for (auto& [w, p] : r.coeffs_) p = p.shifted(k);
  return r;
}

GroupRingElt HeckeElt::specialize_v1() const {
  GroupRingElt out;
  for (const auto& [w, p] : coeffs_) {
    Integer c = p.eval_one();
    if (!c.is_zero()) out.emplace(w, std::move(c));
  }
  return out;
}

HeckeAlgebra::HeckeAlgebra(std::shared_ptr<const GroupTable> group)
    : group_(std::move(group)), bar_memo_(group_->size()) {}

HeckeElt HeckeAlgebra::mul_generator(const HeckeElt& h, Gen s, Side side) const {
  static const LaurentPoly vinv_minus_v = LaurentPoly::v_inv() - LaurentPoly::v();
  const GroupTable& g = *group_;
  HeckeElt out;
  for (const auto& [x, p] : h.coeffs()) {
    const ElemId y = side == Side::left ? g.left_mul(x, s) : g.right_mul(x, s);
    out.add(y, p);
    if (g.length(y) < g.length(x)) out.add(x, p * vinv_minus_v);
  }
  return out;
}

HeckeElt HeckeAlgebra::mul_cprime_generator(const HeckeElt& h, Gen s, Side side) const {
  HeckeElt out = mul_generator(h, s, side);
  out.add_scaled(h, LaurentPoly::v());
  return out;
}

HeckeElt HeckeAlgebra::multiply(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt out;
  for (const auto& [x, p] : a.coeffs()) {
    HeckeElt term = b;
    const Word& word = group_->word(x);
    for (auto it = word.rbegin(); it != word.rend(); ++it) term = mul_generator(term, *it, Side::left);
    out.add_scaled(term, p);
  }
  return out;
}

const HeckeElt& HeckeAlgebra::bar_of_basis(ElemId w) const {
  std::lock_guard lock(mutex_);
  if (bar_memo_[w]) return *bar_memo_[w];
  HeckeElt result;
  if (w == group_->identity()) {
    result = HeckeElt::basis(w);
  } else {
    // bar(t_{w' s}) = bar(t_{w'}) (t_s + v - v^-1)
    const Gen s = group_->word(w).back();
    const HeckeElt& prev = bar_of_basis(group_->right_mul(w, s));
    result = mul_generator(prev, s, Side::right);
    result.add_scaled(prev, LaurentPoly::v() - LaurentPoly::v_inv());
  }
  bar_memo_[w] = std::make_unique<const HeckeElt>(std::move(result));
  return *bar_memo_[w];
}

HeckeElt HeckeAlgebra::bar(const HeckeElt& h) const {
  HeckeElt out;
  for (const auto& [x, p] : h.coeffs()) out.add_scaled(bar_of_basis(x), p.bar());
  return out;
}

HeckeElt HeckeAlgebra::iota(const HeckeElt& h) const {
  HeckeElt out;
  for (const auto& [x, p] : h.coeffs()) out.add_scaled(bar_of_basis(x), group_->length(x) % 2 ? -p : p);
  return out;
}

HeckeElt HeckeAlgebra::smooth_closed_form(ElemId w) const {
  HeckeElt out;
  const int lw = group_->length(w);
  for (ElemId x : group_->bruhat_interval(w)) out.add(x, LaurentPoly::monomial(lw - group_->length(x)));
  return out;
}

KLTable::KLTable(std::shared_ptr<const GroupTable> group, std::size_t max_interval)
    : algebra_(std::move(group)),
      max_interval_(max_interval),
      cprime_(algebra_.group().size()),
      mu_(algebra_.group().size()) {}

const HeckeElt& KLTable::cprime(ElemId w) const {
  std::lock_guard lock(mutex_);
  if (cprime_[w]) return *cprime_[w];
  const std::size_t interval = group().bruhat_interval(w).size();
  if (interval > max_interval_) {
    throw GuardError("Bruhat interval below " + group().word_string(w) + " has " + std::to_string(interval) +
                     " elements, guard is " + std::to_string(max_interval_));
  }
  return compute(w);
}

const HeckeElt& KLTable::compute(ElemId w) const {
  if (cprime_[w]) return *cprime_[w];
  const GroupTable& g = group();
  HeckeElt result;
  if (w == g.identity()) {
    result = HeckeElt::basis(w);
  } else {
    const Gen s = g.first_left_descent(w);
    const ElemId below = g.left_mul(w, s);
    result = algebra_.mul_cprime_generator(compute(below), s, Side::left);
    for (const auto& [z, m] : mu_list(below)) {
      if (g.is_left_descent(z, s)) result.add_scaled(compute(z), LaurentPoly(-m));
    }
  }
  cprime_[w] = std::make_unique<const HeckeElt>(std::move(result));
  return *cprime_[w];
}

const std::vector<std::pair<ElemId, Integer>>& KLTable::mu_list(ElemId w) const {
  std::lock_guard lock(mutex_);
  if (mu_[w]) return *mu_[w];
  std::vector<std::pair<ElemId, Integer>> list;
  for (const auto& [x, p] : compute(w).coeffs()) {
    if (x == w) continue;
    Integer m = p.coefficient(1);
    if (!m.is_zero()) list.emplace_back(x, std::move(m));
  }
  mu_[w] = std::make_unique<const std::vector<std::pair<ElemId, Integer>>>(std::move(list));
  return *mu_[w];
}

Integer KLTable::mu(ElemId x, ElemId w) const {
  if (x == w || !group().bruhat_leq(x, w)) return 0;
  return h(x, w).coefficient(1);
}

HeckeElt KLTable::c_via_iota(ElemId w) const {
  HeckeElt r = algebra_.iota(cprime(w));
  return group().length(w) % 2 ? r.scaled(-1) : r;
}

HeckeElt KLTable::c(ElemId w) const {
  HeckeElt out;
  const int lw = group().length(w);
  for (const auto& [x, p] : cprime(w).coeffs()) {
    const LaurentPoly b = p.bar();
    out.add(x, (lw - group().length(x)) % 2 ? -b : b);
  }
  return out;
}

HeckeElt KLTable::to_cprime_basis(HeckeElt h) const {
  // C'_x = t_x + (terms of smaller length), and ids grow with length, so the
  // largest id present always carries its C'-coordinate unchanged.
  HeckeElt out;
  while (!h.is_zero()) {
    const auto last = std::prev(h.coeffs().end());
    const ElemId x = last->first;
    const LaurentPoly p = last->second;
    out.add(x, p);
    h.add_scaled(cprime(x), -p);
  }
  return out;
}

HeckeElt KLTable::cprime_generator_product(Gen s, ElemId w, Side side) const {
  return to_cprime_basis(algebra_.mul_cprime_generator(cprime(w), s, side));
}

bool KLTable::has(ElemId w) const {
  std::lock_guard lock(mutex_);
  return static_cast<bool>(cprime_[w]);
}

void KLTable::insert(ElemId w, HeckeElt expansion) {
  std::lock_guard lock(mutex_);
  cprime_[w] = std::make_unique<const HeckeElt>(std::move(expansion));
  mu_[w].reset();
}

std::vector<ElemId> KLTable::computed() const {
  std::lock_guard lock(mutex_);
  std::vector<ElemId> out;
  for (ElemId w = 0; w < cprime_.size(); ++w) {
    if (cprime_[w]) out.push_back(w);
  }
  return out;
}

void KLTable::compute_all() const {
  for (ElemId w = 0; w < group().size(); ++w) cprime(w);
}

}  // namespace klq
