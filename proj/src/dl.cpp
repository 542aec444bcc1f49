#include "klq/dl.hpp"

#include <gmpxx.h>

#include <algorithm>

#include "klq/errors.hpp"

namespace klq {

namespace {

int parity_sign(int k) { return k % 2 == 0 ? 1 : -1; }

PartitionCoeffs zero_coeffs(int n) {
  PartitionCoeffs out;
  for (auto& p : partitions_of(n)) out.emplace_back(std::move(p), LaurentPoly());
  return out;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= Integer(k);
  return f;
}

std::shared_ptr<const GroupTable> type_a(int n, Twist tw) {
  return GroupTable::build(GroupDatum{CartanType::A, n - 1, tw});
}

// Rank over Q of integer rows.
std::size_t rank_of(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<mpq_class>> m;
  for (const auto& r : rows) {
    std::vector<mpq_class> q;
    for (const auto& x : r) q.emplace_back(x.to_mpz());
    m.push_back(std::move(q));
  }
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

const char* basis_name(BasisKind b) {
  switch (b) {
    case BasisKind::t: return "t";
    case BasisKind::cprime: return "Cprime";
    case BasisKind::c: return "C";
  }
  return "?";
}

const char* mode_name(Mode m) { return m == Mode::graded ? "graded" : "at_v1"; }

const char* form_name(Form f) { return f == Form::GL ? "GL" : "SU"; }

BasisKind parse_basis(const std::string& s) {
  if (s == "t") return BasisKind::t;
  if (s == "Cprime" || s == "C'" || s == "cprime") return BasisKind::cprime;
  if (s == "C") return BasisKind::c;
  throw InputError("unknown basis '" + s + "' (expected t, Cprime or C)");
}

Form parse_form(const std::string& s) {
  if (s == "GL") return Form::GL;
  if (s == "SU") return Form::SU;
  throw InputError("unknown form '" + s + "' (expected GL or SU)");
}

const LaurentPoly& coefficient_of(const PartitionCoeffs& c, const Partition& p) {
  for (const auto& [q, value] : c) {
    if (q == p) return value;
  }
  throw InputError("partition " + p.to_string() + " not present");
}

bool UnipotentCombo::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& e) { return e.second.is_zero(); });
}

DLContext::DLContext(std::shared_ptr<const GroupTable> group, std::size_t max_interval)
    : group_(std::move(group)), kl_(group_, max_interval), table_(group_->rank() + 1) {
  if (group_->datum().type != CartanType::A) {
    throw InputError("almost characters are only implemented for type A, got " + group_->datum().label());
  }
}

const HeckeCharacters& DLContext::hecke_characters() const {
  std::lock_guard lock(chars_mutex_);
  if (!hecke_chars_) hecke_chars_ = std::make_unique<HeckeCharacters>(group_);
  return *hecke_chars_;
}

HeckeElt DLContext::basis_element(ElemId w, BasisKind b) const {
  switch (b) {
    case BasisKind::t: return HeckeElt::basis(w);
    case BasisKind::cprime: return kl_.cprime(w);
    case BasisKind::c: return kl_.c(w);
  }
  return {};
}

AlmostCharVector DLContext::q_coordinates(ElemId w, BasisKind b, Mode m, int shift) const {
  if (m == Mode::graded && twisted()) {
    throw InputError("graded coordinates are only available for split groups, got " + group_->datum().label());
  }
  AlmostCharVector vec{group_->datum(), w, b, m, m == Mode::graded ? shift : 0, zero_coeffs(n())};
  const HeckeElt elt = basis_element(w, b);
  if (m == Mode::graded) {
    const HeckeCharacters& hc = hecke_characters();
    for (auto& [lambda, value] : vec.coords) value = hc.value(lambda, elt).shifted(shift);
    return vec;
  }
  GroupRingElt combo = elt.specialize_v1();
  if (twisted()) {
    // chi~(x F) = (-1)^{n(lambda)} chi(x w0)
    GroupRingElt moved;
    const ElemId w0 = group_->longest_element();
    for (const auto& [x, c] : combo) moved.emplace(group_->multiply(x, w0), c);
    for (auto& [lambda, value] : vec.coords) {
      const Integer s = eval_on_combo(table_, lambda, moved, *group_);
      value = LaurentPoly(parity_sign(lambda.n_value()) > 0 ? s : -s);
    }
    return vec;
  }
  for (auto& [lambda, value] : vec.coords) value = LaurentPoly(eval_on_combo(table_, lambda, combo, *group_));
  return vec;
}

UnipotentCombo unipotent_decomposition(const AlmostCharVector& vec, Form form) {
  if (vec.datum.type != CartanType::A) throw InputError("unipotent decompositions need type A");
  const bool twisted = vec.datum.twist == Twist::flip;
  if (form == Form::GL && twisted) throw InputError("form GL needs a split group, got " + vec.datum.label());
  if (form == Form::SU && !twisted) throw InputError("form SU needs a twisted group, got " + vec.datum.label());
  if (form == Form::SU && vec.mode != Mode::at_v1) throw InputError("form SU is only available at v = 1");
  UnipotentCombo out{form, vec.coords};
  if (form == Form::SU) {
    for (auto& [lambda, value] : out.coeffs) {
      const AInvariants inv = invariants_aA(lambda);
      if (parity_sign(inv.a + inv.A) < 0) value = -value;
    }
  }
  return out;
}

int positive_sign(const UnipotentCombo& combo) {
  bool has_pos = false, has_neg = false;
  for (const auto& [lambda, p] : combo.coeffs) {
    for (const auto& [e, c] : p.terms()) (c.sign() > 0 ? has_pos : has_neg) = true;
  }
  if (has_pos == has_neg) return 0;
  return has_pos ? 1 : -1;
}

PositivityReport positivity_report(const DLContext& ctx, ElemId w, Form form, Mode mode) {
  PositivityReport r;
  r.w = w;
  r.form = form;
  r.mode = mode;
  r.combo = unipotent_decomposition(ctx.q_coordinates(w, BasisKind::c, mode), form);
  r.sign = positive_sign(r.combo);
  r.pass = r.sign != 0;
  const GroupTable& g = ctx.group();
  const int a_shape = a_value_type_a(g, w);
  r.candidates.push_back({"n(rsk shape)", a_shape, r.sign != 0 && r.sign == parity_sign(a_shape)});
  if (form == Form::SU) {
    const int a_w0 = a_value_type_a(g, g.multiply(w, g.longest_element()));
    r.candidates.push_back({"n(rsk shape of w w0)", a_w0, r.sign != 0 && r.sign == parity_sign(a_w0)});
  }
  r.candidates.push_back({"l(w)", g.length(w), r.sign != 0 && r.sign == parity_sign(g.length(w))});
  return r;
}

std::map<int, UnipotentCombo> eigenvalue_grouping(const UnipotentCombo& combo, int d) {
  if (d <= 0) throw InputError("eigenvalue grouping needs d > 0, got " + std::to_string(d));
  const int mod = 2 * d;
  std::map<int, UnipotentCombo> out;
  for (std::size_t i = 0; i < combo.coeffs.size(); ++i) {
    for (const auto& [e, c] : combo.coeffs[i].second.terms()) {
      const int r = ((e % mod) + mod) % mod;
      auto [it, fresh] = out.try_emplace(r);
      if (fresh) {
        it->second.form = combo.form;
        for (const auto& [lambda, p] : combo.coeffs) it->second.coeffs.emplace_back(lambda, LaurentPoly());
      }
      it->second.coeffs[i].second += LaurentPoly::monomial(e, c);
    }
  }
  return out;
}

SubregReport subreg_check(int n, std::size_t max_interval) {
  if (n < 3 || n > 7) throw InputError("subreg check needs 3 <= n <= 7, got " + std::to_string(n));
  DLContext ctx(type_a(n, Twist::flip), max_interval);
  const GroupTable& g = ctx.group();
  const ElemId w0 = g.longest_element();
  const ElemId w = g.multiply(g.generator(0), w0);
  const UnipotentCombo combo =
      unipotent_decomposition(ctx.q_coordinates(w, BasisKind::c, Mode::at_v1), Form::SU);

  SubregReport r;
  r.n = n;
  r.scale = factorial(n - 1);
  r.expected_sign = parity_sign(g.length(w0) - 1);
  r.divisible = true;
  for (const auto& [lambda, p] : combo.coeffs) {
    const Integer c = p.eval_one();
    if (!mpz_divisible_p(c.to_mpz().get_mpz_t(), r.scale.to_mpz().get_mpz_t())) {
      r.divisible = false;
      r.quotient.emplace_back(lambda, LaurentPoly());
      continue;
    }
    r.quotient.emplace_back(lambda, LaurentPoly(Integer::div_exact(c, r.scale)));
  }

  std::vector<int> parts{2};
  parts.resize(static_cast<std::size_t>(n - 1), 1);
  const Partition hook(parts), column = Partition::single_column(n);
  for (int s : {1, -1}) {
    bool ok = r.divisible;
    for (const auto& [lambda, q] : r.quotient) {
      Integer expected = 0;
      if (lambda == hook) expected = 1;
      if (lambda == column) expected = n - 1;
      if (q != LaurentPoly(s > 0 ? expected : -expected)) ok = false;
    }
    if (ok) r.sign = s;
  }
  r.shape_matches = r.sign != 0;
  r.sign_matches = r.shape_matches && r.sign == r.expected_sign;
  return r;
}

TriangularityReport triangularity_report(int n) {
  if (n < 2 || n > 5) throw InputError("triangularity report needs 2 <= n <= 5, got " + std::to_string(n));
  DLContext ctx(type_a(n, Twist::none));
  const GroupTable& g = ctx.group();
  const auto cells = cell_partition(ctx.kl(), CellKind::two_sided);
  const auto labels = partitions_of(n);

  std::vector<std::vector<Integer>> m;
  for (ElemId w = 0; w < g.size(); ++w) {
    const auto vec = ctx.q_coordinates(w, BasisKind::c, Mode::at_v1);
    std::vector<Integer> row;
    for (const auto& [lambda, p] : vec.coords) row.push_back(p.eval_one());
    m.push_back(std::move(row));
  }

  std::map<Partition, std::size_t> cell_of_shape;
  for (ElemId w = 0; w < g.size(); ++w) cell_of_shape.emplace(rsk_shape(g, w), cells.block_of[w]);

  TriangularityReport r;
  r.n = n;
  r.num_partitions = labels.size();
  r.rank = rank_of(m);
  r.block_sizes.assign(cells.size(), 0);
  for (const auto& [shape, b] : cell_of_shape) ++r.block_sizes[b];

  for (bool transposed : {false, true}) {
    TriangularityReport::Bijection bij{transposed ? "transposed" : "shape", true, true};
    std::vector<std::size_t> gamma;
    for (const auto& lambda : labels) gamma.push_back(cell_of_shape.at(transposed ? lambda.conjugate() : lambda));
    for (ElemId w = 0; w < g.size(); ++w) {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (!m[w][j].is_zero() && !cells.leq[gamma[j]][cells.block_of[w]]) bij.triangular = false;
      }
    }
    for (std::size_t top = 0; top < cells.size(); ++top) {
      std::vector<std::vector<Integer>> rows;
      for (ElemId w = 0; w < g.size(); ++w) {
        if (cells.leq[cells.block_of[w]][top]) rows.push_back(m[w]);
      }
      std::size_t expected = 0;
      for (std::size_t j = 0; j < labels.size(); ++j) expected += cells.leq[gamma[j]][top] ? 1 : 0;
      if (rank_of(rows) != expected) bij.spans = false;
    }
    r.bijections.push_back(bij);
    if (bij.ok() && !r.chosen) r.chosen = r.bijections.size() - 1;
  }
  return r;
}

LemmaReport lemma_report(int n, std::size_t max_interval) {
  if (n < 3) throw InputError("the lemma needs n >= 3, got " + std::to_string(n));
  auto g = type_a(n, Twist::none);
  KLTable kl(g, max_interval);
  const HeckeAlgebra& H = kl.algebra();
  const ElemId w0 = g->longest_element();
  const ElemId s1w0 = g->multiply(g->generator(0), w0);
  const ElemId wI = g->longest_element((1u << (n - 2)) - 1);
  Word cw;
  for (Gen s = 0; s + 1 < n; ++s) cw.push_back(s);
  const ElemId c = g->element_of(cw);

  LemmaReport r;
  r.n = n;
  const HeckeElt& lhs = kl.cprime(s1w0);
  GroupRingElt rhs1 = kl.cprime(w0).specialize_v1();
  for (const auto& [x, k] : kl.cprime(wI).specialize_v1()) {
    Integer& slot = rhs1[g->multiply(c, x)];
    slot -= k;
    if (slot.is_zero()) rhs1.erase(g->multiply(c, x));
  }
  r.v1_identity = lhs.specialize_v1() == rhs1;

  const HeckeElt tc_cwI = H.multiply(HeckeElt::basis(c), kl.cprime(wI));
  r.generic_v_inv = lhs == kl.cprime(w0).shifted(-1) - tc_cwI.shifted(-1);
  r.v_power_n_minus_2 = lhs == kl.cprime(w0).shifted(-1) - tc_cwI.shifted(n - 2);
  return r;
}

TableRowReport table_row_check(const DLContext& ctx, ElemId w, Form form,
                               const std::vector<std::pair<Partition, Integer>>& listed) {
  TableRowReport r;
  r.positivity = positivity_report(ctx, w, form, Mode::at_v1);
  r.listed = listed;
  for (int s : {1, -1}) {
    bool ok = true;
    for (const auto& [lambda, c] : listed) {
      if (coefficient_of(r.positivity.combo.coeffs, lambda).eval_one() != (s > 0 ? c : -c)) ok = false;
    }
    if (ok) r.sign = s;
  }
  for (const auto& [lambda, p] : r.positivity.combo.coeffs) {
    const bool is_listed =
        std::any_of(listed.begin(), listed.end(), [&](const auto& e) { return e.first == lambda; });
    if (!is_listed && !p.is_zero()) r.extras.emplace_back(lambda, p.eval_one());
  }
  return r;
}

}  // namespace klq
