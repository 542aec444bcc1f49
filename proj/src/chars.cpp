#include "klq/chars.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "klq/errors.hpp"

namespace klq {

namespace {

// Beta-set form of the Murnaghan-Nakayama recursion: removing a rim hook of
// length k moves one bead from b to b - k, with sign (-1)^(beads jumped).
Integer mn_beta(std::vector<int> beta, const std::vector<int>& hooks, std::size_t next,
                std::map<std::pair<std::vector<int>, std::size_t>, Integer>& memo) {
  if (next == hooks.size()) return 1;
  auto key = std::make_pair(beta, next);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int k = hooks[next];
  Integer total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int b = beta[i];
    const int target = b - k;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int jumped = 0;
    for (int c : beta) jumped += (c > target && c < b) ? 1 : 0;
    std::vector<int> moved = beta;
    moved[i] = target;
    Integer sub = mn_beta(std::move(moved), hooks, next + 1, memo);
    total += jumped % 2 ? -sub : sub;
  }
  memo.emplace(std::move(key), total);
  return total;
}

RationalFunction q_power(int k) { return RationalFunction(LaurentPoly::monomial(k)); }

// Diagonal entry of the seminormal matrix for axial distance d (|d| >= 2).
RationalFunction seminormal_diagonal(int d) {
  // (q - 1) q^d / (q^d - 1); equals q for d = 1 and -1 for d = -1.
  const LaurentPoly q = LaurentPoly::monomial(1);
  return RationalFunction((q - LaurentPoly(1)) * LaurentPoly::monomial(d), LaurentPoly::monomial(d) - LaurentPoly(1));
}

using Matrix = SeminormalRep::Matrix;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<RationalFunction>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<RationalFunction>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

Integer mn_character(const Partition& lambda, const Partition& cycle_type) {
  if (lambda.size() != cycle_type.size()) {
    throw InputError("character " + lambda.to_string() + " and class " + cycle_type.to_string() +
                     " have different sizes");
  }
  const auto& parts = lambda.parts();
  const int len = lambda.length();
  std::vector<int> beta(parts.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)] + len - 1 - i;
  std::map<std::pair<std::vector<int>, std::size_t>, Integer> memo;
  return mn_beta(std::move(beta), cycle_type.parts(), 0, memo);
}

CharacterTableSn::CharacterTableSn(int n) : n_(n), labels_(partitions_of(n)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
  values_.resize(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (const auto& mu : labels_) values_[i].push_back(mn_character(labels_[i], mu));
  }
}

std::size_t CharacterTableSn::index_of(const Partition& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw InputError("partition " + p.to_string() + " is not a partition of " + std::to_string(n_));
  return it->second;
}

const Integer& CharacterTableSn::value(const Partition& lambda, const Partition& cycle_type) const {
  return values_[index_of(lambda)][index_of(cycle_type)];
}

Integer CharacterTableSn::class_size(const Partition& cycle_type) const {
  Integer num = 1;
  for (int k = 2; k <= n_; ++k) num *= Integer(k);
  Integer den = 1;
  std::map<int, int> mult;
  for (int p : cycle_type.parts()) ++mult[p];
  for (const auto& [part, m] : mult) {
    for (int j = 0; j < m; ++j) den *= Integer(part);
    for (int j = 2; j <= m; ++j) den *= Integer(j);
  }
  return Integer::div_exact(num, den);
}

Integer eval_on_combo(const CharacterTableSn& table, const Partition& lambda, const GroupRingElt& combo,
                      const GroupTable& group) {
  Integer total = 0;
  for (const auto& [x, c] : combo) total += c * table.value(lambda, group.cycle_type(x));
  return total;
}

AInvariants invariants_aA(const Partition& lambda) {
  const int n = lambda.size();
  const int longest = n * (n - 1) / 2;
  return {lambda.n_value(), longest - lambda.conjugate().n_value()};
}

SeminormalRep::SeminormalRep(const Partition& lambda) : shape_(lambda) {
  const int n = lambda.size();
  const auto rows = static_cast<std::size_t>(lambda.length());
  std::vector<int> fill(rows, 0), current;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(current.size()) == n) {
      tableaux_.push_back(current);
      return;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (fill[r] < lambda[r] && (r == 0 || fill[r - 1] > fill[r])) {
        ++fill[r];
        current.push_back(static_cast<int>(r));
        rec();
        current.pop_back();
        --fill[r];
      }
    }
  };
  rec();

  const std::size_t dim = tableaux_.size();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < dim; ++k) index.emplace(tableaux_[k], k);
  auto column_of = [](const std::vector<int>& t, std::size_t m) {
    return static_cast<int>(std::count(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(m), t[m]));
  };

  const LaurentPoly q = LaurentPoly::monomial(1);
  for (int i = 0; i + 1 < n; ++i) {
    const auto m = static_cast<std::size_t>(i);
    Matrix g(dim, std::vector<RationalFunction>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
      const auto& t = tableaux_[k];
      const int r1 = t[m], r2 = t[m + 1];
      const int c1 = column_of(t, m), c2 = column_of(t, m + 1);
      if (r1 == r2) {
        g[k][k] = q_power(1);
      } else if (c1 == c2) {
        g[k][k] = -1;
      } else {
        const int d = (c2 - r2) - (c1 - r1);
        std::vector<int> swapped = t;
        std::swap(swapped[m], swapped[m + 1]);
        const std::size_t partner = index.at(swapped);
        g[k][k] = seminormal_diagonal(d);
        if (r1 < r2) {
          g[partner][k] = 1;
        } else {
          g[partner][k] = seminormal_diagonal(d) * seminormal_diagonal(-d) + q_power(1);
        }
      }
    }
    generators_.push_back(std::move(g));
  }

  // Relations of the generic Hecke algebra.
  const Matrix one = identity_matrix(dim);
  for (int i = 0; i + 1 < n; ++i) {
    const Matrix& gi = generators_[static_cast<std::size_t>(i)];
    Matrix lhs = multiply(gi, gi);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if (lhs[r][c] != (q_power(1) - 1) * gi[r][c] + q_power(1) * one[r][c]) {
          throw std::logic_error("seminormal form violates the quadratic relation for " + lambda.to_string());
        }
      }
    }
    for (int j = i + 1; j + 1 < n; ++j) {
      const Matrix& gj = generators_[static_cast<std::size_t>(j)];
      const bool ok = j == i + 1 ? multiply(multiply(gi, gj), gi) == multiply(multiply(gj, gi), gj)
                                 : multiply(gi, gj) == multiply(gj, gi);
      if (!ok) throw std::logic_error("seminormal form violates a braid relation for " + lambda.to_string());
    }
  }
}

SeminormalRep::Matrix SeminormalRep::times_generator(const Matrix& m, int i) const {
  const Matrix& g = generators_[static_cast<std::size_t>(i)];
  const std::size_t dim = dimension();
  Matrix out(dim, std::vector<RationalFunction>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t k = 0; k < dim; ++k) {
      if (g[k][c].is_zero()) continue;
      for (std::size_t r = 0; r < dim; ++r) {
        if (!m[r][k].is_zero()) out[r][c] += m[r][k] * g[k][c];
      }
    }
  }
  return out;
}

HeckeCharacters::HeckeCharacters(std::shared_ptr<const GroupTable> group) : group_(std::move(group)) {
  const auto& d = group_->datum();
  if (d.type != CartanType::A || d.twist != Twist::none) {
    throw InputError("generic Hecke characters are only available for split type A, got " + d.label());
  }
  if (n() > max_n) throw GuardError("Hecke characters limited to n <= " + std::to_string(max_n));
}

HeckeCharacters::PerShape& HeckeCharacters::shape_data(const Partition& lambda) const {
  if (lambda.size() != n()) throw InputError("partition " + lambda.to_string() + " does not match S_" + std::to_string(n()));
  auto& data = shapes_[lambda];
  if (!data.rep) data.rep = std::make_unique<SeminormalRep>(lambda);
  return data;
}

const SeminormalRep::Matrix& HeckeCharacters::matrix(PerShape& data, ElemId w) const {
  if (auto it = data.matrices.find(w); it != data.matrices.end()) return it->second;
  SeminormalRep::Matrix m;
  if (w == group_->identity()) {
    m = identity_matrix(data.rep->dimension());
  } else {
    const Gen s = group_->word(w).back();
    m = data.rep->times_generator(matrix(data, group_->right_mul(w, s)), s);
  }
  return data.matrices.emplace(w, std::move(m)).first->second;
}

LaurentPoly HeckeCharacters::basis_value(const Partition& lambda, ElemId w) const {
  std::lock_guard lock(mutex_);
  PerShape& data = shape_data(lambda);
  if (auto it = data.traces.find(w); it != data.traces.end()) return it->second;
  const auto& m = matrix(data, w);
  RationalFunction tr;
  for (std::size_t i = 0; i < m.size(); ++i) tr += m[i][i];
  if (!tr.is_laurent()) {
    throw std::logic_error("trace of T_w is not a Laurent polynomial for " + lambda.to_string() + ": " + tr.to_string());
  }
  // t_w = v^l(w) T_w and q = v^-2.
  LaurentPoly value = tr.numerator().substitute_power(-2).shifted(group_->length(w));
  data.traces.emplace(w, value);
  return value;
}

LaurentPoly HeckeCharacters::value(const Partition& lambda, const HeckeElt& h) const {
  LaurentPoly total;
  for (const auto& [x, p] : h.coeffs()) total += p * basis_value(lambda, x);
  return total;
}

}  // namespace klq
