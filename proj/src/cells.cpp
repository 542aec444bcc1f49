#include "klq/cells.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "klq/errors.hpp"

namespace klq {

const char* cell_kind_name(CellKind k) {
  switch (k) {
    case CellKind::left: return "left";
    case CellKind::right: return "right";
    case CellKind::two_sided: return "two-sided";
  }
  return "?";
}

CellKind parse_cell_kind(const std::string& s) {
  if (s == "left") return CellKind::left;
  if (s == "right") return CellKind::right;
  if (s == "two-sided" || s == "two_sided" || s == "twosided") return CellKind::two_sided;
  throw InputError("unknown cell kind '" + s + "' (expected left, right or two-sided)");
}

std::vector<std::pair<std::size_t, std::size_t>> CellPartition::cover_relations() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k) {
        if (k != i && k != j && leq[i][k] && leq[k][j]) covered = false;
      }
      if (covered) out.emplace_back(i, j);
    }
  }
  return out;
}

CellPartition cell_partition(const KLTable& kl, CellKind kind) {
  const GroupTable& g = kl.group();
  const std::size_t n = g.size();
  kl.compute_all();

  // below[w]: elements x with x <= w in one generating step.
  std::vector<std::vector<ElemId>> below(n);
  std::vector<Side> sides;
  if (kind != CellKind::right) sides.push_back(Side::left);
  if (kind != CellKind::left) sides.push_back(Side::right);
  for (ElemId w = 0; w < n; ++w) {
    for (Gen s = 0; s < g.rank(); ++s) {
      for (Side side : sides) {
        const HeckeElt prod = kl.cprime_generator_product(s, w, side);
        for (const auto& [x, p] : prod.coeffs()) below[w].push_back(x);
      }
    }
    std::sort(below[w].begin(), below[w].end());
    below[w].erase(std::unique(below[w].begin(), below[w].end()), below[w].end());
  }

  // Tarjan's strongly connected components, iterative.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<ElemId> stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0, ncomp = 0;
  for (ElemId root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<ElemId, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [u, next] = call.back();
      if (next < below[u].size()) {
        const ElemId x = below[u][next++];
        if (index[x] < 0) {
          index[x] = low[x] = counter++;
          stack.push_back(x);
          on_stack[x] = true;
          call.emplace_back(x, 0);
        } else if (on_stack[x]) {
          low[u] = std::min(low[u], index[x]);
        }
        continue;
      }
      const ElemId done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        ElemId x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = false;
          comp[x] = ncomp;
        } while (x != done);
        ++ncomp;
      }
    }
  }

  // Renumber blocks by smallest member.
  std::vector<int> first(static_cast<std::size_t>(ncomp), -1);
  std::vector<int> order;
  for (ElemId w = 0; w < n; ++w) {
    if (first[static_cast<std::size_t>(comp[w])] < 0) {
      first[static_cast<std::size_t>(comp[w])] = static_cast<int>(order.size());
      order.push_back(comp[w]);
    }
  }
  CellPartition cp;
  cp.kind = kind;
  cp.blocks.resize(order.size());
  cp.block_of.resize(n);
  for (ElemId w = 0; w < n; ++w) {
    const auto b = static_cast<std::size_t>(first[static_cast<std::size_t>(comp[w])]);
    cp.block_of[w] = b;
    cp.blocks[b].push_back(w);
  }

  // Reflexive-transitive closure on blocks.
  const std::size_t m = cp.blocks.size();
  cp.leq.assign(m, std::vector<bool>(m, false));
  for (std::size_t b = 0; b < m; ++b) cp.leq[b][b] = true;
  for (ElemId w = 0; w < n; ++w) {
    for (ElemId x : below[w]) cp.leq[cp.block_of[x]][cp.block_of[w]] = true;
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!cp.leq[i][k]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (cp.leq[k][j]) cp.leq[i][j] = true;
      }
    }
  }
  return cp;
}

Partition rsk_shape(const GroupTable& g, ElemId w) {
  if (g.datum().type != CartanType::A) throw InputError("RSK is only defined for type A, got " + g.datum().label());
  std::vector<std::vector<int>> rows;
  for (int x : g.permutation(w)) {
    for (std::size_t r = 0;; ++r) {
      if (r == rows.size()) {
        rows.push_back({x});
        break;
      }
      auto it = std::upper_bound(rows[r].begin(), rows[r].end(), x);
      if (it == rows[r].end()) {
        rows[r].push_back(x);
        break;
      }
      std::swap(*it, x);
    }
  }
  std::vector<int> parts;
  for (const auto& r : rows) parts.push_back(static_cast<int>(r.size()));
  return Partition(std::move(parts));
}

int a_value_type_a(const GroupTable& g, ElemId w) { return rsk_shape(g, w).n_value(); }

std::vector<int> a_values_brute(const KLTable& kl, std::size_t max_order) {
  const GroupTable& g = kl.group();
  const std::size_t n = g.size();
  if (n > max_order) {
    throw GuardError("brute-force a-function limited to |W| <= " + std::to_string(max_order) + ", got " +
                     std::to_string(n));
  }
  kl.compute_all();
  // left[s][u] = C'_s C'_u in the C'-basis.
  std::vector<std::vector<HeckeElt>> left(static_cast<std::size_t>(g.rank()));
  for (Gen s = 0; s < g.rank(); ++s) {
    for (ElemId u = 0; u < n; ++u) left[static_cast<std::size_t>(s)].push_back(kl.cprime_generator_product(s, u, Side::left));
  }
  auto apply_left = [&](Gen s, const HeckeElt& vec) {
    HeckeElt out;
    for (const auto& [u, p] : vec.coeffs()) out.add_scaled(left[static_cast<std::size_t>(s)][u], p);
    return out;
  };

  std::vector<int> a(n, 0);
  std::vector<bool> seen(n, false);
  auto record = [&](const HeckeElt& prod) {
    for (const auto& [z, p] : prod.coeffs()) {
      if (!seen[z] || p.max_degree() > a[z]) a[z] = p.max_degree();
      seen[z] = true;
    }
  };
  for (ElemId y = 0; y < n; ++y) {
    // prod[x] = C'_x C'_y, built along C'_x = C'_s C'_{sx} - sum mu(z, sx) C'_z.
    std::vector<HeckeElt> prod(n);
    prod[0] = HeckeElt::basis(y);
    for (ElemId x = 1; x < n; ++x) {
      const Gen s = g.first_left_descent(x);
      const ElemId sx = g.left_mul(x, s);
      HeckeElt p = apply_left(s, prod[sx]);
      for (const auto& [z, m] : kl.mu_list(sx)) {
        if (g.is_left_descent(z, s)) p.add_scaled(prod[z], LaurentPoly(-m));
      }
      prod[x] = std::move(p);
    }
    for (const auto& p : prod) record(p);
  }
  return a;
}

}  // namespace klq
