#pragma once

// Kazhdan-Lusztig cells, the order <=_LR, RSK shapes and the a-function.

#include <cstddef>
#include <string>
#include <vector>

#include "klq/hecke.hpp"
#include "klq/partition.hpp"

namespace klq {

enum class CellKind { left, right, two_sided };

const char* cell_kind_name(CellKind k);
/// "left", "right", "two-sided". Throws InputError otherwise.
CellKind parse_cell_kind(const std::string& s);

struct CellPartition {
  CellKind kind = CellKind::two_sided;
  /// Blocks sorted by smallest element id; each block sorted ascending.
  std::vector<std::vector<ElemId>> blocks;
  std::vector<std::size_t> block_of;
  /// leq[i][j]: block i <= block j in the induced order.
  std::vector<std::vector<bool>> leq;

  std::size_t size() const { return blocks.size(); }
  const std::vector<ElemId>& block_containing(ElemId w) const { return blocks[block_of[w]]; }
  /// Pairs (i, j) with i < j in the order and nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> cover_relations() const;
};

/// Cells from the preorder generated by "C'_x occurs in C'_s C'_w" (left),
/// "in C'_w C'_s" (right), or either (two-sided). Computes the whole table.
CellPartition cell_partition(const KLTable& kl, CellKind kind);

/// Shape of the RSK insertion tableau of a type A element. Throws InputError
/// for other types.
Partition rsk_shape(const GroupTable& g, ElemId w);

/// n(shape) of the RSK shape.
int a_value_type_a(const GroupTable& g, ElemId w);

/// a(z) for every z: the largest v-exponent in the C'_z-coefficient of some
/// product C'_x C'_y. Throws GuardError when |W| > max_order.
std::vector<int> a_values_brute(const KLTable& kl, std::size_t max_order = 200);

}  // namespace klq
