#pragma once

// Finite Weyl groups realized as permutations of their root systems.
//
// Elements are interned: every element of W has a dense id, assigned in
// ShortLex order of its canonical (lexicographically least) reduced word, so
// the identity is id 0 and ids increase with length. Generators are 0-based
// internally; user-facing words (CLI, JSON) are 1-based.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "klq/partition.hpp"

namespace klq {

enum class CartanType { A, B, D, F, G };
enum class Twist { none, flip };

using ElemId = std::uint32_t;
using Gen = int;
using Word = std::vector<Gen>;

struct GroupDatum {
  CartanType type = CartanType::A;
  int rank = 1;
  Twist twist = Twist::none;

  int delta() const { return twist == Twist::none ? 1 : 2; }
  std::string label() const;  // "A3", "2A3"
  /// Throws InputError when the type/rank/twist combination is invalid.
  void validate() const;
  /// |W| from the product of the fundamental degrees.
  std::uint64_t expected_order() const;
  /// Integer Cartan matrix, Bourbaki labelling: entry (i, j) = <alpha_i^vee, alpha_j>.
  std::vector<std::vector<int>> cartan_matrix() const;
};

CartanType parse_cartan_type(std::string_view s);
char cartan_letter(CartanType t);

class GroupTable;

/// Handle to an element of a specific table.
class GroupElement {
public:
  GroupElement(const GroupTable& table, ElemId id) : table_(&table), id_(id) {}
  ElemId id() const { return id_; }
  const GroupTable& table() const { return *table_; }
  int length() const;
  const Word& word() const;
  std::uint32_t left_descents() const;
  std::uint32_t right_descents() const;

  /// Throws std::invalid_argument when the operands come from different tables.
  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.table_ == b.table_ && a.id_ == b.id_;
  }

private:
  const GroupTable* table_;
  ElemId id_;
};

class GroupTable {
public:
  static constexpr std::uint64_t default_max_order = 1'000'000;

  /// Enumerates W. Throws InputError for unsupported data and GuardError when
  /// |W| exceeds max_order.
  static std::shared_ptr<const GroupTable> build(const GroupDatum& datum,
                                                 std::uint64_t max_order = default_max_order);

  const GroupDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank; }
  std::size_t size() const { return words_.size(); }
  int num_positive_roots() const { return num_positive_roots_; }
  const std::vector<std::vector<int>>& roots() const { return roots_; }

  ElemId identity() const { return 0; }
  ElemId generator(Gen s) const { return right_[static_cast<std::size_t>(s)]; }
  int length(ElemId w) const { return static_cast<int>(words_[w].size()); }
  const Word& word(ElemId w) const { return words_[w]; }

  ElemId right_mul(ElemId w, Gen s) const { return right_[w * stride() + static_cast<std::size_t>(s)]; }
  ElemId left_mul(ElemId w, Gen s) const { return left_[w * stride() + static_cast<std::size_t>(s)]; }
  ElemId inverse(ElemId w) const { return inverse_[w]; }
  bool is_left_descent(ElemId w, Gen s) const { return length(left_mul(w, s)) < length(w); }
  bool is_right_descent(ElemId w, Gen s) const { return length(right_mul(w, s)) < length(w); }
  /// Bit s set iff s is a descent.
  std::uint32_t left_descents(ElemId w) const;
  std::uint32_t right_descents(ElemId w) const;
  /// Smallest-index left descent; -1 for the identity.
  Gen first_left_descent(ElemId w) const;

  ElemId multiply(ElemId x, ElemId y) const;
  /// Product of generators; word need not be reduced. Throws InputError on a bad index.
  ElemId element_of(const Word& word) const;
  /// Parses user syntax: 1-based space-separated indices, "w0", "w0(1,2)", "e"/"" for identity.
  ElemId parse(std::string_view text) const;
  GroupElement handle(ElemId w) const { return GroupElement(*this, w); }

  /// Subword criterion, scanning a reduced word of w.
  bool bruhat_leq(ElemId x, ElemId w) const;
  /// All x <= w, sorted by id.
  std::vector<ElemId> bruhat_interval(ElemId w) const;

  /// Longest element of the parabolic subgroup generated by the bit set I.
  ElemId longest_element(std::uint32_t subset) const;
  ElemId longest_element() const { return longest_element(all_generators()); }
  std::uint32_t all_generators() const { return (std::uint32_t{1} << rank()) - 1; }

  /// Diagram flip s_i -> s_{n+1-i} (type A). With twist = none returns the
  /// input unchanged and sets *warned when non-null.
  ElemId apply_twist(ElemId w, bool* warned = nullptr) const;
  Gen twist_generator(Gen s) const { return rank() - 1 - s; }

  /// Type A_{n-1} only: one-line notation of w acting on {1..n}, 1-based values.
  std::vector<int> permutation(ElemId w) const;
  Partition cycle_type(ElemId w) const;
  /// Inverse of permutation(): element with the given one-line notation.
  ElemId from_permutation(const std::vector<int>& one_line) const;

  /// 1-based word rendering "1 2 1" ("e" for the identity).
  std::string word_string(ElemId w) const;

private:
  GroupTable() = default;
  std::size_t stride() const { return static_cast<std::size_t>(datum_.rank); }
  void require_type_a(const char* what) const;

  GroupDatum datum_;
  int num_positive_roots_ = 0;
  std::vector<std::vector<int>> roots_;
  std::vector<Word> words_;
  std::vector<ElemId> right_;
  std::vector<ElemId> left_;
  std::vector<ElemId> inverse_;
};

}  // namespace klq
