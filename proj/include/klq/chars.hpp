#pragma once

// Characters of symmetric groups and of type A Hecke algebras.
//
// Labelling: chi_(n) is the trivial character, chi_(1^n) the sign character.
// Generic-v Hecke characters come from Young's seminormal form written in the
// classical normalization (T_s - q)(T_s + 1) = 0 and converted by
// t_s = v T_s, q = v^-2.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "klq/coxeter.hpp"
#include "klq/hecke.hpp"
#include "klq/partition.hpp"
#include "klq/rational.hpp"

namespace klq {

/// Murnaghan-Nakayama rule. Throws InputError when |lambda| != |mu|.
Integer mn_character(const Partition& lambda, const Partition& cycle_type);

/// Full character table of S_n; rows and columns both in partitions_of(n) order.
class CharacterTableSn {
public:
  explicit CharacterTableSn(int n);

  int n() const { return n_; }
  const std::vector<Partition>& labels() const { return labels_; }
  std::size_t index_of(const Partition& p) const;
  const Integer& value(const Partition& lambda, const Partition& cycle_type) const;
  /// Number of permutations with the given cycle type.
  Integer class_size(const Partition& cycle_type) const;

private:
  int n_;
  std::vector<Partition> labels_;
  std::map<Partition, std::size_t> index_;
  std::vector<std::vector<Integer>> values_;
};

/// sum_x combo(x) chi_lambda(x) for an element of Z S_n.
Integer eval_on_combo(const CharacterTableSn& table, const Partition& lambda, const GroupRingElt& combo,
                      const GroupTable& group);

struct AInvariants {
  int a;  // n(lambda)
  int A;  // l(w0) - n(lambda')
};
AInvariants invariants_aA(const Partition& lambda);

/// Young's seminormal representation of the generic Hecke algebra of S_n,
/// entries in Q(q). Construction checks the quadratic and braid relations
/// and throws std::logic_error if they fail.
class SeminormalRep {
public:
  using Matrix = std::vector<std::vector<RationalFunction>>;

  explicit SeminormalRep(const Partition& lambda);

  const Partition& shape() const { return shape_; }
  std::size_t dimension() const { return tableaux_.size(); }
  /// Standard tableaux as row indices: tableaux()[k][m] is the row of m+1.
  const std::vector<std::vector<int>>& tableaux() const { return tableaux_; }
  /// Matrix of T_{s_i} (classical normalization), i 0-based.
  const Matrix& generator(int i) const { return generators_[static_cast<std::size_t>(i)]; }
  /// M * T_{s_i}
  Matrix times_generator(const Matrix& m, int i) const;

private:
  Partition shape_;
  std::vector<std::vector<int>> tableaux_;
  std::vector<Matrix> generators_;
};

/// Generic-v characters of H_v(S_n). Traces of t_w are memoized per shape.
class HeckeCharacters {
public:
  static constexpr int max_n = 8;

  /// Throws InputError unless the group is split type A, GuardError if n > max_n.
  explicit HeckeCharacters(std::shared_ptr<const GroupTable> group);

  const GroupTable& group() const { return *group_; }
  int n() const { return group_->rank() + 1; }
  /// chi_{lambda,v}(t_w).
  LaurentPoly basis_value(const Partition& lambda, ElemId w) const;
  /// chi_{lambda,v}(h) for h in the t-basis.
  LaurentPoly value(const Partition& lambda, const HeckeElt& h) const;

private:
  struct PerShape {
    std::unique_ptr<SeminormalRep> rep;
    std::map<ElemId, SeminormalRep::Matrix> matrices;
    std::map<ElemId, LaurentPoly> traces;
  };
  PerShape& shape_data(const Partition& lambda) const;
  const SeminormalRep::Matrix& matrix(PerShape& data, ElemId w) const;

  std::shared_ptr<const GroupTable> group_;
  mutable std::mutex mutex_;
  mutable std::map<Partition, PerShape> shapes_;
};

}  // namespace klq
