#pragma once

// Iwahori-Hecke algebra H_v(W) with standard basis t_w subject to
// (t_s + v)(t_s - v^-1) = 0, the Kazhdan-Lusztig basis C'_w, the twisted
// basis C_w, and the involutions bar and iota.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "klq/coxeter.hpp"
#include "klq/laurent.hpp"

namespace klq {

/// Element of the integral group ring ZW.
using GroupRingElt = std::map<ElemId, Integer>;

/// Sparse Z[v,v^-1]-combination of basis elements indexed by W. The same
/// container is used for t-basis and C'-basis coordinates; which basis is
/// meant is part of each function's contract.
class HeckeElt {
public:
  using Map = std::map<ElemId, LaurentPoly>;

  HeckeElt() = default;
  static HeckeElt basis(ElemId w, LaurentPoly c = 1);

  const Map& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  LaurentPoly coefficient(ElemId w) const;

  void add(ElemId w, const LaurentPoly& c);
  /// this += c * v^shift * o
  void add_scaled(const HeckeElt& o, const LaurentPoly& c);
  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  HeckeElt scaled(const LaurentPoly& c) const;
  HeckeElt shifted(int k) const;  // times v^k

  /// Coefficient-wise v = 1.
  GroupRingElt specialize_v1() const;

  friend bool operator==(const HeckeElt&, const HeckeElt&) = default;

private:
  Map coeffs_;
};

enum class Side { left, right };

/// Operations in the t-basis. Holds a memo of bar(t_w), hence the mutex.
class HeckeAlgebra {
public:
  explicit HeckeAlgebra(std::shared_ptr<const GroupTable> group);

  const GroupTable& group() const { return *group_; }
  std::shared_ptr<const GroupTable> group_ptr() const { return group_; }

  /// t_s * h or h * t_s.
  HeckeElt mul_generator(const HeckeElt& h, Gen s, Side side) const;
  /// (t_s + v) * h or h * (t_s + v).
  HeckeElt mul_cprime_generator(const HeckeElt& h, Gen s, Side side) const;
  HeckeElt multiply(const HeckeElt& a, const HeckeElt& b) const;

  /// Semilinear bar involution: v -> v^-1, t_w -> (t_{w^-1})^-1.
  HeckeElt bar(const HeckeElt& h) const;
  /// Linear involution t_w -> (-1)^l(w) (t_{w^-1})^-1.
  HeckeElt iota(const HeckeElt& h) const;
  /// bar(t_w) in the t-basis.
  const HeckeElt& bar_of_basis(ElemId w) const;

  /// sum_{x <= w} v^{l(w)-l(x)} t_x
  HeckeElt smooth_closed_form(ElemId w) const;

private:
  std::shared_ptr<const GroupTable> group_;
  mutable std::recursive_mutex mutex_;
  mutable std::vector<std::unique_ptr<const HeckeElt>> bar_memo_;
};

/// Memoized Kazhdan-Lusztig basis. Entry w stores C'_w = sum_x h_{x,w} t_x.
class KLTable {
public:
  static constexpr std::size_t default_max_interval = 200'000;

  explicit KLTable(std::shared_ptr<const GroupTable> group, std::size_t max_interval = default_max_interval);

  const GroupTable& group() const { return algebra_.group(); }
  const HeckeAlgebra& algebra() const { return algebra_; }
  std::size_t max_interval() const { return max_interval_; }

  /// C'_w in the t-basis, via C'_w = C'_s C'_{sw} - sum mu(z, sw) C'_z with s
  /// the smallest left descent. Throws GuardError if [e, w] is too large.
  const HeckeElt& cprime(ElemId w) const;
  /// C_w = (-1)^l(w) iota(C'_w).
  HeckeElt c_via_iota(ElemId w) const;
  /// C_w from the sign-and-bar transform of the C'_w coefficients.
  HeckeElt c(ElemId w) const;
  LaurentPoly h(ElemId x, ElemId w) const { return cprime(w).coefficient(x); }
  /// Coefficient of v in h_{x,w} (0 unless x < w).
  Integer mu(ElemId x, ElemId w) const;
  /// Pairs (z, mu(z, w)) with z < w and mu != 0, sorted by z.
  const std::vector<std::pair<ElemId, Integer>>& mu_list(ElemId w) const;

  /// Rewrites a t-basis element in the C'-basis.
  HeckeElt to_cprime_basis(HeckeElt h) const;
  /// C'_s C'_w (left) or C'_w C'_s (right), in the C'-basis.
  HeckeElt cprime_generator_product(Gen s, ElemId w, Side side) const;

  bool has(ElemId w) const;
  /// Stores an externally supplied expansion (cache load). The caller is
  /// responsible for validation.
  void insert(ElemId w, HeckeElt expansion);
  /// Ids currently memoized, ascending.
  std::vector<ElemId> computed() const;
  /// Fills every entry (guards still apply per element).
  void compute_all() const;

private:
  const HeckeElt& compute(ElemId w) const;

  HeckeAlgebra algebra_;
  std::size_t max_interval_;
  mutable std::recursive_mutex mutex_;
  mutable std::vector<std::unique_ptr<const HeckeElt>> cprime_;
  mutable std::vector<std::unique_ptr<const std::vector<std::pair<ElemId, Integer>>>> mu_;
};

}  // namespace klq
