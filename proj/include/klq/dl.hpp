#pragma once

// Almost-character coordinates of the classes Q_w and of the intersection
// cohomology classes, unipotent decompositions for GL_n and SU_n, and the
// checks built on them.
//
// Almost characters are formal labels: in type A they are indexed by
// partitions, and R_lambda is identified with a unipotent character
// (GL_n: R_lambda = rho_lambda; SU_n: R_lambda = (-1)^{a+A} rho_lambda).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "klq/cells.hpp"
#include "klq/chars.hpp"
#include "klq/hecke.hpp"

namespace klq {

enum class BasisKind { t, cprime, c };
enum class Mode { graded, at_v1 };
enum class Form { GL, SU };

const char* basis_name(BasisKind b);  // "t", "Cprime", "C"
const char* mode_name(Mode m);        // "graded", "at_v1"
const char* form_name(Form f);        // "GL", "SU"
BasisKind parse_basis(const std::string& s);
Form parse_form(const std::string& s);

/// Coefficients keyed by partitions, always listing every partition of n in
/// partitions_of(n) order (zeros included).
using PartitionCoeffs = std::vector<std::pair<Partition, LaurentPoly>>;

const LaurentPoly& coefficient_of(const PartitionCoeffs& c, const Partition& p);

struct AlmostCharVector {
  GroupDatum datum;
  ElemId w = 0;
  BasisKind basis = BasisKind::c;
  Mode mode = Mode::at_v1;
  /// Power of v multiplied into every graded coordinate.
  int shift = 0;
  PartitionCoeffs coords;
};

struct UnipotentCombo {
  Form form = Form::GL;
  PartitionCoeffs coeffs;

  bool is_zero() const;
};

/// Shared state for one type A group: KL table, S_n characters and generic
/// Hecke characters (split groups only).
class DLContext {
public:
  /// Throws InputError unless the group is of type A.
  explicit DLContext(std::shared_ptr<const GroupTable> group,
                     std::size_t max_interval = KLTable::default_max_interval);

  int n() const { return group_->rank() + 1; }
  bool twisted() const { return group_->datum().twist == Twist::flip; }
  const GroupTable& group() const { return *group_; }
  std::shared_ptr<const GroupTable> group_ptr() const { return group_; }
  const KLTable& kl() const { return kl_; }
  const CharacterTableSn& characters() const { return table_; }
  const HeckeCharacters& hecke_characters() const;

  /// t_w, C'_w or C_w in the t-basis.
  HeckeElt basis_element(ElemId w, BasisKind b) const;

  /// Coordinates of sum_lambda chi_v(B_w F) R_lambda. Graded mode needs a
  /// split group; shift multiplies by v^shift. Twisted groups use the
  /// preferred extension chi(x F) = (-1)^{n(lambda)} chi(x w0).
  AlmostCharVector q_coordinates(ElemId w, BasisKind b, Mode m, int shift = 0) const;

private:
  std::shared_ptr<const GroupTable> group_;
  KLTable kl_;
  CharacterTableSn table_;
  mutable std::mutex chars_mutex_;
  mutable std::unique_ptr<HeckeCharacters> hecke_chars_;
};

/// GL: identity relabelling (split only). SU: R_lambda -> (-1)^{a+A} rho_lambda
/// (twisted, v = 1 only). Throws InputError on a mismatch.
UnipotentCombo unipotent_decomposition(const AlmostCharVector& vec, Form form);

/// +1 or -1 if that sign makes every coefficient of every entry nonnegative
/// and the combo is nonzero; 0 otherwise.
int positive_sign(const UnipotentCombo& combo);

struct SignCandidate {
  std::string name;
  int a = 0;
  bool matches = false;  // (-1)^a equals the sign found
};

struct PositivityReport {
  ElemId w = 0;
  Form form = Form::GL;
  Mode mode = Mode::at_v1;
  int sign = 0;
  UnipotentCombo combo;
  bool pass = false;
  std::vector<SignCandidate> candidates;
};

/// Decomposition of Q_w (basis C, shift 0) and its sign analysis. Candidates:
/// n(RSK shape of w) first, l(w) last, and for SU also n(RSK shape of w w0).
PositivityReport positivity_report(const DLContext& ctx, ElemId w, Form form, Mode mode);

/// Groups graded pieces by v-exponent modulo 2d. Throws InputError if d <= 0.
std::map<int, UnipotentCombo> eigenvalue_grouping(const UnipotentCombo& combo, int d);

struct SubregReport {
  int n = 0;
  Integer scale;              // (n-1)!
  bool divisible = false;     // every coefficient divisible by scale
  PartitionCoeffs quotient;   // combo / scale
  int sign = 0;               // quotient = sign * expected, 0 if no sign works
  int expected_sign = 0;      // (-1)^{l(w0)-1}
  bool shape_matches = false;
  bool sign_matches = false;
  bool pass() const { return shape_matches && sign_matches; }
};

/// SU_n, w = s_1 w0: Q_w / (n-1)! against rho_{2 1^{n-2}} + (n-1) rho_{1^n}.
/// Throws InputError unless 3 <= n <= 7.
SubregReport subreg_check(int n, std::size_t max_interval = KLTable::default_max_interval);

struct TriangularityReport {
  struct Bijection {
    std::string name;  // "shape" or "transposed"
    bool triangular = false;
    bool spans = false;
    bool ok() const { return triangular && spans; }
  };
  int n = 0;
  std::vector<Bijection> bijections;
  std::optional<std::size_t> chosen;  // first bijection that passes
  std::vector<std::size_t> block_sizes;  // characters per cell, cells in block order
  std::size_t rank = 0;                  // dim span{Q_w}
  std::size_t num_partitions = 0;
  bool pass() const { return chosen.has_value() && rank == num_partitions; }
};

/// GL_n, 2 <= n <= 5: block triangularity of [Q_w : R_lambda] along <=_LR and the
/// dimension of span{Q_w : w <=_LR Gamma}. Throws InputError for n out of range.
TriangularityReport triangularity_report(int n);

struct LemmaReport {
  int n = 0;
  bool v1_identity = false;     // C'_{s1w0} = C'_{w0} - c C'_{wI} at v = 1
  bool generic_v_inv = false;   // C'_{s1w0} = v^-1 C'_{w0} - v^-1 t_c C'_{wI}
  bool v_power_n_minus_2 = false;  // same with v^{n-2} in the second term
  bool pass() const { return v1_identity && generic_v_inv; }
};

/// Type A_{n-1}, c = s_1 ... s_{n-1}, I = {1, ..., n-2}. Throws InputError if n < 3.
LemmaReport lemma_report(int n, std::size_t max_interval = KLTable::default_max_interval);

struct TableRowReport {
  PositivityReport positivity;
  std::vector<std::pair<Partition, Integer>> listed;
  int sign = 0;  // computed = sign * listed on the listed labels; 0 if neither
  std::vector<std::pair<Partition, Integer>> extras;  // nonzero, not listed
  bool listed_match() const { return sign != 0; }
};

/// Compares the v = 1 unipotent decomposition of Q_w with listed coefficients
/// up to a global sign; other nonzero coefficients are only reported.
TableRowReport table_row_check(const DLContext& ctx, ElemId w, Form form,
                               const std::vector<std::pair<Partition, Integer>>& listed);

}  // namespace klq
