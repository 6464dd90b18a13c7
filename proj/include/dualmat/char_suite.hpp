#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualmat/gen_inverse.hpp"
#include "dualmat/generators.hpp"

namespace dualmat {

/// The six properties of the main characterization theorem.
enum class PropertyId {
  hermitian,              // A^* = A
  normal,                 // A A^* = A^* A
  new_dual_ep,            // A A^N = A^N A
  adjoint_eq_ndmpi,       // A^* = A^N
  ndmpi_idempotent,       // (A^N)^2 = A^N
  ndmpi_adjoint_commute,  // A^N A^* = A^* A^N
};

inline constexpr std::array<PropertyId, 6> kAllProperties{
    PropertyId::hermitian,        PropertyId::normal,           PropertyId::new_dual_ep,
    PropertyId::adjoint_eq_ndmpi, PropertyId::ndmpi_idempotent, PropertyId::ndmpi_adjoint_commute};

std::string_view to_string(PropertyId p);
std::optional<PropertyId> property_from_string(std::string_view name);

/// Residual ratios inside [1/kHysteresis, kHysteresis] are too close to the
/// tolerance to decide a disagreement.
inline constexpr double kHysteresis = 10.0;

/// A tolerance test and its residual ratio (deviation / allowance).
struct Check {
  bool holds = false;
  double ratio = 0;

  static Check from_ratio(double r) { return {r <= 1.0, r}; }
  bool clearly_true() const { return ratio <= 1.0 / kHysteresis; }
  bool clearly_false() const { return ratio > kHysteresis; }
};

/// Everything the predicates need about one square matrix, computed once.
struct MatrixAnalysis {
  DualMatrix a;
  DualMatrix a_star;
  DualSvd svd;
  HsDecomposition hs;
  DualMatrix ndmpi;
  DualMatrix essential;
  InverseReport essential_group;  // A_e^#, when it exists

  const DualMatrix* group() const {
    return essential_group.exists && essential_group.value ? &*essential_group.value : nullptr;
  }
};

/// Throws NotSquare; SVD errors propagate.
MatrixAnalysis analyze(const DualMatrix& a, const ToleranceConfig& tol = {});

/// Evaluates the defining identity of `p` directly on A and its NDMPI.
Check definitional_check(const MatrixAnalysis& m, PropertyId p, const ToleranceConfig& tol = {});
/// Evaluates the HS block conditions that characterize `p`.
Check structural_check(const HsDecomposition& h, PropertyId p, const ToleranceConfig& tol = {});

bool definitional_test(const DualMatrix& a, PropertyId p, const ToleranceConfig& tol = {});
bool structural_test(const HsDecomposition& h, PropertyId p, const ToleranceConfig& tol = {});

enum class SufficiencyCondition {
  hermitian_a_a_ndmpi,         // A A A^N = A^*          => Hermitian
  hermitian_a_adj_ndmpi,       // A A^* A^N = A          => Hermitian
  normal_a_adj_ndmpi,          // A A^* A^N = A^*        => normal
  normal_ndmpi_adj_a,          // A^N A^* A = A^*        => normal
  normal_ess_adj_group_left,   // A_e A^* A_e^# = A^* A_e^# A_e => normal
  normal_ess_adj_group_right,  // A_e A^* A_e^# = A_e^# A_e A^* => normal
};

std::string_view to_string(SufficiencyCondition c);
std::optional<SufficiencyCondition> sufficiency_from_string(std::string_view name);

enum class Verdict { consistent, indeterminate, violation };
std::string_view to_string(Verdict v);

struct SufficiencyResult {
  bool applicable = true;  // false when the premise needs A_e^# and it does not exist
  Check premise;
  Check conclusion;
  Verdict verdict = Verdict::consistent;
};

SufficiencyResult sufficiency_test(const MatrixAnalysis& m, SufficiencyCondition c,
                                   const ToleranceConfig& tol = {});
SufficiencyResult sufficiency_test(const DualMatrix& a, SufficiencyCondition c,
                                   const ToleranceConfig& tol = {});

enum class TheoremId {
  characterization,       // six biconditionals, definitional vs structural
  hermitian_sufficiency,  // two premises implying Hermitian
  normal_sufficiency,     // four premises implying normal
  normality,              // seven equivalent conditions for normality
  new_dual_ep,            // fifteen equivalent conditions for new dual EP
  ep_normality,           // new dual EP: normal iff Sigma_1 K = K Sigma_1
};

std::string_view to_string(TheoremId t);
std::optional<TheoremId> theorem_from_string(std::string_view name);
const std::vector<TheoremId>& all_theorems();

struct ConditionResult {
  std::string label;
  bool applicable = true;
  Check check;
};

struct EquivalenceReport {
  TheoremId theorem = TheoremId::characterization;
  std::vector<ConditionResult> conditions;
  Verdict verdict = Verdict::consistent;
  std::string details;
};

EquivalenceReport equivalence_suite(const MatrixAnalysis& m, TheoremId theorem,
                                    const ToleranceConfig& tol = {});
EquivalenceReport equivalence_suite(const DualMatrix& a, TheoremId theorem,
                                    const ToleranceConfig& tol = {});

/// Seeded fuzzing of one theorem over structured and general matrices.
struct SuiteConfig {
  TheoremId theorem = TheoremId::characterization;
  int trials = 200;
  /// Trial i draws kinds[i % K] at size sizes[(i / K) % sizes.size()], K = kinds.size().
  std::vector<Index> sizes{4};
  std::uint64_t seed = 0;
  ToleranceConfig tol;
  int threads = 1;
  /// Empty means the default mix for the theorem.
  std::vector<GeneratorKind> kinds;
};

struct TrialOutcome {
  int index = 0;
  std::uint64_t seed = 0;
  GeneratorKind kind = GeneratorKind::general;
  Index size = 0;
  Verdict verdict = Verdict::consistent;
  bool error = false;
  std::string details;
};

struct ConditionTally {
  int true_count = 0;
  int false_count = 0;
  int inapplicable = 0;
};

struct SuiteReport {
  SuiteConfig config;
  int consistent = 0;
  int indeterminate = 0;
  int violations = 0;
  int errors = 0;
  std::map<std::string, ConditionTally> tallies;
  std::vector<TrialOutcome> flagged;  // every non-consistent trial, in index order

  bool passed() const { return violations == 0 && errors == 0; }
};

/// Default generator mix for a theorem.
std::vector<GeneratorKind> default_kinds(TheoremId theorem);

/// Per-trial seed derived from (master seed, index); results do not depend on
/// scheduling or thread count.
std::uint64_t trial_seed(std::uint64_t master, int index);

SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace dualmat
