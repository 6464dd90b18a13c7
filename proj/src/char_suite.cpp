#include "dualmat/char_suite.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>
#include <utility>

#include "random_util.hpp"

namespace dualmat {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [e, n] : table) {
    if (e == value) return n;
  }
  return "unknown";
}

constexpr std::array<std::pair<PropertyId, std::string_view>, 6> kPropertyNames{{
    {PropertyId::hermitian, "hermitian"},
    {PropertyId::normal, "normal"},
    {PropertyId::new_dual_ep, "new_dual_ep"},
    {PropertyId::adjoint_eq_ndmpi, "adjoint_eq_ndmpi"},
    {PropertyId::ndmpi_idempotent, "ndmpi_idempotent"},
    {PropertyId::ndmpi_adjoint_commute, "ndmpi_adjoint_commute"},
}};

constexpr std::array<std::pair<SufficiencyCondition, std::string_view>, 6> kSufficiencyNames{{
    {SufficiencyCondition::hermitian_a_a_ndmpi, "A A A^N = A^*"},
    {SufficiencyCondition::hermitian_a_adj_ndmpi, "A A^* A^N = A"},
    {SufficiencyCondition::normal_a_adj_ndmpi, "A A^* A^N = A^*"},
    {SufficiencyCondition::normal_ndmpi_adj_a, "A^N A^* A = A^*"},
    {SufficiencyCondition::normal_ess_adj_group_left, "Ae A^* Ae# = A^* Ae# Ae"},
    {SufficiencyCondition::normal_ess_adj_group_right, "Ae A^* Ae# = Ae# Ae A^*"},
}};

constexpr std::array<std::pair<TheoremId, std::string_view>, 6> kTheoremNames{{
    {TheoremId::characterization, "characterization"},
    {TheoremId::hermitian_sufficiency, "herm-suff"},
    {TheoremId::normal_sufficiency, "normal-suff"},
    {TheoremId::normality, "normal-equiv"},
    {TheoremId::new_dual_ep, "ndep-equiv"},
    {TheoremId::ep_normality, "ep-normal"},
}};

constexpr std::array<std::pair<Verdict, std::string_view>, 3> kVerdictNames{{
    {Verdict::consistent, "consistent"},
    {Verdict::indeterminate, "indeterminate"},
    {Verdict::violation, "violation"},
}};

Check equal(const DualMatrix& x, const DualMatrix& y, const ToleranceConfig& tol) {
  return Check::from_ratio(equality_ratio(x, y, tol));
}

/// As `equal`, with the allowance scaled by at least `ref`. Used where one side
/// is a zero block and its own norm says nothing about the working scale.
Check equal_ref(const DualMatrix& x, const DualMatrix& y, const PartNorms& ref,
                const ToleranceConfig& tol) {
  Deviation d = deviation(x, y);
  d.std_scale = std::max(d.std_scale, ref.std_norm);
  d.dual_scale = std::max(d.dual_scale, ref.dual_norm);
  return Check::from_ratio(d.ratio(tol));
}

Check equal_ref(const CMatrix& x, const CMatrix& y, double ref, const ToleranceConfig& tol) {
  Deviation d = deviation(x, y);
  d.std_scale = std::max(d.std_scale, ref);
  return Check::from_ratio(d.ratio(tol));
}

/// Conjunction: holds when every part holds, with the worst ratio.
Check all_of(std::initializer_list<Check> checks) {
  Check out{true, 0.0};
  for (const Check& c : checks) {
    out.holds = out.holds && c.holds;
    out.ratio = std::max(out.ratio, c.ratio);
  }
  return out;
}

CMatrix sigma2_dual(const HsDecomposition& h) {
  Eigen::VectorXd d(static_cast<Index>(h.sigma2.size()));
  for (std::size_t i = 0; i < h.sigma2.size(); ++i) d(static_cast<Index>(i)) = h.sigma2[i].dual_part;
  return d.cast<Complex>().asDiagonal();
}

CMatrix sigma1_std_inverse(const HsDecomposition& h) {
  Eigen::VectorXd d(h.rank());
  for (Index i = 0; i < h.rank(); ++i) d(i) = 1.0 / h.sigma1[static_cast<std::size_t>(i)].std_part;
  return d.cast<Complex>().asDiagonal();
}

/// Two checks disagree; decide whether the disagreement is outside the band.
Verdict disagreement(const Check& a, const Check& b) {
  const Check& yes = a.holds ? a : b;
  const Check& no = a.holds ? b : a;
  return yes.clearly_true() && no.clearly_false() ? Verdict::violation : Verdict::indeterminate;
}

Verdict worse(Verdict a, Verdict b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

std::string describe(const Check& c) {
  std::ostringstream os;
  os << (c.holds ? "true" : "false") << " (ratio " << std::setprecision(3) << c.ratio << ")";
  return os.str();
}

}  // namespace

std::string_view to_string(PropertyId p) { return name_of(kPropertyNames, p); }
std::optional<PropertyId> property_from_string(std::string_view name) {
  return lookup(kPropertyNames, name);
}
std::string_view to_string(SufficiencyCondition c) { return name_of(kSufficiencyNames, c); }
std::optional<SufficiencyCondition> sufficiency_from_string(std::string_view name) {
  return lookup(kSufficiencyNames, name);
}
std::string_view to_string(TheoremId t) { return name_of(kTheoremNames, t); }
std::optional<TheoremId> theorem_from_string(std::string_view name) {
  return lookup(kTheoremNames, name);
}
std::string_view to_string(Verdict v) { return name_of(kVerdictNames, v); }

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& [t, name] : kTheoremNames) out.push_back(t);
    return out;
  }();
  return ids;
}

MatrixAnalysis analyze(const DualMatrix& a, const ToleranceConfig& tol) {
  require_square(a, "property checks");
  MatrixAnalysis m;
  m.a = a;
  m.a_star = a.adjoint();
  m.svd = dual_svd(a, tol);
  m.hs = hs_from_svd(m.svd);
  m.ndmpi = ndmpi(m.svd);
  m.essential = essential_part(m.svd);
  m.essential_group = group_inverse_essential(m.hs, tol);
  return m;
}

Check definitional_check(const MatrixAnalysis& m, PropertyId p, const ToleranceConfig& tol) {
  const DualMatrix& a = m.a;
  const DualMatrix& x = m.ndmpi;
  switch (p) {
    case PropertyId::hermitian:
      return equal(m.a_star, a, tol);
    case PropertyId::normal:
      return equal(a * m.a_star, m.a_star * a, tol);
    case PropertyId::new_dual_ep:
      return equal(a * x, x * a, tol);
    case PropertyId::adjoint_eq_ndmpi:
      return equal(m.a_star, x, tol);
    case PropertyId::ndmpi_idempotent:
      return equal(x * x, x, tol);
    case PropertyId::ndmpi_adjoint_commute:
      return equal(x * m.a_star, m.a_star * x, tol);
  }
  throw Error(ErrorCode::invalid_argument, "unknown property");
}

Check structural_check(const HsDecomposition& h, PropertyId p, const ToleranceConfig& tol) {
  const Index n = h.order();
  const Index r = h.rank();
  const DualMatrix s1 = h.sigma1_matrix();
  const CMatrix s2d = sigma2_dual(h);
  const double s2d_norm = s2d.norm();
  const PartNorms w_norms = norms(h.w());
  const DualMatrix l_zero = DualMatrix::zero(r, n - r);
  const CMatrix& ms = h.m.std_part();
  const CMatrix& ns = h.n.std_part();
  const CMatrix zero_mr = CMatrix::Zero(n - r, r);
  const CMatrix zero_nr = CMatrix::Zero(n - r, n - r);

  switch (p) {
    case PropertyId::hermitian: {
      const DualMatrix l_expected(CMatrix::Zero(r, n - r),
                                  sigma1_std_inverse(h) * ms.adjoint() * s2d);
      return all_of({equal(h.k.adjoint() * s1, s1 * h.k, tol),
                     equal_ref(CMatrix(ns.adjoint() * s2d), CMatrix(s2d * ns), s2d_norm, tol),
                     equal_ref(h.l, l_expected, w_norms, tol)});
    }
    case PropertyId::new_dual_ep:
      return equal_ref(h.l, l_zero, w_norms, tol);
    case PropertyId::normal:
      return all_of({equal_ref(h.l, l_zero, w_norms, tol), equal(s1 * h.k, h.k * s1, tol)});
    case PropertyId::adjoint_eq_ndmpi:
      return all_of({equal_ref(CMatrix(s2d * ms), zero_mr, s2d_norm, tol),
                     equal_ref(CMatrix(s2d * ns), zero_nr, s2d_norm, tol),
                     equal(s1, DualMatrix::identity(r), tol)});
    case PropertyId::ndmpi_idempotent:
      return equal(s1, h.k, tol);
    case PropertyId::ndmpi_adjoint_commute: {
      const DualMatrix s1_sq = s1 * s1;
      const CMatrix lsn = h.l.std_part() * s2d * ns;
      return all_of({equal_ref(CMatrix(s2d * ms), zero_mr, s2d_norm, tol),
                     equal_ref(lsn, CMatrix::Zero(r, n - r), s2d_norm, tol),
                     equal(s1_sq * h.k, h.k * s1_sq, tol)});
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown property");
}

bool definitional_test(const DualMatrix& a, PropertyId p, const ToleranceConfig& tol) {
  return definitional_check(analyze(a, tol), p, tol).holds;
}

bool structural_test(const HsDecomposition& h, PropertyId p, const ToleranceConfig& tol) {
  return structural_check(h, p, tol).holds;
}

SufficiencyResult sufficiency_test(const MatrixAnalysis& m, SufficiencyCondition c,
                                   const ToleranceConfig& tol) {
  const DualMatrix& a = m.a;
  const DualMatrix& as = m.a_star;
  const DualMatrix& x = m.ndmpi;
  const DualMatrix& ae = m.essential;
  SufficiencyResult out;
  PropertyId implied = PropertyId::normal;

  switch (c) {
    case SufficiencyCondition::hermitian_a_a_ndmpi:
      out.premise = equal(a * a * x, as, tol);
      implied = PropertyId::hermitian;
      break;
    case SufficiencyCondition::hermitian_a_adj_ndmpi:
      out.premise = equal(a * as * x, a, tol);
      implied = PropertyId::hermitian;
      break;
    case SufficiencyCondition::normal_a_adj_ndmpi:
      out.premise = equal(a * as * x, as, tol);
      break;
    case SufficiencyCondition::normal_ndmpi_adj_a:
      out.premise = equal(x * as * a, as, tol);
      break;
    case SufficiencyCondition::normal_ess_adj_group_left:
    case SufficiencyCondition::normal_ess_adj_group_right: {
      const DualMatrix* g = m.group();
      if (g == nullptr) {
        out.applicable = false;
        return out;
      }
      const DualMatrix lhs = ae * as * *g;
      out.premise = c == SufficiencyCondition::normal_ess_adj_group_left
                        ? equal(lhs, as * *g * ae, tol)
                        : equal(lhs, *g * ae * as, tol);
      break;
    }
  }
  out.conclusion = definitional_check(m, implied, tol);
  if (out.premise.holds && !out.conclusion.holds) {
    out.verdict = disagreement(out.premise, out.conclusion);
  }
  return out;
}

SufficiencyResult sufficiency_test(const DualMatrix& a, SufficiencyCondition c,
                                   const ToleranceConfig& tol) {
  return sufficiency_test(analyze(a, tol), c, tol);
}

EquivalenceReport equivalence_suite(const MatrixAnalysis& m, TheoremId theorem,
                                    const ToleranceConfig& tol) {
  EquivalenceReport report;
  report.theorem = theorem;
  auto& conds = report.conditions;
  const DualMatrix& a = m.a;
  const DualMatrix& as = m.a_star;
  const DualMatrix& x = m.ndmpi;
  const DualMatrix& ae = m.essential;
  const DualMatrix* g = m.group();

  auto add = [&](std::string label, const Check& c) { conds.push_back({std::move(label), true, c}); };
  auto skip = [&](std::string label) { conds.push_back({std::move(label), false, Check{}}); };

  // Implications rather than equivalences; every premise is checked against
  // the implied property.
  auto sufficiency = [&](std::initializer_list<SufficiencyCondition> list) {
    for (SufficiencyCondition c : list) {
      const SufficiencyResult r = sufficiency_test(m, c, tol);
      std::string label(to_string(c));
      if (!r.applicable) {
        skip(label);
        continue;
      }
      add(label, r.premise);
      if (r.verdict != Verdict::consistent) {
        report.verdict = worse(report.verdict, r.verdict);
        report.details += label + ": premise " + describe(r.premise) + ", conclusion " +
                          describe(r.conclusion) + "; ";
      }
    }
  };

  switch (theorem) {
    case TheoremId::characterization:
      for (PropertyId p : kAllProperties) {
        const Check d = definitional_check(m, p, tol);
        const Check s = structural_check(m.hs, p, tol);
        const std::string name(to_string(p));
        add(name + " (definition)", d);
        add(name + " (blocks)", s);
        if (d.holds != s.holds) {
          report.verdict = worse(report.verdict, disagreement(d, s));
          report.details += name + ": definition " + describe(d) + ", blocks " + describe(s) + "; ";
        }
      }
      return report;
    case TheoremId::hermitian_sufficiency:
      add("hermitian", definitional_check(m, PropertyId::hermitian, tol));
      sufficiency({SufficiencyCondition::hermitian_a_a_ndmpi,
                   SufficiencyCondition::hermitian_a_adj_ndmpi});
      return report;
    case TheoremId::normal_sufficiency:
      add("normal", definitional_check(m, PropertyId::normal, tol));
      sufficiency({SufficiencyCondition::normal_a_adj_ndmpi, SufficiencyCondition::normal_ndmpi_adj_a,
                   SufficiencyCondition::normal_ess_adj_group_left,
                   SufficiencyCondition::normal_ess_adj_group_right});
      return report;
    case TheoremId::normality:
      add("(i) A normal", definitional_check(m, PropertyId::normal, tol));
      if (g != nullptr) add("(ii) A^* Ae# = Ae# A^*", equal(as * *g, *g * as, tol));
      else skip("(ii) A^* Ae# = Ae# A^*");
      add("(iii) Ae A^* A^N = A^N Ae A^*", equal(ae * as * x, x * ae * as, tol));
      if (g != nullptr) {
        add("(iv) Ae Ae# A^* = Ae# A^* Ae", equal(ae * *g * as, *g * as * ae, tol));
        add("(v) A^* A Ae# = Ae# A^* A", equal(as * a * *g, *g * as * a, tol));
        add("(vi) A^* A^N Ae# = Ae# A^* A^N", equal(as * x * *g, *g * as * x, tol));
        add("(vii) A^* Ae# A^N = A^N A^* Ae#", equal(as * *g * x, x * as * *g, tol));
      } else {
        for (const char* label : {"(iv) Ae Ae# A^* = Ae# A^* Ae", "(v) A^* A Ae# = Ae# A^* A",
                                  "(vi) A^* A^N Ae# = Ae# A^* A^N",
                                  "(vii) A^* Ae# A^N = A^N A^* Ae#"}) {
          skip(label);
        }
      }
      break;
    case TheoremId::new_dual_ep: {
      add("(i) A new dual EP", definitional_check(m, PropertyId::new_dual_ep, tol));
      add("(ii) A A^N A^* = A^* A A^N", equal(a * x * as, as * a * x, tol));
      add("(iii) A^* A^N A = A^N A A^*", equal(as * x * a, x * a * as, tol));
      const char* labels[] = {
          "(iv) A^N A^N = A^N Ae#",        "(v) A^N A^N = Ae# A^N",
          "(vi) A^N A^N = Ae# Ae#",        "(vii) Ae# A^N = Ae# Ae#",
          "(viii) A^N Ae# = Ae# Ae#",      "(ix) A^N Ae# = Ae# A^N",
          "(x) A^N A^N Ae# = A^N Ae# A^N", "(xi) A^N A^N Ae# = Ae# A^N A^N",
          "(xii) A^N Ae# A^N = Ae# A^N A^N", "(xiii) A^N Ae# Ae# = Ae# A^N Ae#",
          "(xiv) A^N Ae# Ae# = Ae# Ae# A^N", "(xv) Ae# Ae# A^N = Ae# A^N Ae#"};
      if (g == nullptr) {
        for (const char* label : labels) skip(label);
        break;
      }
      const DualMatrix& y = *g;
      const DualMatrix xx = x * x;
      const DualMatrix xy = x * y;
      const DualMatrix yx = y * x;
      const DualMatrix yy = y * y;
      const std::array<std::pair<DualMatrix, DualMatrix>, 12> sides{{
          {xx, xy},
          {xx, yx},
          {xx, yy},
          {yx, yy},
          {xy, yy},
          {xy, yx},
          {xx * y, xy * x},
          {xx * y, y * xx},
          {xy * x, y * xx},
          {xy * y, yx * y},
          {xy * y, yy * x},
          {yy * x, yx * y},
      }};
      for (std::size_t i = 0; i < sides.size(); ++i) {
        add(labels[i], equal(sides[i].first, sides[i].second, tol));
      }
      break;
    }
    case TheoremId::ep_normality: {
      const Check ep = definitional_check(m, PropertyId::new_dual_ep, tol);
      if (!ep.holds) {
        skip("A normal");
        skip("Sigma_1 K = K Sigma_1");
        return report;
      }
      const DualMatrix s1 = m.hs.sigma1_matrix();
      add("A normal", definitional_check(m, PropertyId::normal, tol));
      add("Sigma_1 K = K Sigma_1", equal(s1 * m.hs.k, m.hs.k * s1, tol));
      break;
    }
  }

  // Equivalence: every applicable condition must agree with the first one.
  const ConditionResult* head = nullptr;
  for (const ConditionResult& c : conds) {
    if (!c.applicable) continue;
    if (head == nullptr) {
      head = &c;
      continue;
    }
    if (c.check.holds != head->check.holds) {
      report.verdict = worse(report.verdict, disagreement(c.check, head->check));
      report.details += c.label + " " + describe(c.check) + " vs " + head->label + " " +
                        describe(head->check) + "; ";
    }
  }
  return report;
}

EquivalenceReport equivalence_suite(const DualMatrix& a, TheoremId theorem,
                                    const ToleranceConfig& tol) {
  return equivalence_suite(analyze(a, tol), theorem, tol);
}

std::vector<GeneratorKind> default_kinds(TheoremId theorem) {
  using K = GeneratorKind;
  switch (theorem) {
    case TheoremId::characterization:
      return {K::general,        K::hermitian,          K::normal,
              K::new_dual_ep,    K::dual_unitary,       K::invertible_std,
              K::pure_infinitesimal, K::rank_deficient, K::repeated_singular,
              K::partial_isometry, K::ndmpi_idempotent, K::nilpotent};
    case TheoremId::hermitian_sufficiency:
      return {K::hermitian, K::normal, K::general, K::rank_deficient, K::pure_infinitesimal,
              K::new_dual_ep};
    case TheoremId::normal_sufficiency:
    case TheoremId::normality:
      return {K::normal,         K::hermitian,      K::dual_unitary,     K::new_dual_ep,
              K::general,        K::rank_deficient, K::partial_isometry, K::invertible_std,
              K::nilpotent};
    case TheoremId::new_dual_ep:
      return {K::new_dual_ep,     K::normal,         K::hermitian,
              K::general,         K::rank_deficient, K::partial_isometry,
              K::ndmpi_idempotent, K::pure_infinitesimal, K::nilpotent};
    case TheoremId::ep_normality:
      return {K::new_dual_ep, K::normal, K::hermitian, K::dual_unitary, K::invertible_std};
  }
  return {K::general};
}

std::uint64_t trial_seed(std::uint64_t master, int index) {
  return detail::mix_seed(detail::mix_seed(master) ^ static_cast<std::uint64_t>(index));
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.tol.validate();
  if (cfg.trials < 0 || cfg.sizes.empty() || cfg.threads < 1) {
    throw Error(ErrorCode::invalid_argument, "suite needs trials >= 0, sizes and threads >= 1");
  }
  for (Index n : cfg.sizes) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "suite sizes must be positive");
  }
  const std::vector<GeneratorKind> kinds = cfg.kinds.empty() ? default_kinds(cfg.theorem) : cfg.kinds;
  const auto trials = static_cast<std::size_t>(cfg.trials);

  struct Slot {
    TrialOutcome outcome;
    std::vector<ConditionResult> conditions;
  };
  std::vector<Slot> slots(trials);

  auto run_one = [&](std::size_t i) {
    Slot& slot = slots[i];
    TrialOutcome& t = slot.outcome;
    t.index = static_cast<int>(i);
    t.seed = trial_seed(cfg.seed, t.index);
    t.kind = kinds[i % kinds.size()];
    t.size = cfg.sizes[(i / kinds.size()) % cfg.sizes.size()];
    try {
      const DualMatrix a = random_dual_matrix({t.kind, t.size, 0, t.seed});
      EquivalenceReport rep = equivalence_suite(a, cfg.theorem, cfg.tol);
      t.verdict = rep.verdict;
      t.details = std::move(rep.details);
      slot.conditions = std::move(rep.conditions);
    } catch (const Error& e) {
      t.error = true;
      t.details = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) run_one(i);
  };
  const int nthreads = std::min<int>(cfg.threads, std::max<int>(1, cfg.trials));
  std::vector<std::thread> pool;
  for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SuiteReport report;
  report.config = cfg;
  report.config.kinds = kinds;
  for (Slot& slot : slots) {
    const TrialOutcome& t = slot.outcome;
    if (t.error) {
      ++report.errors;
    } else if (t.verdict == Verdict::violation) {
      ++report.violations;
    } else if (t.verdict == Verdict::indeterminate) {
      ++report.indeterminate;
    } else {
      ++report.consistent;
    }
    for (const ConditionResult& c : slot.conditions) {
      ConditionTally& tally = report.tallies[c.label];
      if (!c.applicable) ++tally.inapplicable;
      else if (c.check.holds) ++tally.true_count;
      else ++tally.false_count;
    }
    if (t.error || t.verdict != Verdict::consistent) report.flagged.push_back(t);
  }
  return report;
}

}  // namespace dualmat
