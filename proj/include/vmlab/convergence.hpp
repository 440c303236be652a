#pragma once

#include "vmlab/family.hpp"
#include "vmlab/verdict.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vmlab {

struct TestFunction {
    std::string name;
    PointFunction f;
};

/// Polynomials of degree 0..3 in the normalized coordinate (values in [-1, 1])
/// and 8 seeded Lipschitz bumps max(0, 1 - |x - c| / w).
std::vector<TestFunction> default_weak_tests(const MetricPointSet& space, std::uint64_t seed = 0);

/// All singletons plus 64 seeded random subsets (each point kept with
/// probability 1/2).
std::vector<std::vector<PointId>> default_setwise_sets(const MetricPointSet& space,
                                                       std::uint64_t seed = 0);

/// |int f dmu_n - int f dmu| <= tol over the last quarter, for every test.
/// Also reports the total-mass gap. Empty test list is an input error.
Verdict weak_convergence_check(const MeasureSequence& seq, const std::vector<TestFunction>& tests,
                               double tol);
Verdict weak_convergence_check(const MeasureSequence& seq, double tol, std::uint64_t seed = 0);

/// |mu_n(C) - mu(C)| <= tol over the last quarter, for every C. Also reports
/// "all_subsets_gap", the exact supremum over every subset.
Verdict setwise_convergence_check(const MeasureSequence& seq,
                                  const std::vector<std::vector<PointId>>& sets, double tol);
Verdict setwise_convergence_check(const MeasureSequence& seq, double tol, std::uint64_t seed = 0);

/// sup over subsets C of |nu(C)| for nu = mu - nu2.
double all_subsets_gap(const AtomicMeasure& mu, const AtomicMeasure& nu);

Verdict tv_convergence_check(const MeasureSequence& seq, double tol);

/// {2^0, 2^1, ..., 2^20}.
std::vector<double> default_k_schedule();

enum class UiMode { ui, aui };

struct UiCurve {
    std::vector<double> K_values;
    std::vector<ExtReal> tail_values;
    UiMode mode = UiMode::aui;

    ExtReal final_value() const { return tail_values.back(); }
    bool nonincreasing() const;
    Verdict verdict(double tol) const;
};

/// max over n >= N/2 of int |f_n| I{|f_n| >= K} dmu_n, per K.
UiCurve aui_estimate(const FunctionFamily& fam, const MeasureSequence& seq,
                     const std::vector<double>& K_schedule);
/// Same with the maximum over every n.
UiCurve ui_estimate(const FunctionFamily& fam, const MeasureSequence& seq,
                    const std::vector<double>& K_schedule);

/// Smallest shift N (first index kept) for which the shifted family passes the
/// u.i. estimate; asserts a.u.i. pass iff some N <= N_max/2 exists.
Verdict ui_aui_equivalence_probe(const FunctionFamily& fam, const MeasureSequence& seq,
                                 const std::vector<double>& K_schedule, double tol);

}  // namespace vmlab
