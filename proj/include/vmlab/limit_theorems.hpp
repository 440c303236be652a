#pragma once

#include "vmlab/convergence.hpp"
#include "vmlab/semicontinuity.hpp"

#include <cstdint>
#include <optional>

namespace vmlab {

struct EngineOptions {
    /// Conclusion tolerance.
    double tol = 1e-9;
    /// Tolerance of the measure-convergence hypotheses (weak / setwise / TV).
    double measure_tol = 1e-9;
    /// Tolerance of function-level hypotheses: semi-convergence in measure,
    /// existence of double limits, semicontinuity of the limit, a.u.i. curves.
    double function_tol = 1e-9;
    std::vector<double> eps_schedule = default_eps_schedule();
    std::vector<double> k_schedule = default_k_schedule();
    /// Seed of the surrogate weak tests and setwise subsets.
    std::uint64_t seed = 0;
    /// Lower semicontinuity of every f_n, asserted by the caller.
    bool terms_lower_semicontinuous = true;
    /// Replace the seeded surrogate families when set.
    std::optional<std::vector<TestFunction>> weak_tests;
    std::optional<std::vector<std::vector<PointId>>> setwise_sets;
};

struct TheoremInstance {
    FunctionFamily fam;
    MeasureSequence seq;
    std::optional<FunctionFamily> minorant;
    RadiusSchedule radii = RadiusSchedule::dyadic();
    EngineOptions opts;

    /// Throws InputError unless fam, seq and minorant share space and horizon.
    void validate() const;
};

/// int (double lower limit) dmu <= liminf int f_n dmu_n.
Verdict fatou_weak_double(const TheoremInstance& inst);

/// int f dmu <= liminf int f_n dmu_n for lsec families lower semi-converging
/// to f in measure.
Verdict fatou_classic_weak(const TheoremInstance& inst);

/// Children "lower_semi_convergence" (a.u.i. negative parts), "minorant" and
/// "pointwise_lower_limit".
Verdict fatou_setwise(const TheoremInstance& inst);

/// gap_n = sum_p min(0, f_n(p) w_n(p) - f(p) w(p)).
ExtReal fatou_gap(const FunctionFamily& fam, const PointFunction& f, const AtomicMeasure& mu_n,
                  const AtomicMeasure& mu, int n);

/// liminf gap_n >= 0 iff (i) lower semi-convergence in measure and (ii)
/// a.u.i. of the negative parts; status bug on a mismatch.
Verdict uniform_fatou_gap(const FunctionFamily& fam, const PointFunction& f,
                          const MeasureSequence& seq, const EngineOptions& opts);

/// Children "double_limit" and "equicontinuous".
Verdict lebesgue_weak(const TheoremInstance& inst);

Verdict lebesgue_setwise(const TheoremInstance& inst);

/// Children "semicontinuous_limit" and "lower_envelope".
Verdict monotone_weak(const TheoremInstance& inst);

Verdict monotone_setwise(const TheoremInstance& inst);

}  // namespace vmlab
