#pragma once

#include "vmlab/family.hpp"
#include "vmlab/verdict.hpp"

#include <utility>
#include <vector>

namespace vmlab {

/// liminf over n -> inf, s' -> s, rendered as the minimum of f_k(s') over tail
/// indices k >= N/2 and s' in the local ball of s.
ExtReal double_lower_limit(const FunctionFamily& fam, PointId s, const RadiusSchedule& radii);
ExtReal double_upper_limit(const FunctionFamily& fam, PointId s, const RadiusSchedule& radii);

/// Tail minimum / maximum of f_k(s), k >= N/2.
ExtReal pointwise_lower_limit(const FunctionFamily& fam, PointId s);
ExtReal pointwise_upper_limit(const FunctionFamily& fam, PointId s);

/// Per-point lower semi-equicontinuity on the local ball: for every eps in the
/// schedule and every n, f_n(s') > f_n(s) - eps for all s' in the ball.
std::vector<bool> lsec_points(const FunctionFamily& fam, const std::vector<double>& eps_schedule,
                              const RadiusSchedule& radii);

/// Lower semi-equicontinuity over the whole space. Quantities: failing point
/// count; notes list the first violating (s, eps, n) triples.
Verdict lsec_check(const FunctionFamily& fam, const std::vector<double>& eps_schedule,
                   const RadiusSchedule& radii);

/// lsec_check of the negated family.
Verdict usec_check(const FunctionFamily& fam, const std::vector<double>& eps_schedule,
                   const RadiusSchedule& radii);

/// Pairs (n, s) with f_n(s) <= f(s) - eps.
std::vector<std::pair<int, PointId>> uniform_below_violations(const FunctionFamily& fam, double eps);

/// For each eps: pass iff some N <= N_max/2 has f_n(s) > f(s) - eps for all s
/// and all n in N..N_max. Records the minimal N per eps (quantity "N@eps").
Verdict uniform_semi_convergence_below_check(const FunctionFamily& fam,
                                             const std::vector<double>& eps_schedule);

enum class SemiDirection { lower, upper, both };

/// mu({f_n <= f - eps}) (lower) and mu({f_n >= f + eps}) (upper); pass iff
/// every value over the last quarter of the horizon is within tol.
Verdict semi_convergence_in_measure_check(const FunctionFamily& fam, const AtomicMeasure& mu,
                                          const std::vector<double>& eps_schedule,
                                          SemiDirection direction, double tol);

/// Necessary and sufficient conditions for the double lower limit to equal
/// the pointwise lower limit. Per point: (a) lsec, (b) equality of the two
/// lower limits, (c) convergence of f_n(s) over the tail. Asserts (a) => (b)
/// and (b) and (c) and head lower semicontinuity => (a); status bug on any
/// violation of either implication.
Verdict llim_equality_check(const FunctionFamily& fam, const RadiusSchedule& radii,
                            const std::vector<double>& eps_schedule, double tol);

/// Nondecreasing lower semicontinuous families: double lower limit equals the
/// limit f_N(s). Inapplicable when the family is not nondecreasing, not lower
/// semicontinuous on local balls, or has not converged over the tail.
Verdict monotone_double_limit_check(const FunctionFamily& fam, const RadiusSchedule& radii,
                                    double tol);

}  // namespace vmlab
