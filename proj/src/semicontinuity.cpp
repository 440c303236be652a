#include "vmlab/semicontinuity.hpp"

#include <algorithm>
#include <sstream>

namespace vmlab {

namespace {

constexpr std::size_t kMaxNotes = 16;

// True when value fails "value > level - eps" (extended-real reading).
bool drops(ExtReal value, ExtReal level, double eps) {
    if (level.is_neg_inf()) return false;
    if (level.is_pos_inf()) return !value.is_pos_inf();
    return value <= level - ExtReal(eps);
}

ExtReal ball_min(const FunctionFamily& fam, int n, const LocalBall& b) {
    ExtReal m = ExtReal::pos_inf();
    for (PointId q : b.points) m = min(m, fam(n, q));
    return m;
}

ExtReal ball_max(const FunctionFamily& fam, int n, const LocalBall& b) {
    ExtReal m = ExtReal::neg_inf();
    for (PointId q : b.points) m = max(m, fam(n, q));
    return m;
}

std::string describe_point(const MetricPointSet& space, PointId p) {
    std::ostringstream os;
    os << "s#" << p << "=" << format_number(space.coord(p));
    return os.str();
}

// Largest eps in the schedule violated at (s, n), or 0 when none is.
double worst_eps_at(const FunctionFamily& fam, int n, PointId s, const LocalBall& b,
                    const std::vector<double>& eps_schedule) {
    const ExtReal m = ball_min(fam, n, b);
    double worst = 0;
    for (double e : eps_schedule)
        if (drops(m, fam(n, s), e)) worst = std::max(worst, e);
    return worst;
}

bool lsec_at(const FunctionFamily& fam, PointId s, const LocalBall& b,
             const std::vector<double>& eps_schedule, int first_n, int last_n) {
    if (b.isolated) return true;
    for (int n = first_n; n <= last_n; ++n)
        if (worst_eps_at(fam, n, s, b, eps_schedule) > 0) return false;
    return true;
}

void require_eps(const std::vector<double>& eps_schedule) {
    if (eps_schedule.empty()) throw InputError("eps schedule is empty");
    for (double e : eps_schedule)
        if (!(e > 0)) throw InputError("eps values must be positive");
}

bool close(ExtReal a, ExtReal b, double tol) {
    if (!a.is_finite() || !b.is_finite()) return a == b;
    return (a - b).abs() <= ExtReal(tol);
}

}  // namespace

ExtReal double_lower_limit(const FunctionFamily& fam, PointId s, const RadiusSchedule& radii) {
    const LocalBall b = local_ball(*fam.space(), s, radii);
    ExtReal m = ExtReal::pos_inf();
    for (int k = tail_start(fam.horizon()); k <= fam.horizon(); ++k) m = min(m, ball_min(fam, k, b));
    return m;
}

ExtReal double_upper_limit(const FunctionFamily& fam, PointId s, const RadiusSchedule& radii) {
    const LocalBall b = local_ball(*fam.space(), s, radii);
    ExtReal m = ExtReal::neg_inf();
    for (int k = tail_start(fam.horizon()); k <= fam.horizon(); ++k) m = max(m, ball_max(fam, k, b));
    return m;
}

ExtReal pointwise_lower_limit(const FunctionFamily& fam, PointId s) {
    ExtReal m = ExtReal::pos_inf();
    for (int k = tail_start(fam.horizon()); k <= fam.horizon(); ++k) m = min(m, fam(k, s));
    return m;
}

ExtReal pointwise_upper_limit(const FunctionFamily& fam, PointId s) {
    ExtReal m = ExtReal::neg_inf();
    for (int k = tail_start(fam.horizon()); k <= fam.horizon(); ++k) m = max(m, fam(k, s));
    return m;
}

std::vector<bool> lsec_points(const FunctionFamily& fam, const std::vector<double>& eps_schedule,
                              const RadiusSchedule& radii) {
    require_eps(eps_schedule);
    const auto balls = local_balls(*fam.space(), radii);
    std::vector<bool> out(fam.size());
    for (PointId s = 0; s < fam.size(); ++s)
        out[s] = lsec_at(fam, s, balls[s], eps_schedule, 1, fam.horizon());
    return out;
}

Verdict lsec_check(const FunctionFamily& fam, const std::vector<double>& eps_schedule,
                   const RadiusSchedule& radii) {
    require_eps(eps_schedule);
    Verdict v;
    v.check_id = "lsec";
    v.horizon = fam.horizon();
    v.tolerance = *std::min_element(eps_schedule.begin(), eps_schedule.end());
    v.assumptions.push_back("s' -> s rendered by the smallest schedule ball holding another point");
    const auto balls = local_balls(*fam.space(), radii);
    std::size_t failing = 0;
    double worst = 0;
    for (PointId s = 0; s < fam.size(); ++s) {
        if (balls[s].isolated) continue;
        double point_worst = 0;
        int point_n = 0;
        for (int n = 1; n <= fam.horizon(); ++n) {
            const double w = worst_eps_at(fam, n, s, balls[s], eps_schedule);
            if (w > point_worst) {
                point_worst = w;
                point_n = n;
            }
        }
        if (point_worst > 0) {
            ++failing;
            worst = std::max(worst, point_worst);
            if (v.notes.size() < kMaxNotes)
                v.notes.push_back("violation at " + describe_point(*fam.space(), s) +
                                  " eps=" + format_number(point_worst) +
                                  " n=" + std::to_string(point_n));
        }
    }
    v.set("failing_points", static_cast<double>(failing));
    v.set("largest_violated_eps", worst);
    v.status = failing == 0 ? Status::pass : Status::fail;
    return v;
}

Verdict usec_check(const FunctionFamily& fam, const std::vector<double>& eps_schedule,
                   const RadiusSchedule& radii) {
    Verdict v = lsec_check(fam.negated(), eps_schedule, radii);
    v.check_id = "usec";
    return v;
}

std::vector<std::pair<int, PointId>> uniform_below_violations(const FunctionFamily& fam, double eps) {
    if (!fam.has_limit()) throw InputError("uniform semi-convergence needs a limit");
    std::vector<std::pair<int, PointId>> out;
    for (int n = 1; n <= fam.horizon(); ++n)
        for (PointId s = 0; s < fam.size(); ++s)
            if (drops(fam(n, s), fam.limit(s), eps)) out.emplace_back(n, s);
    return out;
}

Verdict uniform_semi_convergence_below_check(const FunctionFamily& fam,
                                             const std::vector<double>& eps_schedule) {
    require_eps(eps_schedule);
    if (!fam.has_limit()) throw InputError("uniform semi-convergence needs a limit");
    Verdict v;
    v.check_id = "uniform_semi_convergence_below";
    v.horizon = fam.horizon();
    v.tolerance = *std::min_element(eps_schedule.begin(), eps_schedule.end());
    v.assumptions.push_back("the threshold index must not exceed half the horizon");
    const int N = fam.horizon();
    bool ok = true;
    for (double e : eps_schedule) {
        // Smallest N0 with every n >= N0 good.
        int n0 = N + 1;
        PointId witness = 0;
        bool have_witness = false;
        for (int n = N; n >= 1; --n) {
            bool good = true;
            for (PointId s = 0; s < fam.size(); ++s)
                if (drops(fam(n, s), fam.limit(s), e)) {
                    good = false;
                    witness = s;
                    have_witness = true;
                    break;
                }
            if (!good) break;
            n0 = n;
        }
        v.set("N@" + format_number(e), n0 <= N ? ExtReal(n0) : ExtReal::pos_inf());
        if (n0 > tail_start(N)) {
            ok = false;
            if (have_witness && v.notes.size() < kMaxNotes)
                v.notes.push_back("eps=" + format_number(e) + " witness n=" + std::to_string(n0 - 1) +
                                  " at " + describe_point(*fam.space(), witness));
        }
    }
    v.status = ok ? Status::pass : Status::fail;
    return v;
}

Verdict semi_convergence_in_measure_check(const FunctionFamily& fam, const AtomicMeasure& mu,
                                          const std::vector<double>& eps_schedule,
                                          SemiDirection direction, double tol) {
    require_eps(eps_schedule);
    if (!fam.has_limit()) throw InputError("semi-convergence in measure needs a limit");
    if (mu.space()->size() != fam.size()) throw InputError("measure on a different space");
    Verdict v;
    v.check_id = direction == SemiDirection::lower   ? "semi_convergence_in_measure_below"
                 : direction == SemiDirection::upper ? "semi_convergence_in_measure_above"
                                                     : "convergence_in_measure";
    v.horizon = fam.horizon();
    v.tolerance = tol;
    const int N = fam.horizon();
    const bool lower = direction != SemiDirection::upper;
    const bool upper = direction != SemiDirection::lower;
    double worst = 0;
    for (double e : eps_schedule) {
        double eps_worst = 0;
        for (int n = last_quarter_start(N); n <= N; ++n) {
            double m = 0;
            for (PointId s = 0; s < fam.size(); ++s) {
                const double w = mu.weight(s);
                if (w == 0) continue;
                const bool below = lower && drops(fam(n, s), fam.limit(s), e);
                const bool above = upper && drops(-fam(n, s), -fam.limit(s), e);
                if (below || above) m += w;
            }
            eps_worst = std::max(eps_worst, m);
        }
        v.set("tail_max_measure@" + format_number(e), eps_worst);
        worst = std::max(worst, eps_worst);
    }
    v.set("tail_max_measure", worst);
    v.status = worst <= tol ? Status::pass : Status::fail;
    return v;
}

Verdict llim_equality_check(const FunctionFamily& fam, const RadiusSchedule& radii,
                            const std::vector<double>& eps_schedule, double tol) {
    require_eps(eps_schedule);
    Verdict v;
    v.check_id = "llim_equality";
    v.horizon = fam.horizon();
    v.tolerance = tol;
    v.assumptions.push_back("per-n lower semicontinuity checked on local balls for n below the tail");
    const double eps_min = *std::min_element(eps_schedule.begin(), eps_schedule.end());
    if (!(2 * tol < eps_min)) throw InputError("tolerance must be below half the smallest eps");
    const auto balls = local_balls(*fam.space(), radii);
    const int N = fam.horizon();
    const int t = tail_start(N);
    std::size_t count_a = 0, count_b = 0, count_c = 0, broken_i = 0, broken_ii = 0;
    for (PointId s = 0; s < fam.size(); ++s) {
        const bool a = lsec_at(fam, s, balls[s], eps_schedule, 1, N);
        ExtReal dll = ExtReal::pos_inf();
        for (int k = t; k <= N; ++k) dll = min(dll, ball_min(fam, k, balls[s]));
        const ExtReal pll = pointwise_lower_limit(fam, s);
        const bool b = close(dll, pll, tol);
        const bool c = close(pll, pointwise_upper_limit(fam, s), tol);
        const bool head_lsc = lsec_at(fam, s, balls[s], eps_schedule, 1, t - 1);
        count_a += a;
        count_b += b;
        count_c += c;
        // lsec down to eps_min only pins the double limit within eps_min.
        const bool i_ok = !a || close(dll, pll, eps_min);
        const bool ii_ok = !(b && c && head_lsc) || a;
        if (!i_ok) ++broken_i;
        if (!ii_ok) ++broken_ii;
        if ((!i_ok || !ii_ok) && v.notes.size() < kMaxNotes)
            v.notes.push_back("implication broken at " + describe_point(*fam.space(), s));
    }
    v.set("points_lsec", static_cast<double>(count_a));
    v.set("points_equal_limits", static_cast<double>(count_b));
    v.set("points_converging", static_cast<double>(count_c));
    v.set("broken_necessity", static_cast<double>(broken_i));
    v.set("broken_sufficiency", static_cast<double>(broken_ii));
    v.status = broken_i + broken_ii == 0 ? Status::pass : Status::bug;
    return v;
}

Verdict monotone_double_limit_check(const FunctionFamily& fam, const RadiusSchedule& radii,
                                    double tol) {
    Verdict v;
    v.check_id = "monotone_double_limit";
    v.horizon = fam.horizon();
    v.tolerance = tol;
    const int N = fam.horizon();
    const int t = tail_start(N);
    const auto balls = local_balls(*fam.space(), radii);
    v.hypothesis("nondecreasing", fam.pointwise_nondecreasing());
    // Lower semicontinuity of each f_n on the local ball, up to tol.
    bool lsc = true;
    bool converged = true;
    for (PointId s = 0; s < fam.size() && (lsc || converged); ++s) {
        for (int n = 1; n <= N && lsc; ++n)
            if (!balls[s].isolated && drops(ball_min(fam, n, balls[s]), fam(n, s), tol)) lsc = false;
        if (!close(fam(t, s), fam(N, s), tol)) converged = false;
    }
    v.hypothesis("lower_semicontinuous_terms", lsc);
    v.hypothesis("tail_converged", converged);
    double gap = 0;
    bool holds = true;
    for (PointId s = 0; s < fam.size(); ++s) {
        const ExtReal dll = double_lower_limit(fam, s, radii);
        const ExtReal lim = fam(N, s);
        if (!close(dll, lim, 2 * tol)) {
            holds = false;
            if (v.notes.size() < kMaxNotes)
                v.notes.push_back("mismatch at " + describe_point(*fam.space(), s));
        }
        if (dll.is_finite() && lim.is_finite()) gap = std::max(gap, (dll - lim).abs().value());
    }
    v.set("max_gap", gap);
    v.settle(holds);
    return v;
}

}  // namespace vmlab
