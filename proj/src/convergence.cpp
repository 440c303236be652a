#include "vmlab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vmlab {

namespace {

Verdict base_verdict(const std::string& id, const MeasureSequence& seq, double tol) {
    Verdict v;
    v.check_id = id;
    v.horizon = seq.horizon();
    v.tolerance = tol;
    return v;
}

double integral_gap(const PointFunction& f, const AtomicMeasure& a, const AtomicMeasure& b) {
    const ExtReal d = integrate(f, a).value() - integrate(f, b).value();
    return d.abs().value();
}

}  // namespace

std::vector<TestFunction> default_weak_tests(const MetricPointSet& space, std::uint64_t seed) {
    const auto& c = space.coords();
    const auto [lo_it, hi_it] = std::minmax_element(c.begin(), c.end());
    const double lo = *lo_it, hi = *hi_it;
    const double mid = 0.5 * (lo + hi);
    const double half = hi > lo ? 0.5 * (hi - lo) : 1.0;
    const MetricPointSet* sp = &space;
    std::vector<TestFunction> tests;
    for (int k = 0; k <= 3; ++k)
        tests.push_back({"poly" + std::to_string(k), [sp, mid, half, k](PointId p) {
                             return ExtReal(std::pow((sp->coord(p) - mid) / half, k));
                         }});
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(lo, hi > lo ? hi : lo + 1);
    std::uniform_real_distribution<double> width(0.05, 0.5);
    for (int i = 0; i < 8; ++i) {
        const double cc = centre(rng);
        const double w = width(rng) * 2 * half;
        tests.push_back({"bump" + std::to_string(i), [sp, cc, w](PointId p) {
                             return ExtReal(std::max(0.0, 1.0 - std::fabs(sp->coord(p) - cc) / w));
                         }});
    }
    return tests;
}

std::vector<std::vector<PointId>> default_setwise_sets(const MetricPointSet& space,
                                                       std::uint64_t seed) {
    std::vector<std::vector<PointId>> sets;
    for (PointId p = 0; p < space.size(); ++p) sets.push_back({p});
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < 64; ++i) {
        std::vector<PointId> s;
        for (PointId p = 0; p < space.size(); ++p)
            if (coin(rng)) s.push_back(p);
        sets.push_back(std::move(s));
    }
    return sets;
}

Verdict weak_convergence_check(const MeasureSequence& seq, const std::vector<TestFunction>& tests,
                               double tol) {
    if (tests.empty()) throw InputError("weak convergence needs at least one test function");
    Verdict v = base_verdict("weak_convergence", seq, tol);
    v.assumptions.push_back("test functions are bounded and continuous (caller-asserted)");
    v.assumptions.push_back("surrogate test family of " + std::to_string(tests.size()) + " functions");
    const int N = seq.horizon();
    bool ok = true;
    double worst = 0;
    for (const auto& t : tests) {
        double g = 0;
        for (int n = last_quarter_start(N); n <= N; ++n)
            g = std::max(g, integral_gap(t.f, seq[n], seq.limit()));
        v.set("gap:" + t.name, g);
        worst = std::max(worst, g);
        if (!(g <= tol)) {
            ok = false;
            v.notes.push_back("test " + t.name + " gap " + format_number(g));
        }
    }
    double mass = 0;
    for (int n = last_quarter_start(N); n <= N; ++n)
        mass = std::max(mass, std::fabs(total_mass(seq[n]) - total_mass(seq.limit())));
    v.set("max_gap", worst);
    v.set("mass_gap", mass);
    v.status = ok ? Status::pass : Status::fail;
    return v;
}

Verdict weak_convergence_check(const MeasureSequence& seq, double tol, std::uint64_t seed) {
    return weak_convergence_check(seq, default_weak_tests(*seq.space(), seed), tol);
}

double all_subsets_gap(const AtomicMeasure& mu, const AtomicMeasure& nu) {
    double pos = 0, neg = 0;
    const auto& a = mu.weights();
    const auto& b = nu.weights();
    if (a.size() != b.size()) throw InputError("measures on different spaces");
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d > 0) pos += d;
        else neg -= d;
    }
    return std::max(pos, neg);
}

Verdict setwise_convergence_check(const MeasureSequence& seq,
                                  const std::vector<std::vector<PointId>>& sets, double tol) {
    Verdict v = base_verdict("setwise_convergence", seq, tol);
    v.assumptions.push_back("surrogate family of " + std::to_string(sets.size()) + " sets");
    const std::size_t np = seq.space()->size();
    for (const auto& s : sets)
        for (PointId p : s)
            if (p >= np) throw InputError("set contains a point outside the space");
    const int N = seq.horizon();
    double worst = 0;
    std::size_t worst_set = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const double target = seq.limit().mass_of(sets[i]);
        for (int n = last_quarter_start(N); n <= N; ++n) {
            const double g = std::fabs(seq[n].mass_of(sets[i]) - target);
            if (g > worst) {
                worst = g;
                worst_set = i;
            }
        }
    }
    double exact = 0;
    for (int n = last_quarter_start(N); n <= N; ++n)
        exact = std::max(exact, all_subsets_gap(seq[n], seq.limit()));
    v.set("max_gap", worst);
    v.set("all_subsets_gap", exact);
    if (!(worst <= tol))
        v.notes.push_back("largest gap on set #" + std::to_string(worst_set) + " of size " +
                          std::to_string(sets[worst_set].size()));
    v.status = worst <= tol ? Status::pass : Status::fail;
    return v;
}

Verdict setwise_convergence_check(const MeasureSequence& seq, double tol, std::uint64_t seed) {
    return setwise_convergence_check(seq, default_setwise_sets(*seq.space(), seed), tol);
}

Verdict tv_convergence_check(const MeasureSequence& seq, double tol) {
    Verdict v = base_verdict("tv_convergence", seq, tol);
    const int N = seq.horizon();
    double worst = 0;
    for (int n = last_quarter_start(N); n <= N; ++n)
        worst = std::max(worst, total_variation_distance(seq[n], seq.limit()));
    v.set("max_distance", worst);
    v.set("final_distance", total_variation_distance(seq[N], seq.limit()));
    v.status = worst <= tol ? Status::pass : Status::fail;
    return v;
}

std::vector<double> default_k_schedule() {
    std::vector<double> k;
    for (int i = 0; i <= 20; ++i) k.push_back(std::ldexp(1.0, i));
    return k;
}

bool UiCurve::nonincreasing() const {
    for (std::size_t i = 1; i < tail_values.size(); ++i)
        if (tail_values[i - 1] < tail_values[i]) return false;
    return true;
}

Verdict UiCurve::verdict(double tol) const {
    Verdict v;
    v.check_id = mode == UiMode::ui ? "uniform_integrability" : "asymptotic_uniform_integrability";
    v.tolerance = tol;
    for (std::size_t i = 0; i < K_values.size(); ++i)
        v.set("K=" + format_number(K_values[i]), tail_values[i]);
    v.set("final", final_value());
    v.status = final_value() <= ExtReal(tol) ? Status::pass : Status::fail;
    return v;
}

namespace {

void check_k_schedule(const std::vector<double>& ks) {
    if (ks.empty()) throw InputError("K schedule is empty");
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!(ks[i] > 0)) throw InputError("K values must be positive");
        if (i > 0 && !(ks[i] > ks[i - 1])) throw InputError("K schedule must ascend");
    }
}

// table[n - 1][k] = int |f_n| I{|f_n| >= K_k} dmu_n.
std::vector<std::vector<ExtReal>> tail_integrals(const FunctionFamily& fam, const MeasureSequence& seq,
                                                 const std::vector<double>& ks) {
    check_k_schedule(ks);
    if (fam.horizon() != seq.horizon()) throw InputError("family and sequence horizons differ");
    if (fam.size() != seq.space()->size()) throw InputError("family and sequence spaces differ");
    std::vector<std::vector<ExtReal>> table;
    for (int n = 1; n <= fam.horizon(); ++n) {
        std::vector<ExtReal> row;
        const AtomicMeasure& mu = seq[n];
        for (double K : ks) {
            const ExtReal Kx(K);
            const IntegralValue iv = integrate(
                [&](PointId p) {
                    const ExtReal a = fam(n, p).abs();
                    return a >= Kx ? a : ExtReal(0.0);
                },
                mu);
            if (!iv.is_defined()) throw InputError("undefined tail integral");
            row.push_back(iv.value());
        }
        table.push_back(std::move(row));
    }
    return table;
}

UiCurve curve_from(const std::vector<std::vector<ExtReal>>& table, const std::vector<double>& ks,
                   int first_n, UiMode mode) {
    UiCurve c;
    c.K_values = ks;
    c.mode = mode;
    for (std::size_t k = 0; k < ks.size(); ++k) {
        ExtReal m(0.0);
        for (std::size_t n = static_cast<std::size_t>(first_n); n <= table.size(); ++n)
            m = max(m, table[n - 1][k]);
        c.tail_values.push_back(m);
    }
    return c;
}

}  // namespace

UiCurve aui_estimate(const FunctionFamily& fam, const MeasureSequence& seq,
                     const std::vector<double>& K_schedule) {
    return curve_from(tail_integrals(fam, seq, K_schedule), K_schedule, tail_start(fam.horizon()),
                      UiMode::aui);
}

UiCurve ui_estimate(const FunctionFamily& fam, const MeasureSequence& seq,
                    const std::vector<double>& K_schedule) {
    return curve_from(tail_integrals(fam, seq, K_schedule), K_schedule, 1, UiMode::ui);
}

Verdict ui_aui_equivalence_probe(const FunctionFamily& fam, const MeasureSequence& seq,
                                 const std::vector<double>& K_schedule, double tol) {
    const auto table = tail_integrals(fam, seq, K_schedule);
    const int N = fam.horizon();
    Verdict v;
    v.check_id = "ui_aui_equivalence";
    v.horizon = N;
    v.tolerance = tol;
    const bool aui = curve_from(table, K_schedule, tail_start(N), UiMode::aui).final_value() <= ExtReal(tol);
    int found = 0;
    for (int s = 1; s <= tail_start(N); ++s)
        if (curve_from(table, K_schedule, s, UiMode::ui).final_value() <= ExtReal(tol)) {
            found = s;
            break;
        }
    v.set("aui_pass", aui ? 1.0 : 0.0);
    v.set("shift", found > 0 ? ExtReal(found) : ExtReal::pos_inf());
    v.status = aui == (found > 0) ? Status::pass : Status::bug;
    return v;
}

}  // namespace vmlab
