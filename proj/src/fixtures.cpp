#include "vmlab/fixtures.hpp"

#include "vmlab/convergence.hpp"
#include "vmlab/semicontinuity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vmlab {

namespace {

constexpr double kExact = 1e-9;

SpacePtr make_space(const std::string& id, std::vector<double> coords, MetricKind kind) {
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    return std::make_shared<const MetricPointSet>(id, std::move(coords), kind);
}

PointId locate(const MetricPointSet& space, double x, int tag = 0) {
    const PointId p = space.nearest_to(x, tag);
    if (space.coord(p) != x || space.tag(p) != tag)
        throw std::logic_error("fixture point " + format_number(x) + " missing from its grid");
    return p;
}

bool power_of_two(int r) { return r > 0 && std::has_single_bit(static_cast<unsigned>(r)); }

void require_resolution(int r, int minimum) {
    if (!power_of_two(r) || r < minimum)
        throw InputError("grid resolution must be a power of 2 of at least " + std::to_string(minimum));
}

void require_horizon(int n) {
    if (n < kMinHorizon) throw InputError("horizon must be at least " + std::to_string(kMinHorizon));
}

int floor_log2(int n) { return std::bit_width(static_cast<unsigned>(n)) - 1; }

Expectation num(const std::string& key, double v, double tol = kExact) { return {key, ExtReal(v), tol}; }
Expectation stat(const std::string& key, Status s) { return {key, s, 0}; }

Status as_status(bool ok) { return ok ? Status::pass : Status::fail; }

std::vector<ExtReal> term_integrals(const FunctionFamily& fam, const MeasureSequence& seq) {
    std::vector<ExtReal> out;
    for (int n = 1; n <= fam.horizon(); ++n) out.push_back(integrate(fam.term(n), seq[n]).value());
    return out;
}

// Integrals of the form L - 2^-floor(log2 n): returns (L, largest deviation from that form).
std::pair<double, double> dyadic_closed_form(const std::vector<ExtReal>& I) {
    const double L = I.front().value() + 1;
    double err = 0;
    for (std::size_t i = 0; i < I.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        err = std::max(err, std::fabs(I[i].value() - (L - std::ldexp(1.0, -floor_log2(n)))));
    }
    return {L, err};
}

double integral_of(const PointFunction& f, const AtomicMeasure& mu) { return integrate(f, mu).value().value(); }

std::vector<TestFunction> polynomial_cosine_tests(const SpacePtr& space, bool cosine_on_unit_only) {
    const MetricPointSet* sp = space.get();
    return {
        {"one", [](PointId) { return ExtReal(1.0); }},
        {"s", [sp](PointId p) { return ExtReal(sp->coord(p)); }},
        {"s2", [sp](PointId p) { return ExtReal(sp->coord(p) * sp->coord(p)); }},
        {"cos", [sp, cosine_on_unit_only](PointId p) {
             const double s = sp->coord(p);
             if (cosine_on_unit_only && s >= 1) return ExtReal(0.0);
             return ExtReal(std::cos(std::numbers::pi * s));
         }},
    };
}

}  // namespace

bool FixtureReport::matched() const {
    return std::all_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return c.matched; });
}

namespace {

bool values_match(const ExpectedValue& want, const ExpectedValue& got, double tol) {
    if (want.index() != got.index()) return false;
    if (const auto* s = std::get_if<Status>(&want)) return *s == std::get<Status>(got);
    const ExtReal a = std::get<ExtReal>(want), b = std::get<ExtReal>(got);
    if (a.is_finite() && b.is_finite()) return std::fabs(a.value() - b.value()) <= tol;
    return a == b;
}

nlohmann::ordered_json value_json(const ExpectedValue& v) {
    if (const auto* s = std::get_if<Status>(&v)) return to_string(*s);
    return format_number(std::get<ExtReal>(v));
}

}  // namespace

FixtureReport verify_fixture(const Fixture& fixture) {
    FixtureRun run = fixture.run(fixture);
    FixtureReport r;
    r.name = fixture.name;
    r.verdicts = std::move(run.verdicts);
    for (const auto& e : fixture.expected) {
        Comparison c{e.key, e.value, std::nullopt, e.tol, false};
        for (const auto& o : run.observed)
            if (o.key == e.key) c.observed = o.value;
        c.matched = c.observed && values_match(e.value, *c.observed, e.tol);
        r.comparisons.push_back(std::move(c));
    }
    return r;
}

nlohmann::ordered_json to_json(const FixtureReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["fixture"] = report.name;
    doc["matched"] = report.matched();
    auto& cs = doc["comparisons"] = nlohmann::ordered_json::array();
    for (const auto& c : report.comparisons) {
        nlohmann::ordered_json j;
        j["key"] = c.key;
        j["expected"] = value_json(c.expected);
        j["observed"] = c.observed ? value_json(*c.observed) : nlohmann::ordered_json(nullptr);
        j["tol"] = format_number(c.tol);
        j["matched"] = c.matched;
        cs.push_back(std::move(j));
    }
    auto& vs = doc["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : report.verdicts) vs.push_back(to_json(v));
    return doc;
}

namespace {

nlohmann::ordered_json family_json(const FunctionFamily& fam) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int n = 1; n <= fam.horizon(); ++n) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (PointId p = 0; p < fam.size(); ++p) row.push_back(format_number(fam(n, p)));
        rows.push_back(std::move(row));
    }
    nlohmann::ordered_json doc;
    doc["terms"] = std::move(rows);
    if (fam.has_limit()) {
        nlohmann::ordered_json lim = nlohmann::ordered_json::array();
        for (PointId p = 0; p < fam.size(); ++p) lim.push_back(format_number(fam.limit(p)));
        doc["limit"] = std::move(lim);
    }
    return doc;
}

}  // namespace

nlohmann::ordered_json fixture_to_json(const Fixture& fixture) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["name"] = fixture.name;
    doc["grid_resolution"] = fixture.grid_resolution;
    doc["horizon"] = fixture.horizon;
    auto& ex = doc["expected"] = nlohmann::ordered_json::array();
    for (const auto& e : fixture.expected)
        ex.push_back({{"key", e.key}, {"value", value_json(e.value)}, {"tol", format_number(e.tol)}});
    if (fixture.family) {
        doc["space"] = to_json(*fixture.family->space());
        doc["family"] = family_json(*fixture.family);
    }
    if (fixture.instance) {
        const auto& inst = *fixture.instance;
        doc["space"] = to_json(*inst.fam.space());
        doc["family"] = family_json(inst.fam);
        auto& ms = doc["measures"] = nlohmann::ordered_json::array();
        for (int n = 1; n <= inst.seq.horizon(); ++n) ms.push_back(to_json(inst.seq[n]));
        doc["limit_measure"] = to_json(inst.seq.limit());
    }
    if (fixture.model) doc["model"] = to_json(*fixture.model);
    return doc;
}

Fixture example_3_1(int resolution, int horizon) {
    require_resolution(resolution, 64);
    require_horizon(horizon);
    std::vector<double> coords;
    for (int j = -resolution; j <= resolution; ++j) coords.push_back(static_cast<double>(j) / resolution);
    for (int n = 1; n <= horizon; ++n) {
        coords.push_back(1.0 / n);
        coords.push_back(-1.0 / n);
    }
    auto space = make_space("example-3-1", coords, MetricKind::euclidean);
    const MetricPointSet* sp = space.get();
    Fixture fx;
    fx.name = "example-3-1";
    fx.grid_resolution = resolution;
    fx.horizon = horizon;
    fx.family = FunctionFamily(space, horizon, [sp](int n, PointId p) {
        if (n % 2 == 1) return ExtReal(0.0);
        return ExtReal(std::max(1.0 - n * std::fabs(sp->coord(p)), 0.0));
    });
    fx.expected = {num("double_lower_limit_at_0", 0),   num("pointwise_upper_limit_at_0", 1),
                   num("pointwise_lower_limit_at_0", 0), stat("lsec_at_0", Status::fail),
                   num("grid_asymmetry", 0),             num("even_index_witness_max", 0)};
    fx.run = [](const Fixture& f) {
        const FunctionFamily& fam = *f.family;
        const MetricPointSet& s = *fam.space();
        const auto radii = RadiusSchedule::dyadic();
        const PointId zero = locate(s, 0.0);
        FixtureRun r;
        Verdict lsec = lsec_check(fam, default_eps_schedule(), radii);
        const bool lsec0 = lsec_points(fam, default_eps_schedule(), radii)[zero];
        double asym = 0;
        for (PointId p = 0; p < s.size(); ++p)
            asym = std::max(asym, std::fabs(s.coord(p) + s.coord(s.size() - 1 - p)));
        double witness = 0;
        for (int n = 2; n <= fam.horizon(); n += 2)
            witness = std::max(witness, fam(n, s.nearest_to(1.0 / n)).value());
        r.observed = {{"double_lower_limit_at_0", double_lower_limit(fam, zero, radii)},
                      {"pointwise_upper_limit_at_0", pointwise_upper_limit(fam, zero)},
                      {"pointwise_lower_limit_at_0", pointwise_lower_limit(fam, zero)},
                      {"lsec_at_0", as_status(lsec0)},
                      {"grid_asymmetry", ExtReal(asym)},
                      {"even_index_witness_max", ExtReal(witness)}};
        r.verdicts.push_back(std::move(lsec));
        return r;
    };
    return fx;
}

namespace {

// Companion offset placing a second point just left of every grid point, so
// each local ball is a tiny one-sided neighbourhood.
constexpr double kCompanionOffset = 0x1p-21;

}  // namespace

Fixture example_3_2(int resolution, int horizon) {
    require_resolution(resolution, 64);
    require_horizon(horizon);
    std::vector<double> base;
    for (int k = 0; k <= resolution; ++k) base.push_back(static_cast<double>(k) / resolution);
    for (int n = 1; n <= horizon; ++n) base.push_back(1.0 / (static_cast<double>(n) * (n + 1)));
    std::vector<double> coords = base;
    for (double b : base)
        if (b > 0) coords.push_back(b - kCompanionOffset);
    auto space = make_space("example-3-2", coords, MetricKind::euclidean);
    const MetricPointSet* sp = space.get();
    const auto term = [sp](int n, PointId p) { return ExtReal(std::min(n * sp->coord(p), 1.0)); };
    Fixture fx;
    fx.name = "example-3-2";
    fx.grid_resolution = resolution;
    fx.horizon = horizon;
    fx.family = FunctionFamily(space, horizon, term,
                               PointFunction([sp](PointId p) { return ExtReal(sp->coord(p) != 0 ? 1.0 : 0.0); }));
    fx.expected = {stat("lsec", Status::pass),
                   stat("uniform_semi_convergence_below", Status::fail),
                   num("witness_value", 1.0 / (horizon + 1)),
                   stat("witness_below_half", Status::pass),
                   stat("pointwise_convergence", Status::pass),
                   num("max_value_at_0", 0)};
    fx.run = [](const Fixture& f) {
        const FunctionFamily& fam = *f.family;
        const MetricPointSet& s = *fam.space();
        const int N = fam.horizon();
        FixtureRun r;
        Verdict lsec = lsec_check(fam, default_eps_schedule(), RadiusSchedule::dyadic());
        Verdict below = uniform_semi_convergence_below_check(fam, default_eps_schedule());
        const PointId w = locate(s, 1.0 / (static_cast<double>(N) * (N + 1)));
        const ExtReal wv = fam(N, w);
        // f_n(s) = f(s) for every n >= ceil(1/s); checked over [ceil(1/s), 2 ceil(1/s)].
        const auto term_at = [](long n, double x) { return ExtReal(std::min(static_cast<double>(n) * x, 1.0)); };
        bool converges = true;
        for (PointId p = 0; p < s.size(); ++p) {
            const double x = s.coord(p);
            if (x == 0) continue;
            const long n0 = static_cast<long>(std::ceil(1.0 / x));
            for (long n = n0; n <= 2 * n0; ++n)
                converges = converges && std::fabs((fam.limit(p) - term_at(n, x)).value()) <= kExact;
        }
        double at0 = 0;
        for (int n = 1; n <= N; ++n) at0 = std::max(at0, fam(n, locate(s, 0.0)).value());
        r.observed = {{"lsec", lsec.status},
                      {"uniform_semi_convergence_below", below.status},
                      {"witness_value", wv},
                      {"witness_below_half", as_status(wv <= fam.limit(w) - ExtReal(0.5))},
                      {"pointwise_convergence", as_status(converges)},
                      {"max_value_at_0", ExtReal(at0)}};
        r.verdicts.push_back(std::move(lsec));
        r.verdicts.push_back(std::move(below));
        return r;
    };
    return fx;
}

Fixture example_4_1(int resolution, int horizon) {
    require_resolution(resolution, 64);
    require_horizon(horizon);
    if (resolution < horizon) throw InputError("grid resolution must be at least the horizon");
    const int R = resolution, N = horizon;
    std::vector<double> coords;
    for (int n = 1; n <= N; ++n)
        for (int k = 0; k < n; ++k) coords.push_back(static_cast<double>(k) / n);
    for (int k = 0; k < R; ++k) coords.push_back((2.0 * k + 1) / (2.0 * R));
    for (int j = 1; j <= R; ++j) coords.push_back(1.0 + static_cast<double>(j) / R);
    auto space = make_space("example-4-1", coords, MetricKind::split_unit);
    const MetricPointSet& s = *space;

    std::vector<double> lebesgue(s.size(), 0.0);
    for (int k = 0; k < R; ++k) lebesgue[locate(s, (2.0 * k + 1) / (2.0 * R))] = 1.0 / R;
    for (int j = 1; j <= R; ++j) lebesgue[locate(s, 1.0 + static_cast<double>(j) / R)] = 1.0 / R;
    const AtomicMeasure mu(space, lebesgue);
    MeasureSequence seq(
        space, N,
        [&](int n) {
            std::vector<double> w(s.size(), 0.0);
            for (PointId p = 0; p < s.size(); ++p)
                if (s.coord(p) > 1) w[p] = lebesgue[p];
            for (int k = 0; k < n; ++k) w[locate(s, static_cast<double>(k) / n)] += 1.0 / n;
            return AtomicMeasure(space, std::move(w));
        },
        mu);
    // f_n = 0 on the window (1 + j/2^k, 1 + (j+1)/2^k], k = floor(log2 n), j = n - 2^k.
    const MetricPointSet* sp = space.get();
    FunctionFamily fam(
        space, N,
        [sp, R](int n, PointId p) {
            const double x = sp->coord(p);
            if (x <= 1) return ExtReal(1.0);
            const long i = std::lround((x - 1) * R);
            const int k = floor_log2(n);
            const long j = n - (1L << k), cell = R >> k;
            return ExtReal(j * cell < i && i <= (j + 1) * cell ? 0.0 : 1.0);
        },
        PointFunction([](PointId) { return ExtReal(1.0); }));

    EngineOptions opts;
    opts.measure_tol = 1.0 / 32;
    opts.function_tol = 1.0 / 16;
    opts.weak_tests = polynomial_cosine_tests(space, true);
    Fixture fx;
    fx.name = "example-4-1";
    fx.grid_resolution = R;
    fx.horizon = N;
    fx.instance = TheoremInstance{std::move(fam), std::move(seq), std::nullopt, RadiusSchedule::dyadic(), opts};
    fx.expected = {num("liminf_integral", 2),
                   num("closed_form_error", 0),
                   num("limit_integral", 2),
                   num("double_lower_integral", 1),
                   stat("weak_convergence", Status::pass),
                   stat("setwise_convergence", Status::fail),
                   num("rational_support_gap", 1),
                   stat("lsec", Status::pass),
                   stat("lower_semi_convergence_in_measure", Status::pass),
                   num("final_measure_of_drop", std::ldexp(1.0, -floor_log2(N))),
                   num("total_mass", 2),
                   num("rho(0.2,0.3)", 0.1),
                   num("rho(0.5,1.5)", 1),
                   stat("fatou_classic_weak", Status::pass),
                   stat("fatou_weak_double", Status::pass)};
    fx.run = [](const Fixture& f) {
        const TheoremInstance& inst = *f.instance;
        const FunctionFamily& fam = inst.fam;
        const MetricPointSet& s = *fam.space();
        const int N = fam.horizon();
        FixtureRun r;
        const auto I = term_integrals(fam, inst.seq);
        const auto [L, err] = dyadic_closed_form(I);
        double dll = 0;
        const AtomicMeasure& mu = inst.seq.limit();
        for (PointId p = 0; p < s.size(); ++p)
            if (mu.weight(p) > 0) dll += double_lower_limit(fam, p, inst.radii).value() * mu.weight(p);
        Verdict weak = weak_convergence_check(inst.seq, *inst.opts.weak_tests, inst.opts.measure_tol);
        std::vector<PointId> rational;
        for (PointId p = 0; p < s.size(); ++p)
            if (s.coord(p) < 1 && inst.seq[N].weight(p) > 0) rational.push_back(p);
        auto sets = default_setwise_sets(s, inst.opts.seed);
        sets.push_back(rational);
        Verdict setwise = setwise_convergence_check(inst.seq, sets, inst.opts.measure_tol);
        Verdict lsec = lsec_check(fam, inst.opts.eps_schedule, inst.radii);
        Verdict below = semi_convergence_in_measure_check(fam, mu, inst.opts.eps_schedule, SemiDirection::lower,
                                                          inst.opts.function_tol);
        double drop = 0;
        for (PointId p = 0; p < s.size(); ++p)
            if (fam(N, p) < fam.limit(p)) drop += mu.weight(p);
        Verdict classic = fatou_classic_weak(inst);
        Verdict twofold = fatou_weak_double(inst);
        r.observed = {
            {"liminf_integral", ExtReal(L)},
            {"closed_form_error", ExtReal(err)},
            {"limit_integral", ExtReal(integral_of(fam.limit_function(), mu))},
            {"double_lower_integral", ExtReal(dll)},
            {"weak_convergence", weak.status},
            {"setwise_convergence", setwise.status},
            {"rational_support_gap", ExtReal(std::fabs(inst.seq[N].mass_of(rational) - mu.mass_of(rational)))},
            {"lsec", lsec.status},
            {"lower_semi_convergence_in_measure", below.status},
            {"final_measure_of_drop", ExtReal(drop)},
            {"total_mass", ExtReal(total_mass(inst.seq[N]))},
            {"rho(0.2,0.3)", ExtReal(s.distance(locate(s, 0.2), locate(s, 0.3)))},
            {"rho(0.5,1.5)", ExtReal(s.distance(locate(s, 0.5), locate(s, 1.5)))},
            {"fatou_classic_weak", classic.status},
            {"fatou_weak_double", twofold.status}};
        r.verdicts = {weak, setwise, lsec, below, classic, twofold};
        return r;
    };
    return fx;
}

Fixture example_4_2(int resolution) {
    require_resolution(resolution, 1 << 10);
    const int R = resolution;
    const int levels = floor_log2(R);
    const int N = levels - 2;
    std::vector<double> coords;
    for (int k = 0; k < R; ++k) coords.push_back(static_cast<double>(k) / R);
    auto space = make_space("example-4-2", coords, MetricKind::euclidean);
    const AtomicMeasure mu(space, std::vector<double>(static_cast<std::size_t>(R), 1.0 / R));
    // Density 2 on the even cells [2k/2^n, (2k+1)/2^n).
    MeasureSequence seq(
        space, N,
        [&](int n) {
            std::vector<double> w(static_cast<std::size_t>(R));
            for (int k = 0; k < R; ++k) w[static_cast<std::size_t>(k)] = ((k >> (levels - n)) & 1) == 0 ? 2.0 / R : 0.0;
            return AtomicMeasure(space, std::move(w));
        },
        mu);
    // Half-open window [j/2^k, (j+1)/2^k), k = floor(log2 n), j = n - 2^k.
    FunctionFamily fam(
        space, N,
        [levels](int n, PointId p) {
            const int k = floor_log2(n);
            const long j = n - (1L << k);
            return ExtReal(static_cast<long>(p >> (levels - k)) == j ? 0.0 : 1.0);
        },
        PointFunction([](PointId) { return ExtReal(1.0); }));

    // Unions of dyadic cells of level at most N/2, which the tail charges exactly.
    std::vector<std::vector<PointId>> sets;
    std::mt19937_64 rng(0);
    std::bernoulli_distribution coin(0.5);
    for (int level = 1; level <= N / 2; ++level)
        for (int t = 0; t < 8; ++t) {
            std::vector<PointId> set;
            const int cells = 1 << level, width = R >> level;
            for (int c = 0; c < cells; ++c)
                if (coin(rng))
                    for (int i = 0; i < width; ++i) set.push_back(static_cast<PointId>(c * width + i));
            sets.push_back(std::move(set));
        }
    EngineOptions opts;
    opts.function_tol = 1.0 / 4;
    // Lipschitz tests see the last-quarter windows (width 2^-12) as a 2^-12 weak gap.
    opts.measure_tol = 1.0 / 1024;
    opts.setwise_sets = sets;
    Fixture fx;
    fx.name = "example-4-2";
    fx.grid_resolution = R;
    fx.horizon = N;
    fx.instance = TheoremInstance{std::move(fam), std::move(seq), std::nullopt, RadiusSchedule::dyadic(), opts};
    fx.expected = {num("liminf_integral", 1),
                   num("closed_form_error", 0),
                   num("limit_integral", 1),
                   num("pointwise_lower_integral", 0),
                   stat("setwise_convergence", Status::pass),
                   stat("tv_convergence", Status::fail),
                   num("tv_distance", 1),
                   num("max_total_mass_error", 0),
                   num("window_width_error", 0),
                   stat("fatou_setwise", Status::pass)};
    fx.run = [](const Fixture& f) {
        const TheoremInstance& inst = *f.instance;
        const FunctionFamily& fam = inst.fam;
        const int N = fam.horizon();
        const AtomicMeasure& mu = inst.seq.limit();
        FixtureRun r;
        const auto I = term_integrals(fam, inst.seq);
        const auto [L, err] = dyadic_closed_form(I);
        double pll = 0, mass_err = 0, width_err = 0;
        for (PointId p = 0; p < fam.size(); ++p) pll += pointwise_lower_limit(fam, p).value() * mu.weight(p);
        for (int n = 1; n <= N; ++n) {
            mass_err = std::max(mass_err, std::fabs(total_mass(inst.seq[n]) - 1));
            double zero_mass = 0;
            for (PointId p = 0; p < fam.size(); ++p)
                if (fam(n, p) == ExtReal(0.0)) zero_mass += mu.weight(p);
            width_err = std::max(width_err, std::fabs(zero_mass - std::ldexp(1.0, -floor_log2(n))));
        }
        Verdict setwise = setwise_convergence_check(inst.seq, *inst.opts.setwise_sets, inst.opts.measure_tol);
        Verdict tv = tv_convergence_check(inst.seq, inst.opts.measure_tol);
        Verdict engine = fatou_setwise(inst);
        r.observed = {{"liminf_integral", ExtReal(L)},
                      {"closed_form_error", ExtReal(err)},
                      {"limit_integral", ExtReal(integral_of(fam.limit_function(), mu))},
                      {"pointwise_lower_integral", ExtReal(pll)},
                      {"setwise_convergence", setwise.status},
                      {"tv_convergence", tv.status},
                      {"tv_distance", *tv.quantity("final_distance")},
                      {"max_total_mass_error", ExtReal(mass_err)},
                      {"window_width_error", ExtReal(width_err)},
                      {"fatou_setwise", engine.status}};
        r.verdicts = {setwise, tv, engine};
        return r;
    };
    return fx;
}

double example_5_riemann_sum(int resolution) {
    return static_cast<double>(resolution - 1) / (2.0 * resolution);
}

namespace {

// mu_n: mass 1/R at k/(nR), k < R, which renders n I{s in [0, 1/n]} dnu; mu = delta_0.
Fixture monotone_counterexample(const std::string& name, int resolution, int horizon, bool one_at_zero) {
    require_resolution(resolution, 64);
    require_horizon(horizon);
    const int R = resolution, N = horizon;
    std::vector<double> coords;
    for (int j = 0; j <= R; ++j) coords.push_back(static_cast<double>(j) / R);
    for (int n = 1; n <= N; ++n)
        for (int k = 0; k < R; ++k) coords.push_back(k / (static_cast<double>(n) * R));
    auto space = make_space(name, coords, MetricKind::euclidean);
    const MetricPointSet& s = *space;
    MeasureSequence seq(
        space, N,
        [&](int n) {
            std::vector<double> w(s.size(), 0.0);
            for (int k = 0; k < R; ++k) w[locate(s, k / (static_cast<double>(n) * R))] += 1.0 / R;
            return AtomicMeasure(space, std::move(w));
        },
        AtomicMeasure::dirac(space, locate(s, 0.0)));
    const MetricPointSet* sp = space.get();
    FunctionFamily fam(
        space, N,
        [sp, one_at_zero](int n, PointId p) {
            const double x = sp->coord(p);
            if (one_at_zero && x == 0) return ExtReal(1.0);
            return ExtReal(std::min(n * x, 1.0));
        },
        PointFunction([sp, one_at_zero](PointId p) {
            return ExtReal(one_at_zero || sp->coord(p) > 0 ? 1.0 : 0.0);
        }));
    EngineOptions opts;
    opts.measure_tol = 1.0 / 32;
    opts.function_tol = 1e-3;
    opts.terms_lower_semicontinuous = !one_at_zero;
    opts.weak_tests = polynomial_cosine_tests(space, false);
    Fixture fx;
    fx.name = name;
    fx.grid_resolution = R;
    fx.horizon = N;
    fx.instance = TheoremInstance{std::move(fam), std::move(seq), std::nullopt, RadiusSchedule::dyadic(), opts};
    return fx;
}

struct MonotoneObservations {
    FixtureRun run;
    Verdict engine;
};

MonotoneObservations observe_monotone(const Fixture& f) {
    const TheoremInstance& inst = *f.instance;
    const FunctionFamily& fam = inst.fam;
    const AtomicMeasure& mu = inst.seq.limit();
    MonotoneObservations o;
    const auto I = term_integrals(fam, inst.seq);
    double dev = 0;
    for (const auto& x : I) dev = std::max(dev, std::fabs(x.value() - 0.5));
    Verdict weak = weak_convergence_check(inst.seq, *inst.opts.weak_tests, inst.opts.measure_tol);
    o.engine = monotone_weak(inst);
    o.run.observed = {{"final_integral", I.back()},
                      {"max_integral_deviation", ExtReal(dev)},
                      {"riemann_error", ExtReal(0.5 - I.back().value())},
                      {"limit_integral", ExtReal(integral_of(fam.limit_function(), mu))},
                      {"nondecreasing", as_status(fam.pointwise_nondecreasing())},
                      {"weak_convergence", weak.status},
                      {"monotone_weak", o.engine.status}};
    o.run.verdicts = {weak, o.engine};
    return o;
}

Status child_hypothesis(const Verdict& v, const std::string& child, const std::string& name) {
    const Verdict* c = v.child(child);
    if (!c) return Status::bug;
    const auto h = c->hypothesis_value(name);
    if (!h) return Status::bug;
    return as_status(*h);
}

}  // namespace

Fixture example_5_1(int resolution, int horizon) {
    Fixture fx = monotone_counterexample("example-5-1", resolution, horizon, false);
    const double slack = 2.0 / resolution;
    fx.expected = {num("final_integral", 0.5, slack),
                   num("max_integral_deviation", 0, slack),
                   num("riemann_error", 0.5 / resolution),
                   num("limit_integral", 0),
                   stat("nondecreasing", Status::pass),
                   stat("weak_convergence", Status::pass),
                   stat("monotone_weak", Status::inapplicable),
                   stat("upper_semicontinuous_limit", Status::fail)};
    fx.run = [](const Fixture& f) {
        auto o = observe_monotone(f);
        o.run.observed.push_back(
            {"upper_semicontinuous_limit",
             child_hypothesis(o.engine, "semicontinuous_limit", "upper_semicontinuous_limit")});
        return o.run;
    };
    return fx;
}

Fixture example_5_2(int resolution, int horizon) {
    Fixture fx = monotone_counterexample("example-5-2", resolution, horizon, true);
    const double slack = 2.0 / resolution;
    fx.expected = {num("final_integral", 0.5, slack),
                   num("max_integral_deviation", 0, slack),
                   num("riemann_error", -0.5 / resolution),
                   num("limit_integral", 1),
                   stat("nondecreasing", Status::pass),
                   stat("weak_convergence", Status::pass),
                   stat("monotone_weak", Status::inapplicable),
                   stat("upper_semicontinuous_limit", Status::pass),
                   stat("envelope_lower_semi_convergence", Status::fail)};
    fx.run = [](const Fixture& f) {
        auto o = observe_monotone(f);
        o.run.observed.push_back({"upper_semicontinuous_limit",
                                  child_hypothesis(o.engine, "lower_envelope", "upper_semicontinuous_limit")});
        o.run.observed.push_back(
            {"envelope_lower_semi_convergence",
             child_hypothesis(o.engine, "lower_envelope", "envelope_lower_semi_convergence")});
        return o.run;
    };
    return fx;
}

namespace {

MdpModel absorbed_at_zero(SpacePtr states, const std::function<double(PointId)>& cost) {
    const std::size_t n = states->size();
    std::vector<std::vector<ExtReal>> c;
    std::vector<std::vector<std::vector<double>>> q;
    for (PointId x = 0; x < n; ++x) {
        c.push_back({ExtReal(cost(x))});
        std::vector<double> row(n, 0.0);
        row[0] = 1.0;
        q.push_back({row});
    }
    return MdpModel(std::move(states), {"a1"}, std::move(c), std::move(q));
}

struct MdpObservations {
    FixtureRun run;
    DiscountSweep sweep;
    std::vector<double> u;
};

MdpObservations observe_mdp(const Fixture& f, const std::function<double(PointId)>& target) {
    const MdpModel& model = *f.model;
    const auto radii = RadiusSchedule::dyadic();
    MdpObservations o;
    o.sweep = vanishing_discount_sweep(model, default_alphas(), 1e-12);
    double u_err = 0;
    for (const auto& rel : o.sweep.relative)
        for (PointId x = 0; x < model.num_states(); ++x) u_err = std::max(u_err, std::fabs(rel.u[x] - target(x)));
    o.u = limit_relative_value(o.sweep, model, LimitMode::pointwise, radii, kExact).u;
    const OracleSolution oracle = average_cost_oracle(model);
    Verdict lec = assumption_LEC_check(o.sweep, model, radii, default_eps_schedule(), kExact);
    Verdict b = assumption_B_check(o.sweep, oracle.w_star);
    o.run.observed = {{"u_alpha_error", ExtReal(u_err)},
                      {"w_lower", ExtReal(o.sweep.w_lower)},
                      {"w_upper", ExtReal(o.sweep.w_upper)},
                      {"w_star", ExtReal(oracle.w_star)},
                      {"acoe_max_gap", ExtReal(acoe_residual(model, o.u, o.sweep.w_upper).max_gap())},
                      {"assumption_B", b.status},
                      {"assumption_LEC", lec.status},
                      {"assumption_LEC_i", lec.children[0].status},
                      {"assumption_LEC_ii", lec.children[1].status},
                      {"assumption_LEC_iii", lec.children[2].status}};
    o.run.verdicts = {lec, b};
    return o;
}

}  // namespace

Fixture example_6_1(int resolution) {
    require_resolution(resolution, 64);
    std::vector<double> coords{0.0};
    for (int k = 2; k <= resolution; ++k) coords.push_back(static_cast<double>(k) / resolution);
    auto space = make_space("example-6-1", coords, MetricKind::euclidean);
    const MetricPointSet* sp = space.get();
    Fixture fx;
    fx.name = "example-6-1";
    fx.grid_resolution = resolution;
    fx.horizon = static_cast<int>(default_alphas().size());
    fx.model = absorbed_at_zero(space, [sp](PointId x) { return sp->coord(x) != 0 ? 1.0 : 0.0; });
    fx.expected = {num("u_alpha_error", 0),  num("w_lower", 0),           num("w_upper", 0),
                   num("w_star", 0),         num("acoe_max_gap", 0),      stat("assumption_B", Status::pass),
                   stat("assumption_LEC", Status::pass), stat("equicontinuity", Status::fail)};
    fx.run = [](const Fixture& f) {
        const MetricPointSet& s = *f.model->states();
        auto o = observe_mdp(f, [&s](PointId x) { return s.coord(x) != 0 ? 1.0 : 0.0; });
        const FunctionFamily fam = o.sweep.relative_family(f.model->states());
        Verdict lsec = lsec_check(fam, default_eps_schedule(), RadiusSchedule::dyadic());
        Verdict usec = usec_check(fam, default_eps_schedule(), RadiusSchedule::dyadic());
        o.run.observed.push_back(
            {"equicontinuity", as_status(lsec.status == Status::pass && usec.status == Status::pass)});
        o.run.verdicts.push_back(std::move(usec));
        return o.run;
    };
    return fx;
}

Fixture example_6_2(int resolution) {
    require_resolution(resolution, 64);
    // Tag 0 marks rational points, tag 1 irrational ones; 0 is rational.
    std::vector<double> coords;
    std::vector<int> tags;
    for (int k = 0; k <= resolution; ++k) {
        coords.push_back(static_cast<double>(k) / resolution);
        tags.push_back(0);
        if (k == 0) continue;
        coords.push_back(static_cast<double>(k) / resolution);
        tags.push_back(1);
    }
    auto space = std::make_shared<const MetricPointSet>("example-6-2", coords, MetricKind::tagged, tags,
                                                        1.0 / resolution);
    const MetricPointSet* sp = space.get();
    Fixture fx;
    fx.name = "example-6-2";
    fx.grid_resolution = resolution;
    fx.horizon = static_cast<int>(default_alphas().size());
    fx.model = absorbed_at_zero(space, [sp](PointId x) { return static_cast<double>(sp->tag(x)); });
    fx.expected = {num("u_alpha_error", 0),
                   num("w_star", 0),
                   num("acoe_max_gap", 0),
                   num("u_dirichlet_error", 0),
                   stat("assumption_B", Status::pass),
                   stat("assumption_LEC_i", Status::fail),
                   stat("assumption_LEC_ii", Status::pass),
                   stat("assumption_LEC_iii", Status::pass)};
    fx.run = [](const Fixture& f) {
        const MetricPointSet& s = *f.model->states();
        const auto dirichlet = [&s](PointId x) { return static_cast<double>(s.tag(x)); };
        auto o = observe_mdp(f, dirichlet);
        double err = 0;
        for (PointId x = 0; x < s.size(); ++x) err = std::max(err, std::fabs(o.u[x] - dirichlet(x)));
        o.run.observed.push_back({"u_dirichlet_error", ExtReal(err)});
        return o.run;
    };
    return fx;
}

std::vector<std::string> fixture_names() {
    return {"example-3-1", "example-3-2", "example-4-1", "example-4-2",
            "example-5-1", "example-5-2", "example-6-1", "example-6-2"};
}

Fixture make_fixture(const std::string& name) {
    static const std::map<std::string, std::function<Fixture()>> registry{
        {"example-3-1", [] { return example_3_1(); }}, {"example-3-2", [] { return example_3_2(); }},
        {"example-4-1", [] { return example_4_1(); }}, {"example-4-2", [] { return example_4_2(); }},
        {"example-5-1", [] { return example_5_1(); }}, {"example-5-2", [] { return example_5_2(); }},
        {"example-6-1", [] { return example_6_1(); }}, {"example-6-2", [] { return example_6_2(); }},
    };
    const auto it = registry.find(name);
    if (it == registry.end()) throw InputError("unknown fixture '" + name + "'");
    return it->second();
}

}  // namespace vmlab
