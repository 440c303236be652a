#include "support.hpp"
#include "vmlab/limit_theorems.hpp"

#include <doctest.h>

using namespace vmlab;

namespace {

constexpr int N = 16;

MeasureSequence converging(const SpacePtr& s, const std::vector<double>& mu, const std::vector<double>& nu) {
    return MeasureSequence(
        s, N,
        [&](int n) {
            std::vector<double> w(mu.size());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = mu[i] + std::ldexp(nu[i], -4 * n);
            return AtomicMeasure(s, w);
        },
        AtomicMeasure(s, mu));
}

EngineOptions loose() {
    EngineOptions o;
    o.tol = o.measure_tol = o.function_tol = 1e-6;
    return o;
}

using Engine = Verdict (*)(const TheoremInstance&);

const std::vector<std::pair<const char*, Engine>>& engines() {
    static const std::vector<std::pair<const char*, Engine>> e{
        {"fatou_weak_double", fatou_weak_double}, {"fatou_classic_weak", fatou_classic_weak},
        {"fatou_setwise", fatou_setwise},         {"lebesgue_weak", lebesgue_weak},
        {"lebesgue_setwise", lebesgue_setwise},   {"monotone_weak", monotone_weak},
        {"monotone_setwise", monotone_setwise}};
    return e;
}

}  // namespace

TEST_CASE("a constant instance satisfies every theorem") {
    auto s = std::make_shared<const MetricPointSet>("c", std::vector<double>{0.0, 1.0, 2.0, 3.0},
                                                    MetricKind::discrete);
    const std::vector<double> vals{1.0, -0.5, 2.0, 0.25};
    const FunctionFamily fam(s, N, [&](int, PointId p) { return ExtReal(vals[p]); },
                             PointFunction([&](PointId p) { return ExtReal(vals[p]); }));
    const TheoremInstance inst{fam, MeasureSequence::constant(AtomicMeasure(s, {0.5, 0.25, 0.125, 0.125}), N),
                               std::nullopt, RadiusSchedule::dyadic(), EngineOptions{}};
    for (const auto& [name, run] : engines()) {
        CAPTURE(name);
        CHECK(run(inst).status == Status::pass);
    }
}

TEST_CASE("mismatched instances are input errors") {
    auto s = std::make_shared<const MetricPointSet>("c", std::vector<double>{0.0, 1.0}, MetricKind::discrete);
    const FunctionFamily fam(s, N, [](int, PointId) { return ExtReal(1.0); });
    const TheoremInstance inst{fam, MeasureSequence::constant(AtomicMeasure(s, {1, 1}), N - 1), std::nullopt,
                               RadiusSchedule::dyadic(), EngineOptions{}};
    CHECK_THROWS_AS(inst.validate(), InputError);
    CHECK_THROWS_AS(fatou_weak_double(inst), InputError);
}

TEST_CASE("a mass drop in the limit flags lower semi-convergence") {
    auto s = std::make_shared<const MetricPointSet>("d", std::vector<double>{0.0, 1.0}, MetricKind::discrete);
    const FunctionFamily fam(s, N, [](int, PointId p) { return ExtReal(p == 0 ? 0.5 : 1.0); },
                             PointFunction([](PointId) { return ExtReal(1.0); }));
    const TheoremInstance inst{fam, MeasureSequence::constant(AtomicMeasure(s, {0.5, 0.5}), N), std::nullopt,
                               RadiusSchedule::dyadic(), loose()};
    const Verdict v = fatou_classic_weak(inst);
    CHECK(v.status == Status::inapplicable);
    CHECK(v.hypothesis_value("lower_semi_convergence_in_measure") == false);
    CHECK(v.hypothesis_value("weak_convergence") == true);
}

TEST_CASE("fatou gap is the sum of negative atomwise differences") {
    testutil::Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        auto s = testutil::random_space(rng, 6);
        const auto fam = testutil::random_family(rng, s, N);
        std::vector<double> f(s->size());
        for (auto& x : f) x = testutil::dyadic(rng, -8, 8, 2);
        const auto mu = testutil::random_measure(rng, s), mun = testutil::random_measure(rng, s);
        const int n = 1 + static_cast<int>(rng() % N);
        double expected = 0;
        for (PointId p = 0; p < s->size(); ++p)
            expected += std::min(0.0, fam(n, p).value() * mun.weight(p) - f[p] * mu.weight(p));
        const PointFunction fp = [&](PointId p) { return ExtReal(f[p]); };
        CHECK(fatou_gap(fam, fp, mun, mu, n).value() == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("engines never report a defect on random tables") {
    testutil::Rng rng(32);
    std::size_t bugs = 0, pass = 0;
    for (int t = 0; t < 150; ++t) {
        auto s = testutil::random_space(rng, 2 + rng() % 7, t % 3 == 0 ? MetricKind::discrete : MetricKind::euclidean);
        const auto raw = testutil::random_family(rng, s, N);
        std::vector<double> lim(s->size());
        for (auto& x : lim) x = testutil::dyadic(rng, -8, 8, 2);
        // Half the trials converge to the limit at rate 16^-n.
        const bool tame = t % 2 == 0;
        const FunctionFamily fam(
            s, N,
            [&](int n, PointId p) { return tame ? ExtReal(lim[p] + raw(n, p).value() * std::ldexp(1.0, -4 * n)) : raw(n, p); },
            PointFunction([&](PointId p) { return ExtReal(lim[p]); }));
        const auto seq = converging(s, testutil::random_weights(rng, s->size()), testutil::random_weights(rng, s->size()));
        EngineOptions o = loose();
        o.seed = rng();
        const TheoremInstance inst{fam, seq, std::nullopt, RadiusSchedule::dyadic(), o};
        for (const auto& [name, run] : engines()) {
            CAPTURE(name);
            const Verdict v = run(inst);
            CHECK(v.status != Status::bug);
            bugs += v.status == Status::bug;
            pass += v.status == Status::pass;
        }
        const Verdict u = uniform_fatou_gap(fam, fam.limit_function(), seq, o);
        CHECK(u.status != Status::bug);
    }
    CHECK(bugs == 0);
    CHECK(pass > 100);
}

TEST_CASE("escaping negative mass defeats the uniform gap") {
    auto s = std::make_shared<const MetricPointSet>("e", std::vector<double>{0.0, 1.0}, MetricKind::discrete);
    const FunctionFamily fam(s, N, [](int n, PointId p) { return ExtReal(p == 1 ? -std::ldexp(1.0, 21 + n) : 1.0); });
    const MeasureSequence seq(
        s, N, [&](int n) { return AtomicMeasure(s, {1.0, std::ldexp(1.0, -(21 + n))}); }, AtomicMeasure(s, {1.0, 0.0}));
    const PointFunction f = [](PointId p) { return ExtReal(p == 1 ? 0.0 : 1.0); };
    const Verdict v = uniform_fatou_gap(fam, f, seq, loose());
    CHECK(v.status != Status::bug);
    CHECK(*v.quantity("conclusion") == ExtReal(0.0));
    CHECK(*v.quantity("condition_ii") == ExtReal(0.0));
}

TEST_CASE("monotone theorem with a given dominating limit") {
    auto s = std::make_shared<const MetricPointSet>("m", std::vector<double>{0.0, 1.0, 2.0}, MetricKind::discrete);
    const FunctionFamily fam(s, N, [](int n, PointId p) { return ExtReal(static_cast<double>(p) - std::ldexp(1.0, -4 * n)); },
                             PointFunction([](PointId p) { return ExtReal(static_cast<double>(p)); }));
    const TheoremInstance inst{fam, MeasureSequence::constant(AtomicMeasure(s, {0.25, 0.25, 0.5}), N), std::nullopt,
                               RadiusSchedule::dyadic(), loose()};
    const Verdict w = monotone_weak(inst);
    CHECK(w.status == Status::pass);
    CHECK(w.hypothesis_value("nondecreasing") == true);
    CHECK(monotone_setwise(inst).status == Status::pass);
}
