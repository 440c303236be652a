#include "support.hpp"
#include "vmlab/convergence.hpp"

#include <doctest.h>

using namespace vmlab;

namespace {

MeasureSequence decaying(const SpacePtr& s, const std::vector<double>& mu, const std::vector<double>& nu,
                         double ratio, int N = 16) {
    return MeasureSequence(
        s, N,
        [&](int n) {
            std::vector<double> w(mu.size());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = mu[i] + std::pow(ratio, n) * nu[i];
            return AtomicMeasure(s, w);
        },
        AtomicMeasure(s, mu));
}

double brute_subset_gap(const AtomicMeasure& a, const AtomicMeasure& b) {
    const std::size_t n = a.weights().size();
    double best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double s = 0;
        for (std::size_t p = 0; p < n; ++p)
            if (mask & (1u << p)) s += a.weight(p) - b.weight(p);
        best = std::max(best, std::fabs(s));
    }
    return best;
}

}  // namespace

TEST_CASE("all-subsets gap equals the brute-force supremum") {
    testutil::Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        auto s = testutil::random_space(rng, 1 + rng() % 10);
        auto a = testutil::random_measure(rng, s), b = testutil::random_measure(rng, s);
        CHECK(all_subsets_gap(a, b) == doctest::Approx(brute_subset_gap(a, b)).epsilon(1e-14));
        CHECK(all_subsets_gap(a, b) <= total_variation_distance(a, b));
    }
}

TEST_CASE("tv convergence implies setwise implies weak on random sequences") {
    testutil::Rng rng(12);
    int tv_passes = 0;
    for (int t = 0; t < 300; ++t) {
        auto s = testutil::random_space(rng, 2 + rng() % 10);
        const auto mu = testutil::random_weights(rng, s->size()), nu = testutil::random_weights(rng, s->size());
        const double ratio = (rng() % 2) ? 1.0 / 16 : 0.5;
        const auto seq = decaying(s, mu, nu, ratio);
        const double tol = 1e-6;
        const bool tv = tv_convergence_check(seq, tol).status == Status::pass;
        const bool sw = setwise_convergence_check(seq, tol, rng()).status == Status::pass;
        const bool wk = weak_convergence_check(seq, 2 * tol, rng()).status == Status::pass;
        tv_passes += tv;
        if (tv) CHECK(sw);
        if (sw) CHECK(wk);
    }
    CHECK(tv_passes > 50);
}

TEST_CASE("constant sequences converge in every mode") {
    testutil::Rng rng(13);
    auto s = testutil::random_space(rng, 6);
    const auto seq = MeasureSequence::constant(testutil::random_measure(rng, s), 8);
    CHECK(tv_convergence_check(seq, 0).status == Status::pass);
    CHECK(setwise_convergence_check(seq, 0).status == Status::pass);
    CHECK(weak_convergence_check(seq, 0).status == Status::pass);
}

TEST_CASE("moving point mass converges weakly but not setwise") {
    std::vector<double> coords{0.0};
    for (int n = 1; n <= 16; ++n) coords.push_back(std::ldexp(1.0, -4 * n));
    auto s = std::make_shared<const MetricPointSet>("m", coords, MetricKind::euclidean);
    const MeasureSequence seq(
        s, 16, [&](int n) { return AtomicMeasure::dirac(s, static_cast<PointId>(n)); }, AtomicMeasure::dirac(s, 0));
    CHECK(weak_convergence_check(seq, 1e-6).status == Status::pass);
    CHECK(setwise_convergence_check(seq, 1e-6).status == Status::fail);
    CHECK(tv_convergence_check(seq, 1e-6).status == Status::fail);
}

TEST_CASE("empty test families are input errors") {
    testutil::Rng rng(14);
    auto s = testutil::random_space(rng, 3);
    const auto seq = MeasureSequence::constant(testutil::random_measure(rng, s), 8);
    CHECK_THROWS_AS(weak_convergence_check(seq, std::vector<TestFunction>{}, 1e-9), InputError);
}

TEST_CASE("surrogate families are seeded") {
    testutil::Rng rng(15);
    auto s = testutil::random_space(rng, 12);
    const auto a = default_setwise_sets(*s, 5), b = default_setwise_sets(*s, 5), c = default_setwise_sets(*s, 6);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.size() == s->size() + 64);
    const auto tests = default_weak_tests(*s, 5);
    for (const auto& t : tests)
        for (PointId p = 0; p < s->size(); ++p) {
            CHECK(t.f(p) <= ExtReal(1.0));
            CHECK(t.f(p) >= ExtReal(-1.0));
        }
}

TEST_CASE("integrability curves are nonincreasing and ordered") {
    testutil::Rng rng(16);
    for (int t = 0; t < 100; ++t) {
        auto s = testutil::random_space(rng, 6);
        const int N = 12;
        std::vector<double> big(s->size());
        for (auto& b : big) b = std::ldexp(1.0, static_cast<int>(rng() % 24));
        const FunctionFamily fam(s, N, [&](int n, PointId p) { return ExtReal(((n + p) % 3 == 0) ? big[p] : 1.0); });
        const auto seq = decaying(s, testutil::random_weights(rng, s->size()), testutil::random_weights(rng, s->size()), 0.5, N);
        const auto ui = ui_estimate(fam, seq, default_k_schedule());
        const auto aui = aui_estimate(fam, seq, default_k_schedule());
        CHECK(ui.nonincreasing());
        CHECK(aui.nonincreasing());
        for (std::size_t i = 0; i < ui.tail_values.size(); ++i) CHECK(aui.tail_values[i] <= ui.tail_values[i]);
        CHECK(ui_aui_equivalence_probe(fam, seq, default_k_schedule(), 1e-9).status != Status::bug);
    }
}

TEST_CASE("escaping mass is not asymptotically integrable") {
    std::vector<double> coords{0.0, 1.0};
    auto s = std::make_shared<const MetricPointSet>("e", coords, MetricKind::euclidean);
    const int N = 16;
    const FunctionFamily fam(s, N, [](int n, PointId p) { return ExtReal(p == 1 ? std::ldexp(1.0, 21 + n) : 1.0); });
    const MeasureSequence seq(
        s, N, [&](int n) { return AtomicMeasure(s, {1.0, std::ldexp(1.0, -(21 + n))}); }, AtomicMeasure(s, {1.0, 0.0}));
    const auto aui = aui_estimate(fam, seq, default_k_schedule());
    CHECK(aui.final_value() == ExtReal(1.0));
    CHECK(aui.verdict(1e-9).status == Status::fail);
}
