#include "support.hpp"
#include "vmlab/measure.hpp"

#include <doctest.h>

#include <limits>

using namespace vmlab;

TEST_CASE("extended reals reject NaN and undefined sums") {
    CHECK_THROWS_AS(ExtReal(std::numeric_limits<double>::quiet_NaN()), UndefinedArithmetic);
    CHECK_THROWS_AS(ExtReal::pos_inf() + ExtReal::neg_inf(), UndefinedArithmetic);
    CHECK_THROWS_AS(ExtReal::pos_inf() - ExtReal::pos_inf(), UndefinedArithmetic);
    CHECK((ExtReal::pos_inf() + ExtReal(3.0)).is_pos_inf());
    CHECK(ExtReal::pos_inf().weighted(0.0) == ExtReal(0.0));
    CHECK(ExtReal::neg_inf().weighted(0.0) == ExtReal(0.0));
    CHECK(ExtReal::neg_inf().weighted(0.5).is_neg_inf());
    CHECK(ExtReal(-2.0).neg_part() == ExtReal(2.0));
    CHECK(ExtReal(-2.0).pos_part() == ExtReal(0.0));
}

TEST_CASE("number formatting round-trips") {
    testutil::Rng rng(1);
    std::uniform_real_distribution<double> d(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double x = d(rng) * std::ldexp(1.0, static_cast<int>(rng() % 80) - 40);
        CHECK(parse_number(format_number(x)).value() == x);
    }
    CHECK(format_number(ExtReal::pos_inf()) == "inf");
    CHECK(format_number(ExtReal::neg_inf()) == "-inf");
    CHECK(parse_number("-inf").is_neg_inf());
    CHECK(parse_number("+inf").is_pos_inf());
    CHECK_THROWS_AS(parse_number("abc"), InputError);
    CHECK_THROWS_AS(parse_number("nan"), InputError);
}

TEST_CASE("metric axioms hold for every metric kind") {
    testutil::Rng rng(2);
    for (auto kind : {MetricKind::euclidean, MetricKind::discrete, MetricKind::tagged, MetricKind::split_unit})
        for (int trial = 0; trial < 20; ++trial) {
            auto s = testutil::random_space(rng, 9, kind);
            CHECK(s->check_axioms().empty());
            for (PointId p = 0; p < s->size(); ++p) {
                const auto b = s->ball(p, 0.1);
                CHECK(std::find(b.begin(), b.end(), p) != b.end());
                CHECK(std::is_sorted(b.begin(), b.end()));
            }
        }
}

TEST_CASE("split unit metric") {
    auto s = std::make_shared<const MetricPointSet>("s", std::vector<double>{0.2, 0.3, 0.5, 1.5, 1.0},
                                                    MetricKind::split_unit);
    CHECK(s->distance(0, 1) == doctest::Approx(0.1));
    CHECK(s->distance(2, 3) == 1.0);
    CHECK(s->distance(4, 2) == 1.0);
}

TEST_CASE("duplicate points are rejected") {
    CHECK_THROWS_AS(MetricPointSet("d", {0.0, 0.0}, MetricKind::euclidean), InputError);
}

TEST_CASE("measure validation") {
    auto s = std::make_shared<const MetricPointSet>("m", std::vector<double>{0, 1}, MetricKind::euclidean);
    CHECK_THROWS_AS(AtomicMeasure(s, {1.0, -0.5}), InputError);
    CHECK_THROWS_AS(AtomicMeasure(s, {1.0}), InputError);
    CHECK_THROWS_AS(AtomicMeasure(s, {1.0, std::numeric_limits<double>::infinity()}), InputError);
    const auto d = AtomicMeasure::dirac(s, 1, 2.0);
    CHECK(d.weight(1) == 2.0);
    CHECK(total_mass(d) == 2.0);
}

TEST_CASE("integrals split into positive and negative parts") {
    auto s = std::make_shared<const MetricPointSet>("m", std::vector<double>{0, 1, 2}, MetricKind::euclidean);
    AtomicMeasure mu(s, {0.5, 0.0, 0.25});
    const PointFunction f = [](PointId p) { return p == 1 ? ExtReal::neg_inf() : ExtReal(4.0 * p + 1); };
    CHECK(integrate(f, mu).value() == ExtReal(0.5 + 0.25 * 9));
    const PointFunction g = [](PointId p) { return p == 0 ? ExtReal::pos_inf() : ExtReal::neg_inf(); };
    CHECK_FALSE(integrate(g, AtomicMeasure(s, {1, 1, 0})).is_defined());
    CHECK(integrate(g, AtomicMeasure(s, {1, 0, 0})).value().is_pos_inf());
    CHECK_THROWS_AS(integrate(g, AtomicMeasure(s, {1, 1, 0})).value(), UndefinedArithmetic);
    const PointFunction bad = [](PointId) -> ExtReal { throw std::runtime_error("boom"); };
    CHECK_THROWS_AS(integrate(bad, mu), InputError);
}

TEST_CASE("integral is linear in the measure on finite integrands") {
    testutil::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        auto s = testutil::random_space(rng, 7);
        auto w1 = testutil::random_weights(rng, 7), w2 = testutil::random_weights(rng, 7), sum = w1;
        for (std::size_t i = 0; i < 7; ++i) sum[i] += w2[i];
        std::vector<double> vals(7);
        for (auto& v : vals) v = testutil::dyadic(rng, -16, 16, 4);
        const PointFunction f = [&](PointId p) { return ExtReal(vals[p]); };
        const double a = integrate(f, AtomicMeasure(s, w1)).value().value();
        const double b = integrate(f, AtomicMeasure(s, w2)).value().value();
        CHECK(integrate(f, AtomicMeasure(s, sum)).value().value() == doctest::Approx(a + b).epsilon(1e-12));
    }
}

TEST_CASE("total variation is a metric on measures") {
    testutil::Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        auto s = testutil::random_space(rng, 6);
        auto a = testutil::random_measure(rng, s), b = testutil::random_measure(rng, s),
             c = testutil::random_measure(rng, s);
        CHECK(total_variation_distance(a, b) == total_variation_distance(b, a));
        CHECK(total_variation_distance(a, a) == 0.0);
        CHECK(total_variation_distance(a, c) <= total_variation_distance(a, b) + total_variation_distance(b, c));
    }
}

TEST_CASE("space and measure JSON round-trip") {
    testutil::Rng rng(5);
    for (auto kind : {MetricKind::euclidean, MetricKind::tagged, MetricKind::split_unit}) {
        auto s = testutil::random_space(rng, 5, kind);
        auto mu = testutil::random_measure(rng, s);
        auto s2 = space_from_json(nlohmann::json::parse(to_json(*s).dump()));
        CHECK(s2->coords() == s->coords());
        CHECK(s2->kind() == s->kind());
        auto mu2 = measure_from_json(nlohmann::json::parse(to_json(mu).dump()), s2);
        for (PointId p = 0; p < s->size(); ++p) CHECK(mu2.weight(p) == mu.weight(p));
    }
}
