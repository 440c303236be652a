#include "support.hpp"
#include "vmlab/semicontinuity.hpp"

#include <doctest.h>

using namespace vmlab;

TEST_CASE("local ball is the first schedule ball reaching a neighbour") {
    auto s = std::make_shared<const MetricPointSet>("b", std::vector<double>{0.0, 0.3, 0.31, 5.0},
                                                    MetricKind::euclidean);
    const auto radii = RadiusSchedule::dyadic();
    const auto b0 = local_ball(*s, 0, radii);
    CHECK_FALSE(b0.isolated);
    CHECK(b0.radius == 0.5);
    CHECK(b0.points == std::vector<PointId>{0, 1, 2});
    const auto b1 = local_ball(*s, 1, radii);
    CHECK(b1.radius == std::ldexp(1.0, -6));
    CHECK(b1.points == std::vector<PointId>{1, 2});
    CHECK(local_ball(*s, 3, radii).isolated);
    CHECK(local_ball(*s, 3, radii).points == std::vector<PointId>{3});
}

TEST_CASE("radius schedules must strictly decrease") {
    CHECK_THROWS_AS(RadiusSchedule({0.5, 0.5}), InputError);
    CHECK_THROWS_AS(RadiusSchedule({}), InputError);
    CHECK_THROWS_AS(RadiusSchedule({-1.0}), InputError);
}

TEST_CASE("double limits bracket the pointwise limits") {
    testutil::Rng rng(21);
    const auto radii = RadiusSchedule::dyadic();
    for (int t = 0; t < 200; ++t) {
        auto s = testutil::random_space(rng, 8);
        const auto fam = testutil::random_family(rng, s, 12);
        for (PointId p = 0; p < s->size(); ++p) {
            CHECK(double_lower_limit(fam, p, radii) <= pointwise_lower_limit(fam, p));
            CHECK(double_upper_limit(fam, p, radii) >= pointwise_upper_limit(fam, p));
            CHECK(pointwise_lower_limit(fam, p) <= pointwise_upper_limit(fam, p));
        }
    }
}

TEST_CASE("isolated points reduce double limits to pointwise ones") {
    testutil::Rng rng(22);
    auto s = testutil::random_space(rng, 8, MetricKind::discrete);
    const auto fam = testutil::random_family(rng, s, 10);
    for (PointId p = 0; p < s->size(); ++p) {
        CHECK(double_lower_limit(fam, p, RadiusSchedule::dyadic()) == pointwise_lower_limit(fam, p));
        CHECK(double_upper_limit(fam, p, RadiusSchedule::dyadic()) == pointwise_upper_limit(fam, p));
    }
    CHECK(lsec_check(fam, default_eps_schedule(), RadiusSchedule::dyadic()).status == Status::pass);
}

TEST_CASE("tail minimum matches a direct scan") {
    testutil::Rng rng(23);
    auto s = testutil::random_space(rng, 5);
    const auto fam = testutil::random_family(rng, s, 9);
    for (PointId p = 0; p < s->size(); ++p) {
        ExtReal lo = ExtReal::pos_inf();
        for (int n = tail_start(9); n <= 9; ++n) lo = min(lo, fam(n, p));
        CHECK(pointwise_lower_limit(fam, p) == lo);
    }
}

TEST_CASE("lsec of a constant family and usec of a negated family") {
    testutil::Rng rng(24);
    auto s = testutil::random_space(rng, 6);
    const FunctionFamily flat(s, 8, [](int, PointId) { return ExtReal(2.0); });
    CHECK(lsec_check(flat, default_eps_schedule(), RadiusSchedule::dyadic()).status == Status::pass);
    for (int t = 0; t < 50; ++t) {
        const auto fam = testutil::random_family(rng, s, 8);
        CHECK(usec_check(fam, default_eps_schedule(), RadiusSchedule::dyadic()).status ==
              lsec_check(fam.negated(), default_eps_schedule(), RadiusSchedule::dyadic()).status);
    }
}

TEST_CASE("uniform-below violations match a brute-force scan") {
    testutil::Rng rng(25);
    for (int t = 0; t < 50; ++t) {
        auto s = testutil::random_space(rng, 5);
        std::vector<double> lim(s->size());
        for (auto& l : lim) l = testutil::dyadic(rng, -8, 8, 4);
        const auto base = testutil::random_family(rng, s, 8);
        const FunctionFamily fam(s, 8, [&](int n, PointId p) { return base(n, p); },
                                 PointFunction([lim](PointId p) { return ExtReal(lim[p]); }));
        const double eps = 0.5;
        std::size_t count = 0;
        for (int n = 1; n <= 8; ++n)
            for (PointId p = 0; p < s->size(); ++p) count += fam(n, p) <= ExtReal(lim[p] - eps);
        CHECK(uniform_below_violations(fam, eps).size() == count);
    }
}

TEST_CASE("semi-convergence in measure") {
    auto s = std::make_shared<const MetricPointSet>("c", std::vector<double>{0, 1, 2}, MetricKind::euclidean);
    const AtomicMeasure mu(s, {0.5, 0.5, 0.0});
    // Drops below the limit only on a null atom.
    const FunctionFamily fam(s, 8, [](int, PointId p) { return ExtReal(p == 2 ? -5.0 : 1.0); },
                             PointFunction([](PointId) { return ExtReal(1.0); }));
    CHECK(semi_convergence_in_measure_check(fam, mu, default_eps_schedule(), SemiDirection::lower, 0).status ==
          Status::pass);
    const FunctionFamily up(s, 8, [](int, PointId p) { return ExtReal(p == 0 ? 3.0 : 1.0); },
                            PointFunction([](PointId) { return ExtReal(1.0); }));
    CHECK(semi_convergence_in_measure_check(up, mu, default_eps_schedule(), SemiDirection::lower, 0).status ==
          Status::pass);
    CHECK(semi_convergence_in_measure_check(up, mu, default_eps_schedule(), SemiDirection::upper, 0).status ==
          Status::fail);
    CHECK(semi_convergence_in_measure_check(up, mu, default_eps_schedule(), SemiDirection::both, 0).status ==
          Status::fail);
}

TEST_CASE("equality of lower limits never reports an inconsistency") {
    testutil::Rng rng(26);
    for (int t = 0; t < 200; ++t) {
        auto s = testutil::random_space(rng, 7);
        const auto raw = testutil::random_family(rng, s, 12);
        // Half of the trials use slowly varying families that often satisfy lsec.
        const bool smooth = t % 2 == 0;
        const double c = testutil::dyadic(rng, -4, 4, 1);
        const FunctionFamily fam(s, 12, [&](int n, PointId p) {
            return smooth ? ExtReal(c + s->coord(p) / 1024 + std::ldexp(1.0, -n)) : raw(n, p);
        });
        CHECK(llim_equality_check(fam, RadiusSchedule::dyadic(), default_eps_schedule(), 1e-9).status !=
              Status::bug);
    }
}

TEST_CASE("monotone families attain their double limit") {
    testutil::Rng rng(27);
    int applicable = 0;
    for (int t = 0; t < 200; ++t) {
        auto s = testutil::random_space(rng, 6, t % 2 ? MetricKind::discrete : MetricKind::euclidean);
        std::vector<double> base(s->size());
        for (auto& b : base) b = testutil::dyadic(rng, -8, 8, 2);
        const FunctionFamily fam(s, 12, [&](int n, PointId p) { return ExtReal(base[p] - (n < 4 ? 1.0 / n : 0.0)); });
        const Verdict v = monotone_double_limit_check(fam, RadiusSchedule::dyadic(), 1e-9);
        CHECK(v.status != Status::bug);
        applicable += v.status == Status::pass;
    }
    CHECK(applicable > 50);
}
