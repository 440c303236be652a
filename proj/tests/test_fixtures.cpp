#include "vmlab/fixtures.hpp"

#include <doctest.h>

using namespace vmlab;

namespace {

ExtReal observed_number(const FixtureReport& r, const std::string& key) {
    for (const auto& c : r.comparisons)
        if (c.key == key && c.observed) return std::get<ExtReal>(*c.observed);
    FAIL("missing key " << key);
    return ExtReal(0.0);
}

Status observed_status(const FixtureReport& r, const std::string& key) {
    for (const auto& c : r.comparisons)
        if (c.key == key && c.observed) return std::get<Status>(*c.observed);
    FAIL("missing key " << key);
    return Status::bug;
}

}  // namespace

TEST_CASE("every registered fixture reproduces its targets") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        const FixtureReport r = verify_fixture(make_fixture(name));
        for (const auto& c : r.comparisons) {
            CAPTURE(c.key);
            CHECK(c.matched);
        }
        CHECK(r.matched());
    }
}

TEST_CASE("registry") {
    CHECK(fixture_names().size() == 8);
    CHECK_THROWS_AS(make_fixture("no-such"), InputError);
    CHECK(make_fixture("example-4-1").name == "example-4-1");
}

TEST_CASE("example 4.1 quantities") {
    const auto r = verify_fixture(example_4_1());
    CHECK(observed_number(r, "liminf_integral") == ExtReal(2.0));
    CHECK(observed_number(r, "limit_integral") == ExtReal(2.0));
    CHECK(observed_number(r, "double_lower_integral") == ExtReal(1.0));
    CHECK(observed_status(r, "weak_convergence") == Status::pass);
    CHECK(observed_status(r, "setwise_convergence") == Status::fail);
}

TEST_CASE("example 5 integrals are exact Riemann sums") {
    for (int R : {16, 128, 1000}) {
        double sum = 0;
        for (int k = 0; k < R; ++k) sum += std::min(static_cast<double>(k) / R, 1.0) / R;
        CHECK(example_5_riemann_sum(R) == doctest::Approx(sum).epsilon(1e-14));
    }
}

TEST_CASE("example 5 discretization error halves under refinement") {
    for (auto make : {example_5_1, example_5_2}) {
        const double e1 = std::fabs(observed_number(verify_fixture(make(64, 32)), "final_integral").value() - 0.5);
        const double e2 = std::fabs(observed_number(verify_fixture(make(128, 32)), "final_integral").value() - 0.5);
        REQUIRE(e2 > 0);
        CHECK(e1 / e2 >= 1.5);
        CHECK(e1 / e2 <= 2.5);
    }
}

TEST_CASE("example 5 verdicts flag the failing hypothesis") {
    const auto r1 = verify_fixture(example_5_1());
    CHECK(observed_status(r1, "monotone_weak") == Status::inapplicable);
    CHECK(observed_status(r1, "upper_semicontinuous_limit") == Status::fail);
    CHECK(observed_number(r1, "limit_integral") == ExtReal(0.0));
    const auto r2 = verify_fixture(example_5_2());
    CHECK(observed_status(r2, "monotone_weak") == Status::inapplicable);
    CHECK(observed_status(r2, "envelope_lower_semi_convergence") == Status::fail);
    CHECK(observed_number(r2, "limit_integral") == ExtReal(1.0));
}

TEST_CASE("fixture construction is deterministic") {
    CHECK(fixture_to_json(example_3_1(64, 16)).dump() == fixture_to_json(example_3_1(64, 16)).dump());
    CHECK(fixture_to_json(example_4_1(64, 16)).dump() == fixture_to_json(example_4_1(64, 16)).dump());
    CHECK(fixture_to_json(example_4_2(1 << 10)).dump() == fixture_to_json(example_4_2(1 << 10)).dump());
    CHECK(fixture_to_json(example_6_2(64)).dump() == fixture_to_json(example_6_2(64)).dump());
    CHECK(to_json(verify_fixture(example_3_2(64, 16))).dump() == to_json(verify_fixture(example_3_2(64, 16))).dump());
}

TEST_CASE("invalid fixture parameters are rejected") {
    CHECK_THROWS_AS(example_4_1(100, 64), InputError);
    CHECK_THROWS_AS(example_3_1(128, 4), InputError);
}
