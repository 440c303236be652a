#include "support.hpp"
#include "vmlab/mdp.hpp"
#include "vmlab/random_suite.hpp"

#include <Eigen/Dense>
#include <doctest.h>

using namespace vmlab;

namespace {

SpacePtr line(std::size_t n) {
    std::vector<double> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(static_cast<double>(i));
    return std::make_shared<const MetricPointSet>("line", c, MetricKind::euclidean);
}

// Exact discounted optimum by policy iteration with dense solves.
std::vector<double> discounted_oracle(const MdpModel& m, double alpha) {
    const std::size_t S = m.num_states(), A = m.num_actions();
    std::vector<std::size_t> pol(S);
    for (std::size_t x = 0; x < S; ++x)
        while (!m.cost(x, pol[x]).is_finite()) ++pol[x];
    Eigen::VectorXd v(S);
    for (int it = 0; it < 1000; ++it) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(S, S);
        Eigen::VectorXd c(S);
        for (std::size_t x = 0; x < S; ++x) {
            c(x) = m.cost(x, pol[x]).value();
            for (std::size_t y = 0; y < S; ++y) M(x, y) -= alpha * m.kernel(x, pol[x])[y];
        }
        v = M.partialPivLu().solve(c);
        bool changed = false;
        std::vector<double> vv(v.data(), v.data() + S);
        for (std::size_t x = 0; x < S; ++x)
            for (std::size_t a = 0; a < A; ++a) {
                if (!m.cost(x, a).is_finite()) continue;
                const double q = m.cost(x, a).value() + alpha * m.expect(x, a, vv);
                const double cur = m.cost(x, pol[x]).value() + alpha * m.expect(x, pol[x], vv);
                if (q < cur - 1e-12 * (1 + std::fabs(cur))) {
                    pol[x] = a;
                    changed = true;
                }
            }
        if (!changed) break;
    }
    return {v.data(), v.data() + S};
}

}  // namespace

TEST_CASE("model validation names the violated invariant") {
    auto s = line(2);
    const std::vector<std::string> acts{"a"};
    CHECK_THROWS_WITH_AS(MdpModel(s, acts, {{0.0}, {0.0}}, {{{0.5, 0.4}}, {{0, 1}}}),
                         doctest::Contains("does not sum to 1"), InputError);
    CHECK_THROWS_WITH_AS(MdpModel(s, acts, {{0.0}, {0.0}}, {{{1.5, -0.5}}, {{0, 1}}}),
                         doctest::Contains("negative"), InputError);
    CHECK_THROWS_WITH_AS(MdpModel(s, acts, {{ExtReal::neg_inf()}, {0.0}}, {{{1, 0}}, {{0, 1}}}),
                         doctest::Contains("-inf"), InputError);
    CHECK_THROWS_WITH_AS(MdpModel(s, acts, {{ExtReal::pos_inf()}, {0.0}}, {{{1, 0}}, {{0, 1}}}),
                         doctest::Contains("infinite cost"), InputError);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"schema_version": 9})")), InputError);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"schema_version": 1, "states": ["0"]})")), InputError);
}

TEST_CASE("model JSON round-trips") {
    testutil::Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        const MdpModel m = random_unichain_model(rng);
        const MdpModel back = model_from_json(nlohmann::json::parse(to_json(m).dump()));
        CHECK(to_json(back) == to_json(m));
    }
}

TEST_CASE("single state discounted value is c / (1 - alpha)") {
    const MdpModel m(line(1), {"a", "b"}, {{2.0, 0.5}}, {{{1.0}, {1.0}}});
    for (double alpha : default_alphas()) {
        const auto sol = discounted_value_iteration(m, alpha, 1e-9);
        CHECK(std::fabs(sol.v[0] - 0.5 / (1 - alpha)) <= 1e-9);
        CHECK(sol.policy[0] == 1);
    }
}

TEST_CASE("value iteration meets its accuracy contract") {
    testutil::Rng rng(42);
    for (int t = 0; t < 30; ++t) {
        const MdpModel m = random_unichain_model(rng);
        for (double alpha : {0.5, 0.9, 0.999}) {
            const double eps = 1e-7;
            const auto sol = discounted_value_iteration(m, alpha, eps);
            const auto exact = discounted_oracle(m, alpha);
            for (std::size_t x = 0; x < m.num_states(); ++x) CHECK(std::fabs(sol.v[x] - exact[x]) <= eps);
        }
    }
}

TEST_CASE("greedy policy breaks ties by lowest index and avoids infinite costs") {
    const MdpModel m(line(2), {"inf", "a", "b"}, {{ExtReal::pos_inf(), 1.0, 1.0}, {0.0, 0.0, 0.0}},
                     {{{0, 1}, {0, 1}, {0, 1}}, {{0, 1}, {0, 1}, {0, 1}}});
    const auto sol = discounted_value_iteration(m, 0.5, 1e-12);
    CHECK(sol.policy[0] == 1);
    CHECK(sol.policy[1] == 0);
}

TEST_CASE("relative quantities") {
    const auto r = relative_quantities({3.0, 1.5, 2.0});
    CHECK(r.m == 1.5);
    CHECK(r.u == std::vector<double>{1.5, 0.0, 0.5});
    CHECK_THROWS_AS(relative_quantities({}), InputError);
    const auto alphas = default_alphas();
    REQUIRE(alphas.size() == 12);
    CHECK(alphas.front() == 0.5);
    CHECK(alphas.back() == 1 - std::ldexp(1.0, -12));
}

TEST_CASE("average-cost oracle agrees with policy evaluation") {
    testutil::Rng rng(43);
    for (int t = 0; t < 30; ++t) {
        const MdpModel m = random_unichain_model(rng);
        const OracleSolution o = average_cost_oracle(m);
        CHECK(o.u[0] == 0.0);
        CHECK(acoe_residual(m, o.u, o.w_star).max_gap() <= 1e-8);
        for (const ExtReal& g : policy_average_cost(m, o.policy)) CHECK(std::fabs(g.value() - o.w_star) <= 1e-8);
        // Adding a constant to u changes no gap.
        auto shifted = o.u;
        for (auto& x : shifted) x += 3.25;
        CHECK(acoe_residual(m, shifted, o.w_star).max_gap() <= 1e-8);
    }
}

TEST_CASE("vanishing discount sweep brackets the average cost") {
    testutil::Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        const MdpModel m = random_unichain_model(rng);
        const auto sweep = vanishing_discount_sweep(m, default_alphas(), 1e-6);
        const double w = average_cost_oracle(m).w_star;
        CHECK(std::fabs(sweep.w_lower - w) <= 1e-3);
        CHECK(std::fabs(sweep.w_upper - w) <= 1e-3);
        CHECK(discounted_inequality_violation(sweep, m) <= 1e-6);
        CHECK(vanishing_discount_chain_check(sweep, m, 1e-3).status == Status::pass);
    }
    const MdpModel one(line(1), {"a"}, {{1.0}}, {{{1.0}}});
    CHECK_THROWS_AS(vanishing_discount_sweep(one, {0.5, 0.4}, 1e-6), InputError);
    CHECK_THROWS_AS(vanishing_discount_sweep(one, {0.5, 1.0}, 1e-6), InputError);
}

TEST_CASE("solve document on a zero-cost model") {
    const MdpModel m(line(3), {"stay", "reset"}, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}},
                     {{{1, 0, 0}, {1, 0, 0}}, {{0.5, 0.5, 0}, {1, 0, 0}}, {{0, 0.5, 0.5}, {1, 0, 0}}});
    SolveOptions o;
    o.oracle = true;
    const SolveResult r = solve_mdp(m, o);
    CHECK(r.oracle_agrees);
    CHECK(r.document["w_star"] == "0");
    CHECK(r.document["u"] == nlohmann::ordered_json::array({"0", "0", "0"}));
    CHECK(r.document["residuals"]["acoe_max_gap"] == "0");
    o.alphas = {0.5, 0.75};
    CHECK_THROWS_AS(solve_mdp(m, o), InputError);
}

TEST_CASE("non-unichain models are rejected by the oracle") {
    const MdpModel m(line(2), {"a"}, {{0.0}, {1.0}}, {{{1, 0}}, {{0, 1}}});
    CHECK_THROWS_AS(average_cost_oracle(m), InputError);
}
