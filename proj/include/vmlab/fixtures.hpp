#pragma once

#include "vmlab/limit_theorems.hpp"
#include "vmlab/mdp.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vmlab {

/// A numeric target or the status a check must report.
using ExpectedValue = std::variant<ExtReal, Status>;

struct Expectation {
    std::string key;
    ExpectedValue value;
    double tol = 0;
};

struct Observation {
    std::string key;
    ExpectedValue value;
};

struct FixtureRun {
    std::vector<Verdict> verdicts;
    std::vector<Observation> observed;
};

struct Fixture {
    std::string name;
    int grid_resolution = 0;
    int horizon = 0;
    std::optional<FunctionFamily> family;
    std::optional<TheoremInstance> instance;
    std::optional<MdpModel> model;
    std::vector<Expectation> expected;
    std::function<FixtureRun(const Fixture&)> run;
};

struct Comparison {
    std::string key;
    ExpectedValue expected;
    std::optional<ExpectedValue> observed;
    double tol = 0;
    bool matched = false;
};

struct FixtureReport {
    std::string name;
    std::vector<Verdict> verdicts;
    std::vector<Comparison> comparisons;
    bool matched() const;
};

FixtureReport verify_fixture(const Fixture& fixture);

nlohmann::ordered_json to_json(const FixtureReport& report);
/// Full serialization of the fixture data (space, measures, value tables, targets).
nlohmann::ordered_json fixture_to_json(const Fixture& fixture);

/// Triangular bumps on [-1,1] that vanish at every odd index.
Fixture example_3_1(int resolution = 128, int horizon = 64);
/// min(ns, 1) against the indicator of s != 0 on [0,1].
Fixture example_3_2(int resolution = 256, int horizon = 64);
/// Weak convergence on [0,2] where (1,2] carries the discrete metric.
Fixture example_4_1(int resolution = 128, int horizon = 64);
/// Setwise convergence with oscillating densities on [0,1).
Fixture example_4_2(int resolution = 1 << 16);
/// Increasing min(ns, 1) against measures shrinking to the point mass at 0.
Fixture example_5_1(int resolution = 128, int horizon = 64);
Fixture example_5_2(int resolution = 128, int horizon = 64);
/// Single-action MDPs absorbed at 0.
Fixture example_6_1(int resolution = 64);
Fixture example_6_2(int resolution = 64);

std::vector<std::string> fixture_names();
/// InputError for unknown names.
Fixture make_fixture(const std::string& name);

/// The exact sum of min(n k/(nR), 1) / R over k < R, i.e. (R - 1) / (2R).
double example_5_riemann_sum(int resolution);

}  // namespace vmlab
