#pragma once

#include "vmlab/limit_theorems.hpp"
#include "vmlab/mdp.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace vmlab {

/// Engines exercised by the randomized suite, in report order.
const std::vector<std::string>& suite_engines();

/// Deterministic per-trial seed from (suite seed, engine name, trial index).
std::uint64_t trial_seed(std::uint64_t suite_seed, const std::string& engine, std::size_t trial);

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    std::size_t trials = 500;
    double tol = 1e-6;
    unsigned threads = 1;
    /// Empty means every engine.
    std::vector<std::string> engines;
};

struct TrialResult {
    std::string engine;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    Verdict verdict;
};

struct EngineSummary {
    std::string engine;
    std::size_t trials = 0, pass = 0, fail = 0, inapplicable = 0, bug = 0;
};

struct SuiteReport {
    SuiteOptions options;
    std::vector<TrialResult> results;
    std::vector<EngineSummary> summary;
    std::size_t bugs() const;
};

/// Runs one trial; throws InputError for an unknown engine.
TrialResult run_trial(const std::string& engine, std::uint64_t suite_seed, std::size_t trial, double tol);

SuiteReport run_random_suite(const SuiteOptions& options);

nlohmann::ordered_json to_json(const SuiteReport& report);
std::string summary_csv(const SuiteReport& report);

// Generators, exposed for tests.

/// Points grouped into tight clusters (diameter 1e-9) one unit apart; the
/// single-radius schedule makes each cluster the local ball of its points.
struct ClusteredSpace {
    SpacePtr space;
    std::vector<std::vector<PointId>> clusters;
    /// Isolated point carrying no limit mass, or size() when absent.
    PointId heavy;
};
ClusteredSpace random_clustered_space(std::mt19937_64& rng, bool with_heavy_point);
RadiusSchedule cluster_radii();

/// Random horizon-16 instances for one engine, mixing hypothesis-breaking defects.
TheoremInstance random_instance(const std::string& engine, std::mt19937_64& rng, double tol);

struct UniformGapInstance {
    FunctionFamily fam;
    std::vector<ExtReal> f;
    MeasureSequence seq;
};
/// At most 12 atoms with dyadic data.
UniformGapInstance random_uniform_gap_instance(std::mt19937_64& rng);
/// min over all subsets C of sum_{p in C} (f_n(p) w_n(p) - f(p) w(p)).
ExtReal exhaustive_subset_gap(const UniformGapInstance& inst, int n);

MeasureSequence random_chain_sequence(std::mt19937_64& rng);

/// Dense unichain model with at most 20 states and 5 actions.
MdpModel random_unichain_model(std::mt19937_64& rng);

}  // namespace vmlab
