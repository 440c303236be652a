#include "vmlab/fixtures.hpp"
#include "vmlab/mdp.hpp"
#include "vmlab/random_suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using vmlab::InputError;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct RunConfig {
    std::vector<std::string> fixtures;
    std::string model_path;
    std::uint64_t seed = vmlab::SuiteOptions{}.seed;
    std::size_t trials = vmlab::SuiteOptions{}.trials;
    std::optional<double> tol;
    std::string out;
    std::string format = "json";
    std::string alphas;
    std::vector<std::string> engines;
    bool oracle = false;
};

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("VM_LAB_THREADS")) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(cap, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || cap[used] != '\0' || v < 1) throw InputError("VM_LAB_THREADS must be a positive integer");
        n = std::min(n, static_cast<unsigned>(v));
    }
    return n;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw InputError("cannot write " + cfg.out);
    file << text;
}

std::vector<double> parse_alphas(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double a = 0;
        try {
            a = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw InputError("bad discount factor '" + item + "'");
        out.push_back(a);
    }
    if (out.empty()) throw InputError("--alphas is empty");
    return out;
}

std::string csv_field(const vmlab::ExpectedValue& v) {
    if (const auto* s = std::get_if<vmlab::Status>(&v)) return vmlab::to_string(*s);
    return vmlab::format_number(std::get<vmlab::ExtReal>(v));
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<std::string> names;
    for (const auto& n : cfg.fixtures) {
        if (n == "all") {
            const auto all = vmlab::fixture_names();
            names.insert(names.end(), all.begin(), all.end());
        } else {
            names.push_back(n);
        }
    }
    std::vector<vmlab::Fixture> fixtures;
    for (const auto& n : names) fixtures.push_back(vmlab::make_fixture(n));

    bool ok = true;
    nlohmann::ordered_json doc;
    doc["schema_version"] = vmlab::kReportSchemaVersion;
    auto& reports = doc["fixtures"] = nlohmann::ordered_json::array();
    std::ostringstream csv;
    csv << "fixture,key,expected,observed,tol,matched\n";
    for (const auto& f : fixtures) {
        const vmlab::FixtureReport r = vmlab::verify_fixture(f);
        ok = ok && r.matched();
        reports.push_back(vmlab::to_json(r));
        for (const auto& c : r.comparisons)
            csv << r.name << ',' << c.key << ',' << csv_field(c.expected) << ','
                << (c.observed ? csv_field(*c.observed) : "missing") << ',' << vmlab::format_number(c.tol) << ','
                << (c.matched ? "true" : "false") << '\n';
        if (!r.matched()) std::cerr << r.name << ": expectation mismatch\n";
    }
    doc["matched"] = ok;
    emit(cfg, cfg.format == "csv" ? csv.str() : doc.dump(2) + "\n");
    return ok ? kOk : kMismatch;
}

int cmd_random_suite(const RunConfig& cfg) {
    vmlab::SuiteOptions o;
    o.seed = cfg.seed;
    o.trials = cfg.trials;
    if (cfg.tol) o.tol = *cfg.tol;
    o.engines = cfg.engines;
    o.threads = worker_count();
    const vmlab::SuiteReport report = vmlab::run_random_suite(o);
    emit(cfg, cfg.format == "csv" ? vmlab::summary_csv(report) : vmlab::to_json(report).dump(2) + "\n");
    if (report.bugs() > 0) {
        std::cerr << report.bugs() << " bug verdict(s)\n";
        return kMismatch;
    }
    return kOk;
}

int cmd_solve_mdp(const RunConfig& cfg) {
    std::ifstream in(cfg.model_path);
    if (!in) throw InputError("cannot read " + cfg.model_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("model file is not JSON: ") + e.what());
    }
    const vmlab::MdpModel model = vmlab::model_from_json(doc);
    vmlab::SolveOptions o;
    if (!cfg.alphas.empty()) o.alphas = parse_alphas(cfg.alphas);
    if (cfg.tol) o.tol = *cfg.tol;
    o.oracle = cfg.oracle;
    const vmlab::SolveResult r = vmlab::solve_mdp(model, o);
    if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "state,u,action\n";
        const auto& s = *model.states();
        for (std::size_t x = 0; x < model.num_states(); ++x)
            csv << vmlab::format_number(s.coord(x)) << ',' << r.document["u"][x].get<std::string>() << ','
                << r.document["policy"][x].get<std::string>() << '\n';
        emit(cfg, csv.str());
    } else {
        emit(cfg, r.document.dump(2) + "\n");
    }
    if (!r.oracle_agrees) {
        std::cerr << "average cost disagrees with the policy-iteration oracle\n";
        return kMismatch;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-horizon checks for limit theorems of integrals and average-cost MDPs"};
    app.require_subcommand(1);
    RunConfig cfg;
    const auto add_common = [&](CLI::App* sub, bool with_tol) {
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        if (with_tol) sub->add_option("--tol", cfg.tol, "Tolerance override")->check(CLI::PositiveNumber);
    };

    auto* verify = app.add_subcommand("verify", "Reproduce a named example (or 'all')");
    verify->add_option("fixture", cfg.fixtures, "Fixture name, e.g. example-4-1")->required();
    add_common(verify, false);

    auto* suite = app.add_subcommand("random-suite", "Seeded randomized hypothesis-conclusion checks");
    suite->add_option("--seed", cfg.seed, "Suite seed");
    suite->add_option("--trials", cfg.trials, "Trials per engine")->check(CLI::PositiveNumber);
    suite->add_option("--engines", cfg.engines, "Subset of engines")->delimiter(',');
    add_common(suite, true);

    auto* solve = app.add_subcommand("solve-mdp", "Vanishing-discount solution of a model file");
    solve->add_option("model", cfg.model_path, "Model JSON file")->required();
    solve->add_option("--alphas", cfg.alphas, "Comma-separated ascending discount factors");
    solve->add_flag("--oracle", cfg.oracle, "Cross-check against policy iteration");
    add_common(solve, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) return cmd_verify(cfg);
        if (*suite) return cmd_random_suite(cfg);
        return cmd_solve_mdp(cfg);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
