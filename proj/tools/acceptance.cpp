#include "vmlab/convergence.hpp"
#include "vmlab/fixtures.hpp"
#include "vmlab/random_suite.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

using namespace vmlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  (" << detail << ")\n";
    return ok;
}

unsigned workers() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("VM_LAB_THREADS")) n = std::min(n, static_cast<unsigned>(std::max(1, std::atoi(cap))));
    return n;
}

bool fixtures_ok(std::string& detail) {
    bool ok = true;
    double worst = 0;
    std::ostringstream bad;
    for (const auto& name : fixture_names()) {
        const auto t0 = Clock::now();
        const FixtureReport r = verify_fixture(make_fixture(name));
        const double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        if (!r.matched() || dt >= 5.0) {
            ok = false;
            bad << ' ' << name;
            for (const auto& c : r.comparisons)
                if (!c.matched) bad << ':' << c.key;
        }
    }
    std::ostringstream os;
    os << fixture_names().size() << " fixtures, slowest " << worst << " s";
    if (!ok) os << ", mismatched" << bad.str();
    detail = os.str();
    return ok;
}

// TV => setwise => weak on each fixture carrying a measure sequence.
int fixture_chain_exceptions(int& checked) {
    int broken = 0;
    for (const auto& name : fixture_names()) {
        const Fixture f = make_fixture(name);
        if (!f.instance) continue;
        ++checked;
        const auto& inst = *f.instance;
        const double tol = inst.opts.measure_tol;
        const bool tv = tv_convergence_check(inst.seq, tol).status == Status::pass;
        const bool sw = (inst.opts.setwise_sets ? setwise_convergence_check(inst.seq, *inst.opts.setwise_sets, tol)
                                                : setwise_convergence_check(inst.seq, tol, inst.opts.seed))
                            .status == Status::pass;
        const bool wk = (inst.opts.weak_tests ? weak_convergence_check(inst.seq, *inst.opts.weak_tests, 2 * tol)
                                              : weak_convergence_check(inst.seq, 2 * tol, inst.opts.seed))
                            .status == Status::pass;
        if ((tv && !sw) || (sw && !wk)) ++broken;
    }
    return broken;
}

}  // namespace

int main() {
    bool all = true;
    std::ostringstream d;

    std::string detail;
    all &= report(1, "fixture reproduction", fixtures_ok(detail), detail);

    SuiteOptions o;
    o.trials = 500;
    o.threads = workers();
    const std::vector<std::string> theorem_engines{"fatou_weak_double", "fatou_classic_weak", "fatou_setwise",
                                                   "lebesgue_weak",     "lebesgue_setwise",   "monotone_weak",
                                                   "monotone_setwise"};
    o.engines = theorem_engines;
    auto t0 = Clock::now();
    const SuiteReport theorems = run_random_suite(o);
    const double t_theorems = seconds_since(t0);
    d.str("");
    d << theorem_engines.size() << " engines x " << o.trials << " trials, " << theorems.bugs() << " bug verdicts, "
      << t_theorems << " s";
    all &= report(2, "randomized theorem suites", theorems.bugs() == 0 && t_theorems < 60, d.str());

    o.engines = {"uniform_fatou_gap"};
    const SuiteReport gap = run_random_suite(o);
    std::size_t checked = 0, mismatches = 0;
    for (const auto& r : gap.results) {
        if (r.verdict.status == Status::inapplicable) continue;
        ++checked;
        if (r.verdict.status == Status::bug || *r.verdict.quantity("subset_oracle_mismatches") != ExtReal(0.0))
            ++mismatches;
    }
    d.str("");
    d << checked << " applicable of " << o.trials << " instances, " << mismatches << " disagreements";
    all &= report(3, "uniform gap equivalence and subset oracle", checked >= 200 && mismatches == 0, d.str());

    o.engines = {"mdp_oracle"};
    t0 = Clock::now();
    const SuiteReport mdp = run_random_suite(o);
    const double t_mdp = seconds_since(t0);
    double worst_w = 0, worst_acoe = 0, worst_ineq = -1;
    for (const auto& r : mdp.results) {
        if (const auto q = r.verdict.quantity("w_upper_deviation")) worst_w = std::max(worst_w, q->value());
        if (const auto q = r.verdict.quantity("w_lower_deviation")) worst_w = std::max(worst_w, q->value());
        if (const auto q = r.verdict.quantity("oracle_acoe_gap")) worst_acoe = std::max(worst_acoe, q->value());
        if (const auto q = r.verdict.quantity("discounted_inequality_violation")) worst_ineq = std::max(worst_ineq, q->value());
    }
    d.str("");
    d << o.trials << " models, max |w - w*| " << worst_w << ", max oracle ACOE gap " << worst_acoe
      << ", max discounted inequality violation " << worst_ineq << ", " << t_mdp << " s";
    all &= report(4, "MDP oracle agreement", mdp.bugs() == 0 && t_mdp < 120, d.str());

    o.engines = {"convergence_chain"};
    const SuiteReport chain = run_random_suite(o);
    int fixtures_checked = 0;
    const int fixture_broken = fixture_chain_exceptions(fixtures_checked);
    d.str("");
    d << fixtures_checked << " fixture sequences and " << o.trials << " random sequences, "
      << fixture_broken + static_cast<int>(chain.bugs()) << " exceptions";
    all &= report(5, "convergence-mode implication chain", fixture_broken == 0 && chain.bugs() == 0, d.str());

    SuiteOptions full;
    full.trials = 500;
    full.threads = std::max(4u, workers());
    const std::string first = to_json(run_random_suite(full)).dump(2) + summary_csv(run_random_suite(full));
    full.threads = 1;
    const std::string second = to_json(run_random_suite(full)).dump(2) + summary_csv(run_random_suite(full));
    d.str("");
    d << "seed " << full.seed << ", " << first.size() << " bytes, worker counts " << std::max(4u, workers()) << " and 1";
    all &= report(6, "deterministic reports", first == second, d.str());

    return all ? 0 : 1;
}
