#include "vmlab/mdp.hpp"

#include "vmlab/convergence.hpp"
#include "vmlab/semicontinuity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace vmlab {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr long kMaxValueIterations = 5'000'000;
constexpr double kOracleCertificate = 1e-8;

std::string at(std::size_t x, std::size_t a) {
    return "(state " + std::to_string(x) + ", action " + std::to_string(a) + ")";
}

}  // namespace

MdpModel::MdpModel(SpacePtr states, std::vector<std::string> actions,
                   std::vector<std::vector<ExtReal>> cost,
                   std::vector<std::vector<std::vector<double>>> kernel)
    : states_(std::move(states)), actions_(std::move(actions)), cost_(std::move(cost)),
      kernel_(std::move(kernel)) {
    if (!states_ || states_->size() == 0) throw InputError("model has no states");
    if (actions_.empty()) throw InputError("model has no actions");
    const std::size_t nx = states_->size(), na = actions_.size();
    if (cost_.size() != nx) throw InputError("cost must have one row per state");
    if (kernel_.size() != nx) throw InputError("kernel must have one block per state");
    for (std::size_t x = 0; x < nx; ++x) {
        if (cost_[x].size() != na) throw InputError("cost row " + std::to_string(x) + " has wrong length");
        if (kernel_[x].size() != na)
            throw InputError("kernel block " + std::to_string(x) + " has wrong length");
        bool any_finite = false;
        for (std::size_t a = 0; a < na; ++a) {
            if (cost_[x][a].is_neg_inf()) throw InputError("cost is -inf at " + at(x, a));
            any_finite = any_finite || cost_[x][a].is_finite();
            const auto& row = kernel_[x][a];
            if (row.size() != nx) throw InputError("kernel row has wrong length at " + at(x, a));
            double sum = 0;
            for (double q : row) {
                if (!std::isfinite(q) || q < 0) throw InputError("negative kernel entry at " + at(x, a));
                sum += q;
            }
            if (std::fabs(sum - 1.0) > kRowSumTol)
                throw InputError("kernel row does not sum to 1 at " + at(x, a));
        }
        if (!any_finite) throw InputError("every action has infinite cost at state " + std::to_string(x));
    }
}

double MdpModel::expect(std::size_t x, std::size_t a, const std::vector<double>& u) const {
    const auto& row = kernel_[x][a];
    double s = 0;
    for (std::size_t y = 0; y < row.size(); ++y)
        if (row[y] != 0) s += row[y] * u[y];
    return s;
}

nlohmann::ordered_json to_json(const MdpModel& model) {
    nlohmann::ordered_json doc;
    const MetricPointSet& s = *model.states();
    doc["schema_version"] = kModelSchemaVersion;
    doc["metric"] = to_string(s.kind());
    auto& states = doc["states"] = nlohmann::ordered_json::array();
    for (double c : s.coords()) states.push_back(format_number(c));
    if (s.kind() == MetricKind::tagged) {
        doc["tags"] = s.tags();
        doc["tag_gap"] = format_number(s.tag_gap());
    }
    doc["actions"] = model.actions();
    auto cost = nlohmann::ordered_json::array();
    auto kernel = nlohmann::ordered_json::array();
    for (std::size_t x = 0; x < model.num_states(); ++x) {
        auto crow = nlohmann::ordered_json::array();
        auto kblock = nlohmann::ordered_json::array();
        for (std::size_t a = 0; a < model.num_actions(); ++a) {
            const ExtReal c = model.cost(x, a);
            if (c.is_finite()) crow.push_back(c.value());
            else crow.push_back("inf");
            kblock.push_back(model.kernel(x, a));
        }
        cost.push_back(std::move(crow));
        kernel.push_back(std::move(kblock));
    }
    doc["cost"] = std::move(cost);
    doc["kernel"] = std::move(kernel);
    return doc;
}

namespace {

double number_field(const nlohmann::json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_number(v.get<std::string>()).value();
    throw InputError(what + " must be a number or a numeric string");
}

}  // namespace

MdpModel model_from_json(const nlohmann::json& doc) {
    try {
        if (!doc.is_object()) throw InputError("model document must be an object");
        if (doc.contains("schema_version") && doc.at("schema_version").get<int>() != kModelSchemaVersion)
            throw InputError("unsupported model schema_version");
        for (const char* key : {"states", "metric", "actions", "cost", "kernel"})
            if (!doc.contains(key)) throw InputError(std::string("model is missing '") + key + "'");
        std::vector<double> coords;
        for (const auto& s : doc.at("states")) coords.push_back(number_field(s, "state"));
        const MetricKind kind = metric_kind_from_string(doc.at("metric").get<std::string>());
        std::vector<int> tags;
        double tag_gap = 0;
        if (doc.contains("tags")) tags = doc.at("tags").get<std::vector<int>>();
        if (doc.contains("tag_gap")) tag_gap = number_field(doc.at("tag_gap"), "tag_gap");
        auto space = std::make_shared<const MetricPointSet>("model", std::move(coords), kind, std::move(tags),
                                                            tag_gap);
        const auto actions = doc.at("actions").get<std::vector<std::string>>();
        std::vector<std::vector<ExtReal>> cost;
        for (const auto& row : doc.at("cost")) {
            std::vector<ExtReal> r;
            for (const auto& c : row) {
                if (c.is_string()) r.push_back(parse_number(c.get<std::string>()));
                else if (c.is_number()) r.push_back(ExtReal(c.get<double>()));
                else throw InputError("cost entries must be numbers or \"inf\"");
            }
            cost.push_back(std::move(r));
        }
        const auto kernel = doc.at("kernel").get<std::vector<std::vector<std::vector<double>>>>();
        return MdpModel(std::move(space), actions, std::move(cost), kernel);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed model: ") + e.what());
    }
}

namespace {

// min over finite-cost actions of c + alpha E v, lowest index on ties.
std::pair<double, std::size_t> bellman(const MdpModel& model, std::size_t x, double alpha,
                                       const std::vector<double>& v) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t a = 0; a < model.num_actions(); ++a) {
        const ExtReal c = model.cost(x, a);
        if (!c.is_finite()) continue;
        const double q = c.value() + alpha * model.expect(x, a, v);
        if (q < best) {
            best = q;
            arg = a;
        }
    }
    return {best, arg};
}

}  // namespace

DiscountedSolution discounted_value_iteration(const MdpModel& model, double alpha, double eps) {
    if (!(alpha >= 0) || !(alpha < 1)) throw InputError("discount factor must lie in [0, 1)");
    if (!(eps > 0)) throw InputError("eps must be positive");
    const std::size_t nx = model.num_states();
    DiscountedSolution sol;
    std::vector<double> v(nx, 0.0), next(nx);
    const double target = eps / 2;
    const double ratio = alpha / (1 - alpha);
    for (;;) {
        if (++sol.iterations > kMaxValueIterations) throw InputError("value iteration did not converge");
        double lo = std::numeric_limits<double>::infinity(), hi = -lo, sup = 0;
        for (std::size_t x = 0; x < nx; ++x) {
            next[x] = bellman(model, x, alpha, v).first;
            const double d = next[x] - v[x];
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            sup = std::max(sup, std::fabs(d));
        }
        v.swap(next);
        if (alpha == 0 || sup * ratio <= target) break;
        // Bracketing bounds: v* - v lies in [ratio * lo, ratio * hi].
        if (ratio * (hi - lo) / 2 <= target) {
            for (double& x : v) x += ratio * (lo + hi) / 2;
            break;
        }
    }
    sol.policy.resize(nx);
    for (std::size_t x = 0; x < nx; ++x) sol.policy[x] = bellman(model, x, alpha, v).second;
    sol.v = std::move(v);
    return sol;
}

RelativeValues relative_quantities(const std::vector<double>& v) {
    if (v.empty()) throw InputError("empty value function");
    RelativeValues r;
    r.m = *std::min_element(v.begin(), v.end());
    for (double x : v) r.u.push_back(x - r.m);
    return r;
}

std::vector<double> default_alphas() {
    std::vector<double> a;
    for (int n = 1; n <= 12; ++n) a.push_back(1 - std::ldexp(1.0, -n));
    return a;
}

FunctionFamily DiscountSweep::relative_family(const SpacePtr& states) const {
    if (static_cast<int>(relative.size()) < kMinHorizon)
        throw InputError("limit operations need at least " + std::to_string(kMinHorizon) + " discount factors");
    return FunctionFamily(states, static_cast<int>(relative.size()), [this](int n, PointId p) {
        return ExtReal(relative[static_cast<std::size_t>(n - 1)].u[p]);
    });
}

namespace {

std::size_t schedule_tail(std::size_t k) {
    return std::min(static_cast<std::size_t>(last_quarter_start(static_cast<int>(k))), k);
}

}  // namespace

DiscountSweep vanishing_discount_sweep(const MdpModel& model, const std::vector<double>& alphas, double eps) {
    if (alphas.empty()) throw InputError("discount schedule is empty");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] >= 0) || !(alphas[i] < 1)) throw InputError("discount factors must lie in [0, 1)");
        if (i > 0 && !(alphas[i] > alphas[i - 1])) throw InputError("discount factors must ascend");
    }
    DiscountSweep sw;
    sw.alphas = alphas;
    sw.eps = eps;
    for (double a : alphas) {
        sw.solutions.push_back(discounted_value_iteration(model, a, eps));
        sw.relative.push_back(relative_quantities(sw.solutions.back().v));
    }
    sw.w_lower = std::numeric_limits<double>::infinity();
    sw.w_upper = -sw.w_lower;
    for (std::size_t i = schedule_tail(alphas.size()); i <= alphas.size(); ++i) {
        const double w = (1 - alphas[i - 1]) * sw.relative[i - 1].m;
        sw.w_lower = std::min(sw.w_lower, w);
        sw.w_upper = std::max(sw.w_upper, w);
    }
    return sw;
}

LimitRelativeValue limit_relative_value(const DiscountSweep& sweep, const MdpModel& model, LimitMode mode,
                                        const RadiusSchedule& radii, double tol) {
    const FunctionFamily fam = sweep.relative_family(model.states());
    LimitRelativeValue out;
    std::vector<double> pointwise, twofold;
    for (PointId p = 0; p < fam.size(); ++p) {
        pointwise.push_back(pointwise_lower_limit(fam, p).value());
        twofold.push_back(double_lower_limit(fam, p, radii).value());
    }
    out.family_lsec = lsec_check(fam, default_eps_schedule(), radii).status == Status::pass;
    if (out.family_lsec)
        for (std::size_t i = 0; i < pointwise.size(); ++i)
            if (std::fabs(pointwise[i] - twofold[i]) > tol) out.modes_agree = false;
    out.u = mode == LimitMode::pointwise ? pointwise : twofold;
    return out;
}

std::vector<ExtReal> acoi_residual(const MdpModel& model, const std::vector<double>& u, double w,
                                   const Policy& policy) {
    if (u.size() != model.num_states() || policy.size() != model.num_states())
        throw InputError("relative value and policy must cover every state");
    std::vector<ExtReal> r;
    for (std::size_t x = 0; x < model.num_states(); ++x) {
        const std::size_t a = policy[x];
        if (a >= model.num_actions()) throw InputError("policy uses an unknown action");
        const ExtReal c = model.cost(x, a);
        if (!c.is_finite()) {
            r.push_back(ExtReal::pos_inf());
            continue;
        }
        r.push_back(ExtReal(c.value() + model.expect(x, a, u) - (w + u[x])));
    }
    return r;
}

double AcoeGap::max_gap() const {
    double m = 0;
    for (double g : gap) m = std::max(m, g);
    return m;
}

AcoeGap acoe_residual(const MdpModel& model, const std::vector<double>& u, double w) {
    if (u.size() != model.num_states()) throw InputError("relative value must cover every state");
    AcoeGap out;
    for (std::size_t x = 0; x < model.num_states(); ++x) {
        const auto [best, arg] = bellman(model, x, 1.0, u);
        out.gap.push_back(std::fabs(w + u[x] - best));
        out.policy.push_back(arg);
    }
    return out;
}

Verdict assumption_B_check(const DiscountSweep& sweep, double w_star) {
    Verdict v;
    v.check_id = "assumption_B";
    v.horizon = static_cast<double>(sweep.alphas.size());
    v.assumptions.push_back("boundedness rendered as the running maximum of u growing by at most "
                            "1e-2 * (1 + previous maximum) over the last quarter of the schedule");
    const bool finite = std::isfinite(w_star);
    v.set("w_star", finite ? ExtReal(w_star) : ExtReal::pos_inf());
    const std::size_t k = sweep.relative.size();
    std::vector<double> running;
    double run = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (double x : sweep.relative[i].u) run = std::max(run, x);
        running.push_back(run);
        v.set("bound@" + format_number(sweep.alphas[i]), run);
    }
    const std::size_t s = schedule_tail(k);
    const double before = s >= 2 ? running[s - 2] : 0.0;
    const double growth = running.back() - before;
    v.set("tail_growth", growth);
    v.set("bound", running.back());
    const bool bounded = growth <= 1e-2 * (1 + before);
    v.status = finite && bounded ? Status::pass : Status::fail;
    return v;
}

Verdict assumption_LEC_check(const DiscountSweep& sweep, const MdpModel& model, const RadiusSchedule& radii,
                             const std::vector<double>& eps_schedule, double tol) {
    const FunctionFamily fam = sweep.relative_family(model.states());
    Verdict v;
    v.check_id = "assumption_LEC";
    v.horizon = fam.horizon();
    v.tolerance = tol;

    Verdict i = lsec_check(fam, eps_schedule, radii);
    i.check_id = "lsec";

    Verdict ii;
    ii.check_id = "pointwise_limit";
    ii.horizon = fam.horizon();
    ii.tolerance = tol;
    double osc = 0;
    for (PointId p = 0; p < fam.size(); ++p)
        osc = std::max(osc, (pointwise_upper_limit(fam, p) - pointwise_lower_limit(fam, p)).value());
    ii.set("max_tail_oscillation", osc);
    ii.status = osc <= tol ? Status::pass : Status::fail;

    Verdict iii;
    iii.check_id = "aui_under_kernel";
    iii.horizon = fam.horizon();
    iii.tolerance = tol;
    double worst = 0;
    for (std::size_t x = 0; x < model.num_states(); ++x)
        for (std::size_t a = 0; a < model.num_actions(); ++a) {
            if (!model.cost(x, a).is_finite()) continue;
            const AtomicMeasure q(model.states(), model.kernel(x, a));
            const auto curve = aui_estimate(fam, MeasureSequence::constant(q, fam.horizon()), default_k_schedule());
            worst = std::max(worst, curve.final_value().is_finite() ? curve.final_value().value()
                                                                    : std::numeric_limits<double>::infinity());
        }
    iii.set("max_tail", worst);
    iii.status = worst <= tol ? Status::pass : Status::fail;

    v.children = {i, ii, iii};
    v.status = Status::pass;
    for (const auto& c : v.children)
        if (c.status != Status::pass) v.status = Status::fail;
    return v;
}

double discounted_inequality_violation(const DiscountSweep& sweep, const MdpModel& model) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < sweep.alphas.size(); ++n) {
        const auto& r = sweep.relative[n];
        const double drift = (1 - sweep.alphas[n]) * r.m;
        for (std::size_t x = 0; x < model.num_states(); ++x)
            for (std::size_t a = 0; a < model.num_actions(); ++a) {
                const ExtReal c = model.cost(x, a);
                if (!c.is_finite()) continue;
                worst = std::max(worst, drift + r.u[x] - (c.value() + model.expect(x, a, r.u)));
            }
    }
    return worst;
}

namespace {

// Solves w + u(x) - sum_y q(y|x) u(y) = c(x) with u(0) = 0.
std::pair<double, std::vector<double>> evaluate_policy(const MdpModel& model, const Policy& policy) {
    const auto n = static_cast<Eigen::Index>(model.num_states());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index x = 0; x < n; ++x) {
        const auto xs = static_cast<std::size_t>(x);
        const auto& row = model.kernel(xs, policy[xs]);
        A(x, 0) = 1.0;  // column 0 carries w since u(0) = 0
        for (Eigen::Index y = 1; y < n; ++y) A(x, y) = (x == y ? 1.0 : 0.0) - row[static_cast<std::size_t>(y)];
        b(x) = model.cost(xs, policy[xs]).value();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() < n)
        throw InputError("policy evaluation is singular: the model is not unichain; change the model");
    const Eigen::VectorXd sol = lu.solve(b);
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index y = 1; y < n; ++y) u[static_cast<std::size_t>(y)] = sol(y);
    return {sol(0), u};
}

}  // namespace

OracleSolution average_cost_oracle(const MdpModel& model) {
    const std::size_t nx = model.num_states();
    Policy policy(nx);
    const std::vector<double> zero(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) policy[x] = bellman(model, x, 0.0, zero).second;
    OracleSolution out;
    for (int iter = 0;; ++iter) {
        if (iter > 10000) throw InputError("policy iteration did not terminate");
        auto [w, u] = evaluate_policy(model, policy);
        bool changed = false;
        for (std::size_t x = 0; x < nx; ++x) {
            const double current = model.cost(x, policy[x]).value() + model.expect(x, policy[x], u);
            const auto [best, arg] = bellman(model, x, 1.0, u);
            if (best < current - 1e-12 * (1 + std::fabs(current))) {
                policy[x] = arg;
                changed = true;
            }
        }
        if (!changed) {
            out.w_star = w;
            out.u = std::move(u);
            out.policy = policy;
            break;
        }
    }
    if (acoe_residual(model, out.u, out.w_star).max_gap() > kOracleCertificate)
        throw InputError("oracle solution failed its optimality certificate; the model is likely not unichain");
    return out;
}

std::vector<ExtReal> policy_average_cost(const MdpModel& model, const Policy& policy) {
    const auto n = static_cast<Eigen::Index>(model.num_states());
    if (policy.size() != model.num_states()) throw InputError("policy must cover every state");
    // Cesaro limit of P^k equals the limit of the lazy chain (I + P) / 2, reached by squaring.
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        const auto xs = static_cast<std::size_t>(x);
        if (policy[xs] >= model.num_actions()) throw InputError("policy uses an unknown action");
        const auto& row = model.kernel(xs, policy[xs]);
        for (Eigen::Index y = 0; y < n; ++y) M(x, y) = 0.5 * row[static_cast<std::size_t>(y)] + (x == y ? 0.5 : 0.0);
    }
    bool converged = false;
    for (int k = 0; k < 200 && !converged; ++k) {
        const Eigen::MatrixXd M2 = M * M;
        converged = (M2 - M).cwiseAbs().maxCoeff() <= 1e-14;
        M = M2;
    }
    if (!converged) throw InputError("kernel powers did not converge");
    std::vector<ExtReal> w;
    for (Eigen::Index x = 0; x < n; ++x) {
        ExtReal s(0.0);
        for (Eigen::Index y = 0; y < n; ++y) {
            const double m = M(x, y) < 1e-12 ? 0.0 : M(x, y);
            const auto ys = static_cast<std::size_t>(y);
            s = s + model.cost(ys, policy[ys]).weighted(m);
        }
        w.push_back(s);
    }
    return w;
}

Verdict vanishing_discount_chain_check(const DiscountSweep& sweep, const MdpModel& model, double tol) {
    Verdict v;
    v.check_id = "vanishing_discount_chain";
    v.horizon = static_cast<double>(sweep.alphas.size());
    v.tolerance = tol;
    v.assumptions.push_back("lim (1 - alpha) v_alpha(x) extrapolated linearly in 1 - alpha from the last two "
                            "discount factors");
    if (sweep.alphas.size() < 2) throw InputError("the chain check needs at least two discount factors");
    const OracleSolution oracle = average_cost_oracle(model);
    const auto avg = policy_average_cost(model, oracle.policy);
    const std::size_t k = sweep.alphas.size();
    const double d1 = 1 - sweep.alphas[k - 2], d2 = 1 - sweep.alphas[k - 1];
    double traj_dev = 0, traj_spread = 0, avg_dev = 0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t x = 0; x < model.num_states(); ++x) {
        const double f1 = d1 * sweep.solutions[k - 2].v[x];
        const double f2 = d2 * sweep.solutions[k - 1].v[x];
        const double limit = (d1 * f2 - d2 * f1) / (d1 - d2);
        lo = std::min(lo, limit);
        hi = std::max(hi, limit);
        traj_dev = std::max(traj_dev, std::fabs(limit - oracle.w_star));
        avg_dev = std::max(avg_dev, avg[x].is_finite() ? std::fabs(avg[x].value() - oracle.w_star)
                                                       : std::numeric_limits<double>::infinity());
    }
    traj_spread = hi - lo;
    v.set("w_star", oracle.w_star);
    v.set("w_lower", sweep.w_lower);
    v.set("w_upper", sweep.w_upper);
    v.set("trajectory_spread", traj_spread);
    v.set("trajectory_deviation", traj_dev);
    v.set("policy_average_deviation", avg_dev);
    const double dl = std::fabs(sweep.w_lower - oracle.w_star), du = std::fabs(sweep.w_upper - oracle.w_star);
    v.set("w_lower_deviation", dl);
    v.set("w_upper_deviation", du);
    const bool ok = traj_spread <= tol && traj_dev <= tol && avg_dev <= tol && dl <= tol && du <= tol;
    v.status = ok ? Status::pass : Status::fail;
    return v;
}


namespace {

nlohmann::ordered_json numbers(const std::vector<double>& xs) {
    auto arr = nlohmann::ordered_json::array();
    for (double x : xs) arr.push_back(format_number(x));
    return arr;
}

nlohmann::ordered_json action_names(const MdpModel& model, const Policy& policy) {
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t a : policy) arr.push_back(model.actions()[a]);
    return arr;
}

}  // namespace

SolveResult solve_mdp(const MdpModel& model, const SolveOptions& options) {
    const auto radii = RadiusSchedule::dyadic();
    const DiscountSweep sweep = vanishing_discount_sweep(model, options.alphas, options.eps);
    const LimitRelativeValue pointwise = limit_relative_value(sweep, model, LimitMode::pointwise, radii, options.tol);
    const LimitRelativeValue dlim = limit_relative_value(sweep, model, LimitMode::double_limit, radii, options.tol);
    const double w = sweep.w_upper;
    const AcoeGap acoe = acoe_residual(model, pointwise.u, w);
    double acoi = -std::numeric_limits<double>::infinity();
    for (const ExtReal& r : acoi_residual(model, pointwise.u, w, acoe.policy)) acoi = std::max(acoi, r.value());

    SolveResult result;
    std::optional<OracleSolution> oracle;
    if (options.oracle) oracle = average_cost_oracle(model);
    const double w_ref = oracle ? oracle->w_star : w;
    const Verdict b = assumption_B_check(sweep, w_ref);
    const Verdict lec = assumption_LEC_check(sweep, model, radii, default_eps_schedule(), options.tol);
    const Verdict chain = vanishing_discount_chain_check(sweep, model, std::max(options.tol, 1e-3));

    auto& doc = result.document;
    doc["schema_version"] = kReportSchemaVersion;
    doc["w_star"] = format_number(w);
    doc["w_lower"] = format_number(sweep.w_lower);
    doc["w_upper"] = format_number(sweep.w_upper);
    doc["u"] = numbers(pointwise.u);
    doc["u_double_limit"] = numbers(dlim.u);
    doc["policy"] = action_names(model, acoe.policy);
    doc["residuals"] = {{"acoe_max_gap", format_number(acoe.max_gap())},
                        {"acoi_max", format_number(acoi)},
                        {"discounted_inequality_violation", format_number(discounted_inequality_violation(sweep, model))}};
    doc["assumption_verdicts"] = {{"B", to_string(b.status)},
                                  {"LEC", to_string(lec.status)},
                                  {"LEC_i", to_string(lec.children[0].status)},
                                  {"LEC_ii", to_string(lec.children[1].status)},
                                  {"LEC_iii", to_string(lec.children[2].status)},
                                  {"limit_modes_agree", pointwise.modes_agree && dlim.modes_agree},
                                  {"vanishing_discount_chain", to_string(chain.status)}};
    auto& sw = doc["sweep"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < sweep.alphas.size(); ++i)
        sw.push_back({{"alpha", format_number(sweep.alphas[i])},
                      {"m", format_number(sweep.relative[i].m)},
                      {"scaled_m", format_number((1 - sweep.alphas[i]) * sweep.relative[i].m)},
                      {"iterations", sweep.solutions[i].iterations}});
    if (oracle) {
        const double dl = std::fabs(sweep.w_lower - oracle->w_star), du = std::fabs(sweep.w_upper - oracle->w_star);
        result.oracle_agrees = dl <= 1e-3 && du <= 1e-3;
        doc["oracle"] = {{"w_star", format_number(oracle->w_star)},
                         {"u", numbers(oracle->u)},
                         {"policy", action_names(model, oracle->policy)},
                         {"acoe_max_gap", format_number(acoe_residual(model, oracle->u, oracle->w_star).max_gap())},
                         {"w_lower_deviation", format_number(dl)},
                         {"w_upper_deviation", format_number(du)},
                         {"agrees", result.oracle_agrees}};
    }
    return result;
}

}  // namespace vmlab
