#pragma once

#include "vmlab/family.hpp"
#include "vmlab/verdict.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace vmlab {

inline constexpr int kModelSchemaVersion = 1;

/// Finite MDP. cost[x][a] may be +inf (action unavailable at x);
/// kernel[x][a][y] = q(y | x, a).
class MdpModel {
public:
    MdpModel(SpacePtr states, std::vector<std::string> actions, std::vector<std::vector<ExtReal>> cost,
             std::vector<std::vector<std::vector<double>>> kernel);

    const SpacePtr& states() const { return states_; }
    std::size_t num_states() const { return states_->size(); }
    std::size_t num_actions() const { return actions_.size(); }
    const std::vector<std::string>& actions() const { return actions_; }
    ExtReal cost(std::size_t x, std::size_t a) const { return cost_[x][a]; }
    const std::vector<double>& kernel(std::size_t x, std::size_t a) const { return kernel_[x][a]; }

    /// Expected value of u under q(. | x, a).
    double expect(std::size_t x, std::size_t a, const std::vector<double>& u) const;

private:
    SpacePtr states_;
    std::vector<std::string> actions_;
    std::vector<std::vector<ExtReal>> cost_;
    std::vector<std::vector<std::vector<double>>> kernel_;
};

nlohmann::ordered_json to_json(const MdpModel& model);
/// Validates every model invariant; InputError names the first violation.
MdpModel model_from_json(const nlohmann::json& doc);

using Policy = std::vector<std::size_t>;

struct DiscountedSolution {
    std::vector<double> v;
    Policy policy;
    long iterations = 0;
};

/// Successive approximation from v = 0 until the sup-norm distance to the
/// fixed point is provably at most eps.
DiscountedSolution discounted_value_iteration(const MdpModel& model, double alpha, double eps);

struct RelativeValues {
    double m = 0;
    std::vector<double> u;
};

RelativeValues relative_quantities(const std::vector<double>& v);

/// {1 - 2^-n : n = 1..12}.
std::vector<double> default_alphas();

struct DiscountSweep {
    std::vector<double> alphas;
    std::vector<DiscountedSolution> solutions;
    std::vector<RelativeValues> relative;
    double w_lower = 0;
    double w_upper = 0;
    double eps = 0;

    /// The family n -> u_{alpha_n} over the states (needs at least 8 alphas).
    FunctionFamily relative_family(const SpacePtr& states) const;
};

DiscountSweep vanishing_discount_sweep(const MdpModel& model, const std::vector<double>& alphas,
                                       double eps);

enum class LimitMode { pointwise, double_limit };

struct LimitRelativeValue {
    std::vector<double> u;
    /// Set when the family is lsec: both modes agree within tol.
    bool family_lsec = false;
    bool modes_agree = true;
};

LimitRelativeValue limit_relative_value(const DiscountSweep& sweep, const MdpModel& model, LimitMode mode,
                                        const RadiusSchedule& radii, double tol);

/// [c(x, phi(x)) + sum_y q(y|x,phi(x)) u(y)] - [w + u(x)].
std::vector<ExtReal> acoi_residual(const MdpModel& model, const std::vector<double>& u, double w,
                                   const Policy& policy);

struct AcoeGap {
    std::vector<double> gap;
    Policy policy;
    double max_gap() const;
};

AcoeGap acoe_residual(const MdpModel& model, const std::vector<double>& u, double w);

Verdict assumption_B_check(const DiscountSweep& sweep, double w_star);

Verdict assumption_LEC_check(const DiscountSweep& sweep, const MdpModel& model,
                             const RadiusSchedule& radii, const std::vector<double>& eps_schedule,
                             double tol);

/// (1 - alpha_n) m_{alpha_n} + u_{alpha_n}(x) <= c(x,a) + sum_y q u_{alpha_n}(y) + slack
/// for every x, a, n. Returns the largest violation (<= 0 when it holds).
double discounted_inequality_violation(const DiscountSweep& sweep, const MdpModel& model);

struct OracleSolution {
    double w_star = 0;
    std::vector<double> u;
    Policy policy;
};

/// Policy iteration with relative-value evaluation (u(0) = 0).
OracleSolution average_cost_oracle(const MdpModel& model);

/// Long-run average cost of a stationary policy from every start state.
std::vector<ExtReal> policy_average_cost(const MdpModel& model, const Policy& policy);

Verdict vanishing_discount_chain_check(const DiscountSweep& sweep, const MdpModel& model, double tol);

struct SolveOptions {
    std::vector<double> alphas = default_alphas();
    double eps = 1e-9;
    double tol = 1e-9;
    /// Cross-check against policy iteration.
    bool oracle = false;
};

struct SolveResult {
    /// {schema_version, w_star, w_lower, w_upper, u, policy, residuals, assumption_verdicts[, oracle]}.
    nlohmann::ordered_json document;
    /// False when the oracle is requested and the sweep misses it by more than 1e-3.
    bool oracle_agrees = true;
};

SolveResult solve_mdp(const MdpModel& model, const SolveOptions& options);

}  // namespace vmlab
