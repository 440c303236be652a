#include "vmlab/limit_theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vmlab {

void TheoremInstance::validate() const {
    if (fam.space()->size() != seq.space()->size() || fam.horizon() != seq.horizon())
        throw InputError("family and measure sequence must share space and horizon");
    if (minorant && (minorant->size() != fam.size() || minorant->horizon() != fam.horizon()))
        throw InputError("minorant must share space and horizon with the family");
}

namespace {

using Values = std::vector<ExtReal>;

Verdict start(const std::string& id, const FunctionFamily& fam, const EngineOptions& opts) {
    Verdict v;
    v.check_id = id;
    v.horizon = fam.horizon();
    v.tolerance = opts.tol;
    return v;
}

std::vector<IntegralValue> term_integrals(const FunctionFamily& fam, const MeasureSequence& seq) {
    std::vector<IntegralValue> out;
    out.reserve(static_cast<std::size_t>(fam.horizon()));
    for (int n = 1; n <= fam.horizon(); ++n) out.push_back(integrate(fam.term(n), seq[n]));
    return out;
}

bool defined_from(const std::vector<IntegralValue>& v, int first) {
    for (std::size_t i = static_cast<std::size_t>(first - 1); i < v.size(); ++i)
        if (!v[i].is_defined()) return false;
    return true;
}

IntegralValue integrate_values(const Values& F, const AtomicMeasure& mu) {
    return integrate([&F](PointId p) { return F[p]; }, mu);
}

Values limit_values(const FunctionFamily& fam) {
    Values F;
    for (PointId p = 0; p < fam.size(); ++p) F.push_back(fam.limit(p));
    return F;
}

// (a - b)^+ or |a - b| without touching inf - inf.
ExtReal excess(ExtReal a, ExtReal b, bool absolute) {
    if (a == b) return ExtReal(0.0);
    const ExtReal d = a - b;
    return absolute ? d.abs() : d.pos_part();
}

ExtReal residual(const Values& F, const FunctionFamily& fam, int n, const AtomicMeasure& mu,
                 bool absolute) {
    ExtReal sum(0.0);
    for (PointId p = 0; p < fam.size(); ++p)
        sum = sum + excess(F[p], fam(n, p), absolute).weighted(mu.weight(p));
    return sum;
}

FunctionFamily constant_family(const SpacePtr& space, int horizon, const Values& F) {
    return FunctionFamily(space, horizon, [&F](int, PointId p) { return F[p]; });
}

FunctionFamily with_limit(const FunctionFamily& fam, const Values& F) {
    return FunctionFamily(fam.space(), fam.horizon(), [&fam](int n, PointId p) { return fam(n, p); },
                          PointFunction([&F](PointId p) { return F[p]; }));
}

bool aui_passes(const FunctionFamily& fam, const MeasureSequence& seq, const EngineOptions& opts,
                Verdict& v, const std::string& name) {
    const ExtReal final_value = aui_estimate(fam, seq, opts.k_schedule).final_value();
    v.set(name + "_tail", final_value);
    return final_value <= ExtReal(opts.function_tol);
}

bool weak_passes(const TheoremInstance& inst, Verdict& v) {
    const Verdict w = inst.opts.weak_tests
                          ? weak_convergence_check(inst.seq, *inst.opts.weak_tests, inst.opts.measure_tol)
                          : weak_convergence_check(inst.seq, inst.opts.measure_tol, inst.opts.seed);
    v.set("weak_gap", *w.quantity("max_gap"));
    v.assumptions.push_back("weak convergence checked on the surrogate test family");
    return w.status == Status::pass;
}

bool setwise_passes(const TheoremInstance& inst, Verdict& v) {
    const Verdict s = inst.opts.setwise_sets
                          ? setwise_convergence_check(inst.seq, *inst.opts.setwise_sets, inst.opts.measure_tol)
                          : setwise_convergence_check(inst.seq, inst.opts.measure_tol, inst.opts.seed);
    v.set("setwise_gap", *s.quantity("max_gap"));
    v.assumptions.push_back("setwise convergence checked on the surrogate set family");
    return s.status == Status::pass;
}

bool lower_semi_converges(const FunctionFamily& fam_with_limit, const AtomicMeasure& mu,
                          const EngineOptions& opts, SemiDirection dir, Verdict& v,
                          const std::string& name) {
    const Verdict c =
        semi_convergence_in_measure_check(fam_with_limit, mu, opts.eps_schedule, dir, opts.function_tol);
    v.set(name + "_measure", *c.quantity("tail_max_measure"));
    return c.status == Status::pass;
}

// f_n >= g_n everywhere and -inf < int U dmu <= liminf int g_n dmu_n, where U is
// the double upper limit (weak) or the pointwise upper limit (setwise) of g.
bool minorant_holds(const TheoremInstance& inst, bool double_limit, Verdict& v) {
    if (!inst.minorant) return false;
    const FunctionFamily& g = *inst.minorant;
    const int N = g.horizon();
    for (int n = 1; n <= N; ++n)
        for (PointId p = 0; p < g.size(); ++p)
            if (inst.fam(n, p) < g(n, p)) return false;
    Values U;
    for (PointId p = 0; p < g.size(); ++p)
        U.push_back(double_limit ? double_upper_limit(g, p, inst.radii) : pointwise_upper_limit(g, p));
    const IntegralValue J = integrate_values(U, inst.seq.limit());
    const auto gi = term_integrals(g, inst.seq);
    if (!J.is_defined() || !defined_from(gi, tail_start(N))) return false;
    ExtReal lim = ExtReal::pos_inf();
    for (int n = tail_start(N); n <= N; ++n) lim = min(lim, gi[static_cast<std::size_t>(n - 1)].value());
    v.set("minorant_upper_integral", J.value());
    v.set("minorant_liminf_integral", lim);
    return !J.value().is_neg_inf() && J.value() <= lim + ExtReal(inst.opts.function_tol);
}

// int F dmu <= min over the tail of (I_n + D_n) + tol, D_n = int (F - f_n)^+ dmu.
bool fatou_conclusion(const Values& F, const FunctionFamily& fam, const MeasureSequence& seq,
                      const std::vector<IntegralValue>& I, const EngineOptions& opts, Verdict& v) {
    const IntegralValue L = integrate_values(F, seq.limit());
    const int N = fam.horizon();
    v.hypothesis("integrals_defined", L.is_defined() && defined_from(I, tail_start(N)));
    if (!v.hypothesis_value("integrals_defined").value()) return true;
    ExtReal raw = ExtReal::pos_inf();
    ExtReal budget = ExtReal::pos_inf();
    for (int n = tail_start(N); n <= N; ++n) {
        const ExtReal In = I[static_cast<std::size_t>(n - 1)].value();
        const ExtReal Dn = residual(F, fam, n, seq.limit(), false);
        raw = min(raw, In);
        budget = min(budget, Dn.is_pos_inf() ? Dn : In + Dn);
    }
    v.set("lhs", L.value());
    v.set("liminf_integral", raw);
    v.set("rhs_with_residual", budget);
    v.set("final_integral", I.back().value());
    return L.value().is_neg_inf() || L.value() <= budget + ExtReal(opts.tol);
}

// |I_n - int F dmu| <= tol + int |F - f_n| dmu over the last quarter.
bool equality_conclusion(const Values& F, const FunctionFamily& fam, const MeasureSequence& seq,
                         const std::vector<IntegralValue>& I, const EngineOptions& opts, Verdict& v) {
    const IntegralValue L = integrate_values(F, seq.limit());
    const int N = fam.horizon();
    v.hypothesis("integrals_defined", L.is_defined() && defined_from(I, last_quarter_start(N)));
    if (!v.hypothesis_value("integrals_defined").value()) return true;
    v.set("limit_integral", L.value());
    v.set("final_integral", I.back().value());
    bool ok = true;
    double worst = 0;
    for (int n = last_quarter_start(N); n <= N; ++n) {
        const ExtReal In = I[static_cast<std::size_t>(n - 1)].value();
        if (!In.is_finite() || !L.value().is_finite()) {
            if (In != L.value()) ok = false;
            continue;
        }
        const ExtReal En = residual(F, fam, n, seq.limit(), true);
        if (En.is_pos_inf()) continue;
        const double excess_n = (In - L.value()).abs().value() - En.value();
        worst = std::max(worst, excess_n);
        if (excess_n > opts.tol) ok = false;
    }
    v.set("max_excess", worst);
    return ok;
}

Values double_lower_values(const FunctionFamily& fam, const RadiusSchedule& radii) {
    Values F;
    for (PointId p = 0; p < fam.size(); ++p) F.push_back(double_lower_limit(fam, p, radii));
    return F;
}

Values pointwise_lower_values(const FunctionFamily& fam) {
    Values F;
    for (PointId p = 0; p < fam.size(); ++p) F.push_back(pointwise_lower_limit(fam, p));
    return F;
}

bool close(ExtReal a, ExtReal b, double tol) {
    if (!a.is_finite() || !b.is_finite()) return a == b;
    return (a - b).abs() <= ExtReal(tol);
}

bool finite_on_support(const Values& F, const AtomicMeasure& mu) {
    for (PointId p = 0; p < F.size(); ++p)
        if (mu.weight(p) > 0 && !F[p].is_finite()) return false;
    return true;
}

// max over the local ball of F stays within tol of F(s).
bool upper_semicontinuous(const Values& F, const MetricPointSet& space, const RadiusSchedule& radii,
                          double tol, Verdict& v) {
    const auto balls = local_balls(space, radii);
    bool ok = true;
    double worst = 0;
    for (PointId s = 0; s < F.size(); ++s) {
        ExtReal m = F[s];
        for (PointId q : balls[s].points) m = max(m, F[q]);
        if (close(m, F[s], tol)) continue;
        ok = false;
        if (m.is_finite() && F[s].is_finite()) worst = std::max(worst, (m - F[s]).value());
        else worst = std::numeric_limits<double>::infinity();
    }
    v.set("limit_usc_excess", worst);
    return ok;
}

bool dominated_by_limit(const FunctionFamily& fam, const Values& F) {
    for (int n = 1; n <= fam.horizon(); ++n)
        for (PointId p = 0; p < fam.size(); ++p)
            if (F[p] < fam(n, p)) return false;
    return true;
}

Values positive_parts(const Values& F) {
    Values out;
    for (ExtReal x : F) out.push_back(x.pos_part());
    return out;
}

Values negative_parts(const Values& F) {
    Values out;
    for (ExtReal x : F) out.push_back(x.neg_part());
    return out;
}

Values first_term(const FunctionFamily& fam) {
    Values out;
    for (PointId p = 0; p < fam.size(); ++p) out.push_back(fam(1, p));
    return out;
}

Values monotone_limit(const FunctionFamily& fam) {
    if (fam.has_limit()) return limit_values(fam);
    Values out;
    for (PointId p = 0; p < fam.size(); ++p) out.push_back(fam(fam.horizon(), p));
    return out;
}

bool aui_of_function(const Values& F, const TheoremInstance& inst, Verdict& v, const std::string& name) {
    return aui_passes(constant_family(inst.fam.space(), inst.fam.horizon(), F), inst.seq, inst.opts, v, name);
}

}  // namespace

Verdict fatou_weak_double(const TheoremInstance& inst) {
    inst.validate();
    Verdict v = start("fatou_weak_double", inst.fam, inst.opts);
    v.hypothesis("weak_convergence", weak_passes(inst, v));
    const bool aui = aui_passes(inst.fam.negative_part(), inst.seq, inst.opts, v, "aui_negative");
    v.hypothesis("aui_negative_or_minorant", aui || minorant_holds(inst, true, v));
    const auto I = term_integrals(inst.fam, inst.seq);
    const bool holds = fatou_conclusion(double_lower_values(inst.fam, inst.radii), inst.fam, inst.seq, I,
                                        inst.opts, v);
    v.settle(holds);
    return v;
}

Verdict fatou_classic_weak(const TheoremInstance& inst) {
    inst.validate();
    if (!inst.fam.has_limit()) throw InputError("fatou_classic_weak needs a limit function");
    Verdict v = start("fatou_classic_weak", inst.fam, inst.opts);
    v.hypothesis("weak_convergence", weak_passes(inst, v));
    v.hypothesis("lsec",
                 lsec_check(inst.fam, inst.opts.eps_schedule, inst.radii).status == Status::pass);
    v.hypothesis("lower_semi_convergence_in_measure",
                 lower_semi_converges(inst.fam, inst.seq.limit(), inst.opts, SemiDirection::lower, v,
                                      "lower_semi_convergence"));
    const bool aui = aui_passes(inst.fam.negative_part(), inst.seq, inst.opts, v, "aui_negative");
    v.hypothesis("aui_negative_or_minorant", aui || minorant_holds(inst, true, v));
    const auto I = term_integrals(inst.fam, inst.seq);
    v.set("double_lower_integral",
          integrate_values(double_lower_values(inst.fam, inst.radii), inst.seq.limit()).value());
    const bool holds = fatou_conclusion(limit_values(inst.fam), inst.fam, inst.seq, I, inst.opts, v);
    v.settle(holds);
    return v;
}

Verdict fatou_setwise(const TheoremInstance& inst) {
    inst.validate();
    if (!inst.fam.has_limit()) throw InputError("fatou_setwise needs a limit function");
    Verdict parent = start("fatou_setwise", inst.fam, inst.opts);
    const bool setwise = setwise_passes(inst, parent);
    parent.hypothesis("setwise_convergence", setwise);
    const auto I = term_integrals(inst.fam, inst.seq);
    const Values F = limit_values(inst.fam);

    Verdict a = start("lower_semi_convergence", inst.fam, inst.opts);
    a.hypothesis("setwise_convergence", setwise);
    a.hypothesis("real_valued_limit", finite_on_support(F, inst.seq.limit()));
    a.hypothesis("lower_semi_convergence_in_measure",
                 lower_semi_converges(inst.fam, inst.seq.limit(), inst.opts, SemiDirection::lower, a,
                                      "lower_semi_convergence"));
    a.hypothesis("aui_negative", aui_passes(inst.fam.negative_part(), inst.seq, inst.opts, a, "aui_negative"));
    a.settle(fatou_conclusion(F, inst.fam, inst.seq, I, inst.opts, a));

    Verdict b = start("minorant", inst.fam, inst.opts);
    b.hypothesis("setwise_convergence", setwise);
    b.hypothesis("real_valued_limit", finite_on_support(F, inst.seq.limit()));
    b.hypothesis("lower_semi_convergence_in_measure",
                 lower_semi_converges(inst.fam, inst.seq.limit(), inst.opts, SemiDirection::lower, b,
                                      "lower_semi_convergence"));
    b.hypothesis("minorant", minorant_holds(inst, false, b));
    b.settle(fatou_conclusion(F, inst.fam, inst.seq, I, inst.opts, b));

    Verdict c = start("pointwise_lower_limit", inst.fam, inst.opts);
    c.hypothesis("setwise_convergence", setwise);
    const bool aui = aui_passes(inst.fam.negative_part(), inst.seq, inst.opts, c, "aui_negative");
    c.hypothesis("aui_negative_or_minorant", aui || minorant_holds(inst, false, c));
    c.settle(fatou_conclusion(pointwise_lower_values(inst.fam), inst.fam, inst.seq, I, inst.opts, c));

    parent.children = {a, b, c};
    parent.status = aggregate(parent.children);
    for (const auto& name : {"lhs", "liminf_integral"})
        if (auto q = a.quantity(name)) parent.set(name, *q);
    if (auto q = c.quantity("lhs")) parent.set("pointwise_lower_integral", *q);
    return parent;
}

ExtReal fatou_gap(const FunctionFamily& fam, const PointFunction& f, const AtomicMeasure& mu_n,
                  const AtomicMeasure& mu, int n) {
    ExtReal gap(0.0);
    for (PointId p = 0; p < fam.size(); ++p) {
        const ExtReal d = fam(n, p).weighted(mu_n.weight(p)) - f(p).weighted(mu.weight(p));
        gap = gap + min(d, ExtReal(0.0));
    }
    return gap;
}

Verdict uniform_fatou_gap(const FunctionFamily& fam, const PointFunction& f, const MeasureSequence& seq,
                          const EngineOptions& opts) {
    if (fam.size() != seq.space()->size() || fam.horizon() != seq.horizon())
        throw InputError("family and measure sequence must share space and horizon");
    Verdict v = start("uniform_fatou_gap", fam, opts);
    const int N = fam.horizon();
    const AtomicMeasure& mu = seq.limit();
    v.hypothesis("tv_convergence", tv_convergence_check(seq, opts.measure_tol).status == Status::pass);
    bool integrable = integrate([&f](PointId p) { return f(p).abs(); }, mu).value().is_finite();
    const FunctionFamily magnitude = fam.absolute();
    for (int n = 1; n <= N && integrable; ++n)
        integrable = integrate(magnitude.term(n), seq[n]).value().is_finite();
    v.hypothesis("integrable", integrable);
    if (!v.all_hypotheses()) {
        v.status = Status::inapplicable;
        return v;
    }
    // Conclusion side: min over the tail of gap_n + sum |f| |w_n - w| >= -tol.
    ExtReal worst = ExtReal::pos_inf();
    ExtReal raw = ExtReal::pos_inf();
    for (int n = tail_start(N); n <= N; ++n) {
        const ExtReal g = fatou_gap(fam, f, seq[n], mu, n);
        ExtReal transport(0.0);
        for (PointId p = 0; p < fam.size(); ++p)
            transport = transport + f(p).abs().weighted(std::fabs(seq[n].weight(p) - mu.weight(p)));
        raw = min(raw, g);
        worst = min(worst, g + transport);
    }
    const bool conclusion = worst >= ExtReal(-opts.tol);
    Values F;
    for (PointId p = 0; p < fam.size(); ++p) F.push_back(f(p));
    const bool cond_i = lower_semi_converges(with_limit(fam, F), mu, opts, SemiDirection::lower, v,
                                             "lower_semi_convergence");
    const bool cond_ii = aui_passes(fam.negative_part(), seq, opts, v, "aui_negative");
    v.set("liminf_gap", raw);
    v.set("liminf_gap_with_transport", worst);
    v.set("conclusion", conclusion ? 1.0 : 0.0);
    v.set("condition_i", cond_i ? 1.0 : 0.0);
    v.set("condition_ii", cond_ii ? 1.0 : 0.0);
    v.settle(conclusion == (cond_i && cond_ii));
    return v;
}

Verdict lebesgue_weak(const TheoremInstance& inst) {
    inst.validate();
    Verdict parent = start("lebesgue_weak", inst.fam, inst.opts);
    const bool weak = weak_passes(inst, parent);
    parent.hypothesis("weak_convergence", weak);
    const auto I = term_integrals(inst.fam, inst.seq);
    const AtomicMeasure& mu = inst.seq.limit();

    Verdict a = start("double_limit", inst.fam, inst.opts);
    a.hypothesis("weak_convergence", weak);
    a.hypothesis("aui_absolute", aui_passes(inst.fam.absolute(), inst.seq, inst.opts, a, "aui_absolute"));
    const Values lower = double_lower_values(inst.fam, inst.radii);
    bool exists = true;
    for (PointId p = 0; p < inst.fam.size() && exists; ++p)
        if (mu.weight(p) > 0 && !close(lower[p], double_upper_limit(inst.fam, p, inst.radii), inst.opts.function_tol))
            exists = false;
    a.hypothesis("double_limit_exists", exists);
    a.settle(equality_conclusion(lower, inst.fam, inst.seq, I, inst.opts, a));

    Verdict b = start("equicontinuous", inst.fam, inst.opts);
    b.hypothesis("weak_convergence", weak);
    const bool has_limit = inst.fam.has_limit();
    b.hypothesis("limit_given", has_limit);
    if (has_limit) {
        const Values F = limit_values(inst.fam);
        b.hypothesis("real_valued_limit", finite_on_support(F, mu));
        b.hypothesis("lsec", lsec_check(inst.fam, inst.opts.eps_schedule, inst.radii).status == Status::pass);
        b.hypothesis("usec", usec_check(inst.fam, inst.opts.eps_schedule, inst.radii).status == Status::pass);
        b.hypothesis("convergence_in_measure",
                     lower_semi_converges(inst.fam, mu, inst.opts, SemiDirection::both, b, "convergence"));
        b.hypothesis("aui_absolute", aui_passes(inst.fam.absolute(), inst.seq, inst.opts, b, "aui_absolute"));
        b.settle(equality_conclusion(F, inst.fam, inst.seq, I, inst.opts, b));
    } else {
        b.status = Status::inapplicable;
    }

    parent.children = {a, b};
    parent.status = aggregate(parent.children);
    if (auto q = a.quantity("final_integral")) parent.set("final_integral", *q);
    return parent;
}

Verdict lebesgue_setwise(const TheoremInstance& inst) {
    inst.validate();
    if (!inst.fam.has_limit()) throw InputError("lebesgue_setwise needs a limit function");
    Verdict v = start("lebesgue_setwise", inst.fam, inst.opts);
    v.hypothesis("setwise_convergence", setwise_passes(inst, v));
    const Values F = limit_values(inst.fam);
    v.hypothesis("real_valued_limit", finite_on_support(F, inst.seq.limit()));
    v.hypothesis("convergence_in_measure", lower_semi_converges(inst.fam, inst.seq.limit(), inst.opts,
                                                                SemiDirection::both, v, "convergence"));
    v.hypothesis("aui_absolute", aui_passes(inst.fam.absolute(), inst.seq, inst.opts, v, "aui_absolute"));
    const auto I = term_integrals(inst.fam, inst.seq);
    v.settle(equality_conclusion(F, inst.fam, inst.seq, I, inst.opts, v));
    return v;
}

Verdict monotone_weak(const TheoremInstance& inst) {
    inst.validate();
    Verdict parent = start("monotone_weak", inst.fam, inst.opts);
    const bool nondecreasing = inst.fam.pointwise_nondecreasing();
    const bool weak = weak_passes(inst, parent);
    parent.hypothesis("nondecreasing", nondecreasing);
    parent.hypothesis("weak_convergence", weak);
    const auto I = term_integrals(inst.fam, inst.seq);
    const Values F = monotone_limit(inst.fam);
    const MetricPointSet& space = *inst.fam.space();

    Verdict a = start("semicontinuous_limit", inst.fam, inst.opts);
    a.hypothesis("nondecreasing", nondecreasing);
    a.hypothesis("weak_convergence", weak);
    a.hypothesis("limit_dominates_terms", dominated_by_limit(inst.fam, F));
    a.hypothesis("lower_semicontinuous_terms", inst.opts.terms_lower_semicontinuous);
    a.assumptions.push_back("lower semicontinuity of each term is caller-asserted");
    a.hypothesis("upper_semicontinuous_limit",
                 upper_semicontinuous(F, space, inst.radii, inst.opts.function_tol, a));
    a.hypothesis("aui_first_negative", aui_of_function(negative_parts(first_term(inst.fam)), inst, a,
                                                       "aui_first_negative"));
    a.hypothesis("aui_limit_positive", aui_of_function(positive_parts(F), inst, a, "aui_limit_positive"));
    a.settle(equality_conclusion(F, inst.fam, inst.seq, I, inst.opts, a));

    Verdict b = start("lower_envelope", inst.fam, inst.opts);
    const auto balls = local_balls(space, inst.radii);
    const FunctionFamily envelope(
        inst.fam.space(), inst.fam.horizon(),
        [&](int n, PointId p) {
            ExtReal m = inst.fam(n, p);
            for (PointId q : balls[p].points) m = min(m, inst.fam(n, q));
            return m;
        },
        PointFunction([&F](PointId p) { return F[p]; }));
    b.hypothesis("nondecreasing", nondecreasing);
    b.hypothesis("weak_convergence", weak);
    b.hypothesis("limit_dominates_terms", dominated_by_limit(inst.fam, F));
    bool real_valued = true;
    for (ExtReal x : F) real_valued = real_valued && x.is_finite();
    b.hypothesis("real_valued_limit", real_valued);
    b.hypothesis("upper_semicontinuous_limit",
                 upper_semicontinuous(F, space, inst.radii, inst.opts.function_tol, b));
    b.hypothesis("envelope_lower_semi_convergence",
                 lower_semi_converges(envelope, inst.seq.limit(), inst.opts, SemiDirection::lower, b,
                                      "envelope_lower_semi_convergence"));
    b.hypothesis("aui_envelope_first_negative",
                 aui_of_function(negative_parts(first_term(envelope)), inst, b, "aui_envelope_first_negative"));
    b.hypothesis("aui_limit_positive", aui_of_function(positive_parts(F), inst, b, "aui_limit_positive"));
    b.settle(equality_conclusion(F, inst.fam, inst.seq, I, inst.opts, b));

    parent.children = {a, b};
    parent.status = aggregate(parent.children);
    if (auto q = a.quantity("final_integral")) parent.set("final_integral", *q);
    if (auto q = a.quantity("limit_integral")) parent.set("limit_integral", *q);
    return parent;
}

Verdict monotone_setwise(const TheoremInstance& inst) {
    inst.validate();
    Verdict v = start("monotone_setwise", inst.fam, inst.opts);
    const Values F = monotone_limit(inst.fam);
    v.hypothesis("nondecreasing", inst.fam.pointwise_nondecreasing());
    v.hypothesis("setwise_convergence", setwise_passes(inst, v));
    v.hypothesis("limit_dominates_terms", dominated_by_limit(inst.fam, F));
    v.hypothesis("aui_first_negative",
                 aui_of_function(negative_parts(first_term(inst.fam)), inst, v, "aui_first_negative"));
    v.hypothesis("aui_limit_positive", aui_of_function(positive_parts(F), inst, v, "aui_limit_positive"));
    const auto I = term_integrals(inst.fam, inst.seq);
    v.settle(equality_conclusion(F, inst.fam, inst.seq, I, inst.opts, v));
    return v;
}

}  // namespace vmlab
