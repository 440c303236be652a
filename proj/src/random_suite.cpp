#include "vmlab/random_suite.hpp"

#include "vmlab/convergence.hpp"
#include "vmlab/semicontinuity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace vmlab {

namespace {

using Rng = std::mt19937_64;

constexpr int kHorizon = 16;
// Heavy atoms sit beyond the largest K of the default schedule (2^20).
constexpr int kHeavyExponent = 21;

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }
double dyadic(Rng& rng, int lo, int hi, int denom) { return static_cast<double>(uniform_int(rng, lo, hi)) / denom; }
double decay(int n) { return std::ldexp(1.0, -4 * n); }
double heavy_weight(int n) { return std::ldexp(1.0, -(kHeavyExponent + n)); }
double heavy_value(int n) { return std::ldexp(1.0, kHeavyExponent + n); }

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<double> split(Rng& rng, double mass, std::size_t k, bool allow_zero) {
    std::vector<double> r(k);
    double s = 0;
    for (auto& x : r) {
        x = allow_zero && coin(rng, 0.25) ? 0.0 : uniform_int(rng, 1, 8);
        s += x;
    }
    if (s == 0) {
        r[0] = 1;
        s = 1;
    }
    for (auto& x : r) x = mass * x / s;
    return r;
}

MeasureSequence from_weights(const SpacePtr& space, std::vector<std::vector<double>> terms, std::vector<double> limit) {
    const int N = static_cast<int>(terms.size());
    return MeasureSequence(
        space, N, [&](int n) { return AtomicMeasure(space, terms[static_cast<std::size_t>(n - 1)]); },
        AtomicMeasure(space, std::move(limit)));
}

EngineOptions suite_options(Rng& rng, double tol) {
    EngineOptions o;
    o.tol = tol;
    o.measure_tol = tol;
    o.function_tol = tol;
    o.seed = rng();
    return o;
}

}  // namespace

const std::vector<std::string>& suite_engines() {
    static const std::vector<std::string> names{
        "fatou_weak_double", "fatou_classic_weak", "fatou_setwise",     "lebesgue_weak",      "lebesgue_setwise",
        "monotone_weak",     "monotone_setwise",   "uniform_fatou_gap", "convergence_chain", "mdp_oracle"};
    return names;
}

std::uint64_t trial_seed(std::uint64_t suite_seed, const std::string& engine, std::size_t trial) {
    return splitmix(splitmix(suite_seed ^ fnv1a(engine)) + trial);
}

RadiusSchedule cluster_radii() { return RadiusSchedule({0.25}); }

ClusteredSpace random_clustered_space(Rng& rng, bool with_heavy_point) {
    const int C = uniform_int(rng, 2, 5);
    std::vector<double> coords;
    ClusteredSpace cs;
    for (int c = 0; c < C; ++c) {
        const double centre = 2.0 * c + dyadic(rng, 0, 7, 16);
        const int size = uniform_int(rng, 1, 3);
        std::vector<PointId> members;
        for (int j = 0; j < size; ++j) {
            members.push_back(coords.size());
            coords.push_back(centre + j * 1e-9);
        }
        cs.clusters.push_back(std::move(members));
    }
    if (with_heavy_point) coords.push_back(2.0 * C + 1.0);
    cs.heavy = with_heavy_point ? coords.size() - 1 : coords.size();
    cs.space = std::make_shared<const MetricPointSet>("random-clustered", std::move(coords), MetricKind::euclidean);
    return cs;
}

namespace {

bool has_heavy(const ClusteredSpace& cs) { return cs.heavy < cs.space->size(); }

// Cluster masses shared by mu and every mu_n up to a 16^-n drift; the split
// inside a cluster is redrawn for every n when `fresh` is set. `swing` adds
// 1/4 to the first cluster at odd n, which breaks weak convergence.
MeasureSequence clustered_sequence(const ClusteredSpace& cs, Rng& rng, bool swing, bool fresh) {
    const std::size_t np = cs.space->size();
    std::vector<double> mu(np, 0.0), masses, drift;
    std::vector<std::vector<double>> shape;
    for (const auto& members : cs.clusters) {
        masses.push_back(dyadic(rng, 1, 16, 16));
        drift.push_back(dyadic(rng, 0, 8, 8));
        shape.push_back(split(rng, 1.0, members.size(), true));
        for (std::size_t j = 0; j < members.size(); ++j) mu[members[j]] = masses.back() * shape.back()[j];
    }
    std::vector<std::vector<double>> terms;
    for (int n = 1; n <= kHorizon; ++n) {
        std::vector<double> w(np, 0.0);
        for (std::size_t c = 0; c < cs.clusters.size(); ++c) {
            const auto& members = cs.clusters[c];
            double mass = masses[c] + drift[c] * decay(n);
            if (swing && c == 0 && n % 2 == 1) mass += 0.25;
            const auto part = fresh ? split(rng, mass, members.size(), false) : std::vector<double>{};
            for (std::size_t j = 0; j < members.size(); ++j)
                w[members[j]] = fresh ? part[j] : mass * shape[c][j];
        }
        if (has_heavy(cs)) w[cs.heavy] = heavy_weight(n);
        terms.push_back(std::move(w));
    }
    return from_weights(cs.space, std::move(terms), std::move(mu));
}

struct PlainSpace {
    SpacePtr space;
    PointId heavy;
};

PlainSpace random_plain_space(Rng& rng, int max_points, bool with_heavy_point) {
    const int P = uniform_int(rng, 3, max_points);
    std::vector<int> ks(64);
    for (int i = 0; i < 64; ++i) ks[static_cast<std::size_t>(i)] = i;
    std::shuffle(ks.begin(), ks.end(), rng);
    std::vector<double> coords;
    for (int i = 0; i < P; ++i) coords.push_back(ks[static_cast<std::size_t>(i)] / 64.0);
    std::sort(coords.begin(), coords.end());
    if (with_heavy_point) coords.push_back(2.0);
    PlainSpace ps;
    ps.heavy = with_heavy_point ? coords.size() - 1 : coords.size();
    ps.space = std::make_shared<const MetricPointSet>("random-plain", std::move(coords), MetricKind::euclidean);
    return ps;
}

// mu_n = mu + 16^-n nu, or mu + nu at odd n when `nonconv` is set.
MeasureSequence plain_sequence(const PlainSpace& ps, Rng& rng, bool nonconv) {
    const std::size_t np = ps.space->size();
    std::vector<double> mu(np, 0.0), nu(np, 0.0);
    for (PointId p = 0; p < np; ++p) {
        if (p == ps.heavy) continue;
        mu[p] = coin(rng, 0.2) ? 0.0 : dyadic(rng, 1, 16, 16);
        nu[p] = dyadic(rng, 0, 16, 16);
    }
    if (std::all_of(mu.begin(), mu.end(), [](double w) { return w == 0; })) mu[0] = 0.5;
    if (nonconv && std::all_of(nu.begin(), nu.end(), [](double w) { return w == 0; })) nu[0] = 0.5;
    std::vector<std::vector<double>> terms;
    for (int n = 1; n <= kHorizon; ++n) {
        std::vector<double> w(np);
        const double scale = nonconv ? (n % 2 == 1 ? 1.0 : 0.0) : decay(n);
        for (PointId p = 0; p < np; ++p) w[p] = mu[p] + scale * nu[p];
        if (ps.heavy < np) w[ps.heavy] = heavy_weight(n);
        terms.push_back(std::move(w));
    }
    return from_weights(ps.space, std::move(terms), std::move(mu));
}

PointId first_charged(const AtomicMeasure& mu) {
    for (PointId p = 0; p < mu.space()->size(); ++p)
        if (mu.weight(p) > 0) return p;
    return 0;
}

// Per-point description of f_n = base + offset(n) and the limit.
struct Values {
    std::vector<double> base;
    std::vector<double> rate;   // coefficient of 16^-n
    std::vector<double> shift;  // constant in n
    std::vector<double> alternating;  // added at odd n
    std::vector<int> heavy_sign;      // +-2^(21+n) when nonzero
    std::vector<double> limit_extra;
    bool heavy_constant = false;      // heavy atoms carry 2^40 for every n instead

    explicit Values(std::size_t np)
        : base(np, 0), rate(np, 0), shift(np, 0), alternating(np, 0), heavy_sign(np, 0), limit_extra(np, 0) {}

    ExtReal term(int n, PointId p) const {
        if (heavy_sign[p] != 0)
            return ExtReal(heavy_sign[p] * (heavy_constant ? std::ldexp(1.0, 40) : heavy_value(n)));
        return ExtReal(base[p] + rate[p] * decay(n) + shift[p] + (n % 2 == 1 ? alternating[p] : 0.0));
    }
    ExtReal limit(PointId p) const {
        if (heavy_sign[p] != 0) return ExtReal(heavy_constant ? std::ldexp(1.0, 40) : 0.0);
        return ExtReal(base[p] + limit_extra[p]);
    }
};

FunctionFamily family_of(const SpacePtr& space, const Values& v, bool with_limit) {
    auto gen = [v](int n, PointId p) { return v.term(n, p); };
    if (!with_limit) return FunctionFamily(space, kHorizon, gen);
    return FunctionFamily(space, kHorizon, gen, PointFunction([v](PointId p) { return v.limit(p); }));
}

// Cluster-constant base and 16^-n rates.
Values clustered_values(const ClusteredSpace& cs, Rng& rng, int rate_sign) {
    Values v(cs.space->size());
    for (const auto& members : cs.clusters) {
        const double b = dyadic(rng, -16, 16, 8);
        double a = dyadic(rng, -8, 8, 8);
        if (rate_sign != 0) a = rate_sign * std::fabs(a);
        for (PointId p : members) {
            v.base[p] = b;
            v.rate[p] = a;
        }
    }
    return v;
}

Values plain_values(const SpacePtr& space, PointId heavy, Rng& rng, int rate_sign) {
    Values v(space->size());
    for (PointId p = 0; p < space->size(); ++p) {
        if (p == heavy) continue;
        v.base[p] = dyadic(rng, -16, 16, 8);
        double a = dyadic(rng, -8, 8, 8);
        v.rate[p] = rate_sign != 0 ? rate_sign * std::fabs(a) : a;
    }
    return v;
}

// Adds j/4 to the j-th point of the first cluster with at least two points.
bool add_intra_variation(const ClusteredSpace& cs, Values& v, bool into_limit) {
    for (const auto& members : cs.clusters)
        if (members.size() >= 2) {
            for (std::size_t j = 0; j < members.size(); ++j) {
                v.shift[members[j]] += 0.25 * static_cast<double>(j);
                if (into_limit) v.limit_extra[members[j]] += 0.25 * static_cast<double>(j);
            }
            return true;
        }
    return false;
}

TheoremInstance weak_instance(const std::string& engine, Rng& rng, double tol) {
    const bool heavy = coin(rng, 0.2);
    const ClusteredSpace cs = random_clustered_space(rng, heavy);
    const bool swing = coin(rng, 0.1);
    MeasureSequence seq = clustered_sequence(cs, rng, swing, true);
    EngineOptions opts = suite_options(rng, tol);
    const auto& c0 = cs.clusters.front();

    if (engine == "fatou_weak_double") {
        Values v = clustered_values(cs, rng, 0);
        // The weak double-limit inequality needs no regularity: arbitrary spread.
        if (coin(rng, 0.5))
            for (PointId p = 0; p < cs.space->size(); ++p) v.shift[p] = dyadic(rng, 0, 8, 8);
        if (coin(rng, 0.2))
            for (PointId p : c0) v.alternating[p] = 0.5;
        if (heavy) v.heavy_sign[cs.heavy] = -1;
        return {family_of(cs.space, v, false), std::move(seq), std::nullopt, cluster_radii(), opts};
    }
    if (engine == "fatou_classic_weak" || engine == "lebesgue_weak") {
        Values v = clustered_values(cs, rng, 0);
        if (coin(rng, 0.2))
            for (PointId p : c0) v.shift[p] = engine == "lebesgue_weak" && coin(rng, 0.5) ? 0.5 : -0.5;
        if (coin(rng, 0.15))
            for (PointId p : c0) v.alternating[p] = 0.5;
        if (coin(rng, 0.2)) add_intra_variation(cs, v, false);
        if (heavy) v.heavy_sign[cs.heavy] = engine == "lebesgue_weak" && coin(rng, 0.5) ? 1 : -1;
        const bool with_limit = engine == "fatou_classic_weak" || coin(rng, 0.85);
        return {family_of(cs.space, v, with_limit), std::move(seq), std::nullopt, cluster_radii(), opts};
    }
    // monotone_weak
    Values v = clustered_values(cs, rng, -1);
    if (coin(rng, 0.15))
        for (PointId p : c0) v.rate[p] = 0.5;
    const bool intra = coin(rng, 0.2) && add_intra_variation(cs, v, true);
    opts.terms_lower_semicontinuous = !intra;
    if (heavy) {
        v.heavy_sign[cs.heavy] = 1;
        v.heavy_constant = true;
    }
    return {family_of(cs.space, v, coin(rng, 0.7)), std::move(seq), std::nullopt, cluster_radii(), opts};
}

TheoremInstance setwise_instance(const std::string& engine, Rng& rng, double tol) {
    const bool heavy = coin(rng, 0.2);
    const PlainSpace ps = random_plain_space(rng, 12, heavy);
    const bool nonconv = coin(rng, 0.1);
    MeasureSequence seq = plain_sequence(ps, rng, nonconv);
    const EngineOptions opts = suite_options(rng, tol);
    const PointId charged = first_charged(seq.limit());
    const std::size_t np = ps.space->size();

    if (engine == "fatou_setwise") {
        Values v = plain_values(ps.space, ps.heavy, rng, 0);
        if (coin(rng, 0.2)) v.shift[charged] = -0.5;
        if (coin(rng, 0.1)) v.alternating[charged] = 0.5;
        if (heavy) v.heavy_sign[ps.heavy] = -1;
        std::optional<FunctionFamily> minorant;
        if (coin(rng, 0.4)) {
            std::vector<double> gap(np);
            for (auto& g : gap) g = dyadic(rng, 0, 8, 8);
            minorant = FunctionFamily(ps.space, kHorizon,
                                      [v, gap](int n, PointId p) { return v.term(n, p) - ExtReal(gap[p]); });
        }
        FunctionFamily fam = family_of(ps.space, v, true);
        if (coin(rng, 0.05))
            fam = FunctionFamily(ps.space, kHorizon, [v](int n, PointId p) { return v.term(n, p); },
                                 PointFunction([v, charged](PointId p) {
                                     return p == charged ? ExtReal::pos_inf() : v.limit(p);
                                 }));
        return {std::move(fam), std::move(seq), std::move(minorant), RadiusSchedule::dyadic(), opts};
    }
    if (engine == "lebesgue_setwise") {
        Values v = plain_values(ps.space, ps.heavy, rng, 0);
        if (coin(rng, 0.2)) v.shift[charged] = coin(rng, 0.5) ? 0.5 : -0.5;
        if (coin(rng, 0.15)) v.alternating[charged] = 0.5;
        if (heavy) v.heavy_sign[ps.heavy] = coin(rng, 0.5) ? 1 : -1;
        return {family_of(ps.space, v, true), std::move(seq), std::nullopt, RadiusSchedule::dyadic(), opts};
    }
    // monotone_setwise
    Values v = plain_values(ps.space, ps.heavy, rng, -1);
    if (coin(rng, 0.15)) v.rate[charged] = 0.5;
    if (heavy) {
        v.heavy_sign[ps.heavy] = 1;
        v.heavy_constant = true;
    }
    return {family_of(ps.space, v, coin(rng, 0.7)), std::move(seq), std::nullopt, RadiusSchedule::dyadic(), opts};
}

}  // namespace

TheoremInstance random_instance(const std::string& engine, Rng& rng, double tol) {
    if (engine == "fatou_weak_double" || engine == "fatou_classic_weak" || engine == "lebesgue_weak" ||
        engine == "monotone_weak")
        return weak_instance(engine, rng, tol);
    if (engine == "fatou_setwise" || engine == "lebesgue_setwise" || engine == "monotone_setwise")
        return setwise_instance(engine, rng, tol);
    throw InputError("no theorem instance generator for '" + engine + "'");
}

UniformGapInstance random_uniform_gap_instance(Rng& rng) {
    const bool heavy = coin(rng, 0.3);
    const PlainSpace ps = random_plain_space(rng, 11, heavy);
    const bool nonconv = coin(rng, 0.1);
    MeasureSequence seq = plain_sequence(ps, rng, nonconv);
    Values v = plain_values(ps.space, ps.heavy, rng, 1);
    // Regime "drop": f_n = f - c on a set of positive limit mass.
    if (coin(rng, 0.35)) {
        const double c = dyadic(rng, 1, 8, 8);
        bool any = false;
        for (PointId p = 0; p < ps.space->size(); ++p)
            if (seq.limit().weight(p) > 0 && (coin(rng, 0.5) || !any)) {
                v.shift[p] = -c;
                any = true;
            }
    } else if (coin(rng, 0.3)) {
        for (auto& a : v.rate) a = -a;
    }
    if (heavy) v.heavy_sign[ps.heavy] = -1;
    std::vector<ExtReal> f;
    for (PointId p = 0; p < ps.space->size(); ++p) f.push_back(v.limit(p));
    return {family_of(ps.space, v, false), std::move(f), std::move(seq)};
}

ExtReal exhaustive_subset_gap(const UniformGapInstance& inst, int n) {
    const std::size_t np = inst.fam.size();
    if (np > 20) throw InputError("exhaustive subset enumeration is limited to 20 atoms");
    std::vector<ExtReal> d;
    for (PointId p = 0; p < np; ++p)
        d.push_back(inst.fam(n, p).weighted(inst.seq[n].weight(p)) - inst.f[p].weighted(inst.seq.limit().weight(p)));
    ExtReal best(0.0);
    for (std::uint32_t mask = 1; mask < (1u << np); ++mask) {
        ExtReal s(0.0);
        for (PointId p = 0; p < np; ++p)
            if (mask & (1u << p)) s = s + d[p];
        best = min(best, s);
    }
    return best;
}

MeasureSequence random_chain_sequence(Rng& rng) {
    switch (uniform_int(rng, 0, 5)) {
        case 0: return plain_sequence(random_plain_space(rng, 12, false), rng, false);
        case 1: return plain_sequence(random_plain_space(rng, 12, false), rng, true);
        case 2: {
            // Slow 2^-n approach: fails every mode at desk tolerances.
            const PlainSpace ps = random_plain_space(rng, 12, false);
            const std::size_t np = ps.space->size();
            std::vector<double> mu(np), nu(np);
            for (PointId p = 0; p < np; ++p) {
                mu[p] = dyadic(rng, 1, 16, 16);
                nu[p] = dyadic(rng, 0, 16, 16);
            }
            std::vector<std::vector<double>> terms;
            for (int n = 1; n <= kHorizon; ++n) {
                std::vector<double> w(np);
                for (PointId p = 0; p < np; ++p) w[p] = mu[p] + std::ldexp(nu[p], -n);
                terms.push_back(std::move(w));
            }
            return from_weights(ps.space, std::move(terms), std::move(mu));
        }
        case 3: return clustered_sequence(random_clustered_space(rng, false), rng, false, true);
        case 4: return clustered_sequence(random_clustered_space(rng, false), rng, false, false);
        default: return clustered_sequence(random_clustered_space(rng, false), rng, true, true);
    }
}

MdpModel random_unichain_model(Rng& rng) {
    const int S = uniform_int(rng, 2, 20), A = uniform_int(rng, 1, 5);
    std::vector<double> coords;
    for (int x = 0; x < S; ++x) coords.push_back(static_cast<double>(x) / S);
    auto space = std::make_shared<const MetricPointSet>("random-mdp", std::move(coords), MetricKind::euclidean);
    std::uniform_real_distribution<double> cost(0.0, 0.5), unit(0.0, 1.0);
    std::vector<std::string> actions;
    for (int a = 0; a < A; ++a) actions.push_back("a" + std::to_string(a + 1));
    std::vector<std::vector<ExtReal>> c(static_cast<std::size_t>(S));
    std::vector<std::vector<std::vector<double>>> q(static_cast<std::size_t>(S));
    for (int x = 0; x < S; ++x) {
        const int always = uniform_int(rng, 0, A - 1);
        for (int a = 0; a < A; ++a) {
            c[static_cast<std::size_t>(x)].push_back(a != always && coin(rng, 0.1) ? ExtReal::pos_inf()
                                                                                  : ExtReal(cost(rng)));
            std::vector<double> row(static_cast<std::size_t>(S));
            double s = 0;
            for (auto& r : row) s += (r = unit(rng));
            double total = 0;
            for (std::size_t y = 0; y + 1 < row.size(); ++y)
                total += (row[y] = 0.75 / S + 0.25 * row[y] / s);
            row.back() = 1.0 - total;
            q[static_cast<std::size_t>(x)].push_back(std::move(row));
        }
    }
    return MdpModel(std::move(space), std::move(actions), std::move(c), std::move(q));
}

namespace {

Verdict run_theorem(const std::string& engine, const TheoremInstance& inst) {
    if (engine == "fatou_weak_double") return fatou_weak_double(inst);
    if (engine == "fatou_classic_weak") return fatou_classic_weak(inst);
    if (engine == "fatou_setwise") return fatou_setwise(inst);
    if (engine == "lebesgue_weak") return lebesgue_weak(inst);
    if (engine == "lebesgue_setwise") return lebesgue_setwise(inst);
    if (engine == "monotone_weak") return monotone_weak(inst);
    return monotone_setwise(inst);
}

// Recomputes the uniform-gap verdict from scratch and cross-checks the engine.
Verdict uniform_trial(Rng& rng, double tol) {
    const UniformGapInstance inst = random_uniform_gap_instance(rng);
    EngineOptions opts = suite_options(rng, tol);
    const PointFunction f = [&inst](PointId p) { return inst.f[p]; };
    Verdict v = uniform_fatou_gap(inst.fam, f, inst.seq, opts);
    if (v.status == Status::inapplicable) return v;
    const int N = inst.fam.horizon();
    const AtomicMeasure& mu = inst.seq.limit();
    int mismatches = 0;
    ExtReal worst = ExtReal::pos_inf();
    for (int n = tail_start(N); n <= N; ++n) {
        const ExtReal exhaustive = exhaustive_subset_gap(inst, n);
        if (!(exhaustive == fatou_gap(inst.fam, f, inst.seq[n], mu, n))) ++mismatches;
        ExtReal transport(0.0);
        for (PointId p = 0; p < inst.fam.size(); ++p)
            transport = transport + inst.f[p].abs().weighted(std::fabs(inst.seq[n].weight(p) - mu.weight(p)));
        worst = min(worst, exhaustive + transport);
    }
    const bool conclusion = worst >= ExtReal(-tol);
    // (i): mu{f_n <= f - eps} <= tol over the last quarter, every eps.
    bool cond_i = true;
    for (double eps : opts.eps_schedule)
        for (int n = last_quarter_start(N); n <= N; ++n) {
            double m = 0;
            for (PointId p = 0; p < inst.fam.size(); ++p)
                if (inst.fam(n, p) <= inst.f[p] - ExtReal(eps)) m += mu.weight(p);
            cond_i = cond_i && m <= tol;
        }
    // (ii): tail integral of f_n^- beyond the largest K.
    const double K = opts.k_schedule.back();
    bool cond_ii = true;
    for (int n = tail_start(N); n <= N; ++n) {
        ExtReal t(0.0);
        for (PointId p = 0; p < inst.fam.size(); ++p) {
            const ExtReal neg = inst.fam(n, p).neg_part();
            if (neg >= ExtReal(K)) t = t + neg.weighted(inst.seq[n].weight(p));
        }
        cond_ii = cond_ii && t <= ExtReal(tol);
    }
    v.set("subset_oracle_mismatches", mismatches);
    v.set("oracle_conclusion", conclusion ? 1.0 : 0.0);
    v.set("oracle_condition_i", cond_i ? 1.0 : 0.0);
    v.set("oracle_condition_ii", cond_ii ? 1.0 : 0.0);
    const bool agrees = *v.quantity("conclusion") == ExtReal(conclusion ? 1.0 : 0.0) &&
                        *v.quantity("condition_i") == ExtReal(cond_i ? 1.0 : 0.0) &&
                        *v.quantity("condition_ii") == ExtReal(cond_ii ? 1.0 : 0.0);
    if (mismatches > 0 || !agrees || conclusion != (cond_i && cond_ii)) {
        v.status = Status::bug;
        v.notes.push_back("independent recomputation disagrees with the engine or the equivalence");
    }
    return v;
}

Verdict chain_trial(Rng& rng, double tol) {
    const MeasureSequence seq = random_chain_sequence(rng);
    const std::uint64_t seed = rng();
    const Verdict tv = tv_convergence_check(seq, tol);
    const Verdict sw = setwise_convergence_check(seq, tol, seed);
    const Verdict wk = weak_convergence_check(seq, 2 * tol, seed);
    Verdict v;
    v.check_id = "convergence_chain";
    v.horizon = seq.horizon();
    v.tolerance = tol;
    v.assumptions.push_back("weak tests take values in [-1, 1]; weak is checked at twice the tolerance");
    v.set("tv_distance", *tv.quantity("max_distance"));
    v.set("setwise_gap", *sw.quantity("max_gap"));
    v.set("all_subsets_gap", *sw.quantity("all_subsets_gap"));
    v.set("weak_gap", *wk.quantity("max_gap"));
    v.set("tv_pass", tv.status == Status::pass ? 1.0 : 0.0);
    v.set("setwise_pass", sw.status == Status::pass ? 1.0 : 0.0);
    v.set("weak_pass", wk.status == Status::pass ? 1.0 : 0.0);
    const bool first = tv.status != Status::pass || sw.status == Status::pass;
    const bool second = sw.status != Status::pass || wk.status == Status::pass;
    v.status = first && second ? Status::pass : Status::bug;
    return v;
}

Verdict mdp_trial(Rng& rng, double /*tol*/) {
    const MdpModel model = random_unichain_model(rng);
    constexpr double eps = 1e-6;
    const DiscountSweep sweep = vanishing_discount_sweep(model, default_alphas(), eps);
    const OracleSolution oracle = average_cost_oracle(model);
    Verdict v;
    v.check_id = "mdp_oracle";
    v.horizon = static_cast<double>(sweep.alphas.size());
    v.tolerance = 1e-3;
    v.set("states", static_cast<double>(model.num_states()));
    v.set("actions", static_cast<double>(model.num_actions()));
    v.set("w_star", oracle.w_star);
    const double du = std::fabs(sweep.w_upper - oracle.w_star), dl = std::fabs(sweep.w_lower - oracle.w_star);
    const double acoe = acoe_residual(model, oracle.u, oracle.w_star).max_gap();
    const double ineq_gap = discounted_inequality_violation(sweep, model);
    v.set("w_upper_deviation", du);
    v.set("w_lower_deviation", dl);
    v.set("oracle_acoe_gap", acoe);
    v.set("discounted_inequality_violation", ineq_gap);
    const bool ok = du <= 1e-3 && dl <= 1e-3 && acoe <= 1e-8 && ineq_gap <= eps;
    v.status = ok ? Status::pass : Status::bug;
    return v;
}

}  // namespace

TrialResult run_trial(const std::string& engine, std::uint64_t suite_seed, std::size_t trial, double tol) {
    const auto& names = suite_engines();
    if (std::find(names.begin(), names.end(), engine) == names.end())
        throw InputError("unknown engine '" + engine + "'");
    TrialResult r;
    r.engine = engine;
    r.trial = trial;
    r.seed = trial_seed(suite_seed, engine, trial);
    Rng rng(r.seed);
    try {
        if (engine == "uniform_fatou_gap") r.verdict = uniform_trial(rng, tol);
        else if (engine == "convergence_chain") r.verdict = chain_trial(rng, tol);
        else if (engine == "mdp_oracle") r.verdict = mdp_trial(rng, tol);
        else r.verdict = run_theorem(engine, random_instance(engine, rng, tol));
    } catch (const std::exception& e) {
        r.verdict = Verdict{};
        r.verdict.check_id = engine;
        r.verdict.status = Status::bug;
        r.verdict.notes.push_back(std::string("exception: ") + e.what());
    }
    return r;
}

std::size_t SuiteReport::bugs() const {
    std::size_t b = 0;
    for (const auto& s : summary) b += s.bug;
    return b;
}

SuiteReport run_random_suite(const SuiteOptions& options) {
    if (options.trials == 0) throw InputError("trials must be at least 1");
    SuiteReport report;
    report.options = options;
    const auto engines = options.engines.empty() ? suite_engines() : options.engines;
    for (const auto& e : engines)
        if (std::find(suite_engines().begin(), suite_engines().end(), e) == suite_engines().end())
            throw InputError("unknown engine '" + e + "'");
    const std::size_t total = engines.size() * options.trials;
    report.results.resize(total);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++)
            report.results[i] = run_trial(engines[i / options.trials], options.seed, i % options.trials, options.tol);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    for (std::size_t e = 0; e < engines.size(); ++e) {
        EngineSummary s;
        s.engine = engines[e];
        for (std::size_t t = 0; t < options.trials; ++t) {
            ++s.trials;
            switch (report.results[e * options.trials + t].verdict.status) {
                case Status::pass: ++s.pass; break;
                case Status::fail: ++s.fail; break;
                case Status::inapplicable: ++s.inapplicable; break;
                case Status::bug: ++s.bug; break;
            }
        }
        report.summary.push_back(s);
    }
    return report;
}

nlohmann::ordered_json to_json(const SuiteReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["seed"] = report.options.seed;
    doc["trials"] = report.options.trials;
    doc["tol"] = format_number(report.options.tol);
    auto& summary = doc["summary"] = nlohmann::ordered_json::array();
    for (const auto& s : report.summary)
        summary.push_back({{"engine", s.engine},
                           {"trials", s.trials},
                           {"pass", s.pass},
                           {"fail", s.fail},
                           {"inapplicable", s.inapplicable},
                           {"bug", s.bug}});
    auto& results = doc["results"] = nlohmann::ordered_json::array();
    for (const auto& r : report.results) {
        nlohmann::ordered_json j;
        j["engine"] = r.engine;
        j["trial"] = r.trial;
        j["seed"] = r.seed;
        j["status"] = to_string(r.verdict.status);
        auto& hyp = j["hypotheses"] = nlohmann::ordered_json::object();
        for (const auto& [name, holds] : r.verdict.hypotheses) hyp[name] = holds;
        auto& children = j["children"] = nlohmann::ordered_json::object();
        for (const auto& c : r.verdict.children) children[c.check_id] = to_string(c.status);
        if (!r.verdict.notes.empty()) j["notes"] = r.verdict.notes;
        results.push_back(std::move(j));
    }
    return doc;
}

std::string summary_csv(const SuiteReport& report) {
    std::ostringstream out;
    out << "engine,trials,pass,fail,inapplicable,bug\n";
    for (const auto& s : report.summary)
        out << s.engine << ',' << s.trials << ',' << s.pass << ',' << s.fail << ',' << s.inapplicable << ','
            << s.bug << '\n';
    return out.str();
}

}  // namespace vmlab
