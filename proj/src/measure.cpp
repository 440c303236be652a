#include "vmlab/measure.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace vmlab {

std::string format_number(ExtReal x) {
    if (x.is_pos_inf()) return "inf";
    if (x.is_neg_inf()) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x.value());
    return buf;
}

ExtReal parse_number(const std::string& text) {
    if (text == "inf" || text == "+inf") return ExtReal::pos_inf();
    if (text == "-inf") return ExtReal::neg_inf();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InputError("not a number: '" + text + "'");
    }
    if (used != text.size() || std::isnan(v)) throw InputError("not a number: '" + text + "'");
    return ExtReal(v);
}

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::discrete: return "discrete";
        case MetricKind::tagged: return "tagged";
        case MetricKind::split_unit: return "split_unit";
    }
    return "?";
}

MetricKind metric_kind_from_string(const std::string& name) {
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "discrete") return MetricKind::discrete;
    if (name == "tagged") return MetricKind::tagged;
    if (name == "split_unit") return MetricKind::split_unit;
    throw InputError("unknown metric '" + name + "'");
}

namespace {

bool in_unit(double x) { return x >= 0.0 && x < 1.0; }

}  // namespace

MetricPointSet::MetricPointSet(std::string id, std::vector<double> coords, MetricKind kind,
                               std::vector<int> tags, double tag_gap)
    : id_(std::move(id)), coords_(std::move(coords)), kind_(kind), tags_(std::move(tags)),
      tag_gap_(tag_gap) {
    if (!tags_.empty() && tags_.size() != coords_.size())
        throw InputError("tags must be empty or match the number of points");
    if (kind_ == MetricKind::tagged && !(tag_gap_ > 0.0))
        throw InputError("tagged metric needs a positive tag_gap");
    for (double c : coords_)
        if (!std::isfinite(c)) throw InputError("point coordinates must be finite");
    by_coord_.resize(coords_.size());
    std::iota(by_coord_.begin(), by_coord_.end(), PointId{0});
    std::sort(by_coord_.begin(), by_coord_.end(), [this](PointId a, PointId b) {
        return coords_[a] != coords_[b] ? coords_[a] < coords_[b] : a < b;
    });
    // Distinct points must be at positive distance.
    for (std::size_t i = 1; i < by_coord_.size(); ++i) {
        PointId a = by_coord_[i - 1], b = by_coord_[i];
        if (coords_[a] == coords_[b] && (kind_ != MetricKind::tagged || tag(a) == tag(b)) &&
            kind_ != MetricKind::discrete)
            throw InputError("duplicate point in space '" + id_ + "'");
    }
}

double MetricPointSet::distance(PointId a, PointId b) const {
    if (a == b) return 0.0;
    const double x = coords_[a], y = coords_[b];
    switch (kind_) {
        case MetricKind::euclidean: return std::fabs(x - y);
        case MetricKind::discrete: return 1.0;
        case MetricKind::tagged:
            if (x != y) return std::fabs(x - y);
            return tag(a) == tag(b) ? 0.0 : tag_gap_;
        case MetricKind::split_unit:
            if (in_unit(x) && in_unit(y)) return std::fabs(x - y);
            return 1.0;
    }
    return 0.0;
}

std::vector<PointId> MetricPointSet::ball(PointId p, double radius) const {
    std::vector<PointId> out;
    if ((kind_ == MetricKind::discrete || kind_ == MetricKind::split_unit) && radius > 1.0) {
        out.resize(size());
        std::iota(out.begin(), out.end(), PointId{0});
        return out;
    }
    // Every metric here dominates |x - y| whenever the ball radius is at most 1,
    // so a coordinate window bounds the candidates.
    const double c = coords_[p];
    auto lo = std::lower_bound(by_coord_.begin(), by_coord_.end(), c - radius,
                               [this](PointId q, double v) { return coords_[q] < v; });
    for (auto it = lo; it != by_coord_.end() && coords_[*it] <= c + radius; ++it)
        if (distance(p, *it) < radius) out.push_back(*it);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

double MetricPointSet::nearest_distance(PointId p) const {
    double best = std::numeric_limits<double>::infinity();
    if (size() < 2) return best;
    if (kind_ == MetricKind::discrete) return 1.0;
    const double c = coords_[p];
    auto pos = std::find(by_coord_.begin(), by_coord_.end(), p);
    // Scan outward while coordinate gaps can still beat the best distance.
    for (auto it = pos; it != by_coord_.begin();) {
        --it;
        double d = distance(p, *it);
        if (d > 0) best = std::min(best, d);
        if (c - coords_[*it] >= best) break;
    }
    for (auto it = std::next(pos); it != by_coord_.end(); ++it) {
        double d = distance(p, *it);
        if (d > 0) best = std::min(best, d);
        if (coords_[*it] - c >= best) break;
    }
    if (kind_ == MetricKind::split_unit) best = std::min(best, 1.0);
    return best;
}

std::string MetricPointSet::check_axioms() const {
    const std::size_t n = std::min<std::size_t>(size(), 200);
    const double slack = 1e-12;
    for (PointId a = 0; a < n; ++a) {
        if (distance(a, a) != 0.0) return "d(p,p) != 0";
        for (PointId b = 0; b < n; ++b) {
            if (a != b && !(distance(a, b) > 0.0)) return "distinct points at distance 0";
            if (distance(a, b) != distance(b, a)) return "asymmetric distance";
            for (PointId c = 0; c < n; ++c)
                if (distance(a, b) > distance(a, c) + distance(c, b) + slack)
                    return "triangle inequality fails";
        }
    }
    return {};
}

PointId MetricPointSet::nearest_to(double x, int want_tag) const {
    PointId best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (PointId p = 0; p < size(); ++p) {
        if (!tags_.empty() && tag(p) != want_tag) continue;
        double d = std::fabs(coords_[p] - x);
        if (d < best_d) {
            best_d = d;
            best = p;
        }
    }
    return best;
}

AtomicMeasure::AtomicMeasure(SpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw InputError("measure needs a space");
    if (weights_.size() != space_->size())
        throw InputError("weights must be given for every point of the space");
    for (double w : weights_)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw InputError("weights must be finite and nonnegative");
}

AtomicMeasure AtomicMeasure::zero(SpacePtr space) {
    std::vector<double> w(space->size(), 0.0);
    return AtomicMeasure(std::move(space), std::move(w));
}

AtomicMeasure AtomicMeasure::dirac(SpacePtr space, PointId p, double mass) {
    std::vector<double> w(space->size(), 0.0);
    w.at(p) = mass;
    return AtomicMeasure(std::move(space), std::move(w));
}

double AtomicMeasure::mass_of(std::span<const PointId> set) const {
    double m = 0.0;
    for (PointId p : set) m += weights_.at(p);
    return m;
}

ExtReal IntegralValue::value() const {
    if (!value_) throw UndefinedArithmetic("integral is undefined");
    return *value_;
}

IntegralValue integrate(const PointFunction& f, const AtomicMeasure& mu) {
    double pos = 0.0, neg = 0.0;
    const auto w = mu.weights();
    for (PointId p = 0; p < w.size(); ++p) {
        if (w[p] == 0.0) continue;
        ExtReal v;
        try {
            v = f(p);
        } catch (const std::exception& e) {
            throw InputError("integrand evaluation failed at point " + std::to_string(p) + ": " +
                             e.what());
        }
        pos += v.pos_part().weighted(w[p]).value();
        neg += v.neg_part().weighted(w[p]).value();
    }
    if (std::isinf(pos) && std::isinf(neg)) return IntegralValue::undefined();
    return IntegralValue::defined(ExtReal(pos) - ExtReal(neg));
}

double total_variation_distance(const AtomicMeasure& mu, const AtomicMeasure& nu) {
    if (mu.space() != nu.space() && mu.space()->id() != nu.space()->id())
        throw InputError("total variation distance needs measures on the same space");
    if (mu.weights().size() != nu.weights().size()) throw InputError("space size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < mu.weights().size(); ++i)
        d += std::fabs(mu.weights()[i] - nu.weights()[i]);
    return d;
}

double total_mass(const AtomicMeasure& mu) {
    double m = 0.0;
    for (double w : mu.weights()) m += w;
    return m;
}

nlohmann::ordered_json to_json(const MetricPointSet& space) {
    nlohmann::ordered_json doc;
    doc["space_id"] = space.id();
    doc["metric"] = to_string(space.kind());
    auto& pts = doc["points"] = nlohmann::ordered_json::array();
    for (double c : space.coords()) pts.push_back(format_number(c));
    if (!space.tags().empty()) doc["tags"] = space.tags();
    if (space.kind() == MetricKind::tagged) doc["tag_gap"] = format_number(space.tag_gap());
    return doc;
}

SpacePtr space_from_json(const nlohmann::json& doc) {
    try {
        std::vector<double> coords;
        for (const auto& p : doc.at("points"))
            coords.push_back(p.is_string() ? parse_number(p.get<std::string>()).value()
                                           : p.get<double>());
        std::vector<int> tags;
        if (doc.contains("tags")) tags = doc.at("tags").get<std::vector<int>>();
        double gap = 0.0;
        if (doc.contains("tag_gap")) {
            const auto& g = doc.at("tag_gap");
            gap = g.is_string() ? parse_number(g.get<std::string>()).value() : g.get<double>();
        }
        return std::make_shared<const MetricPointSet>(
            doc.value("space_id", std::string("space")), std::move(coords),
            metric_kind_from_string(doc.value("metric", std::string("euclidean"))),
            std::move(tags), gap);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed space document: ") + e.what());
    }
}

nlohmann::ordered_json to_json(const AtomicMeasure& mu) {
    nlohmann::ordered_json doc;
    doc["space_id"] = mu.space()->id();
    auto pts = nlohmann::ordered_json::array();
    auto ws = nlohmann::ordered_json::array();
    for (PointId p = 0; p < mu.weights().size(); ++p) {
        pts.push_back(p);
        ws.push_back(format_number(mu.weights()[p]));
    }
    doc["points"] = std::move(pts);
    doc["weights"] = std::move(ws);
    return doc;
}

AtomicMeasure measure_from_json(const nlohmann::json& doc, SpacePtr space) {
    try {
        if (doc.at("space_id").get<std::string>() != space->id())
            throw InputError("measure refers to space '" + doc.at("space_id").get<std::string>() +
                             "', expected '" + space->id() + "'");
        const auto& pts = doc.at("points");
        const auto& ws = doc.at("weights");
        if (pts.size() != ws.size()) throw InputError("points and weights differ in length");
        std::vector<double> w(space->size(), 0.0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto p = pts[i].get<std::size_t>();
            if (p >= space->size()) throw InputError("weight on a point outside the space");
            w[p] = parse_number(ws[i].get<std::string>()).value();
        }
        return AtomicMeasure(std::move(space), std::move(w));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed measure document: ") + e.what());
    }
}

}  // namespace vmlab
