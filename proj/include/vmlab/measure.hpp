#pragma once

#include "vmlab/ext_real.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace vmlab {

using PointId = std::size_t;

enum class MetricKind {
    euclidean,   // |x - y| on the coordinates
    discrete,    // 1 for distinct points
    tagged,      // |x - y| for distinct coordinates, tag_gap for equal coordinates and distinct tags
    split_unit,  // |x - y| when both coordinates lie in [0,1), otherwise discrete
};

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

/// A finite metric space. Points are identified by their index; each carries a
/// real coordinate and (for the tagged metric) an integer tag.
class MetricPointSet {
public:
    MetricPointSet(std::string id, std::vector<double> coords, MetricKind kind,
                   std::vector<int> tags = {}, double tag_gap = 0.0);

    const std::string& id() const { return id_; }
    std::size_t size() const { return coords_.size(); }
    MetricKind kind() const { return kind_; }
    double coord(PointId p) const { return coords_[p]; }
    int tag(PointId p) const { return tags_.empty() ? 0 : tags_[p]; }
    const std::vector<double>& coords() const { return coords_; }
    const std::vector<int>& tags() const { return tags_; }
    double tag_gap() const { return tag_gap_; }

    double distance(PointId a, PointId b) const;

    /// Open ball {q : distance(p, q) < radius}; always contains p. Sorted by id.
    std::vector<PointId> ball(PointId p, double radius) const;

    /// Smallest positive distance from p to another point (+inf if p is alone).
    double nearest_distance(PointId p) const;

    /// Exhaustive check of the metric axioms; returns a description of the
    /// first violation or an empty string.
    std::string check_axioms() const;

    /// Index of the point whose coordinate is closest to x (ties: lowest id).
    PointId nearest_to(double x, int tag = 0) const;

private:
    std::string id_;
    std::vector<double> coords_;
    MetricKind kind_;
    std::vector<int> tags_;
    double tag_gap_;
    std::vector<PointId> by_coord_;  // ids sorted by (coord, id)
};

using SpacePtr = std::shared_ptr<const MetricPointSet>;

/// Finite nonnegative measure with one (possibly zero) weight per point.
class AtomicMeasure {
public:
    AtomicMeasure(SpacePtr space, std::vector<double> weights);

    static AtomicMeasure zero(SpacePtr space);
    static AtomicMeasure dirac(SpacePtr space, PointId p, double mass = 1.0);

    const SpacePtr& space() const { return space_; }
    std::span<const double> weights() const { return weights_; }
    double weight(PointId p) const { return weights_[p]; }

    /// mu(C) for a set of point ids.
    double mass_of(std::span<const PointId> set) const;

private:
    SpacePtr space_;
    std::vector<double> weights_;
};

/// Result of an integral: either a defined extended real or undefined
/// (both the positive and negative part integrals are +inf).
class IntegralValue {
public:
    static IntegralValue defined(ExtReal v) { return IntegralValue(v); }
    static IntegralValue undefined() { return IntegralValue(); }

    bool is_defined() const { return value_.has_value(); }
    ExtReal value() const;

    friend bool operator==(const IntegralValue&, const IntegralValue&) = default;

private:
    IntegralValue() = default;
    explicit IntegralValue(ExtReal v) : value_(v) {}
    std::optional<ExtReal> value_;
};

using PointFunction = std::function<ExtReal(PointId)>;

/// Integral of f with respect to mu, split into positive and negative parts.
/// Atoms of weight zero contribute nothing even where f is infinite. Any
/// exception thrown by f is reported as InputError.
IntegralValue integrate(const PointFunction& f, const AtomicMeasure& mu);

/// Sum over atoms of |w_mu - w_nu|.
double total_variation_distance(const AtomicMeasure& mu, const AtomicMeasure& nu);

double total_mass(const AtomicMeasure& mu);

nlohmann::ordered_json to_json(const MetricPointSet& space);
SpacePtr space_from_json(const nlohmann::json& doc);

/// {space_id, points, weights}; weights are decimal strings.
nlohmann::ordered_json to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const nlohmann::json& doc, SpacePtr space);

}  // namespace vmlab
