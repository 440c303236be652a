#pragma once

#include "vmlab/measure.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace vmlab {

inline constexpr int kMinHorizon = 8;

/// First index of the tail {n >= N/2} used for liminf / limsup renderings.
inline int tail_start(int horizon) { return (horizon + 1) / 2; }
/// First index of the last quarter of the horizon used for "-> as n -> inf".
inline int last_quarter_start(int horizon) { return horizon - horizon / 4 + 1; }

/// A sequence f_1..f_N of extended-real functions on a finite space, stored as
/// a dense table, with an optional candidate limit f.
class FunctionFamily {
public:
    using Generator = std::function<ExtReal(int n, PointId p)>;

    FunctionFamily(SpacePtr space, int horizon, const Generator& eval,
                   std::optional<PointFunction> limit = std::nullopt);

    const SpacePtr& space() const { return space_; }
    int horizon() const { return horizon_; }
    std::size_t size() const { return space_->size(); }

    /// f_n(p) for n in 1..horizon.
    ExtReal operator()(int n, PointId p) const {
        return values_[static_cast<std::size_t>(n - 1) * size() + p];
    }
    bool has_limit() const { return !limit_.empty(); }
    ExtReal limit(PointId p) const;

    PointFunction term(int n) const;
    PointFunction limit_function() const;

    FunctionFamily negated() const;
    /// n -> max(f_n, 0) and n -> max(-f_n, 0).
    FunctionFamily positive_part() const;
    FunctionFamily negative_part() const;
    FunctionFamily absolute() const;
    /// The family n -> f_{n + offset}, horizon reduced by offset.
    FunctionFamily shifted(int offset) const;

    bool pointwise_nondecreasing() const;

private:
    FunctionFamily(SpacePtr space, int horizon, std::vector<ExtReal> values,
                   std::vector<ExtReal> limit);

    SpacePtr space_;
    int horizon_;
    std::vector<ExtReal> values_;
    std::vector<ExtReal> limit_;
};

/// Measures mu_1..mu_N on one space together with the candidate limit mu.
class MeasureSequence {
public:
    MeasureSequence(SpacePtr space, int horizon, const std::function<AtomicMeasure(int)>& term,
                    AtomicMeasure limit);

    static MeasureSequence constant(const AtomicMeasure& mu, int horizon);

    const SpacePtr& space() const { return space_; }
    int horizon() const { return static_cast<int>(terms_.size()); }
    const AtomicMeasure& operator[](int n) const { return terms_.at(static_cast<std::size_t>(n - 1)); }
    const AtomicMeasure& limit() const { return limit_; }

    MeasureSequence shifted(int offset) const;

private:
    MeasureSequence(SpacePtr space, std::vector<AtomicMeasure> terms, AtomicMeasure limit);

    SpacePtr space_;
    std::vector<AtomicMeasure> terms_;
    AtomicMeasure limit_;
};

/// Strictly decreasing positive radii standing in for delta -> 0.
class RadiusSchedule {
public:
    explicit RadiusSchedule(std::vector<double> radii);
    /// {2^-1, 2^-2, ..., 2^-depth}.
    static RadiusSchedule dyadic(int depth = 20);

    const std::vector<double>& radii() const { return radii_; }

private:
    std::vector<double> radii_;
};

/// The neighbourhood used for "s' -> s": the smallest ball of the schedule that
/// contains a point other than s. When every ball is {s}, the point is isolated
/// at this resolution and the neighbourhood is {s}.
struct LocalBall {
    std::vector<PointId> points;
    double radius = 0;
    bool isolated = true;
};

LocalBall local_ball(const MetricPointSet& space, PointId p, const RadiusSchedule& radii);

/// Local balls for every point, computed once.
std::vector<LocalBall> local_balls(const MetricPointSet& space, const RadiusSchedule& radii);

/// {1, 1/2, ..., 2^-10}.
std::vector<double> default_eps_schedule();

}  // namespace vmlab
