#include "vmlab/family.hpp"

#include <algorithm>
#include <cmath>

namespace vmlab {

FunctionFamily::FunctionFamily(SpacePtr space, int horizon, const Generator& eval,
                               std::optional<PointFunction> limit)
    : space_(std::move(space)), horizon_(horizon) {
    if (!space_) throw InputError("family needs a space");
    if (horizon_ < kMinHorizon)
        throw InputError("horizon must be at least " + std::to_string(kMinHorizon));
    const std::size_t np = space_->size();
    values_.reserve(static_cast<std::size_t>(horizon_) * np);
    for (int n = 1; n <= horizon_; ++n)
        for (PointId p = 0; p < np; ++p) values_.push_back(eval(n, p));
    if (limit) {
        limit_.reserve(np);
        for (PointId p = 0; p < np; ++p) limit_.push_back((*limit)(p));
    }
}

FunctionFamily::FunctionFamily(SpacePtr space, int horizon, std::vector<ExtReal> values,
                               std::vector<ExtReal> limit)
    : space_(std::move(space)), horizon_(horizon), values_(std::move(values)),
      limit_(std::move(limit)) {
    if (horizon_ < 1) throw InputError("family horizon must be positive");
}

ExtReal FunctionFamily::limit(PointId p) const {
    if (limit_.empty()) throw InputError("family has no limit candidate");
    return limit_[p];
}

PointFunction FunctionFamily::term(int n) const {
    if (n < 1 || n > horizon_) throw InputError("family index out of range");
    return [this, n](PointId p) { return (*this)(n, p); };
}

PointFunction FunctionFamily::limit_function() const {
    if (limit_.empty()) throw InputError("family has no limit candidate");
    return [this](PointId p) { return limit_[p]; };
}

namespace {

std::vector<ExtReal> map_values(const std::vector<ExtReal>& v, ExtReal (*op)(ExtReal)) {
    std::vector<ExtReal> out;
    out.reserve(v.size());
    for (ExtReal x : v) out.push_back(op(x));
    return out;
}

ExtReal negate(ExtReal x) { return -x; }
ExtReal pos(ExtReal x) { return x.pos_part(); }
ExtReal neg(ExtReal x) { return x.neg_part(); }
ExtReal absval(ExtReal x) { return x.abs(); }

}  // namespace

FunctionFamily FunctionFamily::negated() const {
    return FunctionFamily(space_, horizon_, map_values(values_, negate), map_values(limit_, negate));
}

FunctionFamily FunctionFamily::positive_part() const {
    return FunctionFamily(space_, horizon_, map_values(values_, pos), map_values(limit_, pos));
}

FunctionFamily FunctionFamily::negative_part() const {
    return FunctionFamily(space_, horizon_, map_values(values_, neg), map_values(limit_, neg));
}

FunctionFamily FunctionFamily::absolute() const {
    return FunctionFamily(space_, horizon_, map_values(values_, absval), map_values(limit_, absval));
}

FunctionFamily FunctionFamily::shifted(int offset) const {
    if (offset < 0 || offset >= horizon_) throw InputError("shift outside the horizon");
    std::vector<ExtReal> v(values_.begin() + static_cast<std::ptrdiff_t>(offset * size()),
                           values_.end());
    return FunctionFamily(space_, horizon_ - offset, std::move(v), limit_);
}

bool FunctionFamily::pointwise_nondecreasing() const {
    for (int n = 1; n < horizon_; ++n)
        for (PointId p = 0; p < size(); ++p)
            if ((*this)(n + 1, p) < (*this)(n, p)) return false;
    return true;
}

MeasureSequence::MeasureSequence(SpacePtr space, int horizon,
                                 const std::function<AtomicMeasure(int)>& term, AtomicMeasure limit)
    : space_(std::move(space)), limit_(std::move(limit)) {
    if (horizon < kMinHorizon)
        throw InputError("horizon must be at least " + std::to_string(kMinHorizon));
    terms_.reserve(static_cast<std::size_t>(horizon));
    for (int n = 1; n <= horizon; ++n) {
        terms_.push_back(term(n));
        if (terms_.back().space()->size() != space_->size())
            throw InputError("sequence term on a different space");
    }
    if (limit_.space()->size() != space_->size()) throw InputError("limit on a different space");
}

MeasureSequence::MeasureSequence(SpacePtr space, std::vector<AtomicMeasure> terms, AtomicMeasure limit)
    : space_(std::move(space)), terms_(std::move(terms)), limit_(std::move(limit)) {}

MeasureSequence MeasureSequence::constant(const AtomicMeasure& mu, int horizon) {
    return MeasureSequence(mu.space(), horizon, [&mu](int) { return mu; }, mu);
}

MeasureSequence MeasureSequence::shifted(int offset) const {
    if (offset < 0 || offset >= horizon()) throw InputError("shift outside the horizon");
    std::vector<AtomicMeasure> t(terms_.begin() + offset, terms_.end());
    return MeasureSequence(space_, std::move(t), limit_);
}

RadiusSchedule::RadiusSchedule(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw InputError("radius schedule is empty");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!(radii_[i] > 0.0)) throw InputError("radii must be positive");
        if (i > 0 && !(radii_[i] < radii_[i - 1])) throw InputError("radii must strictly decrease");
    }
}

RadiusSchedule RadiusSchedule::dyadic(int depth) {
    std::vector<double> r;
    for (int k = 1; k <= depth; ++k) r.push_back(std::ldexp(1.0, -k));
    return RadiusSchedule(std::move(r));
}

LocalBall local_ball(const MetricPointSet& space, PointId p, const RadiusSchedule& radii) {
    const double nearest = space.nearest_distance(p);
    const auto& r = radii.radii();
    // Radii decrease, so scan from the back for the first one exceeding the gap.
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
        if (*it > nearest) return LocalBall{space.ball(p, *it), *it, false};
    }
    return LocalBall{{p}, r.back(), true};
}

std::vector<LocalBall> local_balls(const MetricPointSet& space, const RadiusSchedule& radii) {
    std::vector<LocalBall> out;
    out.reserve(space.size());
    for (PointId p = 0; p < space.size(); ++p) out.push_back(local_ball(space, p, radii));
    return out;
}

std::vector<double> default_eps_schedule() {
    std::vector<double> e;
    for (int k = 0; k <= 10; ++k) e.push_back(std::ldexp(1.0, -k));
    return e;
}

}  // namespace vmlab
