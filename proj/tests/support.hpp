#pragma once

#include "vmlab/family.hpp"

#include <algorithm>
#include <random>

namespace testutil {

using Rng = std::mt19937_64;

inline double dyadic(Rng& rng, int lo, int hi, int denom) {
    return static_cast<double>(std::uniform_int_distribution<int>(lo, hi)(rng)) / denom;
}

inline vmlab::SpacePtr random_space(Rng& rng, std::size_t n, vmlab::MetricKind kind = vmlab::MetricKind::euclidean) {
    std::vector<int> ks(129);
    for (int i = 0; i <= 128; ++i) ks[static_cast<std::size_t>(i)] = i;
    std::shuffle(ks.begin(), ks.end(), rng);
    std::vector<double> coords;
    std::vector<int> tags;
    for (std::size_t i = 0; i < n; ++i) {
        coords.push_back(ks[i] / 64.0);
        tags.push_back(static_cast<int>(i % 2));
    }
    if (kind == vmlab::MetricKind::tagged)
        return std::make_shared<const vmlab::MetricPointSet>("t", coords, kind, tags, 0.25);
    return std::make_shared<const vmlab::MetricPointSet>("t", coords, kind);
}

inline vmlab::AtomicMeasure random_measure(Rng& rng, const vmlab::SpacePtr& s) {
    std::vector<double> w(s->size());
    for (auto& x : w) x = dyadic(rng, 0, 16, 16);
    return vmlab::AtomicMeasure(s, w);
}

inline std::vector<double> random_weights(Rng& rng, std::size_t n) {
    std::vector<double> w(n);
    for (auto& x : w) x = dyadic(rng, 0, 16, 16);
    return w;
}

/// Dense random family with values in [-4, 4] on multiples of 1/8.
inline vmlab::FunctionFamily random_family(Rng& rng, const vmlab::SpacePtr& s, int horizon) {
    std::vector<double> table(s->size() * static_cast<std::size_t>(horizon));
    for (auto& x : table) x = dyadic(rng, -32, 32, 8);
    const std::size_t np = s->size();
    return vmlab::FunctionFamily(s, horizon, [table, np](int n, vmlab::PointId p) {
        return vmlab::ExtReal(table[static_cast<std::size_t>(n - 1) * np + p]);
    });
}

}  // namespace testutil
