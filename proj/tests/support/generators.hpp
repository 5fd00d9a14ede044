#pragma once

// Seeded generators for property tests. Every generator is a pure function of
// its seed so a failing case can be replayed from the printed seed alone.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "snowspan/metric.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::vector<double> vector(Rng& rng, std::size_t dim, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    std::vector<double> v(dim);
    for (double& x : v) x = gauss(rng);
    return v;
}

inline std::vector<double> cube_flat(Rng& rng, std::size_t n, std::size_t dim, double side) {
    std::uniform_real_distribution<double> coordinate(0.0, side);
    std::vector<double> flat(n * dim);
    for (double& x : flat) x = coordinate(rng);
    return flat;
}

/// n points uniform in [0, side]^dim, not rescaled.
inline snowspan::PointSet cube(std::uint64_t seed, std::size_t n, std::size_t dim, double side) {
    Rng rng(seed);
    return snowspan::PointSet::from_flat(dim, cube_flat(rng, n, dim, side));
}

/// Random cloud rescaled to unit minimum l2 distance.
inline snowspan::PointSet unit_cloud(std::uint64_t seed, std::size_t n, std::size_t dim) {
    const snowspan::PointSet raw = cube(seed, n, dim, std::pow(static_cast<double>(n), 1.0 / dim));
    return snowspan::rescale_to_unit_min(snowspan::MetricView(raw, snowspan::MetricSpec::l2()));
}

/// Shortest-path closure of a random complete weighted graph: always a metric.
inline std::vector<std::vector<double>> matrix_metric(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::uniform_real_distribution<double> weight(1.0, 10.0);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = weight(rng);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    return d;
}

/// Points 1..n on a line.
inline snowspan::PointSet grid(std::size_t n) {
    std::vector<double> flat(n);
    for (std::size_t k = 0; k < n; ++k) flat[k] = static_cast<double>(k + 1);
    return snowspan::PointSet::from_flat(1, flat);
}

}  // namespace gen
