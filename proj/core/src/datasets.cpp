#include "snowspan/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "snowspan/io.hpp"

namespace snowspan {

std::string to_string(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::grid:
            return "grid";
        case DatasetKind::uniform:
            return "uniform";
        case DatasetKind::clustered:
            return "clustered";
        case DatasetKind::file:
            return "file";
    }
    return {};
}

DatasetKind parse_dataset_kind(const std::string& text) {
    if (text == "grid") return DatasetKind::grid;
    if (text == "uniform") return DatasetKind::uniform;
    if (text == "clustered") return DatasetKind::clustered;
    if (text == "file") return DatasetKind::file;
    throw std::invalid_argument("unknown dataset kind '" + text + "' (expected grid, uniform, clustered or file)");
}

namespace {

void require_n(std::size_t n) {
    if (n == 0) throw std::invalid_argument("dataset needs n >= 1");
}

PointSet unit_scaled(std::size_t dim, std::vector<double> flat) {
    PointSet points = PointSet::from_flat(dim, std::move(flat));
    if (points.size() < 2) return points;
    return rescale_to_unit_min(MetricView(points, MetricSpec::l2()));
}

}  // namespace

PointSet make_grid(std::size_t n) {
    require_n(n);
    std::vector<double> flat(n);
    for (std::size_t k = 0; k < n; ++k) flat[k] = static_cast<double>(k + 1);
    return PointSet::from_flat(1, std::move(flat));
}

PointSet make_uniform(std::size_t n, std::size_t dim, std::uint64_t seed) {
    require_n(n);
    if (dim == 0) throw std::invalid_argument("dataset needs dim >= 1");
    const double side = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coordinate(0.0, side);
    std::vector<double> flat(n * dim);
    for (double& x : flat) x = coordinate(rng);
    return unit_scaled(dim, std::move(flat));
}

PointSet make_clustered(std::size_t n, std::size_t dim, std::uint64_t seed) {
    require_n(n);
    if (dim == 0) throw std::invalid_argument("dataset needs dim >= 1");
    const std::size_t clusters = std::clamp<std::size_t>(n / 32, 2, 16);
    const double side = 4.0 * std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coordinate(0.0, side);
    std::normal_distribution<double> spread(0.0, side / 16.0);
    std::uniform_int_distribution<std::size_t> which(0, clusters - 1);

    std::vector<double> centres(clusters * dim);
    for (double& x : centres) x = coordinate(rng);
    std::vector<double> flat(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = which(rng);
        for (std::size_t k = 0; k < dim; ++k) flat[i * dim + k] = centres[c * dim + k] + spread(rng);
    }
    return unit_scaled(dim, std::move(flat));
}

PointSet generate(const DatasetSpec& spec) {
    switch (spec.kind) {
        case DatasetKind::grid:
            return make_grid(spec.n);
        case DatasetKind::uniform:
        case DatasetKind::clustered:
            if (!spec.seed) {
                throw std::invalid_argument(to_string(spec.kind) + " datasets need an explicit seed");
            }
            return spec.kind == DatasetKind::uniform ? make_uniform(spec.n, spec.dim, *spec.seed)
                                                     : make_clustered(spec.n, spec.dim, *spec.seed);
        case DatasetKind::file:
            return load_points(spec.path);
    }
    throw std::invalid_argument("unknown dataset kind");
}

}  // namespace snowspan
