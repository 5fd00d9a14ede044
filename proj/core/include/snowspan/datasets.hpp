#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "snowspan/metric.hpp"

namespace snowspan {

enum class DatasetKind { grid, uniform, clustered, file };

std::string to_string(DatasetKind kind);
DatasetKind parse_dataset_kind(const std::string& text);

struct DatasetSpec {
    DatasetKind kind = DatasetKind::grid;
    std::size_t n = 0;
    std::size_t dim = 2;
    std::optional<std::uint64_t> seed;  // mandatory for uniform and clustered
    std::string path;                   // file kind only
};

/// Points 1, 2, ..., n on a line.
PointSet make_grid(std::size_t n);

/// n points uniform in [0, n^{1/dim}]^dim, rescaled to unit minimum distance.
PointSet make_uniform(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Gaussian blobs around seeded centres, rescaled to unit minimum distance.
PointSet make_clustered(std::size_t n, std::size_t dim, std::uint64_t seed);

PointSet generate(const DatasetSpec& spec);

}  // namespace snowspan
