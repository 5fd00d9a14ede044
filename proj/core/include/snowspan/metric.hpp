#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace snowspan {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised when two points of a set coincide under the metric in use.
class DuplicatePointError : public std::invalid_argument {
public:
    DuplicatePointError(std::size_t first, std::size_t second);

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// A finite point set, stored either as coordinate vectors or as an explicit
/// distance matrix. Immutable once constructed.
class PointSet {
public:
    PointSet() = default;

    /// Coordinate form. All rows must share one positive dimension and hold
    /// finite values.
    static PointSet from_coords(const std::vector<std::vector<double>>& rows);
    static PointSet from_flat(std::size_t dim, std::vector<double> flat);

    /// Matrix form. Validates symmetry, zero diagonal, non-negativity and the
    /// triangle inequality (relative tolerance 1e-9).
    static PointSet from_matrix(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }
    bool has_coords() const noexcept { return dim_ > 0; }
    bool is_matrix() const noexcept { return dim_ == 0 && n_ > 0; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const;
    double entry(std::size_t i, std::size_t j) const;

    /// Row-major storage: n*dim coordinates, or n*n matrix entries.
    const std::vector<double>& data() const noexcept { return data_; }

    /// Copy with every coordinate (or matrix entry) divided by `factor`.
    PointSet scaled_down(double factor) const;

private:
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Describes how distances are computed: an Lp norm over coordinates, a stored
/// matrix, or the snowflake of another description.
struct MetricSpec {
    enum class Kind { lp, snowflake, matrix };

    Kind kind = Kind::lp;
    double p = 2.0;      // lp only; kInfinity for the max norm
    double alpha = 1.0;  // snowflake only, in (0,1)
    std::shared_ptr<const MetricSpec> base;

    static MetricSpec lp(double p);
    static MetricSpec l1() { return lp(1.0); }
    static MetricSpec l2() { return lp(2.0); }
    static MetricSpec linf() { return lp(kInfinity); }
    static MetricSpec matrix();
    static MetricSpec snowflake(MetricSpec base, double alpha);

    /// Accepts "l1", "l2", "linf", "lp:<p>", "matrix" and
    /// "snowflake:<base-spec>:<alpha>".
    static MetricSpec parse(std::string_view text);
    std::string to_string() const;

    /// Innermost non-snowflake description.
    const MetricSpec& root() const;

    bool operator==(const MetricSpec& other) const;
};

/// Non-owning distance oracle over a PointSet. The PointSet must outlive the
/// view.
class MetricView {
public:
    MetricView(const PointSet& points, MetricSpec spec);

    double distance(std::size_t i, std::size_t j) const;
    double operator()(std::size_t i, std::size_t j) const { return distance(i, j); }

    const PointSet& points() const noexcept { return *points_; }
    const MetricSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return points_->size(); }

    bool is_snowflake() const noexcept { return spec_.kind == MetricSpec::Kind::snowflake; }
    double alpha() const;
    /// The metric a snowflake view exponentiates. Throws for non-snowflake views.
    MetricView base() const;

private:
    const PointSet* points_;
    MetricSpec spec_;
};

/// ||u - v||_p; p = kInfinity gives the max coordinate difference.
double lp_distance(std::span<const double> u, std::span<const double> v, double p);

/// base_distance^alpha for alpha in (0,1).
double snowflake_distance(double base_distance, double alpha);

/// Smallest integer k with 2^k >= x (x > 0). Exact: compares against powers of two.
int ceil_log2(double x);

struct MetricSummary {
    double diameter = 0.0;
    double min_distance = 0.0;
    int ell = 0;  // ceil(log2 diameter), clamped at 0
    std::size_t min_pair_u = 0;
    std::size_t min_pair_v = 0;
};

/// Exact all-pairs diameter and minimum distance.
MetricSummary summarize(const MetricView& metric);

/// Scaled copy of the underlying points whose minimum pairwise distance under
/// `metric` is 1. Snowflake views rescale by the base-metric minimum, which
/// makes the snowflake minimum 1 as well.
PointSet rescale_to_unit_min(const MetricView& metric);

/// Lower bound on min pairwise distance accepted by net and ledger routines.
inline constexpr double kUnitMinTolerance = 1e-9;

}  // namespace snowspan
