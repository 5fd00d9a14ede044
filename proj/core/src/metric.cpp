#include "snowspan/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace snowspan {

namespace {

std::string format_double(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("cannot format number");
    }
    return std::string(buffer, end);
}

double parse_double(std::string_view text, std::string_view what) {
    if (text == "inf" || text == "infinity") {
        return kInfinity;
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

void check_p(double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("lp norm requires p >= 1, got " + format_double(p));
    }
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("snowflake exponent must lie in (0,1), got " + format_double(alpha));
    }
}

double spec_distance(const PointSet& points, const MetricSpec& spec, std::size_t i, std::size_t j) {
    switch (spec.kind) {
        case MetricSpec::Kind::lp:
            return lp_distance(points.point(i), points.point(j), spec.p);
        case MetricSpec::Kind::matrix:
            return points.entry(i, j);
        case MetricSpec::Kind::snowflake:
            return std::pow(spec_distance(points, *spec.base, i, j), spec.alpha);
    }
    return 0.0;
}

}  // namespace

DuplicatePointError::DuplicatePointError(std::size_t first, std::size_t second)
    : std::invalid_argument("points " + std::to_string(first) + " and " + std::to_string(second) +
                            " coincide (distance 0)"),
      first_(first),
      second_(second) {}

// ---------------------------------------------------------------------------
// PointSet

PointSet PointSet::from_coords(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("coordinate point set needs at least one point");
    }
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) {
            throw std::invalid_argument("point " + std::to_string(i) + " has dimension " +
                                        std::to_string(rows[i].size()) + ", expected " + std::to_string(dim));
        }
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return from_flat(dim, std::move(flat));
}

PointSet PointSet::from_flat(std::size_t dim, std::vector<double> flat) {
    if (dim == 0) {
        throw std::invalid_argument("coordinate dimension must be positive");
    }
    if (flat.empty() || flat.size() % dim != 0) {
        throw std::invalid_argument("coordinate buffer size is not a positive multiple of the dimension");
    }
    for (std::size_t k = 0; k < flat.size(); ++k) {
        if (!std::isfinite(flat[k])) {
            throw std::invalid_argument("non-finite coordinate in point " + std::to_string(k / dim));
        }
    }
    PointSet set;
    set.n_ = flat.size() / dim;
    set.dim_ = dim;
    set.data_ = std::move(flat);
    return set;
}

PointSet PointSet::from_matrix(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) {
        throw std::invalid_argument("distance matrix must be non-empty");
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw std::invalid_argument("distance matrix row " + std::to_string(i) + " is not of length " +
                                        std::to_string(n));
        }
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    auto at = [&](std::size_t i, std::size_t j) { return flat[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) != 0.0) {
            throw std::invalid_argument("distance matrix diagonal entry " + std::to_string(i) + " is not zero");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double d = at(i, j);
            if (!std::isfinite(d) || d < 0.0) {
                throw std::invalid_argument("distance matrix entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") is negative or non-finite");
            }
            if (d != at(j, i)) {
                throw std::invalid_argument("distance matrix is not symmetric at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const double via = at(i, k) + at(k, j);
                if (at(i, j) > via * (1.0 + 1e-9)) {
                    std::ostringstream msg;
                    msg << "triangle inequality fails: d(" << i << "," << j << ") = " << at(i, j) << " > d(" << i
                        << "," << k << ") + d(" << k << "," << j << ") = " << via;
                    throw std::invalid_argument(msg.str());
                }
            }
        }
    }
    PointSet set;
    set.n_ = n;
    set.dim_ = 0;
    set.data_ = std::move(flat);
    return set;
}

std::span<const double> PointSet::point(std::size_t i) const {
    if (!has_coords()) {
        throw std::logic_error("matrix point set has no coordinates");
    }
    return {data_.data() + i * dim_, dim_};
}

double PointSet::entry(std::size_t i, std::size_t j) const {
    if (!is_matrix()) {
        throw std::logic_error("coordinate point set has no stored matrix");
    }
    return data_[i * n_ + j];
}

PointSet PointSet::scaled_down(double factor) const {
    PointSet copy = *this;
    for (double& x : copy.data_) {
        x /= factor;
    }
    return copy;
}

// ---------------------------------------------------------------------------
// MetricSpec

MetricSpec MetricSpec::lp(double p) {
    check_p(p);
    MetricSpec spec;
    spec.kind = Kind::lp;
    spec.p = p;
    return spec;
}

MetricSpec MetricSpec::matrix() {
    MetricSpec spec;
    spec.kind = Kind::matrix;
    return spec;
}

MetricSpec MetricSpec::snowflake(MetricSpec base, double alpha) {
    check_alpha(alpha);
    MetricSpec spec;
    spec.kind = Kind::snowflake;
    spec.alpha = alpha;
    spec.base = std::make_shared<const MetricSpec>(std::move(base));
    return spec;
}

MetricSpec MetricSpec::parse(std::string_view text) {
    if (text == "l1") return l1();
    if (text == "l2") return l2();
    if (text == "linf") return linf();
    if (text == "matrix") return matrix();
    if (text.starts_with("lp:")) {
        return lp(parse_double(text.substr(3), "norm parameter"));
    }
    constexpr std::string_view prefix = "snowflake:";
    if (text.starts_with(prefix)) {
        const std::string_view rest = text.substr(prefix.size());
        const auto colon = rest.rfind(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("snowflake metric needs 'snowflake:<base>:<alpha>'");
        }
        return snowflake(parse(rest.substr(0, colon)), parse_double(rest.substr(colon + 1), "snowflake exponent"));
    }
    throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

std::string MetricSpec::to_string() const {
    switch (kind) {
        case Kind::lp:
            if (p == 1.0) return "l1";
            if (p == 2.0) return "l2";
            if (p == kInfinity) return "linf";
            return "lp:" + format_double(p);
        case Kind::matrix:
            return "matrix";
        case Kind::snowflake:
            return "snowflake:" + base->to_string() + ":" + format_double(alpha);
    }
    return {};
}

const MetricSpec& MetricSpec::root() const {
    const MetricSpec* spec = this;
    while (spec->kind == Kind::snowflake) {
        spec = spec->base.get();
    }
    return *spec;
}

bool MetricSpec::operator==(const MetricSpec& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case Kind::lp:
            return p == other.p;
        case Kind::matrix:
            return true;
        case Kind::snowflake:
            return alpha == other.alpha && *base == *other.base;
    }
    return false;
}

// ---------------------------------------------------------------------------
// MetricView

MetricView::MetricView(const PointSet& points, MetricSpec spec) : points_(&points), spec_(std::move(spec)) {
    const MetricSpec& root = spec_.root();
    if (root.kind == MetricSpec::Kind::lp && !points.has_coords()) {
        throw std::invalid_argument("metric '" + spec_.to_string() + "' needs a coordinate point set");
    }
    if (root.kind == MetricSpec::Kind::matrix && !points.is_matrix()) {
        throw std::invalid_argument("metric 'matrix' needs a distance-matrix point set");
    }
}

double MetricView::distance(std::size_t i, std::size_t j) const {
    return spec_distance(*points_, spec_, i, j);
}

double MetricView::alpha() const {
    if (!is_snowflake()) {
        throw std::logic_error("metric '" + spec_.to_string() + "' is not a snowflake");
    }
    return spec_.alpha;
}

MetricView MetricView::base() const {
    if (!is_snowflake()) {
        throw std::logic_error("metric '" + spec_.to_string() + "' is not a snowflake");
    }
    return MetricView(*points_, *spec_.base);
}

// ---------------------------------------------------------------------------

double lp_distance(std::span<const double> u, std::span<const double> v, double p) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("lp_distance: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()) + ")");
    }
    check_p(p);
    if (p == kInfinity) {
        double best = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            best = std::max(best, std::abs(u[k] - v[k]));
        }
        return best;
    }
    if (p == 2.0) {
        double sum = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double d = u[k] - v[k];
            sum += d * d;
        }
        return std::sqrt(sum);
    }
    if (p == 1.0) {
        double sum = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            sum += std::abs(u[k] - v[k]);
        }
        return sum;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        sum += std::pow(std::abs(u[k] - v[k]), p);
    }
    return std::pow(sum, 1.0 / p);
}

double snowflake_distance(double base_distance, double alpha) {
    check_alpha(alpha);
    if (base_distance < 0.0) {
        throw std::invalid_argument("snowflake_distance: negative base distance");
    }
    return std::pow(base_distance, alpha);
}

int ceil_log2(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("ceil_log2 needs a finite positive argument");
    }
    int k = std::ilogb(x);  // 2^k <= x < 2^(k+1)
    if (std::ldexp(1.0, k) < x) {
        ++k;
    }
    return k;
}

MetricSummary summarize(const MetricView& metric) {
    MetricSummary summary;
    const std::size_t n = metric.size();
    if (n < 2) {
        return summary;
    }
    summary.min_distance = kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = metric.distance(i, j);
            summary.diameter = std::max(summary.diameter, d);
            if (d < summary.min_distance) {
                summary.min_distance = d;
                summary.min_pair_u = i;
                summary.min_pair_v = j;
            }
        }
    }
    summary.ell = summary.diameter > 0.0 ? std::max(0, ceil_log2(summary.diameter)) : 0;
    return summary;
}

PointSet rescale_to_unit_min(const MetricView& metric) {
    if (metric.size() < 2) {
        throw std::invalid_argument("rescale_to_unit_min needs at least two points");
    }
    const MetricView root(metric.points(), metric.spec().root());
    const MetricSummary summary = summarize(root);
    if (summary.min_distance == 0.0) {
        throw DuplicatePointError(summary.min_pair_u, summary.min_pair_v);
    }
    return metric.points().scaled_down(summary.min_distance);
}

}  // namespace snowspan
