#include "snowspan/nets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace snowspan {

NetHierarchy::NetHierarchy(std::size_t n, std::vector<std::vector<std::size_t>> levels,
                           std::vector<std::vector<std::size_t>> parents)
    : n_(n), levels_(std::move(levels)), parents_(std::move(parents)) {
    if (levels_.empty()) {
        throw std::invalid_argument("hierarchy needs at least the ground level");
    }
    if (parents_.size() + 1 != levels_.size()) {
        throw std::invalid_argument("hierarchy needs one parent table per non-top level");
    }
    for (std::size_t i = 0; i < parents_.size(); ++i) {
        if (parents_[i].size() != levels_[i].size()) {
            throw std::invalid_argument("parent table of level " + std::to_string(i) + " does not match its net");
        }
    }
    for (auto& level : levels_) {
        if (!std::is_sorted(level.begin(), level.end())) {
            throw std::invalid_argument("net levels must be sorted by point index");
        }
    }
}

std::span<const std::size_t> NetHierarchy::level(int i) const {
    return levels_.at(static_cast<std::size_t>(i));
}

bool NetHierarchy::contains(int i, std::size_t point) const {
    const auto& net = levels_.at(static_cast<std::size_t>(i));
    return std::binary_search(net.begin(), net.end(), point);
}

std::size_t NetHierarchy::parent(std::size_t point, int i) const {
    if (i < 0 || i >= ell()) {
        throw std::out_of_range("no parent level above level " + std::to_string(i));
    }
    const auto& net = levels_[static_cast<std::size_t>(i)];
    const auto it = std::lower_bound(net.begin(), net.end(), point);
    if (it == net.end() || *it != point) {
        throw std::out_of_range("point " + std::to_string(point) + " is not in level " + std::to_string(i));
    }
    return parents_[static_cast<std::size_t>(i)][static_cast<std::size_t>(it - net.begin())];
}

int hierarchy_depth(const MetricSummary& summary, std::size_t n) {
    return n >= 2 ? std::max(summary.ell, 1) : 0;
}

NetHierarchy build_hierarchy(const MetricView& metric) {
    return build_hierarchy(metric, summarize(metric));
}

NetHierarchy build_hierarchy(const MetricView& metric, const MetricSummary& summary) {
    const std::size_t n = metric.size();
    if (n == 0) {
        throw std::invalid_argument("build_hierarchy: empty point set");
    }
    if (n >= 2 && summary.min_distance < 1.0 - kUnitMinTolerance) {
        std::ostringstream msg;
        msg << "build_hierarchy: minimum distance " << summary.min_distance << " (points " << summary.min_pair_u
            << ", " << summary.min_pair_v << ") is below 1; call rescale_to_unit_min first";
        throw std::invalid_argument(msg.str());
    }
    const int ell = hierarchy_depth(summary, n);

    std::vector<std::vector<std::size_t>> levels;
    levels.reserve(static_cast<std::size_t>(ell) + 1);
    std::vector<std::size_t> ground(n);
    for (std::size_t i = 0; i < n; ++i) ground[i] = i;
    levels.push_back(std::move(ground));

    for (int i = 1; i <= ell; ++i) {
        const double radius = std::ldexp(1.0, i);
        std::vector<std::size_t> admitted;
        for (std::size_t p : levels.back()) {
            bool far = true;
            for (std::size_t q : admitted) {
                if (!(metric.distance(p, q) > radius)) {
                    far = false;
                    break;
                }
            }
            if (far) admitted.push_back(p);
        }
        levels.push_back(std::move(admitted));
    }

    std::vector<std::vector<std::size_t>> parents(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) {
        const auto& net = levels[static_cast<std::size_t>(i)];
        const auto& up = levels[static_cast<std::size_t>(i) + 1];
        auto& out = parents[static_cast<std::size_t>(i)];
        out.reserve(net.size());
        for (std::size_t p : net) {
            std::size_t best = up.front();
            double best_distance = kInfinity;
            for (std::size_t q : up) {
                const double d = q == p ? 0.0 : metric.distance(p, q);
                if (d < best_distance) {  // ascending scan keeps the lowest index on ties
                    best_distance = d;
                    best = q;
                }
            }
            out.push_back(best);
        }
    }
    return NetHierarchy(n, std::move(levels), std::move(parents));
}

std::string HierarchyViolation::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::ground_level:
            out << "level 0 is not the full point set";
            break;
        case Kind::top_level:
            out << "top level " << level << " has " << a << " points, expected 1";
            break;
        case Kind::nesting:
            out << "point " << a << " of level " << level << " is missing from level " << level - 1;
            break;
        case Kind::packing:
            out << "packing: points " << a << " and " << b << " of level " << level << " are " << distance
                << " apart (must exceed 2^" << level << ")";
            break;
        case Kind::cover:
            out << "cover: point " << a << " of level " << level - 1 << " is " << distance
                << " from its nearest level-" << level << " point " << b;
            break;
        case Kind::parent:
            out << "parent: point " << a << " of level " << level << " has parent " << b << " at distance "
                << distance;
            break;
    }
    return out.str();
}

bool HierarchyReport::has(HierarchyViolation::Kind kind) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const HierarchyViolation& v) { return v.kind == kind; });
}

HierarchyReport verify_hierarchy(const NetHierarchy& h, const MetricView& metric) {
    using Kind = HierarchyViolation::Kind;
    HierarchyReport report;
    const auto& levels = h.levels();
    const std::size_t n = metric.size();

    bool ground_ok = levels.front().size() == n;
    for (std::size_t k = 0; ground_ok && k < n; ++k) {
        ground_ok = levels.front()[k] == k;
    }
    if (!ground_ok) {
        report.violations.push_back({Kind::ground_level, 0});
    }
    if (levels.back().size() != 1) {
        report.violations.push_back({Kind::top_level, h.ell(), levels.back().size()});
    }

    for (int i = 1; i <= h.ell(); ++i) {
        const auto& net = levels[static_cast<std::size_t>(i)];
        const auto& below = levels[static_cast<std::size_t>(i) - 1];
        const double radius = std::ldexp(1.0, i);

        for (std::size_t p : net) {
            if (!std::binary_search(below.begin(), below.end(), p)) {
                report.violations.push_back({Kind::nesting, i, p});
            }
        }
        for (std::size_t x = 0; x < net.size(); ++x) {
            for (std::size_t y = x + 1; y < net.size(); ++y) {
                const double d = metric.distance(net[x], net[y]);
                if (!(d > radius)) {
                    report.violations.push_back({Kind::packing, i, net[x], net[y], d});
                }
            }
        }
        for (std::size_t p : below) {
            double nearest = kInfinity;
            std::size_t witness = p;
            for (std::size_t q : net) {
                const double d = p == q ? 0.0 : metric.distance(p, q);
                if (d < nearest) {
                    nearest = d;
                    witness = q;
                }
            }
            if (!(nearest <= radius)) {
                report.violations.push_back({Kind::cover, i, p, witness, nearest});
            }
        }
    }

    for (int i = 0; i < h.ell(); ++i) {
        const auto& net = levels[static_cast<std::size_t>(i)];
        const auto& up = levels[static_cast<std::size_t>(i) + 1];
        const auto& parents = h.parent_table()[static_cast<std::size_t>(i)];
        const double radius = std::ldexp(1.0, i + 1);
        for (std::size_t k = 0; k < net.size(); ++k) {
            const std::size_t p = net[k];
            const std::size_t q = parents[k];
            const bool in_up = std::binary_search(up.begin(), up.end(), q);
            const double d = (q >= n) ? kInfinity : (p == q ? 0.0 : metric.distance(p, q));
            if (!in_up || !(d <= radius)) {
                report.violations.push_back({Kind::parent, i, p, q, d});
            }
        }
    }
    return report;
}

RadiiReport sum_of_radii(const NetHierarchy& h) {
    RadiiReport report;
    for (int i = 0; i < h.ell(); ++i) {
        const std::size_t count = h.level(i).size();
        const double radii = static_cast<double>(count) * std::ldexp(1.0, i);
        report.per_level.push_back({i, count, radii});
        report.total += radii;
    }
    return report;
}

double estimate_ddim(const NetHierarchy& h, const MetricView& metric) {
    std::size_t worst = 1;
    for (int i = 0; i <= h.ell(); ++i) {
        const auto net = h.level(i);
        const double radius = std::ldexp(1.0, i + 2);
        for (std::size_t p : net) {
            std::size_t count = 0;
            for (std::size_t q : net) {
                if (p == q || metric.distance(p, q) <= radius) ++count;
            }
            worst = std::max(worst, count);
        }
    }
    // log2(count) / log2(2^{i+2} / 2^i) / 2
    return std::log2(static_cast<double>(worst)) / 4.0;
}

}  // namespace snowspan
