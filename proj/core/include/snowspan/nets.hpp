#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "snowspan/metric.hpp"

namespace snowspan {

/// Hierarchical nets N_0 = X ⊇ N_1 ⊇ ... ⊇ N_ell, each N_i a 2^i-net of
/// N_{i-1}, with a covering parent in N_{i+1} for every point of N_i.
///
/// Construction does not validate; use verify_hierarchy() on anything not
/// produced by build_hierarchy().
class NetHierarchy {
public:
    NetHierarchy() = default;

    /// `levels[i]` is the sorted point list of N_i. `parents[i][k]` is the
    /// parent of `levels[i][k]` in N_{i+1}; `parents` has ell entries
    /// (one per level below the top).
    NetHierarchy(std::size_t n, std::vector<std::vector<std::size_t>> levels,
                 std::vector<std::vector<std::size_t>> parents);

    std::size_t size() const noexcept { return n_; }
    int ell() const noexcept { return static_cast<int>(levels_.size()) - 1; }

    std::span<const std::size_t> level(int i) const;
    bool contains(int i, std::size_t point) const;
    /// Parent of `point` (which must belong to N_i) in N_{i+1}.
    std::size_t parent(std::size_t point, int i) const;

    const std::vector<std::vector<std::size_t>>& levels() const noexcept { return levels_; }
    const std::vector<std::vector<std::size_t>>& parent_table() const noexcept { return parents_; }

private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::size_t>> levels_;
    std::vector<std::vector<std::size_t>> parents_;
};

/// Top level of the hierarchy: ceil(log2 diameter), but at least 1 once there
/// are two points so that the top net is a singleton.
int hierarchy_depth(const MetricSummary& summary, std::size_t n);

/// Greedy nets: N_i scans N_{i-1} in ascending index order and admits a point
/// iff it is farther than 2^i from every point already admitted. Parents are
/// the nearest point one level up, lowest index on ties.
///
/// Requires min pairwise distance >= 1 (see rescale_to_unit_min).
NetHierarchy build_hierarchy(const MetricView& metric);
/// Same, with a precomputed summary of `metric`.
NetHierarchy build_hierarchy(const MetricView& metric, const MetricSummary& summary);

struct HierarchyViolation {
    enum class Kind { ground_level, top_level, nesting, packing, cover, parent };

    Kind kind;
    int level = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    double distance = 0.0;

    std::string describe() const;
};

struct HierarchyReport {
    std::vector<HierarchyViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
    const HierarchyViolation* first() const noexcept { return violations.empty() ? nullptr : &violations.front(); }
    bool has(HierarchyViolation::Kind kind) const noexcept;
};

/// Exhaustive check of every structural invariant. Per level, nesting,
/// packing and cover are reported in that order; parent links come last.
/// N_0 is taken as given and not checked as a packing.
HierarchyReport verify_hierarchy(const NetHierarchy& h, const MetricView& metric);

struct LevelRadii {
    int level = 0;
    std::size_t count = 0;
    double radii = 0.0;  // count * 2^level
};

struct RadiiReport {
    std::vector<LevelRadii> per_level;  // levels 0 .. ell-1
    double total = 0.0;
};

/// Sum of net-point radii 2^i over levels [0, ell), the single top point excluded.
RadiiReport sum_of_radii(const NetHierarchy& h);

/// Largest log2|N_i ∩ B(p, 2^{i+2})| / 4 over all levels and net points: the
/// doubling dimension implied by the packing bound |Y| <= (R/r)^{2 ddim}.
double estimate_ddim(const NetHierarchy& h, const MetricView& metric);

}  // namespace snowspan
