#include "snowspan/lp_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "snowspan/analysis.hpp"
#include "snowspan/spanner.hpp"

namespace snowspan {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
    return sum;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

bool within_slack(double margin, double scale) { return margin >= -kLemmaRoundingSlack * std::max(scale, 1.0); }

constexpr std::size_t kMaxWitnesses = 5;

}  // namespace

Decomposition decompose(std::span<const double> v, std::span<const double> w) {
    if (v.size() != w.size()) {
        throw std::invalid_argument("decompose: dimension mismatch");
    }
    const double ww = dot(w, w);
    if (ww == 0.0) {
        throw std::invalid_argument("decompose: reference vector is zero");
    }
    const double scale = dot(v, w) / ww;
    Decomposition out;
    out.reference.assign(w.begin(), w.end());
    out.parallel.resize(v.size());
    out.perpendicular.resize(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.parallel[k] = scale * w[k];
        out.perpendicular[k] = v[k] - out.parallel[k];
    }
    return out;
}

double dprime(std::size_t d, double p) {
    if (d == 0) {
        throw std::invalid_argument("dprime: dimension must be positive");
    }
    if (!(p >= 1.0)) {
        throw std::invalid_argument("dprime: p must be at least 1");
    }
    const double inverse_p = p == kInfinity ? 0.0 : 1.0 / p;
    const double dd = static_cast<double>(d);
    return std::max(std::pow(dd, 0.5 - inverse_p), std::pow(dd, inverse_p - 0.5));
}

std::string to_string(LemmaStatus status) {
    switch (status) {
        case LemmaStatus::holds:
            return "holds";
        case LemmaStatus::violated:
            return "violated";
        case LemmaStatus::out_of_range:
            return "hypothesis not satisfied";
    }
    return {};
}

ScalarLemmaResult check_scalar_lemma(double eps0, double eps, double eps1, double a, double b) {
    ScalarLemmaResult result;
    const bool ordered = 0.0 <= eps0 && eps0 <= eps && eps <= eps1 && eps <= 0.25 && a >= 0.0 && b >= 0.0;
    result.hypothesis_margin = eps * (a + b) - (eps1 * a + eps0 * b);
    result.conclusion_margin = std::sqrt(eps) * (a + b) - (eps1 * a + std::sqrt(eps0) * b);
    if (!ordered || result.hypothesis_margin < 0.0) {
        result.status = LemmaStatus::out_of_range;
        return result;
    }
    const double scale = std::sqrt(eps) * (a + b) + eps1 * a + std::sqrt(eps0) * b;
    result.status = within_slack(result.conclusion_margin, scale) ? LemmaStatus::holds : LemmaStatus::violated;
    return result;
}

VectorLemmaResult check_vector_lemma(const std::vector<std::vector<double>>& vectors, std::span<const double> w) {
    VectorLemmaResult result;
    std::vector<double> parallel_total(w.size(), 0.0);
    double length_sum = 0.0;
    for (const auto& v : vectors) {
        const Decomposition parts = decompose(v, w);
        for (std::size_t k = 0; k < w.size(); ++k) parallel_total[k] += parts.parallel[k];
        result.parallel_sum += norm2(parts.parallel);
        result.perpendicular_sum += norm2(parts.perpendicular);
        length_sum += norm2(v);
    }
    result.parallel_norm = norm2(parallel_total);
    if (result.parallel_norm == 0.0) {
        throw std::invalid_argument("check_vector_lemma: parallel components sum to zero");
    }
    double eps = length_sum / result.parallel_norm - 1.0;
    if (eps < 0.0 && eps > -kLemmaRoundingSlack) eps = 0.0;
    result.epsilon = eps;
    result.parallel_margin = (1.0 + eps) * result.parallel_norm - result.parallel_sum;
    result.perpendicular_margin = 3.0 * (1.0 + eps) * std::sqrt(std::max(eps, 0.0)) * result.parallel_norm -
                                  result.perpendicular_sum;
    if (!(eps >= 0.0 && eps <= 0.25)) {
        result.status = LemmaStatus::out_of_range;
        return result;
    }
    const bool ok = within_slack(result.parallel_margin, length_sum) &&
                    within_slack(result.perpendicular_margin, length_sum);
    result.status = ok ? LemmaStatus::holds : LemmaStatus::violated;
    return result;
}

SearchSummary search_scalar_lemma(std::size_t trials, std::uint64_t seed) {
    SearchSummary summary;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool first = true;
    while (summary.trials < trials) {
        const double eps = 0.25 * unit(rng);
        double eps0 = eps * unit(rng);
        double a = 10.0 * unit(rng);
        double b = 10.0 * unit(rng);
        // Boundary cases the inequality is tight or degenerate on.
        const double pick = unit(rng);
        if (pick < 0.05) a = 0.0;
        else if (pick < 0.10) b = 0.0;
        else if (pick < 0.15) eps0 = eps;
        // Largest eps1 the hypothesis admits, then sample inside (or slightly beyond) it.
        const double room = a > 0.0 ? (eps - eps0) * b / a : 1.0;
        const double eps1 = eps + room * 1.05 * unit(rng);

        const ScalarLemmaResult r = check_scalar_lemma(eps0, eps, eps1, a, b);
        if (r.status == LemmaStatus::out_of_range) {
            ++summary.rejected;
            continue;
        }
        ++summary.trials;
        if (first || r.conclusion_margin < summary.worst_margin) summary.worst_margin = r.conclusion_margin;
        first = false;
        if (r.status == LemmaStatus::violated) {
            ++summary.violations;
            if (summary.witnesses.size() < kMaxWitnesses) {
                std::ostringstream out;
                out.precision(17);
                out << "eps0=" << eps0 << " eps=" << eps << " eps1=" << eps1 << " a=" << a << " b=" << b
                    << " conclusion_margin=" << r.conclusion_margin;
                summary.witnesses.push_back(out.str());
            }
        }
    }
    return summary;
}

SearchSummary search_vector_lemma(std::size_t trials, std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("search_vector_lemma: dimension must be positive");
    }
    SearchSummary summary;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> family_size(1, 8);
    bool first = true;
    while (summary.trials < trials) {
        std::vector<double> w(dim);
        for (double& x : w) x = gauss(rng);
        const double wn = norm2(w);
        if (wn == 0.0) continue;

        const double noise = 0.6 * unit(rng) * unit(rng);
        const std::size_t m = family_size(rng);
        std::vector<std::vector<double>> family(m, std::vector<double>(dim));
        for (auto& v : family) {
            const double along = (unit(rng) < 0.05 ? -0.3 : 1.0) * (0.1 + unit(rng));
            for (std::size_t k = 0; k < dim; ++k) v[k] = along * w[k] / wn + noise * gauss(rng);
        }
        std::vector<double> total(dim, 0.0);
        for (const auto& v : family) {
            for (std::size_t k = 0; k < dim; ++k) total[k] += decompose(v, w).parallel[k];
        }
        if (norm2(total) == 0.0) continue;

        const VectorLemmaResult r = check_vector_lemma(family, w);
        if (r.status == LemmaStatus::out_of_range) {
            ++summary.rejected;
            continue;
        }
        ++summary.trials;
        const double margin = std::min(r.parallel_margin, r.perpendicular_margin);
        if (first || margin < summary.worst_margin) summary.worst_margin = margin;
        first = false;
        if (r.status == LemmaStatus::violated && summary.witnesses.size() < kMaxWitnesses) {
            std::ostringstream out;
            out.precision(17);
            out << "eps=" << r.epsilon << " sum|v_perp|=" << r.perpendicular_sum << " |sum v_par|="
                << r.parallel_norm << " w=(";
            for (std::size_t k = 0; k < dim; ++k) out << (k ? "," : "") << w[k];
            out << ")";
            summary.witnesses.push_back(out.str());
        }
        if (r.status == LemmaStatus::violated) ++summary.violations;
    }
    return summary;
}

TransferReport transfer_experiment(const PointSet& points, double t, double p) {
    if (!points.has_coords()) {
        throw std::invalid_argument("transfer_experiment: needs coordinate points");
    }
    if (points.size() < 2) {
        throw std::invalid_argument("transfer_experiment: needs at least two points");
    }
    const MetricView l2(points, MetricSpec::l2());
    const MetricView lp(points, MetricSpec::lp(p));
    const SpannerGraph spanner = greedy_spanner(l2, t);

    TransferReport report;
    report.t = t;
    report.epsilon = t - 1.0;
    report.dim = points.dim();
    report.p = p;
    report.d_prime = dprime(points.dim(), p);
    report.edges = spanner.edge_count();
    report.epsilon_l2 = max_stretch(spanner, l2).stretch - 1.0;

    const StretchResult stretch = max_stretch(spanner, lp);
    report.stretch_p = stretch.stretch;
    report.witness_u = stretch.u;
    report.witness_v = stretch.v;
    report.bound_p = (1.0 + report.epsilon) * (1.0 + 3.0 * report.d_prime * std::sqrt(report.epsilon));

    report.c = spanner.total_weight() / mst(l2).total_weight();
    report.weight_ratio_p = weight_under(spanner, lp) / mst(lp).total_weight();
    report.weight_bound = report.c * report.d_prime;
    return report;
}

}  // namespace snowspan
