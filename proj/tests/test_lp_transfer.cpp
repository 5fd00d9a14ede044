#include "doctest.h"

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "snowspan/analysis.hpp"
#include "snowspan/lp_transfer.hpp"
#include "snowspan/spanner.hpp"

using namespace snowspan;

namespace {

double norm(const std::vector<double>& v) { return lp_distance(v, std::vector<double>(v.size(), 0.0), 2.0); }

}  // namespace

TEST_CASE("decompose examples") {
    const std::vector<double> v{1.0, 1.0};
    const std::vector<double> w{1.0, 0.0};
    const Decomposition d = decompose(v, w);
    CHECK(d.parallel == std::vector<double>{1.0, 0.0});
    CHECK(d.perpendicular == std::vector<double>{0.0, 1.0});
    CHECK(d.reference == w);

    const std::vector<double> w3{0.5, -2.0, 3.0};
    const std::vector<double> v3{1.5, -6.0, 9.0};
    for (double x : decompose(v3, w3).perpendicular) CHECK(x == 0.0);

    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(decompose(v, zero), std::invalid_argument);
    CHECK_THROWS_AS(decompose(v, w3), std::invalid_argument);
}

TEST_CASE("decompose reconstructs and is orthogonal on random pairs") {
    gen::Rng rng(5);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto v = gen::vector(rng, 5, 4.0);
        const auto w = gen::vector(rng, 5, 4.0);
        const Decomposition d = decompose(v, w);
        double inner = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            CHECK(std::abs(d.parallel[k] + d.perpendicular[k] - v[k]) <= 1e-12 * std::max(1.0, std::abs(v[k])));
            inner += d.perpendicular[k] * w[k];
        }
        CHECK(std::abs(inner) <= 1e-10 * norm(v) * norm(w));
        // parallel is a multiple of w: its cross terms vanish.
        for (std::size_t a = 0; a < 5; ++a) {
            for (std::size_t b = a + 1; b < 5; ++b) {
                CHECK(std::abs(d.parallel[a] * w[b] - d.parallel[b] * w[a]) <= 1e-10 * norm(v) * norm(w));
            }
        }
    }
}

TEST_CASE("dprime examples") {
    CHECK(dprime(4, 2.0) == 1.0);
    CHECK(dprime(4, kInfinity) == 2.0);
    CHECK(dprime(9, 1.0) == 3.0);
    CHECK(dprime(1, 1.0) == 1.0);
    CHECK(dprime(16, 4.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(dprime(4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(dprime(0, 2.0), std::invalid_argument);
    for (std::size_t d = 1; d <= 10; ++d) {
        for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) CHECK(dprime(d, p) >= 1.0);
    }
}

TEST_CASE("scalar inequality edge cases") {
    SUBCASE("a = 0 reduces to monotone square roots") {
        const ScalarLemmaResult r = check_scalar_lemma(0.01, 0.04, 0.2, 0.0, 3.0);
        CHECK(r.status == LemmaStatus::holds);
        CHECK(r.conclusion_margin == doctest::Approx((0.2 - 0.1) * 3.0));
    }
    SUBCASE("b = 0 with eps1 = eps is tight in the hypothesis") {
        const ScalarLemmaResult r = check_scalar_lemma(0.0, 0.16, 0.16, 5.0, 0.0);
        CHECK(r.status == LemmaStatus::holds);
        CHECK(r.hypothesis_margin == 0.0);
        CHECK(r.conclusion_margin == doctest::Approx((0.4 - 0.16) * 5.0));
    }
    SUBCASE("out-of-range inputs are not failures") {
        CHECK(check_scalar_lemma(0.1, 0.05, 0.2, 1, 1).status == LemmaStatus::out_of_range);
        CHECK(check_scalar_lemma(0.0, 0.3, 0.3, 1, 1).status == LemmaStatus::out_of_range);
        CHECK(check_scalar_lemma(0.0, 0.1, 0.2, -1, 1).status == LemmaStatus::out_of_range);
        // Hypothesis violated: eps1 a + eps0 b > eps (a + b).
        CHECK(check_scalar_lemma(0.0, 0.1, 0.25, 1, 0.1).status == LemmaStatus::out_of_range);
    }
    CHECK(to_string(LemmaStatus::out_of_range) == "hypothesis not satisfied");
}

TEST_CASE("scalar inequality: 100000 random in-range tuples") {
    const SearchSummary s = search_scalar_lemma(100000, 1);
    CHECK(s.trials == 100000);
    CHECK(s.violations == 0);
    CHECK(s.witnesses.empty());
    CHECK(s.worst_margin >= -kLemmaRoundingSlack);
    CHECK(s.rejected > 0);
}

TEST_CASE("vector inequality examples") {
    SUBCASE("a single copy of w") {
        const std::vector<double> w{2.0, -1.0, 0.5};
        const VectorLemmaResult r = check_vector_lemma({w}, w);
        CHECK(r.status == LemmaStatus::holds);
        CHECK(r.epsilon == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(r.perpendicular_sum == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("two mirrored vectors") {
        const double zeta = 0.1;
        const VectorLemmaResult r = check_vector_lemma({{1.0, zeta}, {1.0, -zeta}}, std::vector<double>{1.0, 0.0});
        CHECK(r.status == LemmaStatus::holds);
        const double eps = std::sqrt(1.0 + zeta * zeta) - 1.0;
        CHECK(r.epsilon == doctest::Approx(eps).epsilon(1e-12));
        CHECK(r.epsilon == doctest::Approx(0.00499).epsilon(1e-3));
        CHECK(r.perpendicular_sum == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(r.parallel_norm == doctest::Approx(2.0).epsilon(1e-12));
        const double bound = 3.0 * (1.0 + eps) * std::sqrt(eps) * 2.0;
        CHECK(bound == doctest::Approx(0.424).epsilon(1e-2));
        CHECK(r.perpendicular_margin == doctest::Approx(bound - 0.2).epsilon(1e-12));
    }
    SUBCASE("large perpendicular parts are out of range") {
        const VectorLemmaResult r = check_vector_lemma({{1.0, 1.0}, {1.0, -1.0}}, std::vector<double>{1.0, 0.0});
        CHECK(r.status == LemmaStatus::out_of_range);
    }
    SUBCASE("parallel parts summing to zero are an error") {
        CHECK_THROWS_AS(check_vector_lemma({{1.0, 0.0}, {-1.0, 0.5}}, std::vector<double>{1.0, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("vector inequality: 10000 random in-range families in R^3") {
    const SearchSummary s = search_vector_lemma(10000, 3, 1);
    CHECK(s.trials == 10000);
    CHECK(s.violations == 0);
    CHECK(s.worst_margin >= -kLemmaRoundingSlack);
}

TEST_CASE("searches are deterministic per seed") {
    const SearchSummary a = search_scalar_lemma(2000, 42);
    const SearchSummary b = search_scalar_lemma(2000, 42);
    CHECK(a.rejected == b.rejected);
    CHECK(a.worst_margin == b.worst_margin);
}

TEST_CASE("transfer at p = 2 is the identity") {
    const PointSet cloud = gen::unit_cloud(3, 64, 3);
    const TransferReport r = transfer_experiment(cloud, 1.1, 2.0);
    CHECK(r.d_prime == 1.0);
    CHECK(r.stretch_p == doctest::Approx(1.0 + r.epsilon_l2).epsilon(1e-12));
    CHECK(r.stretch_p <= 1.1);
    CHECK(r.weight_ratio_p == doctest::Approx(r.c).epsilon(1e-12));
    CHECK(r.stretch_ok());
    CHECK(r.weight_ok());
}

TEST_CASE("transfer from l2 to linf and l1 in four dimensions") {
    const PointSet raw = gen::cube(11, 128, 4, 1.0);
    const PointSet cloud = rescale_to_unit_min(MetricView(raw, MetricSpec::l2()));
    const TransferReport inf = transfer_experiment(cloud, 1.1, kInfinity);
    CHECK(inf.d_prime == 2.0);
    CHECK(inf.bound_p == doctest::Approx(1.1 * (1.0 + 6.0 * std::sqrt(0.1))).epsilon(1e-12));
    CHECK(inf.bound_p == doctest::Approx(3.19).epsilon(1e-2));
    CHECK(inf.stretch_ok());
    CHECK(inf.weight_ok());

    const MetricView linf(cloud, MetricSpec::linf());
    const SpannerGraph g = greedy_spanner(MetricView(cloud, MetricSpec::l2()), 1.1);
    CHECK(inf.stretch_p == doctest::Approx(oracle::stretch(g, linf)).epsilon(1e-12));

    const TransferReport one = transfer_experiment(cloud, 1.1, 1.0);
    CHECK(one.d_prime == 2.0);
    CHECK(one.weight_ratio_p <= 2.0 * one.c);
    const MetricView l1(cloud, MetricSpec::l1());
    CHECK(one.weight_ratio_p == doctest::Approx(weight_under(g, l1) / oracle::kruskal_weight(l1)).epsilon(1e-12));
}

TEST_CASE("transfer needs two coordinate points") {
    CHECK_THROWS_AS(transfer_experiment(gen::grid(1), 1.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(transfer_experiment(PointSet::from_matrix({{0, 1}, {1, 0}}), 1.1, 1.0), std::invalid_argument);
}

TEST_CASE("an linf spanner does not transfer back to l2") {
    const PointSet points = PointSet::from_coords({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
    const MetricView linf(points, MetricSpec::linf());
    SpannerGraph g(3, "linf");
    g.add_edge(0, 1, linf(0, 1));
    g.add_edge(1, 2, linf(1, 2));
    CHECK(max_stretch(g, linf).stretch == 1.0);
    CHECK(std::abs(max_stretch(g, MetricView(points, MetricSpec::l2())).stretch - std::sqrt(2.0)) <= 1e-12);
}
