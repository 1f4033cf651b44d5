#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "twostar/exact.hpp"
#include "twostar/numeric.hpp"

using namespace twostar;

namespace {

ExactSystem make_scalar(int n, double alpha, double h) {
    return ExactSystem(EdgeIndexing(n), ScalarParams{alpha, h});
}

}  // namespace

TEST_CASE("hamiltonian values") {
    auto sys = make_scalar(3, 3.0, 0.0);
    SUBCASE("empty config is zero") { CHECK(sys.hamiltonian(Config(3)) == doctest::Approx(0.0)); }
    SUBCASE("full K_3 at alpha=3,h=0 gives 3") {
        CHECK(sys.hamiltonian(Config::from_mask(0b111, 3)) == doctest::Approx(3.0).epsilon(1e-14));
    }
    SUBCASE("field only") {
        auto field = make_scalar(3, 0.0, 1.0);
        CHECK(field.hamiltonian(Config::from_mask(0b111, 3)) == doctest::Approx(3.0).epsilon(1e-14));
    }
    SUBCASE("off-support config rejected") {
        auto sub = sys.restrict_to({0, 1});
        CHECK_THROWS_AS(sub.hamiltonian(Config::from_mask(0b100, 3)), std::invalid_argument);
    }
}

TEST_CASE("log partition function") {
    SUBCASE("free case is m ln 2") {
        for (int n : {2, 3, 4, 5}) {
            auto sys = make_scalar(n, 0.0, 0.0);
            CHECK(sys.log_partition() ==
                  doctest::Approx(sys.ambient_edge_count() * std::log(2.0)).epsilon(1e-14));
        }
    }
    SUBCASE("n=3, alpha=3, h=0 equals ln(e^3 + 3e + 4)") {
        auto sys = make_scalar(3, 3.0, 0.0);
        const double expected = std::log(std::exp(3.0) + 3.0 * std::exp(1.0) + 4.0);
        CHECK(sys.log_partition() == doctest::Approx(expected).epsilon(1e-14));
        CHECK(expected == doctest::Approx(std::log(32.2404)).epsilon(1e-5));
    }
    SUBCASE("independent edges: 3 ln(1+e^h)") {
        for (double h : {-2.0, -0.3, 0.7, 2.5}) {
            auto sys = make_scalar(3, 0.0, h);
            CHECK(sys.log_partition() == doctest::Approx(3.0 * std::log1p(std::exp(h))).epsilon(1e-13));
        }
    }
    SUBCASE("matches the brute-force oracle on a parameter grid") {
        for (int n : {3, 4}) {
            for (double alpha : {-1.0, 0.0, 2.0}) {
                for (double h : {-1.0, 0.0, 0.5}) {
                    auto sys = make_scalar(n, alpha, h);
                    const auto model = oracle::two_star(n, alpha, h);
                    CHECK(sys.log_partition() == doctest::Approx(oracle::log_partition(model)).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("huge parameters stay finite") {
        auto sys = make_scalar(4, 400.0, 300.0);
        CHECK(std::isfinite(sys.log_partition()));
        CHECK(sys.probability_total() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("enumeration cap enforced with a pointer to the sampler") {
        EnumerationOptions opts;
        opts.max_active_edges = 24;
        CHECK_THROWS_WITH_AS(ExactSystem(EdgeIndexing(8), ScalarParams{1.0, 0.0}, opts),
                             doctest::Contains("MCMC"), std::invalid_argument);
    }
}

TEST_CASE("probability normalization across a grid") {
    for (int n : {3, 4, 5}) {
        for (double alpha : {-2.0, 0.0, 1.0, 3.0}) {
            for (double h : {-1.0, 0.0, 2.0}) {
                auto sys = make_scalar(n, alpha, h);
                REQUIRE(std::fabs(sys.probability_total() - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("expectations") {
    SUBCASE("empty monomial is 1") {
        auto sys = make_scalar(3, 2.0, 0.5);
        CHECK(sys.expectation_monomial({}) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("independent edges: E[x_i] = sigmoid(h)") {
        auto sys = make_scalar(4, 0.0, 0.8);
        for (int i = 0; i < 6; ++i) {
            const int ids[] = {i};
            CHECK(sys.expectation_monomial(ids) == doctest::Approx(sigmoid(0.8)).epsilon(1e-13));
        }
    }
    SUBCASE("n=3, alpha=3, h=0: E[x_1] = (e^3+2e+1)/(e^3+3e+4)") {
        auto sys = make_scalar(3, 3.0, 0.0);
        const double e1 = std::exp(1.0), e3 = std::exp(3.0);
        const double expected = (e3 + 2.0 * e1 + 1.0) / (e3 + 3.0 * e1 + 4.0);
        const int ids[] = {0};
        CHECK(sys.expectation_monomial(ids) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(expected == doctest::Approx(0.8226).epsilon(1e-4));
    }
    SUBCASE("generic functional expectation agrees with monomials") {
        auto sys = make_scalar(4, 1.5, -0.5);
        const int ids[] = {0, 3};
        const double direct = sys.expectation_monomial(ids);
        const double via_functional =
            sys.expectation([](const Config& c) { return (c.test(0) && c.test(3)) ? 1.0 : 0.0; });
        CHECK(direct == doctest::Approx(via_functional).epsilon(1e-13));
    }
    SUBCASE("monomial with inactive edge rejected") {
        auto sys = make_scalar(3, 1.0, 0.0);
        auto sub = sys.restrict_to({0, 1});
        const int ids[] = {2};
        CHECK_THROWS_AS(sub.expectation_monomial(ids), std::invalid_argument);
    }
}

TEST_CASE("free energy") {
    SUBCASE("free case") {
        auto sys = make_scalar(3, 0.0, 0.0);
        CHECK(sys.free_energy() == doctest::Approx(3.0 * std::log(2.0) / 9.0).epsilon(1e-14));
    }
    SUBCASE("n=3, alpha=3, h=0") {
        auto sys = make_scalar(3, 3.0, 0.0);
        const double expected = std::log(std::exp(3.0) + 3.0 * std::exp(1.0) + 4.0) / 9.0;
        CHECK(sys.free_energy() == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("log partitions of non-interacting subsystems add") {
        // In K_4, edges {0,1} and {2,3} do not share a vertex.
        auto sys = make_scalar(4, 2.0, 0.7);
        EdgeIndexing idx(4);
        const int e1 = idx.id_of(0, 1), e2 = idx.id_of(2, 3);
        auto both = sys.restrict_to({e1, e2});
        auto first = sys.restrict_to({e1});
        auto second = sys.restrict_to({e2});
        CHECK(both.log_partition() ==
              doctest::Approx(first.log_partition() + second.log_partition()).epsilon(1e-13));
    }
}

TEST_CASE("edge occurrence identity (conditional form)") {
    SUBCASE("alpha = 0 reduces to sigmoid(h)") {
        auto sys = make_scalar(4, 0.0, -0.7);
        CHECK(sys.edge_occurrence_rhs(2) == doctest::Approx(sigmoid(-0.7)).epsilon(1e-13));
        const int ids[] = {2};
        CHECK(sys.edge_occurrence_rhs(2) == doctest::Approx(sys.expectation_monomial(ids)).epsilon(1e-13));
    }
    SUBCASE("equals E[x_i] within 1e-12 on a grid, n in {3,4,5}") {
        for (int n : {3, 4, 5}) {
            for (double alpha : {-1.0, 0.0, 1.0, 3.0}) {
                for (double h : {-1.0, 0.0, 1.0}) {
                    auto sys = make_scalar(n, alpha, h);
                    for (int i = 0; i < sys.ambient_edge_count(); ++i) {
                        const int ids[] = {i};
                        REQUIRE(std::fabs(sys.edge_occurrence_rhs(i) - sys.expectation_monomial(ids)) <= 1e-12);
                    }
                }
            }
        }
    }
    SUBCASE("saturates to 1 for large h") {
        auto sys = make_scalar(3, 1.0, 40.0);
        CHECK(sys.edge_occurrence_rhs(0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("edge symmetry and lower bound for alpha,h >= 0") {
        for (int n : {3, 4, 5}) {
            for (double alpha : {0.0, 1.0, 2.0}) {
                for (double h : {0.0, 0.5, 1.5}) {
                    auto sys = make_scalar(n, alpha, h);
                    const int first[] = {0};
                    const double ref = sys.expectation_monomial(first);
                    REQUIRE(ref >= 0.5 - 1e-12);
                    for (int i = 1; i < sys.ambient_edge_count(); ++i) {
                        const int ids[] = {i};
                        REQUIRE(std::fabs(sys.expectation_monomial(ids) - ref) <= 1e-12);
                    }
                    // E[E_n] = C(n,2) E[x_1]
                    REQUIRE(std::fabs(sys.mean_edge_count() - sys.ambient_edge_count() * ref) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("free-energy derivatives give edge and wedge densities") {
    const double step = 1e-4;
    for (double alpha : {0.5, 2.0}) {
        for (double h : {-0.5, 0.5}) {
            const int n = 4;
            const double n2 = 16.0, n3 = 64.0;
            auto sys = make_scalar(n, alpha, h);
            auto f = [&](double a, double hh) { return make_scalar(n, a, hh).free_energy(); };
            const double dh = (f(alpha, h + step) - f(alpha, h - step)) / (2.0 * step);
            const double da = (f(alpha + step, h) - f(alpha - step, h)) / (2.0 * step);
            REQUIRE(std::fabs(dh - sys.mean_edge_count() / n2) <= 1e-8);
            REQUIRE(std::fabs(da - sys.mean_wedge_pairs() / n3) <= 1e-8);
        }
    }
}

TEST_CASE("restriction") {
    auto sys = make_scalar(3, 3.0, 0.0);
    SUBCASE("restricting to the full set preserves log Z") {
        auto full = sys.restrict_to({0, 1, 2});
        CHECK(full.log_partition() == doctest::Approx(sys.log_partition()).epsilon(1e-14));
    }
    SUBCASE("single edge: ln(1 + e^h)") {
        auto one = make_scalar(3, 3.0, 0.8).restrict_to({1});
        CHECK(one.log_partition() == doctest::Approx(std::log1p(std::exp(0.8))).epsilon(1e-13));
    }
    SUBCASE("two adjacent edges at alpha=3, h=0: ln(e + 3)") {
        auto two = sys.restrict_to({0, 1});
        CHECK(two.log_partition() == doctest::Approx(std::log(std::exp(1.0) + 3.0)).epsilon(1e-13));
    }
    SUBCASE("empty restriction has log Z = 0") {
        auto none = sys.restrict_to({});
        CHECK(none.log_partition() == doctest::Approx(0.0));
    }
    SUBCASE("restriction outside the active set rejected") {
        auto sub = sys.restrict_to({0});
        CHECK_THROWS_AS(sub.restrict_to({1}), std::invalid_argument);
    }
}

TEST_CASE("generalized parameters specialize to scalar") {
    for (int n : {3, 4}) {
        EdgeIndexing idx(n);
        const auto wedges = WedgeList::build(idx);
        const double alpha = 1.7, h = -0.4;
        ExactSystem scalar(idx, ScalarParams{alpha, h});
        ExactSystem general(idx, GeneralizedParams::constant(wedges, idx.m(), alpha, h));
        CHECK(general.log_partition() == doctest::Approx(scalar.log_partition()).epsilon(1e-14));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << idx.m()); ++mask) {
            Config c = Config::from_mask(mask, idx.m());
            REQUIRE(general.hamiltonian(c) == doctest::Approx(scalar.hamiltonian(c)).epsilon(1e-14));
        }
    }
}

TEST_CASE("ERGM edge+wedge reproduces the two-star Hamiltonian exactly") {
    // n^2 (beta_1 t(edge) + beta_2 t(wedge)) = (2 beta_2/n) sum_W x_i x_j + (2 beta_1 + 2 beta_2/n) sum x_i
    for (int n : {3, 4}) {
        EdgeIndexing idx(n);
        const auto wedges = WedgeList::build(idx);
        const double beta1 = 0.3, beta2 = 0.9;
        ErgmParams ergm{{SubgraphPattern::edge(), SubgraphPattern::wedge()}, {beta1, beta2}};
        ExactSystem ergm_sys(idx, ergm);
        GeneralizedParams gen = GeneralizedParams::constant(wedges, idx.m(), 2.0 * beta2, 2.0 * beta1 + 2.0 * beta2 / n);
        ExactSystem gen_sys(idx, gen);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << idx.m()); ++mask) {
            Config c = Config::from_mask(mask, idx.m());
            REQUIRE(ergm_sys.hamiltonian(c) == doctest::Approx(gen_sys.hamiltonian(c)).epsilon(1e-13));
        }
        CHECK(ergm_sys.log_partition() == doctest::Approx(gen_sys.log_partition()).epsilon(1e-13));
    }
}

TEST_CASE("moment table matches direct monomials") {
    auto sys = make_scalar(4, 1.2, 0.3);
    const auto table = sys.moment_table();
    CHECK(table.by_mask(0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 6; ++i) {
        for (int j = i; j < 6; ++j) {
            const int ids[] = {i, j};
            REQUIRE(table.monomial(ids) == doctest::Approx(sys.expectation_monomial(ids)).epsilon(1e-12));
        }
    }
}

TEST_CASE("deterministic results independent of thread count") {
    EnumerationOptions serial;
    serial.threads = 1;
    EnumerationOptions parallel;
    parallel.threads = 4;
    // m = 21 exceeds the parallel threshold of 2^18 configurations.
    ExactSystem a(EdgeIndexing(7), ScalarParams{1.0, 0.2}, serial);
    ExactSystem b(EdgeIndexing(7), ScalarParams{1.0, 0.2}, parallel);
    CHECK(a.log_partition() == b.log_partition());  // bitwise
}
