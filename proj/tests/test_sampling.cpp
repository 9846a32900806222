#include "latcirc/sampling.hpp"

#include "latcirc/moments.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace latcirc;

namespace {

std::vector<int> counts_of(const std::vector<int>& draws, int m) {
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    for (int v : draws) ++counts[static_cast<std::size_t>(v)];
    return counts;
}

}  // namespace

TEST_CASE("sample_pmf basics") {
    SUBCASE("point mass gives a constant sequence") {
        Eigen::ArrayXd probs = Eigen::ArrayXd::Zero(7);
        probs[4] = 1.0;
        const Pmf point(Lattice(7), probs);
        for (int v : sample_pmf(point, 200, 99)) CHECK(v == 4);
    }
    SUBCASE("identical seeds give identical sequences") {
        const Pmf p = cdwc_pmf(Lattice(10), 0.4, 2);
        CHECK(sample_pmf(p, 1000, 7) == sample_pmf(p, 1000, 7));
        CHECK(sample_pmf(p, 1000, 7) != sample_pmf(p, 1000, 8));
    }
    SUBCASE("uniform frequencies stay within 5 sigma") {
        const int m = 37, n = 100000;
        const Pmf uniform(Lattice(m), Eigen::ArrayXd::Constant(m, 1.0 / m));
        const auto counts = counts_of(sample_pmf(uniform, n, 1234), m);
        const double mean = static_cast<double>(n) / m;
        const double sigma = std::sqrt(mean * (1.0 - 1.0 / m));
        for (int c : counts) CHECK(std::abs(c - mean) < 5.0 * sigma);
    }
    SUBCASE("chi-square sanity at the 0.1% level for a large uniform sample") {
        const int m = 37, n = 1000000;
        const Pmf uniform(Lattice(m), Eigen::ArrayXd::Constant(m, 1.0 / m));
        const auto counts = counts_of(sample_pmf(uniform, n, 555), m);
        CHECK(testutil::gof_p_value(counts, uniform.probs(), n) > 1e-3);
    }
    SUBCASE("empirical first moment of a centered CDWC") {
        const int m = 10, n = 1000000;
        const Pmf p = cdwc_pmf(Lattice(m), 0.5, 5);
        const auto draws = sample_pmf(p, n, 42);
        double ecos = 0.0;
        for (int v : draws) ecos += std::cos(two_pi * v / m);
        ecos /= n;
        CHECK(std::abs(ecos - 0.50146 * std::cos(two_pi * 5 / m)) < 3e-3);
    }
    CHECK_THROWS_AS(sample_pmf(cdwc_pmf(Lattice(4), 0.1, 0), 0, 1), std::invalid_argument);
}

TEST_CASE("wrapped Cauchy quantile sampling") {
    SUBCASE("rho = 0 becomes uniform on the lattice after flooring") {
        const int m = 12, n = 50000;
        const auto draws = sample_via_parent(Parent::WrappedCauchy, 0.0, 0.7, m,
                                             Discretization::Marginalize, n, 31);
        const Eigen::ArrayXd uniform = Eigen::ArrayXd::Constant(m, 1.0 / m);
        CHECK(testutil::gof_p_value(counts_of(draws, m), uniform, n) > 1e-4);
    }
    SUBCASE("quantile inverts the lifted cdf") {
        for (double u : {0.05, 0.3, 0.77}) {
            const double theta = wc_quantile(u, 0.6, 0.0);
            const double back = wc_cdf_lifted(theta <= pi ? theta : theta - two_pi, 0.6) + 0.5;
            CHECK(back == doctest::Approx(u).epsilon(1e-12));
        }
    }
}

TEST_CASE("marginalize path lands on the marginalized pmf") {
    SUBCASE("wrapped Cauchy parent, 4-sigma binomial bands") {
        const int m = 12, n = 100000;
        const double rho = 0.6, mu = 1.0;
        const auto draws = sample_via_parent(Parent::WrappedCauchy, rho, mu, m,
                                             Discretization::Marginalize, n, 77);
        const Pmf want = mdwc_pmf(Lattice(m), rho, mu);
        const auto counts = counts_of(draws, m);
        for (int r = 0; r < m; ++r) {
            const double expect = n * want[r];
            const double sigma = std::sqrt(expect * (1.0 - want[r]));
            CHECK(std::abs(counts[static_cast<std::size_t>(r)] - expect) < 4.0 * sigma);
        }
    }
    SUBCASE("von Mises parent, goodness-of-fit") {
        const int m = 10, n = 100000;
        const auto draws =
            sample_via_parent(Parent::VonMises, 2.0, 0.9, m, Discretization::Marginalize, n, 78);
        const Pmf want = mdvm_pmf(Lattice(m), 2.0, 0.9);
        CHECK(testutil::gof_p_value(counts_of(draws, m), want.probs(), n) > 1e-4);
    }
    SUBCASE("conditionalize path lands on the plug-in pmf") {
        const int m = 9, n = 100000;
        const auto draws = sample_via_parent(Parent::WrappedCauchy, 0.5, 2.0, m,
                                             Discretization::Conditionalize, n, 79);
        const Pmf want = cdwc_pmf_mu(Lattice(m), 0.5, 2.0);
        CHECK(testutil::gof_p_value(counts_of(draws, m), want.probs(), n) > 1e-4);
    }
}

TEST_CASE("duality in distribution: wrap order does not matter") {
    // path A: discretize the scaled line Cauchy, then wrap mod m
    // path B: wrap onto the circle first, then floor-discretize
    const int m = 12, n = 100000;
    const double mu0 = 1.0, scale = 0.45;
    Rng rng(2024);
    std::cauchy_distribution<double> cauchy(mu0, scale);
    std::vector<int> path_a(n);
    for (int i = 0; i < n; ++i) {
        const double x = cauchy(rng.engine());
        const long long d = static_cast<long long>(std::floor(m * x / two_pi));
        path_a[static_cast<std::size_t>(i)] = Lattice(m).reduce(d);
    }
    const auto path_b = sample_via_parent(Parent::WrappedCauchy, std::exp(-scale), mu0, m,
                                          Discretization::Marginalize, n, 2025);
    const auto ca = counts_of(path_a, m);
    const auto cb = counts_of(path_b, m);
    CHECK(testutil::two_sample_p_value(ca, cb) > 0.01);
    // both also match the closed-form marginalized law
    const Pmf want = mdwc_pmf(Lattice(m), std::exp(-scale), mu0);
    CHECK(testutil::gof_p_value(ca, want.probs(), n) > 1e-4);
    CHECK(testutil::gof_p_value(cb, want.probs(), n) > 1e-4);
}
