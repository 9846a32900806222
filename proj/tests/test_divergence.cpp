#include "latcirc/divergence.hpp"

#include "latcirc/moments.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace latcirc;

namespace {

Pmf random_pmf(int m, std::mt19937_64& gen) {
    std::uniform_real_distribution<> unit(0.05, 1.0);
    Eigen::ArrayXd v(m);
    for (int r = 0; r < m; ++r) v[r] = unit(gen);
    return Pmf(Lattice(m), v / v.sum());
}

}  // namespace

TEST_CASE("divergence triple basics") {
    const Pmf p = cdwc_pmf(Lattice(10), 0.4, 2);
    SUBCASE("identical pmfs have zero divergence") {
        const DivergenceTriple d = divergences(p, p);
        CHECK(d.kl == 0.0);
        CHECK(d.l1 == 0.0);
        CHECK(d.l2 == 0.0);
    }
    SUBCASE("KL nonnegative, zero only at equality; L1/L2 symmetric, KL not") {
        std::mt19937_64 gen(71);
        for (int rep = 0; rep < 200; ++rep) {
            const int m = 3 + static_cast<int>(gen() % 20);
            const Pmf a = random_pmf(m, gen);
            const Pmf b = random_pmf(m, gen);
            const DivergenceTriple ab = divergences(a, b);
            const DivergenceTriple ba = divergences(b, a);
            CHECK(ab.kl >= 0.0);
            CHECK(ab.l1 == doctest::Approx(ba.l1).epsilon(1e-14));
            CHECK(ab.l2 == doctest::Approx(ba.l2).epsilon(1e-14));
        }
        // a fixed visibly asymmetric pair
        const Pmf a = cdwc_pmf(Lattice(10), 0.8, 0);
        const Pmf b = cdvm_pmf(Lattice(10), 1.0, 0);
        CHECK(std::abs(divergences(a, b).kl - divergences(b, a).kl) > 1e-3);
    }
    SUBCASE("different lattices and vanishing support are rejected") {
        CHECK_THROWS_AS(divergences(p, cdwc_pmf(Lattice(9), 0.4, 2)), std::invalid_argument);
        Eigen::ArrayXd v = Eigen::ArrayXd::Constant(10, 1.0 / 9.0);
        v[7] = 0.0;
        const Pmf holed(Lattice(10), v);
        CHECK_THROWS_AS(divergences(p, holed), std::invalid_argument);
        CHECK_NOTHROW(divergences(holed, p));  // zeros in p1 are fine
    }
}

TEST_CASE("moment-matched concentration mapping") {
    CHECK(map_concentration(Family::CDVM, Family::CDWC, 0.0, 10) == 0.0);
    CHECK(map_concentration(Family::CDWC, Family::CDVM, 0.0, 10) == 0.0);
    SUBCASE("round trip") {
        const double kappa = 2.2;
        const double rho = map_concentration(Family::CDVM, Family::CDWC, kappa, 10);
        CHECK(map_concentration(Family::CDWC, Family::CDVM, rho, 10) ==
              doctest::Approx(kappa).epsilon(1e-8));
    }
    SUBCASE("rho = 0.5 at m = 10 maps through rho_w = 0.50146") {
        const double kappa = map_concentration(Family::CDWC, Family::CDVM, 0.5, 10);
        CHECK(cdvm_B(kappa, 10) == doctest::Approx(cdwc_rho_w(0.5, 10)).epsilon(1e-9));
        // root-finder vs brute-force moment of the resulting pmf
        CHECK(chf_bruteforce(cdvm_pmf(Lattice(10), kappa, 0), 1).real() ==
              doctest::Approx(0.50146).epsilon(2e-5));
    }
    CHECK_THROWS_AS(map_concentration(Family::MDWC, Family::CDVM, 0.3, 10), std::invalid_argument);
}

TEST_CASE("matched-pair KL at rho_w = 0.9, m = 10") {
    const int m = 10;
    const double rho = cdwc_rho_w_inverse(0.9, m);
    const double kappa = cdvm_B_inverse(0.9, m);
    // the reported divergence takes the CDVM side as the base (reference)
    const DivergenceTriple d =
        divergences(cdvm_pmf(Lattice(m), kappa, 0), cdwc_pmf(Lattice(m), rho, 0));
    CHECK(d.kl == doctest::Approx(0.313).epsilon(0.01));
}

TEST_CASE("matched-pair KL of CDWN against the CDVM base at rho_w = 0.700, m = 10") {
    const int m = 10;
    const double rho = cdwn_rho_from_moment(0.700, m);
    const double kappa = cdvm_B_inverse(0.700, m);
    const DivergenceTriple d =
        divergences(cdvm_pmf(Lattice(m), kappa, 0), cdwn_pmf(Lattice(m), rho, 0));
    CHECK(std::abs(d.kl - 0.018) < 0.001);
}

TEST_CASE("max divergence scan, CDWC against the CDVM base, m = 10") {
    const ScanResult r = max_divergence_scan(Family::CDWC, Family::CDVM, 10);
    CHECK(std::abs(r.kl.value - 0.313) < 0.005);
    CHECK(std::abs(r.kl.argmax_rho_w - 0.900) < 0.005);
    CHECK(std::abs(r.l1.value - 0.639) < 0.005);
    CHECK(std::abs(r.l1.argmax_rho_w - 0.852) < 0.005);
    CHECK(std::abs(r.l2.value - 0.441) < 0.005);
    CHECK(std::abs(r.l2.argmax_rho_w - 0.870) < 0.005);
    CHECK(!r.kl.at_cap);
    SUBCASE("a truncated grid flags a maximum at the cap") {
        const ScanResult capped = max_divergence_scan(Family::CDWC, Family::CDVM, 10, 0.5);
        CHECK(capped.kl.at_cap);
    }
}

TEST_CASE("discrete divergences approach the continuous limit") {
    for (double rho_w : {0.5, 0.9, 0.99}) {
        DivergenceTriple d[2];
        int idx = 0;
        for (int m : {1000, 10000}) {
            const Pmf vm = cdvm_pmf(Lattice(m), cdvm_B_inverse(rho_w, m), 0);
            const Pmf wc = cdwc_pmf(Lattice(m), cdwc_rho_w_inverse(rho_w, m), 0);
            d[idx++] = divergences(vm, wc);
        }
        CHECK(std::abs(d[0].kl - d[1].kl) / d[1].kl < 0.01);
        CHECK(std::abs(d[0].l1 - d[1].l1) / d[1].l1 < 0.01);
        CHECK(std::abs(d[0].l2 - d[1].l2) / d[1].l2 < 0.01);
    }
}

TEST_CASE("sheppard report") {
    const auto rows = sheppard_report(0.5, {3, 5, 10, 20, 5000, 12});
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].cdwc_cos1 == doctest::Approx(0.667).epsilon(8e-4));
    CHECK(rows[0].cdwc_cos2 == doctest::Approx(0.667).epsilon(8e-4));
    CHECK(rows[1].cdwc_cos1 == doctest::Approx(0.545).epsilon(1e-3));
    CHECK(rows[1].cdwc_cos2 == doctest::Approx(0.364).epsilon(1e-3));
    CHECK(rows[2].cdwc_cos1 == doctest::Approx(0.501).epsilon(1e-3));
    CHECK(rows[2].cdwc_cos2 == doctest::Approx(0.254).epsilon(2e-3));
    CHECK(std::abs(rows[2].mdwc_cos1 - 0.466) < 2e-3);
    CHECK(std::abs(rows[3].mdwc_cos1 - 0.493) < 2e-3);
    // a(h) -> 1 in the fine-lattice limit
    CHECK(rows[4].sheppard_a1 == doctest::Approx(1.0).epsilon(1e-6));
    // closed form at m = 12
    const double h = two_pi / 12;
    CHECK(rows[5].sheppard_a1 == doctest::Approx(h / (2.0 * std::sin(h / 2))).epsilon(1e-14));
    CHECK_THROWS_AS(sheppard_report(1.0, {5}), std::invalid_argument);
}
