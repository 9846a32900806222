#include "latcirc/torus.hpp"

#include "latcirc/distributions.hpp"
#include "latcirc/special.hpp"

#include <cmath>

namespace latcirc {

namespace {

double wrap_mu(double mu) {
    double v = std::fmod(mu + pi, two_pi);
    if (v < 0.0) v += two_pi;
    return v - pi;  // (-pi, pi]
}

void check_rho(double rho) {
    if (!(std::abs(rho) < 1.0))
        throw std::invalid_argument("torus: |rho| must be < 1, got " + std::to_string(rho));
}

}  // namespace

double biv_cdwc_normalizer(int m, double rho, double mu) {
    check_rho(rho);
    const double ar = std::abs(rho);
    const double rm = std::pow(ar, m);
    return static_cast<double>(m) * m * (1.0 - rm * rm) /
           ((1.0 - ar * ar) * (1.0 + rm * rm - 2.0 * rm * std::cos(m * mu)));
}

BivPmf biv_cdwc(int m, double rho, double mu) {
    check_rho(rho);
    mu = wrap_mu(mu);
    const Lattice lat(m);
    // q = sgn(rho): the negative case is the positive one with r2 reflected
    // and mu negated
    const bool negative = rho < 0.0;
    const double ar = std::abs(rho);
    const double mu_eff = negative ? -mu : mu;
    const double dss = biv_cdwc_normalizer(m, ar, mu_eff);
    Eigen::MatrixXd probs(m, m);
    for (int r1 = 0; r1 < m; ++r1)
        for (int r2 = 0; r2 < m; ++r2) {
            const int c2 = negative ? lat.reduce(-r2) : r2;
            const double diff = two_pi * lat.reduce(r1 - c2) / m - mu_eff;
            probs(r1, r2) = 1.0 / (dss * wc_denom(ar, diff));
        }
    return {lat, std::move(probs), rho, mu};
}

BivPmf biv_mdwc(int m, double rho, double mu) {
    check_rho(rho);
    mu = wrap_mu(mu);
    const Lattice lat(m);
    const bool negative = rho < 0.0;
    const double ar = std::min(std::abs(rho), rho_cap);
    const double mu_eff = negative ? -mu : mu;
    // the parent is (1/2 pi) * wc(theta1 - theta2 - mu), so cell (r1, r2)
    // depends on k = r1 - r2 only:
    //   q(k) = 1/(2 pi) * Int_{2 pi k/m}^{2 pi (k+1)/m}
    //            [G(phi - mu) - G(phi - 2 pi/m - mu)] dphi
    // with G the lifted wrapped Cauchy cdf.
    const double width = two_pi / m;
    Eigen::VectorXd cell(m);
    for (int k = 0; k < m; ++k) {
        const auto inner = [&](double phi) {
            return wc_interval_prob(phi - width - mu_eff, phi - mu_eff, ar);
        };
        const double lo = two_pi * k / m;
        cell[k] = integrate(inner, lo, lo + width, 1e-9 * two_pi) / two_pi;
    }
    Eigen::MatrixXd probs(m, m);
    for (int r1 = 0; r1 < m; ++r1)
        for (int r2 = 0; r2 < m; ++r2) {
            const int c2 = negative ? lat.reduce(-r2) : r2;
            probs(r1, r2) = cell[lat.reduce(r1 - c2)];
        }
    return {lat, std::move(probs), rho, mu};
}

}  // namespace latcirc
