#pragma once

#include "latcirc/lattice.hpp"

#include <Eigen/Dense>

namespace latcirc {

/// A bivariate pmf on the discrete torus Z_m x Z_m built from the
/// uniform-marginal wrapped Cauchy parent. Entries depend on
/// (r1 - r2) mod m only (circulant structure) and both marginals are
/// uniform 1/m.
struct BivPmf {
    Lattice lattice;
    Eigen::MatrixXd probs;  // probs(r1, r2)
    double rho = 0.0;
    double mu = 0.0;
};

/// Conditionalized bivariate law with closed-form normalizer D**.
BivPmf biv_cdwc(int m, double rho, double mu);

/// The closed-form normalizer D** = m^2 (1 - rho^2m) /
/// [(1 - rho^2)(1 + rho^2m - 2 rho^m cos(m mu))].
double biv_cdwc_normalizer(int m, double rho, double mu);

/// Marginalized bivariate law; each cell is a 1-D adaptive quadrature of
/// the closed-form inner wrapped Cauchy cdf difference.
BivPmf biv_mdwc(int m, double rho, double mu);

}  // namespace latcirc
