#pragma once

#include "latcirc/lattice.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace latcirc {

// ---------------------------------------------------------------------------
// Family tags and parameter bundle.
// ---------------------------------------------------------------------------

enum class Family {
    CDVM,
    CDWC,
    MDVM,
    MDWC,
    MDCardioid,
    CDCardioid,
    CDWN,
    CDStable,
    WrappedPoisson,
    WrappedGeometric,
    WrappedSkewLaplace,
    MDKJ,
    CDKJ,
    MaxEnt,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// True for families whose lattice law comes from evaluating a continuous
/// density at the lattice points and renormalizing.
bool is_conditionalized(Family f);
/// True for families whose lattice law comes from integrating a continuous
/// density over lattice arcs.
bool is_marginalized(Family f);

/// Parameters for one distribution family. Only the fields relevant to
/// `family` are read; angles are radians.
struct FamilySpec {
    Family family = Family::CDWC;
    int m = 2;
    double concentration = 0.0;  // kappa, rho, Poisson lambda, or geometric p
    int t = 0;                   // lattice centering parameter
    double mu = 0.0;             // continuous centering where permitted
    bool mu_is_continuous = false;  // when false, mu is taken as 2*pi*t/m
    double stable_a = 1.0;
    double stable_b = 0.0;
    double kj_gamma = 0.0;  // Kato-Jones gamma
    double kj_lambda = 0.0; // Kato-Jones lambda
    double q = 0.5;         // skew-Laplace second parameter

    double centering_angle() const;
};

/// Evaluate the pmf described by a FamilySpec.
Pmf make_pmf(const FamilySpec& spec);

// ---------------------------------------------------------------------------
// Conditionalized families (density evaluated on the lattice, renormalized).
// ---------------------------------------------------------------------------

/// Conditionalized discrete von Mises: p(r) ∝ exp(kappa*cos(2*pi*(r-t)/m)).
Pmf cdvm_pmf(const Lattice& lat, double kappa, int t);

/// Conditionalized discrete wrapped Cauchy with lattice centering; the
/// normalizing constant has the closed form (1-rho^2)(1-rho^m)/(m(1+rho^m)).
Pmf cdwc_pmf(const Lattice& lat, double rho, int t);

/// CDWC with arbitrary continuous mean direction mu.
Pmf cdwc_pmf_mu(const Lattice& lat, double rho, double mu);

/// Conditionalized cardioid: p(r) ∝ 1 + 2*rho*cos(2*pi*r/m - mu), |rho| < 1/2.
Pmf cd_cardioid_pmf(const Lattice& lat, double rho, double mu);

/// Lattice-centered overload; location-family symmetry holds bit-exactly.
Pmf cd_cardioid_pmf(const Lattice& lat, double rho, int t);

/// Conditionalized discrete wrapped stable; a=1,b=0 is CDWC, a=2,b=0 is CDWN.
Pmf cd_stable_pmf(const Lattice& lat, double rho, int t, double a, double b);

/// Conditionalized discrete wrapped normal (stable a=2 with closed normalizer).
Pmf cdwn_pmf(const Lattice& lat, double rho, int t);

/// log-pmf of the CDWN, accurate far into the tails (the linear-space pmf
/// underflows at the antipode once rho is close to 1).
Eigen::ArrayXd cdwn_log_pmf(const Lattice& lat, double rho, int t);

/// Conditionalized discrete Kato-Jones family.
Pmf cdkj_pmf(const Lattice& lat, double rho, double mu, double gamma, double lambda);

/// Closed-form CDKJ normalizing constant D*.
double cdkj_normalizer(const Lattice& lat, double rho, double mu, double gamma, double lambda);

/// Validate the joint Kato-Jones parameter constraint; throws
/// std::invalid_argument naming the violated inequality.
void check_kj_constraints(double rho, double gamma, double lambda);

// ---------------------------------------------------------------------------
// Marginalized families (density integrated over lattice arcs).
// ---------------------------------------------------------------------------

/// Marginalized discrete von Mises; per-bin adaptive quadrature.
Pmf mdvm_pmf(const Lattice& lat, double kappa, double mu);

/// Marginalized discrete wrapped Cauchy; closed-form cdf differences.
Pmf mdwc_pmf(const Lattice& lat, double rho, double mu);

/// Marginalized discrete cardioid, |rho| < 1/2, lattice centering t.
Pmf md_cardioid_pmf(const Lattice& lat, double rho, int t);

/// Marginalized discrete Kato-Jones family.
Pmf mdkj_pmf(const Lattice& lat, double rho, double mu, double gamma, double lambda);

// ---------------------------------------------------------------------------
// Centered wrapped discrete families.
// ---------------------------------------------------------------------------

Pmf wrapped_poisson_pmf(const Lattice& lat, double lambda, int t);
Pmf wrapped_geometric_pmf(const Lattice& lat, double p, int t);
Pmf wrapped_skew_laplace_pmf(const Lattice& lat, double p, double q, int t);

// ---------------------------------------------------------------------------
// Maximum entropy construction.
// ---------------------------------------------------------------------------

/// Maximum-entropy pmf on the lattice subject to E[t_i(r)] = targets[i].
/// `constraints` is q x m: row i holds t_i evaluated at r = 0..m-1.
/// Solved by damped Newton on the moment conditions; throws numeric_error
/// when the targets are infeasible (Newton step-size underflow).
Pmf max_entropy_pmf(const Lattice& lat, const Eigen::MatrixXd& constraints,
                    const Eigen::VectorXd& targets);

// ---------------------------------------------------------------------------
// Mixtures, including irregular union-lattice supports.
// ---------------------------------------------------------------------------

/// Mixture of component pmfs with the given weights; the support is the
/// union of the component lattices, represented as sorted distinct angles.
IrregularPmf mixture_pmf(const std::vector<std::pair<FamilySpec, double>>& components);

// ---------------------------------------------------------------------------
// Internals shared with the moments/oracle code.
// ---------------------------------------------------------------------------

/// L_p(kappa) = sum_r cos(p*2*pi*r/m) * exp(kappa*cos(2*pi*r/m)), scaled by
/// exp(-kappa) so it stays finite for large kappa.
double cdvm_L_scaled(int p, double kappa, int m);

/// rho is capped just below 1 before kernel evaluation; exposed so tests
/// and estimators share the same cap.
inline constexpr double rho_cap = 0.999999;

}  // namespace latcirc
