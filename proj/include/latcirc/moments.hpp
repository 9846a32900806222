#pragma once

#include "latcirc/distributions.hpp"

#include <complex>
#include <functional>

namespace latcirc {

/// Trigonometric moments of order p: psi = beta + i*alpha.
struct TrigMoments {
    int p = 0;
    double alpha = 0.0;            // E sin(p * 2*pi*r/m)
    double beta = 1.0;             // E cos(p * 2*pi*r/m)
    std::complex<double> psi{1.0, 0.0};
};

/// Oracle: direct finite sum  sum_r p(r) exp(i p 2 pi r / m).
std::complex<double> chf_bruteforce(const Pmf& pmf, int p);

/// Closed-form / series characteristic function of a conditionalized
/// family (CDVM, CDWC, conditionalized cardioid, CDWN, symmetric
/// CDStable), including the centering phase exp(i p 2 pi t / m).
std::complex<double> chf_cd_analytic(const FamilySpec& spec, int p);

/// Series / integral characteristic function of a marginalized family
/// (MDVM, MDWC, marginalized cardioid) with lattice centering.
std::complex<double> chf_md_analytic(const FamilySpec& spec, int p);

TrigMoments trig_moments(const FamilySpec& spec, int p);

// ---------------------------------------------------------------------------
// CDVM moment function B and its inverse.
// ---------------------------------------------------------------------------

/// B(kappa) = E cos(2*pi*r/m) under CDVM(m, kappa, 0) = L_1(kappa)/L_0(kappa).
double cdvm_B(double kappa, int m);

/// dB/dkappa = Var(cos 2*pi*r/m) > 0.
double cdvm_B_prime(double kappa, int m);

/// Solve B(kappa) = target for kappa by bisection plus Newton polish to
/// |B(kappa) - target| < 1e-10. Throws std::invalid_argument when the
/// target is not attainable.
double cdvm_B_inverse(double target, int m);

// ---------------------------------------------------------------------------
// CDWC mean resultant length and its inverse.
// ---------------------------------------------------------------------------

/// rho_w = rho (1 + rho^(m-2)) / (1 + rho^m).
double cdwc_rho_w(double rho, int m);

/// Monotone inversion by bisection to 1e-12; the target is clipped into
/// [0, 1 - 1e-12).
double cdwc_rho_w_inverse(double target, int m);

// ---------------------------------------------------------------------------
// CDWN first trigonometric moment (used for moment-matched comparisons).
// ---------------------------------------------------------------------------

double cdwn_first_moment(double rho, int m);
double cdwn_rho_from_moment(double target, int m);

// ---------------------------------------------------------------------------
// Generic building blocks (exposed for cross-checks).
// ---------------------------------------------------------------------------

/// S_{p,m} = phi(p)/p + sum_l [phi(lm+p)/(lm+p) - phi(lm-p)/(lm-p)] for a
/// parent with characteristic function phi; 1 <= p <= m-1.
double marginalized_S(const std::function<double(int)>& phi, int p, int m);

/// psi_{p,m} of the conditionalized law for a symmetric parent chf phi:
/// [phi(p) + sum_l (phi(lm+p) + phi(lm-p))] / [1 + 2 sum_l phi(lm)].
double conditionalized_psi(const std::function<double(int)>& phi, int p, int m);

/// The wrapped Cauchy marginalized moment integral
/// int_0^rho x^(p-1) (1 - x^(m-2p)) / (1 - x^m) dx.
double mdwc_moment_integral(double rho, int p, int m);

}  // namespace latcirc
