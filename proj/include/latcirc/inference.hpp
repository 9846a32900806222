#pragma once

#include "latcirc/distributions.hpp"
#include "latcirc/sampling.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace latcirc {

// ---------------------------------------------------------------------------
// Sample summaries.
// ---------------------------------------------------------------------------

struct SampleSummary {
    int m = 0;
    int n = 0;
    Eigen::ArrayXi counts;       // length m
    Eigen::ArrayXd a, b;         // cos / sin moments, orders 1..P at index p-1
    Eigen::ArrayXd rbar, thetabar;
    bool degenerate_mean = false;  // rbar1 == 0 within round-off; thetabar reported as 0

    double rbar1() const { return rbar[0]; }
    double thetabar1() const { return thetabar[0]; }
};

SampleSummary summarize(const std::vector<int>& data, int m, int max_order = 2);
SampleSummary summarize_counts(const Eigen::ArrayXi& counts, int max_order = 2);

// ---------------------------------------------------------------------------
// Maximum likelihood.
// ---------------------------------------------------------------------------

inline constexpr double kappa_search_max = 500.0;
inline constexpr double rho_search_max = 0.999;

struct MleResult {
    double tau_hat = 0.0;
    int t_hat = 0;
    double loglik = 0.0;
    double se_tau = 0.0;   // filled by the bootstrap
    double rbar_t = 0.0;   // bootstrap circular concentration of t_hat
    bool saturated = false;   // concentration hit the search boundary
    bool nonconcave = false;  // multiple score roots seen at some t
};

double cdvm_loglik(const SampleSummary& s, double kappa, int t);
double cdwc_loglik(const SampleSummary& s, double rho, int t);
/// Log-likelihood under any lattice location family with centering t.
double family_loglik(const SampleSummary& s, Family family, double tau, int t);

/// Closed-rule CDVM mle: t from the nearest-integer rule, kappa by
/// inverting B.
MleResult mle_cdvm(const SampleSummary& s);

/// Profile CDWC mle: bracketed root of the score in rho for every t.
MleResult mle_cdwc(const SampleSummary& s);

/// Exhaustive t-loop with golden-section search in tau; works for any
/// marginalized or conditionalized location family.
MleResult mle_generic(const SampleSummary& s, Family family);

/// Dispatch: closed-form routines for CDVM/CDWC, mle_generic otherwise.
MleResult fit_family(const SampleSummary& s, Family family);

/// Moment estimator of rho for CDWC: invert rho_w at R-bar.
double cdwc_moment_estimate(const SampleSummary& s);

struct BootstrapResult {
    double se_tau = 0.0;
    double rbar_t = 0.0;
};

/// Parametric bootstrap around a fitted location family.
BootstrapResult parametric_bootstrap(Family family, const MleResult& fit, int m, int n, int B,
                                     std::uint64_t seed);

// ---------------------------------------------------------------------------
// Uniformity and serial-dependence tests.
// ---------------------------------------------------------------------------

struct TestReport {
    std::string name;
    double value = 0.0;
    double p_value = std::numeric_limits<double>::quiet_NaN();  // Monte-Carlo, add-one rule
    int replications = 0;
    double asymptotic_p = std::numeric_limits<double>::quiet_NaN();
    double crit5 = std::numeric_limits<double>::quiet_NaN();
    double crit1 = std::numeric_limits<double>::quiet_NaN();
    // sd of the statistic across the null resamples (the SE column next to
    // T in the roulette tables)
    double null_sd = std::numeric_limits<double>::quiet_NaN();
};

/// Likelihood-ratio uniformity test T = 2(LL(tau-hat, t-hat) - LL(0, 0)),
/// Monte-Carlo p-value from uniform resamples refit with the same mle.
TestReport uniformity_lr_test(const SampleSummary& s, Family family, int replicates,
                              std::uint64_t seed);

/// Circular Karl-Pearson statistic U_G^2 (Monte-Carlo p-value only).
TestReport ug2_test(const SampleSummary& s, int replicates, std::uint64_t seed);

/// Rayleigh statistic T1^2 = 2 n R-bar^2, asymptotically chi-square(2).
TestReport rayleigh_test(const SampleSummary& s, int replicates, std::uint64_t seed);

/// T2^2 = 2 n (R-bar^2 + R-bar_2^2), asymptotically chi-square(4).
TestReport axial_rayleigh_test(const SampleSummary& s, int replicates, std::uint64_t seed);

struct SerialTestReport {
    TestReport cbar;   // sqrt(2n) C-bar on lag-1 differences
    TestReport sbar;   // sqrt(2n) S-bar
    TestReport r2;     // 2 n R-bar^2
};

/// Serial-dependence test on lag-1 circular differences, with critical
/// values simulated from uniform sequences of the same (n, m). The
/// divisor is n although the sums have n-1 terms; the null simulation
/// uses the identical convention.
SerialTestReport serial_test(const std::vector<int>& data, int m, int null_replicates,
                             std::uint64_t seed);

}  // namespace latcirc
