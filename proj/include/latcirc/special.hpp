#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace latcirc {

// ---------------------------------------------------------------------------
// Modified Bessel functions of the first kind, integer order.
// ---------------------------------------------------------------------------

/// I_p(x) for integer p >= 0, x >= 0. Ascending power series with term
/// cutoff 1e-16 * partial sum; standard asymptotic expansion for large x
/// when the order is small enough for it to apply.
double bessel_i(int p, double x);

/// exp(-x) * I_p(x), stable for large x.
double bessel_i_scaled(int p, double x);

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature (G7,K15).
// ---------------------------------------------------------------------------

/// Integrate f over [a, b] to absolute tolerance abs_tol by adaptive
/// bisection. Throws numeric_error with a diagnostic when the interval
/// stack is exhausted before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12);

// ---------------------------------------------------------------------------
// Incomplete gamma / chi-square tail.
// ---------------------------------------------------------------------------

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

/// P(X > x) for X ~ chi-square with df degrees of freedom.
double chi_square_sf(double x, double df);

// ---------------------------------------------------------------------------
// Wrapped Cauchy cumulative distribution.
// ---------------------------------------------------------------------------

/// Lifted (continuous, strictly increasing on all of R) cdf of the wrapped
/// Cauchy density with mean direction 0:  G(x) = (x + 2*atan(rho*sin x /
/// (1 - rho*cos x))) / (2*pi),  G(x + 2*pi) = G(x) + 1.  Because the atan
/// argument has a strictly positive denominator, no branch unwrapping is
/// ever needed.
double wc_cdf_lifted(double x, double rho);

/// Probability a wrapped Cauchy (mean direction 0) assigns to [lo, hi].
double wc_interval_prob(double lo, double hi, double rho);

/// Wrapped Cauchy density at angle theta from the mean direction.
double wc_pdf(double theta, double rho);

/// 1 + rho^2 - 2 rho cos(theta), evaluated as (1-rho)^2 + 4 rho sin^2(theta/2)
/// so the near-mode value does not cancel away at high concentration.
inline double wc_denom(double rho, double theta) {
    const double s = std::sin(0.5 * theta);
    return (1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s;
}

// ---------------------------------------------------------------------------
// Seed derivation.
// ---------------------------------------------------------------------------

/// splitmix64 step; used to derive independent child seeds from a master
/// seed so replicate workers are reproducible regardless of scheduling.
std::uint64_t splitmix64(std::uint64_t x);

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// ---------------------------------------------------------------------------
// Compensated accumulation.
// ---------------------------------------------------------------------------

/// Kahan-Neumaier accumulator for long kernel sums near the rho -> 1 cap.
class CompensatedSum {
  public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace latcirc
