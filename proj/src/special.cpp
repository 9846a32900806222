#include "latcirc/special.hpp"

#include "latcirc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace latcirc {

namespace {

double bessel_i_series(int p, double x) {
    // I_p(x) = sum_k (x/2)^(2k+p) / (k! (k+p)!), all terms positive.
    const double half = 0.5 * x;
    double term = std::exp(p * std::log(half) - std::lgamma(p + 1.0));
    if (p == 0) term = 1.0;
    double sum = term;
    const double hh = half * half;
    for (int k = 0; k < 100000; ++k) {
        term *= hh / ((k + 1.0) * (k + 1.0 + p));
        sum += term;
        if (term < 1e-16 * sum) return sum;
    }
    throw numeric_error("bessel_i: series did not converge for p=" + std::to_string(p) +
                        ", x=" + std::to_string(x));
}

double bessel_i_asymptotic_scaled(int p, double x) {
    // e^-x I_p(x) ~ (2 pi x)^{-1/2} sum_j (-1)^j a_j / x^j with
    // a_j = prod_{i=1..j} (4p^2 - (2i-1)^2) / (j! 8^j).
    const double mu = 4.0 * p * p;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < 40; ++j) {
        const double factor = ((2.0 * j - 1.0) * (2.0 * j - 1.0) - mu) / (8.0 * j * x);
        if (std::abs(factor) >= 1.0) break;  // divergence onset
        term *= factor;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(two_pi * x);
}

bool use_asymptotic(int p, double x) {
    // The large-argument expansion needs x to dominate the order.
    return x > 30.0 && x > 4.0 * static_cast<double>(p) * p;
}

}  // namespace

double bessel_i(int p, double x) {
    if (p < 0) throw std::invalid_argument("bessel_i: order must be >= 0");
    if (x < 0) throw std::invalid_argument("bessel_i: argument must be >= 0");
    if (x == 0.0) return p == 0 ? 1.0 : 0.0;
    if (use_asymptotic(p, x)) return bessel_i_asymptotic_scaled(p, x) * std::exp(x);
    return bessel_i_series(p, x);
}

double bessel_i_scaled(int p, double x) {
    if (p < 0) throw std::invalid_argument("bessel_i: order must be >= 0");
    if (x < 0) throw std::invalid_argument("bessel_i: argument must be >= 0");
    if (x == 0.0) return p == 0 ? 1.0 : 0.0;
    if (use_asymptotic(p, x)) return bessel_i_asymptotic_scaled(p, x);
    return bessel_i_series(p, x) * std::exp(-x);
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod (G7,K15), QUADPACK abscissae and weights.
// ---------------------------------------------------------------------------

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
    double integral;
    double error;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        return -integrate(f, b, a, abs_tol);
    }
    struct Segment {
        double a, b;
        GkEstimate est;
    };
    std::vector<Segment> stack;
    stack.push_back({a, b, gk15(f, a, b)});
    double total = stack[0].est.integral;
    double err = stack[0].est.error;
    int splits = 0;
    const int max_splits = 20000;
    while (err > abs_tol) {
        if (++splits > max_splits)
            throw numeric_error("integrate: adaptive quadrature failed to reach tolerance " +
                                std::to_string(abs_tol) + " on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "], error " + std::to_string(err));
        // split the segment with the largest error estimate
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].est.error > stack[worst].est.error) worst = i;
        Segment seg = stack[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b)
            throw numeric_error("integrate: interval underflow at x=" + std::to_string(mid));
        Segment left{seg.a, mid, gk15(f, seg.a, mid)};
        Segment right{mid, seg.b, gk15(f, mid, seg.b)};
        total += left.est.integral + right.est.integral - seg.est.integral;
        err += left.est.error + right.est.error - seg.est.error;
        stack[worst] = left;
        stack.push_back(right);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Incomplete gamma.
// ---------------------------------------------------------------------------

namespace {

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw numeric_error("gamma_p: series did not converge");
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw numeric_error("gamma_q: continued fraction did not converge");
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi_square_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * x);
}

// ---------------------------------------------------------------------------
// Wrapped Cauchy cdf.
// ---------------------------------------------------------------------------

double wc_cdf_lifted(double x, double rho) {
    return (x + 2.0 * std::atan(rho * std::sin(x) / (1.0 - rho * std::cos(x)))) / two_pi;
}

double wc_interval_prob(double lo, double hi, double rho) {
    return wc_cdf_lifted(hi, rho) - wc_cdf_lifted(lo, rho);
}

double wc_pdf(double theta, double rho) {
    return (1.0 - rho * rho) / (two_pi * wc_denom(rho, theta));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace latcirc
