#include "latcirc/moments.hpp"

#include "latcirc/special.hpp"

#include <algorithm>
#include <cmath>

namespace latcirc {

namespace {

constexpr std::size_t tail_cap = 1000000;

std::complex<double> phase(int p, double angle) {
    return {std::cos(p * angle), std::sin(p * angle)};
}

int reduce_p(int p, int m) {
    int v = p % m;
    if (v < 0) v += m;
    return v;
}

}  // namespace

std::complex<double> chf_bruteforce(const Pmf& pmf, int p) {
    const int m = pmf.m();
    std::complex<double> sum{0.0, 0.0};
    for (int r = 0; r < m; ++r) sum += pmf.probs()[r] * phase(p, two_pi * r / m);
    return sum;
}

double marginalized_S(const std::function<double(int)>& phi, int p, int m) {
    double s = phi(p) / p;
    for (std::size_t l = 1; l <= tail_cap; ++l) {
        const double hi = phi(static_cast<int>(l) * m + p) / (static_cast<double>(l) * m + p);
        const double lo = phi(static_cast<int>(l) * m - p) / (static_cast<double>(l) * m - p);
        s += hi - lo;
        if (std::abs(hi) < 1e-15 && std::abs(lo) < 1e-15) return s;
    }
    throw numeric_error("marginalized_S: series exceeded term cap");
}

double conditionalized_psi(const std::function<double(int)>& phi, int p, int m) {
    double num = phi(p);
    double den = 1.0;
    for (std::size_t l = 1; l <= tail_cap; ++l) {
        const double hi = phi(static_cast<int>(l) * m + p);
        const double lo = phi(static_cast<int>(l) * m - p);
        const double mid = phi(static_cast<int>(l) * m);
        num += hi + lo;
        den += 2.0 * mid;
        if (std::abs(hi) < 1e-16 && std::abs(lo) < 1e-16 && std::abs(mid) < 1e-16) return num / den;
    }
    throw numeric_error("conditionalized_psi: series exceeded term cap");
}

double mdwc_moment_integral(double rho, int p, int m) {
    // integrand (x^(p-1) - x^(m-p-1)) / (1 - x^m) is smooth on [0, rho]
    const auto f = [&](double x) {
        return (std::pow(x, p - 1) - std::pow(x, m - p - 1)) / (1.0 - std::pow(x, m));
    };
    return integrate(f, 0.0, rho, 1e-13);
}

std::complex<double> chf_cd_analytic(const FamilySpec& spec, int p) {
    const int m = spec.m;
    p = reduce_p(p, m);
    if (spec.mu_is_continuous)
        throw std::invalid_argument("chf_cd_analytic: only lattice centering is supported");
    if (p == 0) return {1.0, 0.0};
    const std::complex<double> shift = phase(p, two_pi * spec.t / m);
    switch (spec.family) {
        case Family::CDWC: {
            const double rho = spec.concentration;
            const double beta = (std::pow(rho, p) + std::pow(rho, m - p)) / (1.0 + std::pow(rho, m));
            return shift * beta;
        }
        case Family::CDVM: {
            const double kappa = spec.concentration;
            return shift * (cdvm_L_scaled(p, kappa, m) / cdvm_L_scaled(0, kappa, m));
        }
        case Family::CDCardioid: {
            const double rho = spec.concentration;
            return (p == 1 || p == m - 1) ? shift * rho : std::complex<double>{0.0, 0.0};
        }
        case Family::CDWN:
        case Family::CDStable: {
            const double a = spec.family == Family::CDWN ? 2.0 : spec.stable_a;
            if (spec.family == Family::CDStable && spec.stable_b != 0.0)
                throw std::invalid_argument(
                    "chf_cd_analytic: skewed stable characteristic function not implemented");
            const double rho = spec.concentration;
            const auto phi = [&](int k) {
                return rho == 0.0 ? (k == 0 ? 1.0 : 0.0) : std::pow(rho, std::pow(k, a));
            };
            return shift * conditionalized_psi(phi, p, m);
        }
        default:
            throw std::invalid_argument("chf_cd_analytic: not implemented for family " +
                                        family_name(spec.family));
    }
}

std::complex<double> chf_md_analytic(const FamilySpec& spec, int p) {
    const int m = spec.m;
    p = reduce_p(p, m);
    if (spec.mu_is_continuous)
        throw std::invalid_argument("chf_md_analytic: only lattice centering is supported");
    if (p == 0) return {1.0, 0.0};
    const std::complex<double> shift = phase(p, two_pi * spec.t / m);
    const std::complex<double> bin_factor =
        phase(-p, pi / m) * (m * std::sin(pi * p / m) / pi);
    double S = 0.0;
    switch (spec.family) {
        case Family::MDCardioid: {
            const double rho = spec.concentration;
            if (p == 1)
                S = rho;
            else if (p == m - 1)
                S = -rho;  // the l=1 term -phi(m-p)/(m-p) = -rho
            else
                S = 0.0;
            break;
        }
        case Family::MDVM: {
            const double kappa = spec.concentration;
            const double i0 = bessel_i_scaled(0, kappa);
            const auto phi = [&](int k) { return bessel_i_scaled(k, kappa) / i0; };
            S = marginalized_S(phi, p, m);
            break;
        }
        case Family::MDWC: {
            S = mdwc_moment_integral(spec.concentration, p, m);
            break;
        }
        default:
            throw std::invalid_argument("chf_md_analytic: not implemented for family " +
                                        family_name(spec.family));
    }
    return shift * bin_factor * S;
}

TrigMoments trig_moments(const FamilySpec& spec, int p) {
    const std::complex<double> psi =
        is_marginalized(spec.family) ? chf_md_analytic(spec, p) : chf_cd_analytic(spec, p);
    return {p, psi.imag(), psi.real(), psi};
}

// ---------------------------------------------------------------------------
// B and rho_w.
// ---------------------------------------------------------------------------

double cdvm_B(double kappa, int m) {
    return cdvm_L_scaled(1, kappa, m) / cdvm_L_scaled(0, kappa, m);
}

double cdvm_B_prime(double kappa, int m) {
    const double l0 = cdvm_L_scaled(0, kappa, m);
    const double b1 = cdvm_L_scaled(1, kappa, m) / l0;
    const double b2 = cdvm_L_scaled(2, kappa, m) / l0;
    // B' = (L0 + L2)/(2 L0) - B^2, from L_1' = (L_0 + L_2)/2
    return 0.5 * (1.0 + b2) - b1 * b1;
}

double cdvm_B_inverse(double target, int m) {
    if (target < 0.0 || target >= 1.0)
        throw std::invalid_argument("cdvm_B_inverse: target " + std::to_string(target) +
                                    " outside [0, 1)");
    if (target == 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (cdvm_B(hi, m) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6)
            throw std::invalid_argument("cdvm_B_inverse: target " + std::to_string(target) +
                                        " not attainable (kappa above 1e6)");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double b = cdvm_B(mid, m);
        if (std::abs(b - target) < 1e-10) {
            // Newton polish
            double k = mid;
            for (int j = 0; j < 4; ++j) {
                const double g = cdvm_B(k, m) - target;
                const double d = cdvm_B_prime(k, m);
                if (d <= 0.0) break;
                const double next = k - g / d;
                if (next >= lo && next <= hi) k = next;
            }
            return std::abs(cdvm_B(k, m) - target) <= std::abs(b - target) ? k : mid;
        }
        (b < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double cdwc_rho_w(double rho, int m) {
    if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("cdwc_rho_w: rho outside [0, 1)");
    return rho * (1.0 + std::pow(rho, m - 2)) / (1.0 + std::pow(rho, m));
}

double cdwc_rho_w_inverse(double target, int m) {
    target = std::clamp(target, 0.0, 1.0 - 1e-12);
    double lo = 0.0, hi = 1.0 - 1e-15;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdwc_rho_w(mid, m) < target ? lo : hi) = mid;
        if (hi - lo < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

double cdwn_first_moment(double rho, int m) {
    if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("cdwn_first_moment: rho outside [0, 1)");
    const auto phi = [&](int k) {
        return rho == 0.0 ? (k == 0 ? 1.0 : 0.0)
                          : std::pow(rho, static_cast<double>(k) * static_cast<double>(k));
    };
    return conditionalized_psi(phi, 1, m);
}

double cdwn_rho_from_moment(double target, int m) {
    target = std::clamp(target, 0.0, 1.0 - 1e-12);
    double lo = 0.0, hi = 1.0 - 1e-15;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdwn_first_moment(mid, m) < target ? lo : hi) = mid;
        if (hi - lo < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace latcirc
