#include "latcirc/distributions.hpp"

#include "latcirc/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace latcirc {

namespace {

constexpr std::size_t series_term_cap = 1000000;

double require_rho(double rho) {
    if (rho < 0.0 || rho >= 1.0)
        throw std::invalid_argument("rho must lie in [0, 1), got " + std::to_string(rho));
    return std::min(rho, rho_cap);
}

double require_kappa(double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0, got " + std::to_string(kappa));
    return kappa;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::CDVM: return "cdvm";
        case Family::CDWC: return "cdwc";
        case Family::MDVM: return "mdvm";
        case Family::MDWC: return "mdwc";
        case Family::MDCardioid: return "mdcardioid";
        case Family::CDCardioid: return "cdcardioid";
        case Family::CDWN: return "cdwn";
        case Family::CDStable: return "cdstable";
        case Family::WrappedPoisson: return "wpoisson";
        case Family::WrappedGeometric: return "wgeometric";
        case Family::WrappedSkewLaplace: return "wskewlaplace";
        case Family::MDKJ: return "mdkj";
        case Family::CDKJ: return "cdkj";
        case Family::MaxEnt: return "maxent";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    static const std::map<std::string, Family> table = {
        {"cdvm", Family::CDVM},       {"cdwc", Family::CDWC},
        {"mdvm", Family::MDVM},       {"mdwc", Family::MDWC},
        {"mdcardioid", Family::MDCardioid}, {"cdcardioid", Family::CDCardioid},
        {"cdwn", Family::CDWN},       {"cdstable", Family::CDStable},
        {"wpoisson", Family::WrappedPoisson}, {"wgeometric", Family::WrappedGeometric},
        {"wskewlaplace", Family::WrappedSkewLaplace}, {"mdkj", Family::MDKJ},
        {"cdkj", Family::CDKJ},       {"maxent", Family::MaxEnt}};
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown family: " + name);
    return it->second;
}

bool is_conditionalized(Family f) {
    switch (f) {
        case Family::CDVM:
        case Family::CDWC:
        case Family::CDCardioid:
        case Family::CDWN:
        case Family::CDStable:
        case Family::CDKJ: return true;
        default: return false;
    }
}

bool is_marginalized(Family f) {
    switch (f) {
        case Family::MDVM:
        case Family::MDWC:
        case Family::MDCardioid:
        case Family::MDKJ: return true;
        default: return false;
    }
}

double FamilySpec::centering_angle() const {
    return mu_is_continuous ? mu : two_pi * static_cast<double>(t) / m;
}

// ---------------------------------------------------------------------------
// Conditionalized families.
// ---------------------------------------------------------------------------

double cdvm_L_scaled(int p, double kappa, int m) {
    CompensatedSum sum;
    for (int r = 0; r < m; ++r) {
        const double c = std::cos(two_pi * r / m);
        sum.add(std::cos(p * two_pi * r / m) * std::exp(kappa * (c - 1.0)));
    }
    return sum.value();
}

Pmf cdvm_pmf(const Lattice& lat, double kappa, int t) {
    require_kappa(kappa);
    const int m = lat.size();
    const int tr = lat.reduce(t);
    const double norm = cdvm_L_scaled(0, kappa, m);
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) {
        const double theta = two_pi * lat.sym_distance(r - tr) / m;
        p[r] = std::exp(kappa * (std::cos(theta) - 1.0)) / norm;
    }
    return Pmf(lat, std::move(p));
}

Pmf cdwc_pmf(const Lattice& lat, double rho, int t) {
    rho = require_rho(rho);
    const int m = lat.size();
    const int tr = lat.reduce(t);
    const double rm = std::pow(rho, m);
    const double c0 = (1.0 - rho * rho) * (1.0 - rm) / (m * (1.0 + rm));
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) {
        const double theta = two_pi * lat.sym_distance(r - tr) / m;
        p[r] = c0 / wc_denom(rho, theta);
    }
    return Pmf(lat, std::move(p));
}

Pmf cdwc_pmf_mu(const Lattice& lat, double rho, double mu) {
    rho = require_rho(rho);
    const int m = lat.size();
    const double rm = std::pow(rho, m);
    const double c0 =
        (1.0 - 2.0 * rm * std::cos(m * mu) + rm * rm) * (1.0 - rho * rho) / (m * (1.0 - rm * rm));
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r)
        p[r] = c0 / wc_denom(rho, two_pi * r / m - mu);
    return Pmf(lat, std::move(p));
}

Pmf cd_cardioid_pmf(const Lattice& lat, double rho, double mu) {
    if (std::abs(rho) >= 0.5)
        throw std::invalid_argument("cardioid: |rho| must be < 1/2, got " + std::to_string(rho));
    const int m = lat.size();
    // sum of cos over the full lattice vanishes, so the normalizer is m
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r)
        p[r] = (1.0 + 2.0 * rho * std::cos(two_pi * r / m - mu)) / m;
    return Pmf(lat, std::move(p));
}

Pmf cd_cardioid_pmf(const Lattice& lat, double rho, int t) {
    if (std::abs(rho) >= 0.5)
        throw std::invalid_argument("cardioid: |rho| must be < 1/2, got " + std::to_string(rho));
    const int m = lat.size();
    const int tr = lat.reduce(t);
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r)
        p[r] = (1.0 + 2.0 * rho * std::cos(two_pi * lat.sym_distance(r - tr) / m)) / m;
    return Pmf(lat, std::move(p));
}

namespace {

/// 1 + 2*sum_q rho^(q^a) cos(q*theta + b*q^a), truncated at term magnitude 1e-15.
double stable_kernel(double theta, double rho, double a, double b) {
    CompensatedSum sum;
    sum.add(1.0);
    if (rho == 0.0) return 1.0;
    const double lr = std::log(rho);
    for (std::size_t q = 1; q <= series_term_cap; ++q) {
        const double qa = std::pow(static_cast<double>(q), a);
        const double mag = std::exp(qa * lr);
        if (mag < 1e-15) return sum.value();
        sum.add(2.0 * mag * std::cos(q * theta + b * qa));
    }
    throw numeric_error("stable series exceeded term cap (a=" + std::to_string(a) +
                        ", rho=" + std::to_string(rho) + ")");
}

/// m * (1 + 2*sum_k rho^((mk)^a) cos(b*(mk)^a)); brute-forcing the lattice
/// sum of the kernel collapses to this because sum_r cos(q*2*pi*r/m + c)
/// vanishes unless m divides q.
double stable_normalizer(int m, double rho, double a, double b) {
    CompensatedSum sum;
    sum.add(1.0);
    if (rho > 0.0) {
        const double lr = std::log(rho);
        for (std::size_t k = 1; k <= series_term_cap; ++k) {
            const double mka = std::pow(static_cast<double>(m) * k, a);
            const double mag = std::exp(mka * lr);
            if (mag < 1e-15) break;
            sum.add(2.0 * mag * std::cos(b * mka));
            if (k == series_term_cap)
                throw numeric_error("stable normalizer series exceeded term cap");
        }
    }
    return m * sum.value();
}

}  // namespace

Pmf cd_stable_pmf(const Lattice& lat, double rho, int t, double a, double b) {
    rho = require_rho(rho);
    if (!(a > 0.0 && a <= 2.0))
        throw std::invalid_argument("stable exponent a must lie in (0, 2], got " + std::to_string(a));
    const int m = lat.size();
    const int tr = lat.reduce(t);
    const double norm = stable_normalizer(m, rho, a, b);
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) {
        const double theta = (b == 0.0) ? two_pi * lat.sym_distance(r - tr) / m
                                        : two_pi * lat.reduce(r - tr) / m;
        p[r] = stable_kernel(theta, rho, a, b) / norm;
    }
    return Pmf(lat, std::move(p));
}

namespace {

/// log of the wrapped-normal kernel 1 + 2*sum_q rho^(q^2) cos(q*theta).
/// The cosine series cancels catastrophically once the true value falls
/// below round-off, so for concentrated rho we switch to the Jacobi theta
/// dual: the same kernel equals sqrt(2*pi/s2) * sum_k exp(-(theta+2*pi*k)^2
/// / (2*s2)) with s2 = -2*log(rho), an all-positive sum that stays exact
/// down into the denormals.
double cdwn_log_kernel(double theta, double rho) {
    if (rho == 0.0) return 0.0;
    const double s2 = -2.0 * std::log(rho);
    if (s2 >= 1.0) {
        CompensatedSum num;
        num.add(1.0);
        const double lr = std::log(rho);
        for (std::size_t q = 1;; ++q) {
            const double mag = std::exp(static_cast<double>(q) * q * lr);
            if (mag < 1e-15) break;
            num.add(2.0 * mag * std::cos(q * theta));
        }
        return std::log(num.value());
    }
    // theta in (-pi, pi]; max term is the k = 0 one
    double tc = std::fmod(theta, two_pi);
    if (tc > pi) tc -= two_pi;
    if (tc <= -pi) tc += two_pi;
    const double lead = -tc * tc / (2.0 * s2);
    CompensatedSum sum;
    for (int k = 0;; ++k) {
        const double up = tc + two_pi * k;
        const double dn = tc - two_pi * (k + 1);
        const double a = std::exp(-up * up / (2.0 * s2) - lead);
        const double b = std::exp(-dn * dn / (2.0 * s2) - lead);
        if (k > 0 && a + b < 1e-18 * sum.value()) break;
        sum.add(a + b);
        if (k > 10000) break;
    }
    return 0.5 * std::log(two_pi / s2) + lead + std::log(sum.value());
}

/// log of the closed-form CDWN normalizer m*(1 + 2*sum_k rho^((km)^2)).
double cdwn_log_normalizer(double rho, int m) {
    CompensatedSum den;
    den.add(1.0);
    if (rho > 0.0) {
        const double lr = std::log(rho);
        for (std::size_t k = 1;; ++k) {
            const double mag =
                std::exp(static_cast<double>(k) * k * m * static_cast<double>(m) * lr);
            if (mag < 1e-15) break;
            den.add(2.0 * mag);
        }
    }
    return std::log(static_cast<double>(m)) + std::log(den.value());
}

}  // namespace

Eigen::ArrayXd cdwn_log_pmf(const Lattice& lat, double rho, int t) {
    rho = require_rho(rho);
    const int m = lat.size();
    const int tr = lat.reduce(t);
    const double log_norm = cdwn_log_normalizer(rho, m);
    Eigen::ArrayXd out(m);
    for (int r = 0; r < m; ++r)
        out[r] = cdwn_log_kernel(two_pi * lat.sym_distance(r - tr) / m, rho) - log_norm;
    return out;
}

Pmf cdwn_pmf(const Lattice& lat, double rho, int t) {
    const Eigen::ArrayXd lp = cdwn_log_pmf(lat, rho, t);
    Eigen::ArrayXd p(lat.size());
    // scalar exp: Eigen's packet exp may round identical inputs differently
    // across lanes, which would break the exact location-family symmetry
    for (int r = 0; r < lat.size(); ++r) p[r] = std::exp(lp[r]);
    return Pmf(lat, std::move(p));
}

// ---------------------------------------------------------------------------
// Kato-Jones families.
// ---------------------------------------------------------------------------

void check_kj_constraints(double rho, double gamma, double lambda) {
    if (rho < 0.0 || rho >= 1.0)
        throw std::invalid_argument("Kato-Jones constraint violated: 0 <= rho < 1 (rho=" +
                                    std::to_string(rho) + ")");
    if (gamma < 0.0 || gamma > 0.5 * (1.0 + rho))
        throw std::invalid_argument("Kato-Jones constraint violated: 0 <= gamma <= (1+rho)/2 (gamma=" +
                                    std::to_string(gamma) + ", rho=" + std::to_string(rho) + ")");
    const double lhs = rho * gamma * std::cos(lambda);
    const double rhs = 0.5 * (rho * rho + 2.0 * gamma - 1.0);
    if (lhs < rhs - 1e-14)
        throw std::invalid_argument(
            "Kato-Jones constraint violated: rho*gamma*cos(lambda) >= (rho^2+2*gamma-1)/2 (" +
            std::to_string(lhs) + " < " + std::to_string(rhs) + ")");
}

double cdkj_normalizer(const Lattice& lat, double rho, double mu, double gamma, double lambda) {
    const int m = lat.size();
    const double rm1 = std::pow(rho, m - 1);
    const double rm = rm1 * rho;
    const double c = std::cos(m * (mu + lambda) - lambda);
    return m * (1.0 + 2.0 * gamma * rm1 * (c - rm * std::cos(lambda)) /
                          (1.0 + rm * rm - 2.0 * rm * std::cos(m * (mu + lambda))));
}

Pmf cdkj_pmf(const Lattice& lat, double rho, double mu, double gamma, double lambda) {
    check_kj_constraints(rho, gamma, lambda);
    rho = std::min(rho, rho_cap);
    const int m = lat.size();
    const double norm = cdkj_normalizer(lat, rho, mu, gamma, lambda);
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) {
        const double theta = two_pi * r / m;
        const double num = std::cos(theta - mu) - rho * std::cos(lambda);
        const double den = wc_denom(rho, theta - mu - lambda);
        p[r] = (1.0 + 2.0 * gamma * num / den) / norm;
    }
    return Pmf(lat, std::move(p));
}

// ---------------------------------------------------------------------------
// Marginalized families.
// ---------------------------------------------------------------------------

Pmf mdvm_pmf(const Lattice& lat, double kappa, double mu) {
    require_kappa(kappa);
    const int m = lat.size();
    if (kappa == 0.0) return Pmf(lat, Eigen::ArrayXd::Constant(m, 1.0 / m));
    // work with the kernel exp(kappa*(cos - 1)) so large kappa cannot overflow
    const double norm = two_pi * bessel_i_scaled(0, kappa);
    const auto kernel = [&](double theta) { return std::exp(kappa * (std::cos(theta - mu) - 1.0)); };
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) {
        const double lo = two_pi * r / m;
        const double hi = two_pi * (r + 1) / m;
        p[r] = integrate(kernel, lo, hi, 1e-12 * norm) / norm;
    }
    return Pmf(lat, std::move(p));
}

Pmf mdwc_pmf(const Lattice& lat, double rho, double mu) {
    rho = require_rho(rho);
    const int m = lat.size();
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r)
        p[r] = wc_interval_prob(two_pi * r / m - mu, two_pi * (r + 1) / m - mu, rho);
    return Pmf(lat, std::move(p));
}

Pmf md_cardioid_pmf(const Lattice& lat, double rho, int t) {
    if (std::abs(rho) >= 0.5)
        throw std::invalid_argument("cardioid: |rho| must be < 1/2, got " + std::to_string(rho));
    const int m = lat.size();
    const int tr = lat.reduce(t);
    const double amp = 2.0 * rho * std::sin(pi / m) / pi;
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r)
        p[r] = 1.0 / m + amp * std::cos(two_pi * (r - tr + 0.5) / m);
    return Pmf(lat, std::move(p));
}

Pmf mdkj_pmf(const Lattice& lat, double rho, double mu, double gamma, double lambda) {
    check_kj_constraints(rho, gamma, lambda);
    rho = std::min(rho, rho_cap);
    const int m = lat.size();
    Eigen::ArrayXd p(m);
    if (rho < 1e-10) {
        // rho -> 0 limit of the Kato-Jones density is a cardioid with
        // concentration gamma; integrate it in closed form
        for (int r = 0; r < m; ++r) {
            const double lo = two_pi * r / m;
            const double hi = two_pi * (r + 1) / m;
            p[r] = 1.0 / m + (gamma / pi) * (std::sin(hi - mu) - std::sin(lo - mu));
        }
        return Pmf(lat, std::move(p));
    }
    // Decomposition of the Kato-Jones density into a constant, a wrapped
    // Cauchy centered at mu+lambda, and an exact log-derivative part:
    //   g(theta) = (1/2pi)(1 - (gamma/rho) cos lambda)
    //            + (gamma cos lambda / rho) * wc(theta - mu - lambda)
    //            - (gamma sin lambda / (2 pi rho)) * d/dtheta log D(theta - mu - lambda)
    // with D(x) = 1 + rho^2 - 2 rho cos x; each piece integrates in closed form.
    const double base = (1.0 - (gamma / rho) * std::cos(lambda)) / m;
    const double wc_w = (gamma / rho) * std::cos(lambda);
    const double log_w = gamma * std::sin(lambda) / (two_pi * rho);
    const auto dfun = [&](double x) { return wc_denom(rho, x); };
    for (int r = 0; r < m; ++r) {
        const double lo = two_pi * r / m - mu - lambda;
        const double hi = two_pi * (r + 1) / m - mu - lambda;
        p[r] = base + wc_w * wc_interval_prob(lo, hi, rho) + log_w * std::log(dfun(lo) / dfun(hi));
    }
    return Pmf(lat, std::move(p));
}

// ---------------------------------------------------------------------------
// Centered wrapped discrete families.
// ---------------------------------------------------------------------------

Pmf wrapped_poisson_pmf(const Lattice& lat, double lambda, int t) {
    if (lambda < 0.0) throw std::invalid_argument("Poisson lambda must be >= 0");
    const int m = lat.size();
    const int tr = lat.reduce(t);
    Eigen::ArrayXd p0 = Eigen::ArrayXd::Zero(m);
    if (lambda == 0.0) {
        p0[0] = 1.0;
    } else {
        const double llam = std::log(lambda);
        for (int r = 0; r < m; ++r) {
            // term_k = Poisson mass at r + k*m, advanced by a ratio recurrence
            double term = std::exp(-lambda + r * llam - std::lgamma(r + 1.0));
            CompensatedSum sum;
            bool decreasing = false;
            for (std::size_t k = 0; k <= series_term_cap; ++k) {
                sum.add(term);
                double ratio = 1.0;
                for (int j = 1; j <= m; ++j) ratio *= lambda / (r + static_cast<double>(k) * m + j);
                const double next = term * ratio;
                if (next < term) decreasing = true;
                if (decreasing && next < 1e-14 * sum.value()) break;
                term = next;
                if (k == series_term_cap)
                    throw numeric_error("wrapped Poisson series exceeded term cap");
            }
            p0[r] = sum.value();
        }
    }
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) p[r] = p0[lat.reduce(r - tr)];
    return Pmf(lat, std::move(p));
}

Pmf wrapped_geometric_pmf(const Lattice& lat, double prob, int t) {
    if (!(prob > 0.0 && prob < 1.0))
        throw std::invalid_argument("geometric p must lie in (0, 1), got " + std::to_string(prob));
    const int m = lat.size();
    const int tr = lat.reduce(t);
    const double c = (1.0 - prob) / (1.0 - std::pow(prob, m));
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) p[r] = c * std::pow(prob, lat.reduce(r - tr));
    return Pmf(lat, std::move(p));
}

Pmf wrapped_skew_laplace_pmf(const Lattice& lat, double pp, double qq, int t) {
    if (!(pp > 0.0 && pp < 1.0) || !(qq > 0.0 && qq < 1.0))
        throw std::invalid_argument("skew-Laplace p, q must lie in (0, 1)");
    const int m = lat.size();
    const int tr = lat.reduce(t);
    const double c = (1.0 - pp) * (1.0 - qq) / (1.0 - pp * qq);
    const double pm = 1.0 - std::pow(pp, m);
    const double qm = 1.0 - std::pow(qq, m);
    Eigen::ArrayXd p(m);
    for (int r = 0; r < m; ++r) {
        const int d = lat.reduce(r - tr);
        p[r] = c * (std::pow(pp, d) / pm + std::pow(qq, m - d) / qm);
    }
    return Pmf(lat, std::move(p));
}

// ---------------------------------------------------------------------------
// Maximum entropy.
// ---------------------------------------------------------------------------

Pmf max_entropy_pmf(const Lattice& lat, const Eigen::MatrixXd& constraints,
                    const Eigen::VectorXd& targets) {
    const int m = lat.size();
    const Eigen::Index q = constraints.rows();
    if (constraints.cols() != m)
        throw std::invalid_argument("max_entropy_pmf: constraint matrix must have m columns");
    if (targets.size() != q)
        throw std::invalid_argument("max_entropy_pmf: targets length must match constraint count");

    Eigen::VectorXd b = Eigen::VectorXd::Zero(q);
    const auto pmf_for = [&](const Eigen::VectorXd& coef) {
        Eigen::ArrayXd logw = (coef.transpose() * constraints).array();
        logw -= logw.maxCoeff();
        Eigen::ArrayXd w = logw.exp();
        return Eigen::ArrayXd(w / w.sum());
    };
    const auto residual = [&](const Eigen::ArrayXd& p) {
        return Eigen::VectorXd(constraints * p.matrix() - targets);
    };

    Eigen::ArrayXd p = pmf_for(b);
    Eigen::VectorXd g = residual(p);
    for (int iter = 0; iter < 200; ++iter) {
        if (g.lpNorm<Eigen::Infinity>() < 1e-10) return Pmf(lat, std::move(p));
        // Jacobian of the moment map is the covariance of the constraint
        // functions under the current pmf
        Eigen::MatrixXd cov(q, q);
        const Eigen::VectorXd mean = constraints * p.matrix();
        for (Eigen::Index i = 0; i < q; ++i)
            for (Eigen::Index j = i; j < q; ++j) {
                double s = 0.0;
                for (int r = 0; r < m; ++r) s += constraints(i, r) * constraints(j, r) * p[r];
                cov(i, j) = cov(j, i) = s - mean[i] * mean[j];
            }
        for (Eigen::Index i = 0; i < q; ++i) cov(i, i) += 1e-14;
        const Eigen::VectorXd step = cov.ldlt().solve(-g);
        double lam = 1.0;
        const double g0 = g.norm();
        while (true) {
            const Eigen::ArrayXd p_try = pmf_for(b + lam * step);
            const Eigen::VectorXd g_try = residual(p_try);
            if (g_try.norm() < (1.0 - 0.25 * lam) * g0 || g_try.norm() < 1e-12) {
                b += lam * step;
                p = p_try;
                g = g_try;
                break;
            }
            lam *= 0.5;
            if (lam < 1e-12)
                throw numeric_error(
                    "max_entropy_pmf: Newton step-size underflow; targets appear infeasible");
        }
    }
    throw numeric_error("max_entropy_pmf: Newton did not converge in 200 iterations");
}

// ---------------------------------------------------------------------------
// Mixtures.
// ---------------------------------------------------------------------------

IrregularPmf mixture_pmf(const std::vector<std::pair<FamilySpec, double>>& components) {
    if (components.empty()) throw std::invalid_argument("mixture_pmf: no components");
    double wsum = 0.0;
    for (const auto& [spec, w] : components) {
        if (w < 0.0) throw std::invalid_argument("mixture_pmf: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("mixture_pmf: weights sum to " + std::to_string(wsum));

    // key support points by the reduced fraction r/m so shared angles merge exactly
    std::map<std::pair<long long, long long>, double> mass;
    for (const auto& [spec, w] : components) {
        const Pmf pmf = make_pmf(spec);
        const int m = spec.m;
        for (int r = 0; r < m; ++r) {
            const long long g = std::gcd(static_cast<long long>(r), static_cast<long long>(m));
            mass[{r / g, m / g}] += w * pmf.probs()[r];
        }
    }
    std::vector<std::pair<double, double>> pts;
    pts.reserve(mass.size());
    for (const auto& [frac, prob] : mass)
        pts.emplace_back(two_pi * static_cast<double>(frac.first) / static_cast<double>(frac.second),
                         prob);
    std::sort(pts.begin(), pts.end());
    IrregularPmf out;
    out.angles.resize(static_cast<Eigen::Index>(pts.size()));
    out.probs.resize(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.angles[static_cast<Eigen::Index>(i)] = pts[i].first;
        out.probs[static_cast<Eigen::Index>(i)] = pts[i].second;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

Pmf make_pmf(const FamilySpec& s) {
    const Lattice lat(s.m);
    switch (s.family) {
        case Family::CDVM: return cdvm_pmf(lat, s.concentration, s.t);
        case Family::CDWC:
            return s.mu_is_continuous ? cdwc_pmf_mu(lat, s.concentration, s.mu)
                                      : cdwc_pmf(lat, s.concentration, s.t);
        case Family::MDVM: return mdvm_pmf(lat, s.concentration, s.centering_angle());
        case Family::MDWC: return mdwc_pmf(lat, s.concentration, s.centering_angle());
        case Family::MDCardioid: return md_cardioid_pmf(lat, s.concentration, s.t);
        case Family::CDCardioid:
            return s.mu_is_continuous ? cd_cardioid_pmf(lat, s.concentration, s.mu)
                                      : cd_cardioid_pmf(lat, s.concentration, s.t);
        case Family::CDWN: return cdwn_pmf(lat, s.concentration, s.t);
        case Family::CDStable: return cd_stable_pmf(lat, s.concentration, s.t, s.stable_a, s.stable_b);
        case Family::WrappedPoisson: return wrapped_poisson_pmf(lat, s.concentration, s.t);
        case Family::WrappedGeometric: return wrapped_geometric_pmf(lat, s.concentration, s.t);
        case Family::WrappedSkewLaplace:
            return wrapped_skew_laplace_pmf(lat, s.concentration, s.q, s.t);
        case Family::MDKJ:
            return mdkj_pmf(lat, s.concentration, s.centering_angle(), s.kj_gamma, s.kj_lambda);
        case Family::CDKJ:
            return cdkj_pmf(lat, s.concentration, s.centering_angle(), s.kj_gamma, s.kj_lambda);
        case Family::MaxEnt:
            throw std::invalid_argument("make_pmf: max-entropy laws need explicit constraints; "
                                        "use max_entropy_pmf");
    }
    throw std::invalid_argument("make_pmf: unknown family tag");
}

}  // namespace latcirc
