#include "latcirc/inference.hpp"

#include "latcirc/moments.hpp"
#include "latcirc/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latcirc {

namespace {

double wrap_angle(double x) {
    const double v = std::fmod(x, two_pi);
    return v < 0.0 ? v + two_pi : v;
}

/// Sort a copy and return the equal-tailed q-quantile (type-7).
double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - lo) * (v[hi] - v[lo]);
}

}  // namespace

SampleSummary summarize_counts(const Eigen::ArrayXi& counts, int max_order) {
    const int m = static_cast<int>(counts.size());
    if (m < 2) throw std::invalid_argument("summarize: need counts over a lattice with m >= 2");
    SampleSummary s;
    s.m = m;
    s.n = counts.sum();
    if (s.n == 0) throw std::invalid_argument("summarize: empty sample");
    s.counts = counts;
    s.a.resize(max_order);
    s.b.resize(max_order);
    s.rbar.resize(max_order);
    s.thetabar.resize(max_order);
    for (int p = 1; p <= max_order; ++p) {
        double ap = 0.0, bp = 0.0;
        for (int r = 0; r < m; ++r) {
            if (counts[r] == 0) continue;
            const double angle = p * two_pi * r / m;
            ap += counts[r] * std::cos(angle);
            bp += counts[r] * std::sin(angle);
        }
        ap /= s.n;
        bp /= s.n;
        s.a[p - 1] = ap;
        s.b[p - 1] = bp;
        s.rbar[p - 1] = std::hypot(ap, bp);
        s.thetabar[p - 1] = s.rbar[p - 1] > 1e-14 ? wrap_angle(std::atan2(bp, ap)) : 0.0;
    }
    s.degenerate_mean = s.rbar[0] <= 1e-14;
    return s;
}

SampleSummary summarize(const std::vector<int>& data, int m, int max_order) {
    if (data.empty()) throw std::invalid_argument("summarize: empty sample");
    Eigen::ArrayXi counts = Eigen::ArrayXi::Zero(m);
    for (int v : data) {
        if (v < 0 || v >= m)
            throw std::invalid_argument("summarize: value " + std::to_string(v) +
                                        " outside lattice of size " + std::to_string(m));
        ++counts[v];
    }
    return summarize_counts(counts, max_order);
}

// ---------------------------------------------------------------------------
// Log-likelihoods.
// ---------------------------------------------------------------------------

double cdvm_loglik(const SampleSummary& s, double kappa, int t) {
    // LL = -n log L0(kappa) + n kappa Rbar cos(thetabar - 2 pi t / m)
    const double log_l0 = std::log(cdvm_L_scaled(0, kappa, s.m)) + kappa;
    const double c = s.rbar1() * std::cos(s.thetabar1() - two_pi * t / s.m);
    return -s.n * log_l0 + s.n * kappa * c;
}

double cdwc_loglik(const SampleSummary& s, double rho, int t) {
    if (rho == 0.0) return -s.n * std::log(static_cast<double>(s.m));
    rho = std::min(rho, rho_cap);
    const int m = s.m;
    const double rm = std::pow(rho, m);
    double ll = s.n * (std::log1p(-rho * rho) + std::log1p(-rm) - std::log(static_cast<double>(m)) -
                       std::log1p(rm));
    for (int r = 0; r < m; ++r) {
        if (s.counts[r] == 0) continue;
        const double c = std::cos(two_pi * Lattice(m).sym_distance(r - t) / m);
        ll -= s.counts[r] * std::log(1.0 + rho * rho - 2.0 * rho * c);
    }
    return ll;
}

double family_loglik(const SampleSummary& s, Family family, double tau, int t) {
    switch (family) {
        case Family::CDVM: return cdvm_loglik(s, tau, t);
        case Family::CDWC: return cdwc_loglik(s, tau, t);
        default: break;
    }
    FamilySpec spec;
    spec.family = family;
    spec.m = s.m;
    spec.concentration = tau;
    spec.t = t;
    const Pmf pmf = make_pmf(spec);
    double ll = 0.0;
    for (int r = 0; r < s.m; ++r) {
        if (s.counts[r] == 0) continue;
        ll += s.counts[r] * std::log(std::max(pmf.probs()[r], 1e-300));
    }
    return ll;
}

// ---------------------------------------------------------------------------
// CDVM mle.
// ---------------------------------------------------------------------------

MleResult mle_cdvm(const SampleSummary& s) {
    MleResult out;
    if (s.degenerate_mean) {
        out.tau_hat = 0.0;
        out.t_hat = 0;
        out.loglik = cdvm_loglik(s, 0.0, 0);
        return out;
    }
    // nearest integer to m thetabar / (2 pi), ties toward the smaller residue
    const double x = s.m * s.thetabar1() / two_pi;
    const double frac = x - std::floor(x);
    long long t = static_cast<long long>(std::floor(x)) + (frac > 0.5 ? 1 : 0);
    out.t_hat = Lattice(s.m).reduce(t);
    const double target = s.rbar1() * std::cos(s.thetabar1() - two_pi * out.t_hat / s.m);
    const double reach = cdvm_B(kappa_search_max, s.m);
    if (target >= reach) {
        out.tau_hat = kappa_search_max;
        out.saturated = true;
    } else {
        out.tau_hat = target <= 0.0 ? 0.0 : cdvm_B_inverse(target, s.m);
    }
    out.loglik = cdvm_loglik(s, out.tau_hat, out.t_hat);
    return out;
}

// ---------------------------------------------------------------------------
// CDWC mle.
// ---------------------------------------------------------------------------

namespace {

/// Score h(rho, t) = (1/n) dLL/drho for CDWC, via per-residue frequencies.
double cdwc_score(const SampleSummary& s, const std::vector<double>& cos_table, double rho, int t) {
    const int m = s.m;
    const double r2 = rho * rho;
    const double rm1 = std::pow(rho, m - 1);
    double h = -2.0 * rho / (1.0 - r2) - 2.0 * m * rm1 / (1.0 - rm1 * rm1 * r2);
    for (int r = 0; r < m; ++r) {
        if (s.counts[r] == 0) continue;
        const double c = cos_table[static_cast<std::size_t>(Lattice(m).sym_distance(r - t))];
        h -= (static_cast<double>(s.counts[r]) / s.n) * (2.0 * rho - 2.0 * c) /
             (1.0 + r2 - 2.0 * rho * c);
    }
    return h;
}

}  // namespace

MleResult mle_cdwc(const SampleSummary& s) {
    const int m = s.m;
    std::vector<double> cos_table(static_cast<std::size_t>(m / 2 + 1));
    for (int d = 0; d <= m / 2; ++d) cos_table[static_cast<std::size_t>(d)] = std::cos(two_pi * d / m);

    MleResult best;
    best.loglik = -std::numeric_limits<double>::infinity();
    constexpr int grid_points = 200;
    for (int t = 0; t < m; ++t) {
        std::vector<double> roots;
        double prev_rho = 1e-9;
        double prev_h = cdwc_score(s, cos_table, prev_rho, t);
        for (int i = 1; i <= grid_points; ++i) {
            const double rho = rho_search_max * i / grid_points;
            const double h = cdwc_score(s, cos_table, rho, t);
            if ((prev_h > 0.0) != (h > 0.0)) {
                double lo = prev_rho, hi = rho, hlo = prev_h;
                while (hi - lo > 1e-10) {
                    const double mid = 0.5 * (lo + hi);
                    const double hm = cdwc_score(s, cos_table, mid, t);
                    if ((hlo > 0.0) == (hm > 0.0)) {
                        lo = mid;
                        hlo = hm;
                    } else {
                        hi = mid;
                    }
                }
                roots.push_back(0.5 * (lo + hi));
            }
            prev_rho = rho;
            prev_h = h;
        }
        // boundary cases: score one-signed on the whole range
        std::vector<double> candidates = roots;
        if (candidates.empty()) candidates.push_back(prev_h > 0.0 ? rho_search_max : 0.0);
        bool flagged = roots.size() > 1;
        for (double rho : candidates) {
            const double ll = cdwc_loglik(s, rho, t);
            if (ll > best.loglik) {
                best.loglik = ll;
                best.tau_hat = rho;
                best.t_hat = t;
                best.saturated = rho >= rho_search_max;
                best.nonconcave = flagged;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Generic profile mle.
// ---------------------------------------------------------------------------

MleResult mle_generic(const SampleSummary& s, Family family) {
    const bool von_mises_type = family == Family::CDVM || family == Family::MDVM;
    const double tau_hi = von_mises_type ? kappa_search_max : rho_search_max;
    MleResult best;
    best.loglik = -std::numeric_limits<double>::infinity();
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int t = 0; t < s.m; ++t) {
        const auto f = [&](double tau) { return family_loglik(s, family, tau, t); };
        double a = 0.0, b = tau_hi;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = f(x1), f2 = f(x2);
        while (b - a > 1e-9) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = f(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = f(x1);
            }
        }
        double tau = 0.5 * (a + b);
        double ll = f(tau);
        // Newton polish on the score with central differences
        const double step = 1e-5 * std::max(1.0, tau);
        for (int it = 0; it < 2 && tau - step > 0.0 && tau + step < tau_hi; ++it) {
            const double fp = f(tau + step), fm = f(tau - step);
            const double g = (fp - fm) / (2.0 * step);
            const double h = (fp - 2.0 * ll + fm) / (step * step);
            if (!(h < 0.0)) break;
            const double next = tau - g / h;
            if (next <= 0.0 || next >= tau_hi || std::abs(next - tau) > 1e-2) break;
            const double fn = f(next);
            if (fn <= ll) break;
            tau = next;
            ll = fn;
        }
        // the boundary tau = 0 (uniform) is a candidate the bracket can miss
        const double ll0 = f(0.0);
        if (ll0 >= ll) {
            tau = 0.0;
            ll = ll0;
        }
        if (ll > best.loglik) {
            best.loglik = ll;
            best.tau_hat = tau;
            best.t_hat = t;
            best.saturated = tau >= tau_hi - 1e-9;
        }
    }
    return best;
}

MleResult fit_family(const SampleSummary& s, Family family) {
    switch (family) {
        case Family::CDVM: return mle_cdvm(s);
        case Family::CDWC: return mle_cdwc(s);
        default: return mle_generic(s, family);
    }
}

double cdwc_moment_estimate(const SampleSummary& s) {
    return cdwc_rho_w_inverse(s.rbar1(), s.m);
}

// ---------------------------------------------------------------------------
// Bootstrap.
// ---------------------------------------------------------------------------

BootstrapResult parametric_bootstrap(Family family, const MleResult& fit, int m, int n, int B,
                                     std::uint64_t seed) {
    if (B < 2) throw std::invalid_argument("parametric_bootstrap: B must be >= 2");
    FamilySpec spec;
    spec.family = family;
    spec.m = m;
    spec.concentration = fit.tau_hat;
    spec.t = fit.t_hat;
    const Pmf pmf = make_pmf(spec);
    const DiscreteSampler sampler(pmf);
    std::vector<double> taus;
    taus.reserve(static_cast<std::size_t>(B));
    double cs = 0.0, sn = 0.0;
    Eigen::ArrayXi counts(m);
    for (int rep = 0; rep < B; ++rep) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
        counts.setZero();
        for (int i = 0; i < n; ++i) ++counts[sampler.draw(rng)];
        const MleResult refit = fit_family(summarize_counts(counts), family);
        taus.push_back(refit.tau_hat);
        cs += std::cos(two_pi * refit.t_hat / m);
        sn += std::sin(two_pi * refit.t_hat / m);
    }
    const double mean = std::accumulate(taus.begin(), taus.end(), 0.0) / B;
    double ss = 0.0;
    for (double v : taus) ss += (v - mean) * (v - mean);
    BootstrapResult out;
    out.se_tau = std::sqrt(ss / (B - 1));
    out.rbar_t = std::hypot(cs, sn) / B;
    return out;
}

// ---------------------------------------------------------------------------
// Uniformity tests.
// ---------------------------------------------------------------------------

namespace {

Eigen::ArrayXi uniform_counts(int n, int m, Rng& rng) {
    Eigen::ArrayXi counts = Eigen::ArrayXi::Zero(m);
    for (int i = 0; i < n; ++i) ++counts[rng.uniform_int(m)];
    return counts;
}

double mc_upper_p(const std::vector<double>& nulls, double observed) {
    int exceed = 0;
    for (double v : nulls)
        if (v >= observed) ++exceed;
    return (1.0 + exceed) / (1.0 + static_cast<double>(nulls.size()));
}

void fill_criticals(TestReport& rep, std::vector<double> nulls) {
    double mean = 0.0;
    for (double v : nulls) mean += v;
    mean /= static_cast<double>(nulls.size());
    double ss = 0.0;
    for (double v : nulls) ss += (v - mean) * (v - mean);
    if (nulls.size() > 1) rep.null_sd = std::sqrt(ss / (static_cast<double>(nulls.size()) - 1.0));
    std::sort(nulls.begin(), nulls.end());
    const auto upper = [&](double q) {
        const double h = (static_cast<double>(nulls.size()) - 1.0) * q;
        const std::size_t lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, nulls.size() - 1);
        return nulls[lo] + (h - lo) * (nulls[hi] - nulls[lo]);
    };
    rep.crit5 = upper(0.95);
    rep.crit1 = upper(0.99);
}

}  // namespace

TestReport uniformity_lr_test(const SampleSummary& s, Family family, int replicates,
                              std::uint64_t seed) {
    TestReport rep;
    rep.name = "T";
    rep.replications = replicates;
    const double ll0 = -static_cast<double>(s.n) * std::log(static_cast<double>(s.m));
    const MleResult fit = fit_family(s, family);
    rep.value = std::max(0.0, 2.0 * (fit.loglik - ll0));
    std::vector<double> nulls;
    nulls.reserve(static_cast<std::size_t>(replicates));
    for (int repl = 0; repl < replicates; ++repl) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(repl)));
        const SampleSummary su = summarize_counts(uniform_counts(s.n, s.m, rng));
        const MleResult f = fit_family(su, family);
        nulls.push_back(std::max(0.0, 2.0 * (f.loglik - ll0)));
    }
    rep.p_value = mc_upper_p(nulls, rep.value);
    fill_criticals(rep, std::move(nulls));
    return rep;
}

namespace {

double ug2_statistic(const Eigen::ArrayXi& counts, int n) {
    const int m = static_cast<int>(counts.size());
    const double expected = static_cast<double>(n) / m;
    std::vector<double> s(static_cast<std::size_t>(m));
    double acc = 0.0, mean = 0.0;
    for (int j = 0; j < m; ++j) {
        acc += counts[j] - expected;
        s[static_cast<std::size_t>(j)] = acc;
        mean += acc;
    }
    mean /= m;
    double u = 0.0;
    for (double v : s) u += (v - mean) * (v - mean);
    return u / (static_cast<double>(n) * m);
}

TestReport mc_count_test(const SampleSummary& s, const char* name,
                         const std::function<double(const Eigen::ArrayXi&, int)>& stat,
                         int replicates, std::uint64_t seed, double asymptotic_df) {
    TestReport rep;
    rep.name = name;
    rep.replications = replicates;
    rep.value = stat(s.counts, s.n);
    if (asymptotic_df > 0.0) rep.asymptotic_p = chi_square_sf(rep.value, asymptotic_df);
    std::vector<double> nulls;
    nulls.reserve(static_cast<std::size_t>(replicates));
    for (int repl = 0; repl < replicates; ++repl) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(repl)));
        nulls.push_back(stat(uniform_counts(s.n, s.m, rng), s.n));
    }
    rep.p_value = mc_upper_p(nulls, rep.value);
    fill_criticals(rep, std::move(nulls));
    return rep;
}

}  // namespace

TestReport ug2_test(const SampleSummary& s, int replicates, std::uint64_t seed) {
    return mc_count_test(s, "UG2", [](const Eigen::ArrayXi& c, int n) { return ug2_statistic(c, n); },
                         replicates, seed, 0.0);
}

TestReport rayleigh_test(const SampleSummary& s, int replicates, std::uint64_t seed) {
    const auto stat = [](const Eigen::ArrayXi& c, int n) {
        const SampleSummary su = summarize_counts(c, 1);
        return 2.0 * n * su.rbar1() * su.rbar1();
    };
    return mc_count_test(s, "T1sq", stat, replicates, seed, 2.0);
}

TestReport axial_rayleigh_test(const SampleSummary& s, int replicates, std::uint64_t seed) {
    const auto stat = [](const Eigen::ArrayXi& c, int n) {
        const SampleSummary su = summarize_counts(c, 2);
        return 2.0 * n * (su.rbar[0] * su.rbar[0] + su.rbar[1] * su.rbar[1]);
    };
    return mc_count_test(s, "T2sq", stat, replicates, seed, 4.0);
}

// ---------------------------------------------------------------------------
// Serial dependence.
// ---------------------------------------------------------------------------

namespace {

struct SerialStats {
    double c, s, r2;  // sqrt(2n) Cbar, sqrt(2n) Sbar, 2n Rbar^2
};

SerialStats serial_stats_from_diff_counts(const std::vector<long long>& diff_counts, int n,
                                          const std::vector<double>& cos_tab,
                                          const std::vector<double>& sin_tab) {
    double cbar = 0.0, sbar = 0.0;
    for (std::size_t d = 0; d < diff_counts.size(); ++d) {
        if (diff_counts[d] == 0) continue;
        cbar += diff_counts[d] * cos_tab[d];
        sbar += diff_counts[d] * sin_tab[d];
    }
    cbar /= n;  // divisor n although the sums have n-1 terms
    sbar /= n;
    const double scale = std::sqrt(2.0 * n);
    return {scale * cbar, scale * sbar, 2.0 * n * (cbar * cbar + sbar * sbar)};
}

}  // namespace

SerialTestReport serial_test(const std::vector<int>& data, int m, int null_replicates,
                             std::uint64_t seed) {
    const int n = static_cast<int>(data.size());
    if (n < 3) throw std::invalid_argument("serial_test: need at least 3 observations");
    std::vector<double> cos_tab(static_cast<std::size_t>(m)), sin_tab(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
        cos_tab[static_cast<std::size_t>(d)] = std::cos(two_pi * d / m);
        sin_tab[static_cast<std::size_t>(d)] = std::sin(two_pi * d / m);
    }
    const auto diffs_of = [&](const std::vector<int>& w) {
        std::vector<long long> counts(static_cast<std::size_t>(m), 0);
        for (std::size_t i = 1; i < w.size(); ++i) {
            int d = (w[i] - w[i - 1]) % m;
            if (d < 0) d += m;
            ++counts[static_cast<std::size_t>(d)];
        }
        return counts;
    };
    const SerialStats observed = serial_stats_from_diff_counts(diffs_of(data), n, cos_tab, sin_tab);

    std::vector<double> null_c, null_s, null_r2;
    null_c.reserve(static_cast<std::size_t>(null_replicates));
    null_s.reserve(static_cast<std::size_t>(null_replicates));
    null_r2.reserve(static_cast<std::size_t>(null_replicates));
    std::vector<long long> counts(static_cast<std::size_t>(m));
    for (int repl = 0; repl < null_replicates; ++repl) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(repl)));
        std::fill(counts.begin(), counts.end(), 0);
        int prev = rng.uniform_int(m);
        for (int i = 1; i < n; ++i) {
            const int cur = rng.uniform_int(m);
            int d = (cur - prev) % m;
            if (d < 0) d += m;
            ++counts[static_cast<std::size_t>(d)];
            prev = cur;
        }
        const SerialStats st = serial_stats_from_diff_counts(counts, n, cos_tab, sin_tab);
        null_c.push_back(st.c);
        null_s.push_back(st.s);
        null_r2.push_back(st.r2);
    }

    SerialTestReport rep;
    const auto two_sided = [&](const char* name, double value, std::vector<double> nulls) {
        TestReport r;
        r.name = name;
        r.value = value;
        r.replications = null_replicates;
        int exceed = 0;
        for (double& v : nulls) {
            v = std::abs(v);
            if (v >= std::abs(value)) ++exceed;
        }
        r.p_value = (1.0 + exceed) / (1.0 + static_cast<double>(null_replicates));
        std::sort(nulls.begin(), nulls.end());
        r.crit5 = quantile(nulls, 0.95);
        r.crit1 = quantile(nulls, 0.99);
        return r;
    };
    rep.cbar = two_sided("serial_C", observed.c, null_c);
    rep.sbar = two_sided("serial_S", observed.s, null_s);
    rep.r2.name = "serial_R2";
    rep.r2.value = observed.r2;
    rep.r2.replications = null_replicates;
    rep.r2.p_value = mc_upper_p(null_r2, observed.r2);
    rep.r2.asymptotic_p = chi_square_sf(observed.r2, 2.0);
    fill_criticals(rep.r2, std::move(null_r2));
    return rep;
}

}  // namespace latcirc
