#include "latcirc/divergence.hpp"

#include "latcirc/moments.hpp"
#include "latcirc/special.hpp"

#include <cmath>

namespace latcirc {

DivergenceTriple divergences(const Pmf& p1, const Pmf& p2) {
    if (p1.lattice() != p2.lattice())
        throw std::invalid_argument("divergences: pmfs live on different lattices");
    const int m = p1.m();
    CompensatedSum kl, l1, l2;
    for (int r = 0; r < m; ++r) {
        const double a = p1.probs()[r];
        const double b = p2.probs()[r];
        if (a > 0.0) {
            if (b <= 0.0)
                throw std::invalid_argument("divergences: KL undefined, base pmf vanishes at r=" +
                                            std::to_string(r));
            kl.add(a * std::log(a / b));
        }
        l1.add(std::abs(a - b));
        l2.add((a - b) * (a - b));
    }
    DivergenceTriple out;
    out.kl = std::max(0.0, kl.value());
    out.l1 = l1.value();
    out.l2 = std::sqrt(l2.value() * m / two_pi);
    return out;
}

double mean_resultant_from_concentration(Family f, double value, int m) {
    switch (f) {
        case Family::CDVM: return cdvm_B(value, m);
        case Family::CDWC: return cdwc_rho_w(value, m);
        case Family::CDWN: return cdwn_first_moment(value, m);
        default:
            throw std::invalid_argument("moment matching not implemented for family " +
                                        family_name(f));
    }
}

double concentration_from_mean_resultant(Family f, double rho_w, int m) {
    if (rho_w < 0.0 || rho_w >= 1.0)
        throw std::invalid_argument("concentration_from_mean_resultant: rho_w outside [0, 1)");
    switch (f) {
        case Family::CDVM: return cdvm_B_inverse(rho_w, m);
        case Family::CDWC: return cdwc_rho_w_inverse(rho_w, m);
        case Family::CDWN: return cdwn_rho_from_moment(rho_w, m);
        default:
            throw std::invalid_argument("moment matching not implemented for family " +
                                        family_name(f));
    }
}

double map_concentration(Family from, Family to, double value, int m) {
    if (value == 0.0) return 0.0;
    return concentration_from_mean_resultant(to, mean_resultant_from_concentration(from, value, m),
                                             m);
}

namespace {

/// Residue-indexed log-pmf at t=0; stays finite where the linear pmf
/// underflows (CDWN antipode at high concentration).
Eigen::ArrayXd scan_log_pmf(Family f, int m, double concentration) {
    const Lattice lat(m);
    Eigen::ArrayXd out(m);
    switch (f) {
        case Family::CDVM: {
            const double log_l0 = std::log(cdvm_L_scaled(0, concentration, m));
            for (int r = 0; r < m; ++r)
                out[r] = concentration * (std::cos(two_pi * lat.sym_distance(r) / m) - 1.0) - log_l0;
            return out;
        }
        case Family::CDWC: {
            const double rho = std::min(concentration, rho_cap);
            const double rm = std::pow(rho, m);
            const double logc = std::log1p(-rho * rho) + std::log1p(-rm) -
                                std::log(static_cast<double>(m)) - std::log1p(rm);
            for (int r = 0; r < m; ++r)
                out[r] = logc - std::log(wc_denom(rho, two_pi * lat.sym_distance(r) / m));
            return out;
        }
        case Family::CDWN: return cdwn_log_pmf(lat, concentration, 0);
        default: break;
    }
    throw std::invalid_argument("max_divergence_scan: unsupported family " + family_name(f));
}

}  // namespace

std::vector<DivergenceGridRow> divergence_grid(Family fam1, Family fam2, int m, double grid_max,
                                               double grid_step) {
    if (grid_max <= 0.0 || grid_max > 0.995)
        throw std::invalid_argument("divergence grid: rho_w cap must lie in (0, 0.995]");
    if (grid_step <= 0.0) throw std::invalid_argument("divergence grid: step must be positive");
    std::vector<DivergenceGridRow> rows;
    for (long long i = 1; i * grid_step <= grid_max + 1e-12; ++i) {
        const double rho_w = std::min(i * grid_step, grid_max);
        const Eigen::ArrayXd lp1 =
            scan_log_pmf(fam1, m, concentration_from_mean_resultant(fam1, rho_w, m));
        const Eigen::ArrayXd lp2 =
            scan_log_pmf(fam2, m, concentration_from_mean_resultant(fam2, rho_w, m));
        const Eigen::ArrayXd p1 = lp1.exp();
        const Eigen::ArrayXd p2 = lp2.exp();
        // KL is oriented with fam2 as the base (reference) distribution,
        // and runs in log space: the other family may underflow in linear
        // space while its log stays finite
        CompensatedSum kl, l1, l2;
        for (int r = 0; r < m; ++r) {
            if (p2[r] > 0.0) kl.add(p2[r] * (lp2[r] - lp1[r]));
            l1.add(std::abs(p1[r] - p2[r]));
            l2.add((p1[r] - p2[r]) * (p1[r] - p2[r]));
        }
        DivergenceGridRow row;
        row.rho_w = rho_w;
        row.kl = std::max(0.0, kl.value());
        row.l1 = l1.value();
        row.l2 = std::sqrt(l2.value() * m / two_pi);
        rows.push_back(row);
    }
    return rows;
}

ScanResult max_divergence_scan(Family fam1, Family fam2, int m, double grid_max, double grid_step) {
    const auto rows = divergence_grid(fam1, fam2, m, grid_max, grid_step);
    ScanResult out;
    out.grid_step = grid_step;
    out.grid_max = grid_max;
    for (const auto& row : rows) {
        if (row.kl > out.kl.value) out.kl = {row.kl, row.rho_w, false};
        if (row.l1 > out.l1.value) out.l1 = {row.l1, row.rho_w, false};
        if (row.l2 > out.l2.value) out.l2 = {row.l2, row.rho_w, false};
    }
    const double last = rows.empty() ? 0.0 : rows.back().rho_w;
    out.kl.at_cap = out.kl.argmax_rho_w >= last - 1e-12;
    out.l1.at_cap = out.l1.argmax_rho_w >= last - 1e-12;
    out.l2.at_cap = out.l2.argmax_rho_w >= last - 1e-12;
    return out;
}

std::vector<SheppardRow> sheppard_report(double rho, const std::vector<int>& m_list) {
    if (rho < 0.0 || rho >= 1.0) throw std::invalid_argument("sheppard_report: rho outside [0, 1)");
    std::vector<SheppardRow> rows;
    rows.reserve(m_list.size());
    for (int m : m_list) {
        SheppardRow row;
        row.m = m;
        const double rm = std::pow(rho, m);
        row.cdwc_cos1 = (std::pow(rho, 1) + std::pow(rho, m - 1)) / (1.0 + rm);
        row.cdwc_cos2 = (std::pow(rho, 2) + std::pow(rho, m - 2)) / (1.0 + rm);
        // exact integration replaces the simulation the values are usually
        // quoted from
        for (int p = 1; p <= 2; ++p) {
            const double s = mdwc_moment_integral(rho, p, m);
            const double beta = std::cos(pi * p / m) * (m * std::sin(pi * p / m) / pi) * s;
            (p == 1 ? row.mdwc_cos1 : row.mdwc_cos2) = beta;
        }
        const double h = two_pi / m;
        row.sheppard_a1 = h / (2.0 * std::sin(0.5 * h));
        row.sheppard_a2 = m > 2 ? 2.0 * h / (2.0 * std::sin(h)) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace latcirc
