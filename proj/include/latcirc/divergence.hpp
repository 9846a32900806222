#pragma once

#include "latcirc/distributions.hpp"

#include <vector>

namespace latcirc {

struct DivergenceTriple {
    double kl = 0.0;  // KL(p1 || p2), natural log
    double l1 = 0.0;
    double l2 = 0.0;  // includes the m/(2*pi) scaling inside the square root
};

/// Exact finite-sum divergences between two pmfs on the same lattice.
/// For KL, p2 must be strictly positive wherever p1 is.
DivergenceTriple divergences(const Pmf& p1, const Pmf& p2);

/// First trigonometric moment (mean resultant length) of a concentration
/// family at t=0; supported for CDVM, CDWC and CDWN.
double mean_resultant_from_concentration(Family f, double value, int m);

/// Inverse of the above (moment matching).
double concentration_from_mean_resultant(Family f, double rho_w, int m);

/// Map a concentration parameter between families by matching first
/// trigonometric moments, e.g. B(kappa) = rho_w.
double map_concentration(Family from, Family to, double value, int m);

struct ScanResult {
    struct Entry {
        double value = 0.0;
        double argmax_rho_w = 0.0;
        bool at_cap = false;  // the maximum sits on the last grid point
    };
    Entry kl, l1, l2;
    double grid_step = 0.0;
    double grid_max = 0.0;
};

struct DivergenceGridRow {
    double rho_w = 0.0;
    double kl = 0.0;  // KL(fam2 || fam1), fam2 the base
    double l1 = 0.0;
    double l2 = 0.0;
};

/// Divergences between moment-matched (fam1, fam2) pairs at every grid
/// point; evaluated in log space so concentrated tails stay finite.
std::vector<DivergenceGridRow> divergence_grid(Family fam1, Family fam2, int m, double grid_max,
                                               double grid_step);

/// Scan moment-matched (fam1, fam2) pairs over a rho_w grid and report the
/// per-metric maxima. fam2 is the base: KL is computed as KL(fam2 || fam1),
/// the divergence of fam1 from the base reference; L1 and L2 are symmetric.
ScanResult max_divergence_scan(Family fam1, Family fam2, int m, double grid_max = 0.995,
                               double grid_step = 0.001);

struct SheppardRow {
    int m = 0;
    double mdwc_cos1 = 0.0;  // E cos(theta) under MDWC, exact integration
    double mdwc_cos2 = 0.0;  // E cos(2 theta)
    double cdwc_cos1 = 0.0;  // closed form
    double cdwc_cos2 = 0.0;
    double sheppard_a1 = 0.0;  // a(h) = h / (2 sin(h/2)) at h = 2*pi/m
    double sheppard_a2 = 0.0;  // a(2h)
};

/// First and second cosine moments of MDWC and CDWC at the given rho for
/// each lattice size, with the Sheppard multipliers alongside.
std::vector<SheppardRow> sheppard_report(double rho, const std::vector<int>& m_list);

}  // namespace latcirc
