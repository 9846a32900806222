#pragma once

#include "latcirc/distributions.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace latcirc {

/// Deterministic random stream; identical seed gives identical draws.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::mt19937_64& engine() { return engine_; }

    double uniform() { return unit_(engine_); }
    double normal(double mean, double sd) { return mean + sd * gauss_(engine_); }
    /// Uniform draw from {0, .., n-1}.
    int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

  private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

/// Inverse-cdf sampler over a lattice pmf; O(log m) per draw from a
/// precomputed cumulative table.
class DiscreteSampler {
  public:
    explicit DiscreteSampler(const Pmf& pmf);
    int draw(Rng& rng) const;

  private:
    std::vector<double> cum_;
};

std::vector<int> sample_pmf(const Pmf& pmf, int n, Rng& rng);
std::vector<int> sample_pmf(const Pmf& pmf, int n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Continuous parents and the two discretization pipelines.
// ---------------------------------------------------------------------------

enum class Parent { VonMises, WrappedCauchy };
enum class Discretization { Marginalize, Conditionalize };

/// Exact wrapped Cauchy quantile (mean direction mu), u in (0, 1).
double wc_quantile(double u, double rho, double mu);

double draw_wrapped_cauchy(Rng& rng, double rho, double mu);

/// von Mises draws via a tabulated inverse cdf (4096 cells, linear
/// interpolation); adequate for feeding floor-discretization.
class VonMisesSampler {
  public:
    VonMisesSampler(double kappa, double mu);
    double draw(Rng& rng) const;

  private:
    double mu_;
    std::vector<double> cdf_;  // cumulative over a uniform angle grid
};

/// Draw n lattice values either by sampling the continuous parent and
/// flooring m*theta/(2*pi) (marginalize), or by sampling the plug-in
/// lattice pmf directly (conditionalize).
std::vector<int> sample_via_parent(Parent parent, double concentration, double mu, int m,
                                   Discretization method, int n, std::uint64_t seed);

}  // namespace latcirc
