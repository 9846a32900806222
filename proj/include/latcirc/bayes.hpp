#pragma once

#include "latcirc/distributions.hpp"
#include "latcirc/sampling.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace latcirc {

// ---------------------------------------------------------------------------
// Sampler configuration (readable from a key=value file).
// ---------------------------------------------------------------------------

struct McmcConfig {
    int iterations = 20000;
    int burnin = 5000;
    int thin = 5;
    int chains = 1;
    double kappa_max = 50.0;  // flat prior upper bound for kappa families
    double rho_step = 0.05;   // random-walk sd for rho
    double kappa_step = 0.5;  // random-walk sd for kappa
    int k_window = 25;        // changepoint +/- proposal window
    std::uint64_t seed = 1;

    void validate() const;
    int kept_draws() const { return (iterations - burnin) / thin; }
};

McmcConfig load_mcmc_config(const std::string& path);

// ---------------------------------------------------------------------------
// Posterior summaries.
// ---------------------------------------------------------------------------

struct ParamSummary {
    double mean = 0.0;
    double sd = 0.0;
    double lo95 = 0.0;  // equal-tailed
    double hi95 = 0.0;
};

ParamSummary summarize_draws(const std::vector<double>& draws);

struct CircularSummary {
    double mean_angle = 0.0;
    double rbar = 0.0;  // mean resultant length; larger = less uncertain
};

CircularSummary summarize_circular(const std::vector<double>& angles);

// ---------------------------------------------------------------------------
// Residue-indexed log-pmf provider shared by the samplers. MDWC values
// come from a cached rho-grid (step 0.001) with linear interpolation of
// the log-pmf; CDWC and CDVM are evaluated in closed form.
// ---------------------------------------------------------------------------

class SegmentFamily {
  public:
    SegmentFamily(Family family, int m, double kappa_max);

    Family family() const { return family_; }
    double tau_max() const { return tau_max_; }
    /// log p(r | tau, t=0) for r = 0..m-1.
    Eigen::ArrayXd log_pmf(double tau) const;

  private:
    Family family_;
    int m_;
    double tau_max_;
    std::vector<Eigen::ArrayXd> grid_;  // MDWC cache
};

// ---------------------------------------------------------------------------
// Changepoint model: uniform first segment (tau1 = 0, t1 = 0), a location
// family after the changepoint, flat priors on (tau2, t2, K).
// ---------------------------------------------------------------------------

struct ChangepointModel {
    int m = 2;
    Family family = Family::CDWC;
};

struct ChangepointOptions {
    bool fix_k = false;
    int k_value = 0;
    bool fix_t2 = false;
    int t2_value = 0;
};

struct ChangepointResult {
    std::vector<double> tau2;  // thinned draws pooled over chains
    std::vector<int> t2;
    std::vector<int> k;
    double accept_tau = 0.0;
    double accept_t = 0.0;
    double accept_k = 0.0;
    bool tuning_warning = false;

    ParamSummary tau2_summary;
    CircularSummary t2_summary;  // of angles 2 pi t2 / m
    int k_mode = 0;
    double k_sd = 0.0;
    double k_lo95 = 0.0;
    double k_hi95 = 0.0;
    bool k_multimodal = false;
};

ChangepointResult changepoint_fit(const std::vector<int>& data, const ChangepointModel& model,
                                  const McmcConfig& mcmc, std::uint64_t seed,
                                  const ChangepointOptions& options = {});

/// Independent changepoint fits on the prefixes data[0..u) for each upper
/// bound u; feeds the streaming-detection traces.
std::vector<ChangepointResult> changepoint_stream(const std::vector<int>& data,
                                                  const std::vector<int>& prefixes,
                                                  const ChangepointModel& model,
                                                  const McmcConfig& mcmc, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Finite mixtures with latent allocations and a flat simplex prior.
// ---------------------------------------------------------------------------

struct MixtureComponent {
    Family family = Family::CDWC;
    bool fixed_uniform = false;  // component pinned to the uniform law
};

struct MixtureModel {
    int m = 2;
    std::vector<MixtureComponent> components;

    int k() const { return static_cast<int>(components.size()); }
};

struct MixtureResult {
    // draws indexed [component][draw]
    std::vector<std::vector<double>> tau;
    std::vector<std::vector<int>> t;
    std::vector<std::vector<double>> weight;
    double accept_tau = 0.0;
    double accept_t = 0.0;
    bool tuning_warning = false;

    std::vector<ParamSummary> tau_summary;
    std::vector<ParamSummary> weight_summary;
    std::vector<CircularSummary> center_summary;  // of angles 2 pi t_j / m
};

MixtureResult mixture_fit(const std::vector<int>& data, const MixtureModel& model,
                          const McmcConfig& mcmc, std::uint64_t seed);

}  // namespace latcirc
