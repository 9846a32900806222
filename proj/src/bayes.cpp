#include "latcirc/bayes.hpp"

#include "latcirc/special.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace latcirc {

void McmcConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("mcmc: iterations must be >= 1");
    if (burnin < 0 || burnin >= iterations)
        throw std::invalid_argument("mcmc: burn-in must lie in [0, iterations)");
    if (thin < 1) throw std::invalid_argument("mcmc: thinning must be >= 1");
    if (chains < 1) throw std::invalid_argument("mcmc: chains must be >= 1");
    if (kappa_max <= 0 || rho_step <= 0 || kappa_step <= 0 || k_window < 1)
        throw std::invalid_argument("mcmc: proposal scales must be positive");
}

McmcConfig load_mcmc_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("mcmc config: cannot open " + path);
    McmcConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("mcmc config: bad line " + std::to_string(lineno));
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "iterations") cfg.iterations = std::stoi(value);
            else if (key == "burnin") cfg.burnin = std::stoi(value);
            else if (key == "thin") cfg.thin = std::stoi(value);
            else if (key == "chains") cfg.chains = std::stoi(value);
            else if (key == "kappa_max") cfg.kappa_max = std::stod(value);
            else if (key == "rho_step") cfg.rho_step = std::stod(value);
            else if (key == "kappa_step") cfg.kappa_step = std::stod(value);
            else if (key == "k_window") cfg.k_window = std::stoi(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else throw std::invalid_argument("mcmc config: unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("mcmc config: bad value for '" + key + "' at line " +
                                        std::to_string(lineno));
        }
    }
    cfg.validate();
    return cfg;
}

ParamSummary summarize_draws(const std::vector<double>& draws) {
    ParamSummary s;
    if (draws.empty()) return s;
    s.mean = std::accumulate(draws.begin(), draws.end(), 0.0) / static_cast<double>(draws.size());
    double ss = 0.0;
    for (double v : draws) ss += (v - s.mean) * (v - s.mean);
    s.sd = draws.size() > 1 ? std::sqrt(ss / (static_cast<double>(draws.size()) - 1.0)) : 0.0;
    std::vector<double> sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    const auto quant = [&](double q) {
        const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
        const std::size_t lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
    };
    s.lo95 = quant(0.025);
    s.hi95 = quant(0.975);
    return s;
}

CircularSummary summarize_circular(const std::vector<double>& angles) {
    CircularSummary s;
    if (angles.empty()) return s;
    double c = 0.0, si = 0.0;
    for (double a : angles) {
        c += std::cos(a);
        si += std::sin(a);
    }
    s.rbar = std::hypot(c, si) / static_cast<double>(angles.size());
    double mean = std::atan2(si, c);
    if (mean < 0.0) mean += two_pi;
    s.mean_angle = mean;
    return s;
}

// ---------------------------------------------------------------------------
// SegmentFamily.
// ---------------------------------------------------------------------------

SegmentFamily::SegmentFamily(Family family, int m, double kappa_max) : family_(family), m_(m) {
    switch (family) {
        case Family::CDVM: tau_max_ = kappa_max; break;
        case Family::CDWC: tau_max_ = 0.999; break;
        case Family::MDWC: tau_max_ = 0.999; break;
        default:
            throw std::invalid_argument("SegmentFamily: unsupported family " + family_name(family));
    }
    if (family == Family::MDWC) {
        const Lattice lat(m);
        grid_.reserve(1000);
        for (int i = 0; i < 1000; ++i)
            grid_.push_back(mdwc_pmf(lat, i * 0.001, 0.0).probs().log());
    }
}

Eigen::ArrayXd SegmentFamily::log_pmf(double tau) const {
    const Lattice lat(m_);
    switch (family_) {
        case Family::CDVM: {
            const double log_l0 = std::log(cdvm_L_scaled(0, tau, m_)) + tau;
            Eigen::ArrayXd out(m_);
            for (int r = 0; r < m_; ++r)
                out[r] = tau * std::cos(two_pi * lat.sym_distance(r) / m_) - log_l0;
            return out;
        }
        case Family::CDWC: {
            const double rho = std::min(tau, rho_cap);
            const double rm = std::pow(rho, m_);
            const double logc = std::log1p(-rho * rho) + std::log1p(-rm) -
                                std::log(static_cast<double>(m_)) - std::log1p(rm);
            Eigen::ArrayXd out(m_);
            for (int r = 0; r < m_; ++r)
                out[r] = logc - std::log(wc_denom(rho, two_pi * lat.sym_distance(r) / m_));
            return out;
        }
        case Family::MDWC: {
            const double x = std::clamp(tau, 0.0, 0.999) / 0.001;
            const std::size_t i = std::min(static_cast<std::size_t>(x), grid_.size() - 2);
            const double w = x - static_cast<double>(i);
            return (1.0 - w) * grid_[i] + w * grid_[i + 1];
        }
        default: break;
    }
    throw std::invalid_argument("SegmentFamily: unsupported family");
}

// ---------------------------------------------------------------------------
// Changepoint sampler.
// ---------------------------------------------------------------------------

namespace {

double reflect_into(double x, double lo, double hi) {
    while (x < lo || x > hi) {
        if (x < lo) x = 2.0 * lo - x;
        if (x > hi) x = 2.0 * hi - x;
    }
    return x;
}

/// Mode and multimodality flag from a binned histogram of integer draws.
void k_mode_summary(const std::vector<int>& draws, int n, ChangepointResult& out) {
    if (draws.empty()) return;
    const int bin_width = std::max(1, n / 100);
    std::map<int, int> hist;
    for (int v : draws) ++hist[v / bin_width];
    int best_bin = hist.begin()->first, best_count = 0;
    for (const auto& [bin, count] : hist)
        if (count > best_count) {
            best_count = count;
            best_bin = bin;
        }
    // mode = most frequent raw value inside the best bin
    std::map<int, int> inner;
    for (int v : draws)
        if (v / bin_width == best_bin) ++inner[v];
    int mode = inner.begin()->first, mode_count = 0;
    for (const auto& [v, count] : inner)
        if (count > mode_count) {
            mode_count = count;
            mode = v;
        }
    out.k_mode = mode;
    // secondary non-adjacent peak above 80% of the main one
    for (const auto& [bin, count] : hist)
        if (std::abs(bin - best_bin) > 1 && count >= 0.8 * best_count) out.k_multimodal = true;
}

}  // namespace

ChangepointResult changepoint_fit(const std::vector<int>& data, const ChangepointModel& model,
                                  const McmcConfig& mcmc, std::uint64_t seed,
                                  const ChangepointOptions& options) {
    mcmc.validate();
    const int n = static_cast<int>(data.size());
    if (n < 4) throw std::invalid_argument("changepoint_fit: need at least 4 observations");
    const int m = model.m;
    for (int v : data)
        if (v < 0 || v >= m) throw std::invalid_argument("changepoint_fit: datum outside lattice");
    const SegmentFamily fam(model.family, m, mcmc.kappa_max);
    const bool kappa_family = model.family == Family::CDVM;
    const double step = kappa_family ? mcmc.kappa_step : mcmc.rho_step;
    const double log_uniform = -std::log(static_cast<double>(m));

    ChangepointResult out;
    long long prop_tau = 0, acc_tau = 0, prop_t = 0, acc_t = 0, prop_k = 0, acc_k = 0;

    for (int chain = 0; chain < mcmc.chains; ++chain) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chain)));
        int K = options.fix_k ? options.k_value : 1 + rng.uniform_int(n - 1);
        int t2 = options.fix_t2 ? options.t2_value : rng.uniform_int(m);
        double tau2 = rng.uniform() * fam.tau_max();

        Eigen::ArrayXd logpmf = fam.log_pmf(tau2);
        std::vector<int> seg2_counts(static_cast<std::size_t>(m), 0);
        for (int i = K; i < n; ++i) ++seg2_counts[static_cast<std::size_t>(data[static_cast<std::size_t>(i)])];
        const auto seg2_ll = [&](const Eigen::ArrayXd& lp, int t) {
            const Lattice lat(m);
            double ll = 0.0;
            for (int r = 0; r < m; ++r)
                if (seg2_counts[static_cast<std::size_t>(r)] != 0)
                    ll += seg2_counts[static_cast<std::size_t>(r)] * lp[lat.reduce(r - t)];
            return ll;
        };
        // prefix[i] = sum_{j < i} log p2(w_j); rebuilt after accepted tau/t moves
        std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
        const auto rebuild_prefix = [&]() {
            const Lattice lat(m);
            for (int i = 0; i < n; ++i)
                prefix[static_cast<std::size_t>(i) + 1] =
                    prefix[static_cast<std::size_t>(i)] +
                    logpmf[lat.reduce(data[static_cast<std::size_t>(i)] - t2)];
        };
        rebuild_prefix();
        double ll2 = seg2_ll(logpmf, t2);

        for (int iter = 0; iter < mcmc.iterations; ++iter) {
            // concentration of the second segment
            {
                ++prop_tau;
                const double cand = reflect_into(rng.normal(tau2, step), 0.0, fam.tau_max());
                const Eigen::ArrayXd lp = fam.log_pmf(cand);
                const double cand_ll = seg2_ll(lp, t2);
                if (std::log(rng.uniform()) < cand_ll - ll2) {
                    tau2 = cand;
                    logpmf = lp;
                    ll2 = cand_ll;
                    rebuild_prefix();
                    ++acc_tau;
                }
            }
            // centering of the second segment
            if (!options.fix_t2) {
                ++prop_t;
                const int cand = rng.uniform_int(m);
                if (cand != t2) {
                    const double cand_ll = seg2_ll(logpmf, cand);
                    if (std::log(rng.uniform()) < cand_ll - ll2) {
                        t2 = cand;
                        ll2 = cand_ll;
                        rebuild_prefix();
                        ++acc_t;
                    }
                } else {
                    ++acc_t;
                }
            }
            // changepoint position: +/- window random walk, with an
            // occasional uniform refresh so a flat posterior still mixes
            // across the whole range
            if (!options.fix_k) {
                ++prop_k;
                int cand;
                if (rng.uniform() < 0.1) {
                    cand = 1 + rng.uniform_int(n - 1);
                } else {
                    int delta = rng.uniform_int(2 * mcmc.k_window) - mcmc.k_window;
                    if (delta >= 0) ++delta;  // exclude 0
                    cand = K + delta;
                }
                if (cand != K && cand >= 1 && cand <= n - 1) {
                    const double diff = (cand - K) * log_uniform +
                                        (prefix[static_cast<std::size_t>(K)] -
                                         prefix[static_cast<std::size_t>(cand)]);
                    if (std::log(rng.uniform()) < diff) {
                        // move observations between segments incrementally
                        if (cand > K) {
                            for (int i = K; i < cand; ++i)
                                --seg2_counts[static_cast<std::size_t>(data[static_cast<std::size_t>(i)])];
                        } else {
                            for (int i = cand; i < K; ++i)
                                ++seg2_counts[static_cast<std::size_t>(data[static_cast<std::size_t>(i)])];
                        }
                        K = cand;
                        ll2 = seg2_ll(logpmf, t2);
                        ++acc_k;
                    }
                }
            }
            if (iter >= mcmc.burnin && (iter - mcmc.burnin) % mcmc.thin == 0) {
                out.tau2.push_back(tau2);
                out.t2.push_back(t2);
                out.k.push_back(K);
            }
        }
    }

    out.accept_tau = prop_tau > 0 ? static_cast<double>(acc_tau) / prop_tau : 0.0;
    out.accept_t = prop_t > 0 ? static_cast<double>(acc_t) / prop_t : 0.0;
    out.accept_k = prop_k > 0 ? static_cast<double>(acc_k) / prop_k : 0.0;
    out.tuning_warning = out.accept_tau < 0.1 || out.accept_tau > 0.6 ||
                         (!options.fix_k && (out.accept_k < 0.1 || out.accept_k > 0.6));

    out.tau2_summary = summarize_draws(out.tau2);
    std::vector<double> angles;
    angles.reserve(out.t2.size());
    for (int t : out.t2) angles.push_back(two_pi * t / m);
    out.t2_summary = summarize_circular(angles);
    std::vector<double> kd(out.k.begin(), out.k.end());
    const ParamSummary ks = summarize_draws(kd);
    out.k_sd = ks.sd;
    out.k_lo95 = ks.lo95;
    out.k_hi95 = ks.hi95;
    k_mode_summary(out.k, n, out);
    return out;
}

std::vector<ChangepointResult> changepoint_stream(const std::vector<int>& data,
                                                  const std::vector<int>& prefixes,
                                                  const ChangepointModel& model,
                                                  const McmcConfig& mcmc, std::uint64_t seed) {
    std::vector<ChangepointResult> out;
    int prev = 0;
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        const int u = prefixes[i];
        if (u <= prev) throw std::invalid_argument("changepoint_stream: prefixes must increase");
        if (u < 10) throw std::invalid_argument("changepoint_stream: prefixes must be >= 10");
        if (u > static_cast<int>(data.size()))
            throw std::invalid_argument("changepoint_stream: prefix exceeds data length");
        prev = u;
        const std::vector<int> slice(data.begin(), data.begin() + u);
        out.push_back(changepoint_fit(slice, model, mcmc, derive_seed(seed, i)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mixture sampler.
// ---------------------------------------------------------------------------

MixtureResult mixture_fit(const std::vector<int>& data, const MixtureModel& model,
                          const McmcConfig& mcmc, std::uint64_t seed) {
    mcmc.validate();
    const int n = static_cast<int>(data.size());
    const int m = model.m;
    const int K = model.k();
    if (K < 1) throw std::invalid_argument("mixture_fit: need at least one component");
    if (K > m) throw std::invalid_argument("mixture_fit: more components than lattice points");
    if (n < 10 * K) throw std::invalid_argument("mixture_fit: need n >= 10 K observations");
    for (int v : data)
        if (v < 0 || v >= m) throw std::invalid_argument("mixture_fit: datum outside lattice");
    const Lattice lat(m);

    std::vector<SegmentFamily> fams;
    fams.reserve(static_cast<std::size_t>(K));
    for (const auto& comp : model.components)
        fams.emplace_back(comp.fixed_uniform ? Family::CDWC : comp.family, m, mcmc.kappa_max);

    MixtureResult out;
    out.tau.resize(static_cast<std::size_t>(K));
    out.t.resize(static_cast<std::size_t>(K));
    out.weight.resize(static_cast<std::size_t>(K));
    long long prop_tau = 0, acc_tau = 0, prop_t = 0, acc_t = 0;

    // data-quantile start for the centers keeps early sweeps from collapsing
    std::vector<int> sorted = data;
    std::sort(sorted.begin(), sorted.end());

    for (int chain = 0; chain < mcmc.chains; ++chain) {
        Rng rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(chain)));
        std::vector<double> weights(static_cast<std::size_t>(K), 1.0 / K);
        std::vector<double> tau(static_cast<std::size_t>(K));
        std::vector<int> centers(static_cast<std::size_t>(K));
        std::vector<Eigen::ArrayXd> lp(static_cast<std::size_t>(K));
        for (int j = 0; j < K; ++j) {
            const auto& comp = model.components[static_cast<std::size_t>(j)];
            if (comp.fixed_uniform) {
                tau[static_cast<std::size_t>(j)] = 0.0;
                centers[static_cast<std::size_t>(j)] = 0;
            } else {
                tau[static_cast<std::size_t>(j)] = comp.family == Family::CDVM ? 2.0 : 0.5;
                centers[static_cast<std::size_t>(j)] =
                    sorted[static_cast<std::size_t>((2 * j + 1) * (n - 1) / (2 * K))];
            }
            lp[static_cast<std::size_t>(j)] = fams[static_cast<std::size_t>(j)].log_pmf(tau[static_cast<std::size_t>(j)]);
        }

        std::vector<int> alloc(static_cast<std::size_t>(n), 0);
        std::vector<std::vector<int>> comp_counts(static_cast<std::size_t>(K),
                                                  std::vector<int>(static_cast<std::size_t>(m), 0));
        std::vector<int> comp_n(static_cast<std::size_t>(K), 0);
        const auto comp_ll = [&](int j, const Eigen::ArrayXd& logp, int t) {
            double ll = 0.0;
            const auto& counts = comp_counts[static_cast<std::size_t>(j)];
            for (int r = 0; r < m; ++r)
                if (counts[static_cast<std::size_t>(r)] != 0)
                    ll += counts[static_cast<std::size_t>(r)] * logp[lat.reduce(r - t)];
            return ll;
        };

        std::vector<double> cat(static_cast<std::size_t>(K));
        for (int iter = 0; iter < mcmc.iterations; ++iter) {
            // latent allocations
            for (auto& counts : comp_counts) std::fill(counts.begin(), counts.end(), 0);
            std::fill(comp_n.begin(), comp_n.end(), 0);
            for (int i = 0; i < n; ++i) {
                const int w = data[static_cast<std::size_t>(i)];
                double total = 0.0;
                for (int j = 0; j < K; ++j) {
                    const double v =
                        weights[static_cast<std::size_t>(j)] *
                        std::exp(lp[static_cast<std::size_t>(j)][lat.reduce(w - centers[static_cast<std::size_t>(j)])]);
                    cat[static_cast<std::size_t>(j)] = v;
                    total += v;
                }
                double u = rng.uniform() * total;
                int pick = K - 1;
                for (int j = 0; j < K; ++j) {
                    u -= cat[static_cast<std::size_t>(j)];
                    if (u <= 0.0) {
                        pick = j;
                        break;
                    }
                }
                alloc[static_cast<std::size_t>(i)] = pick;
                ++comp_counts[static_cast<std::size_t>(pick)][static_cast<std::size_t>(w)];
                ++comp_n[static_cast<std::size_t>(pick)];
            }
            // weights: conjugate flat-Dirichlet update
            {
                double total = 0.0;
                for (int j = 0; j < K; ++j) {
                    std::gamma_distribution<double> gamma(1.0 + comp_n[static_cast<std::size_t>(j)], 1.0);
                    weights[static_cast<std::size_t>(j)] = gamma(rng.engine());
                    total += weights[static_cast<std::size_t>(j)];
                }
                for (double& w : weights) w /= total;
            }
            // per-component location-family parameters
            for (int j = 0; j < K; ++j) {
                if (model.components[static_cast<std::size_t>(j)].fixed_uniform) continue;
                const auto& fam = fams[static_cast<std::size_t>(j)];
                const double step =
                    model.components[static_cast<std::size_t>(j)].family == Family::CDVM
                        ? mcmc.kappa_step
                        : mcmc.rho_step;
                double cur_ll = comp_ll(j, lp[static_cast<std::size_t>(j)], centers[static_cast<std::size_t>(j)]);
                {
                    ++prop_tau;
                    const double cand =
                        reflect_into(rng.normal(tau[static_cast<std::size_t>(j)], step), 0.0, fam.tau_max());
                    const Eigen::ArrayXd cand_lp = fam.log_pmf(cand);
                    const double cand_ll = comp_ll(j, cand_lp, centers[static_cast<std::size_t>(j)]);
                    if (std::log(rng.uniform()) < cand_ll - cur_ll) {
                        tau[static_cast<std::size_t>(j)] = cand;
                        lp[static_cast<std::size_t>(j)] = cand_lp;
                        cur_ll = cand_ll;
                        ++acc_tau;
                    }
                }
                {
                    ++prop_t;
                    const int cand = rng.uniform_int(m);
                    if (cand == centers[static_cast<std::size_t>(j)]) {
                        ++acc_t;
                    } else {
                        const double cand_ll = comp_ll(j, lp[static_cast<std::size_t>(j)], cand);
                        if (std::log(rng.uniform()) < cand_ll - cur_ll) {
                            centers[static_cast<std::size_t>(j)] = cand;
                            ++acc_t;
                        }
                    }
                }
            }
            if (iter >= mcmc.burnin && (iter - mcmc.burnin) % mcmc.thin == 0) {
                for (int j = 0; j < K; ++j) {
                    out.tau[static_cast<std::size_t>(j)].push_back(tau[static_cast<std::size_t>(j)]);
                    out.t[static_cast<std::size_t>(j)].push_back(centers[static_cast<std::size_t>(j)]);
                    out.weight[static_cast<std::size_t>(j)].push_back(weights[static_cast<std::size_t>(j)]);
                }
            }
        }
    }

    out.accept_tau = prop_tau > 0 ? static_cast<double>(acc_tau) / prop_tau : 0.0;
    out.accept_t = prop_t > 0 ? static_cast<double>(acc_t) / prop_t : 0.0;
    out.tuning_warning = prop_tau > 0 && (out.accept_tau < 0.1 || out.accept_tau > 0.6);

    // relabel draws: centers in increasing circular order anchored just
    // below the smallest posterior-mean center (half a component spacing,
    // so anchor-component draws do not straddle the cut); pinned or
    // heterogeneous components fix the labels already, so leave those alone
    bool exchangeable = K > 1;
    for (const auto& comp : model.components)
        if (comp.fixed_uniform || comp.family != model.components[0].family) exchangeable = false;
    const std::size_t draws = out.tau.empty() ? 0 : out.tau[0].size();
    if (exchangeable && draws > 0) {
        std::vector<double> mean_angle(static_cast<std::size_t>(K));
        for (int j = 0; j < K; ++j) {
            std::vector<double> angles;
            angles.reserve(draws);
            for (int t : out.t[static_cast<std::size_t>(j)]) angles.push_back(two_pi * t / m);
            mean_angle[static_cast<std::size_t>(j)] = summarize_circular(angles).mean_angle;
        }
        const double anchor = *std::min_element(mean_angle.begin(), mean_angle.end()) - pi / K;
        std::vector<int> order(static_cast<std::size_t>(K));
        for (std::size_t d = 0; d < draws; ++d) {
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                const double ka = std::fmod(two_pi * out.t[static_cast<std::size_t>(a)][d] / m - anchor + two_pi, two_pi);
                const double kb = std::fmod(two_pi * out.t[static_cast<std::size_t>(b)][d] / m - anchor + two_pi, two_pi);
                return ka < kb;
            });
            bool identity = true;
            for (int j = 0; j < K; ++j)
                if (order[static_cast<std::size_t>(j)] != j) identity = false;
            if (identity) continue;
            // apply the permutation via temporaries
            std::vector<double> tmp_tau(static_cast<std::size_t>(K));
            std::vector<int> tmp_t(static_cast<std::size_t>(K));
            std::vector<double> tmp_w(static_cast<std::size_t>(K));
            for (int j = 0; j < K; ++j) {
                tmp_tau[static_cast<std::size_t>(j)] = out.tau[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])][d];
                tmp_t[static_cast<std::size_t>(j)] = out.t[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])][d];
                tmp_w[static_cast<std::size_t>(j)] = out.weight[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])][d];
            }
            for (int j = 0; j < K; ++j) {
                out.tau[static_cast<std::size_t>(j)][d] = tmp_tau[static_cast<std::size_t>(j)];
                out.t[static_cast<std::size_t>(j)][d] = tmp_t[static_cast<std::size_t>(j)];
                out.weight[static_cast<std::size_t>(j)][d] = tmp_w[static_cast<std::size_t>(j)];
            }
        }
    }

    for (int j = 0; j < K; ++j) {
        out.tau_summary.push_back(summarize_draws(out.tau[static_cast<std::size_t>(j)]));
        out.weight_summary.push_back(summarize_draws(out.weight[static_cast<std::size_t>(j)]));
        std::vector<double> angles;
        angles.reserve(out.t[static_cast<std::size_t>(j)].size());
        for (int t : out.t[static_cast<std::size_t>(j)]) angles.push_back(two_pi * t / m);
        out.center_summary.push_back(summarize_circular(angles));
    }
    return out;
}

}  // namespace latcirc
