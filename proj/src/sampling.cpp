#include "latcirc/sampling.hpp"

#include "latcirc/special.hpp"

#include <algorithm>
#include <cmath>

namespace latcirc {

DiscreteSampler::DiscreteSampler(const Pmf& pmf) : cum_(static_cast<std::size_t>(pmf.m())) {
    double acc = 0.0;
    for (int r = 0; r < pmf.m(); ++r) {
        acc += pmf.probs()[r];
        cum_[static_cast<std::size_t>(r)] = acc;
    }
    cum_.back() = 1.0;
}

int DiscreteSampler::draw(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    return static_cast<int>(it - cum_.begin());
}

std::vector<int> sample_pmf(const Pmf& pmf, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_pmf: n must be >= 1");
    DiscreteSampler sampler(pmf);
    std::vector<int> out(static_cast<std::size_t>(n));
    for (auto& v : out) v = sampler.draw(rng);
    return out;
}

std::vector<int> sample_pmf(const Pmf& pmf, int n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_pmf(pmf, n, rng);
}

double wc_quantile(double u, double rho, double mu) {
    const double theta = mu + 2.0 * std::atan((1.0 - rho) / (1.0 + rho) * std::tan(pi * (u - 0.5)));
    const double wrapped = std::fmod(theta, two_pi);
    return wrapped < 0.0 ? wrapped + two_pi : wrapped;
}

double draw_wrapped_cauchy(Rng& rng, double rho, double mu) {
    return wc_quantile(rng.uniform(), rho, mu);
}

VonMisesSampler::VonMisesSampler(double kappa, double mu) : mu_(mu), cdf_(4097) {
    // trapezoid cdf of exp(kappa*(cos(theta)-1)) on a uniform grid
    const int n = 4096;
    double acc = 0.0;
    double prev = std::exp(kappa * (std::cos(0.0) - 1.0));
    cdf_[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double theta = two_pi * i / n;
        const double cur = std::exp(kappa * (std::cos(theta) - 1.0));
        acc += 0.5 * (prev + cur);
        cdf_[static_cast<std::size_t>(i)] = acc;
        prev = cur;
    }
    for (auto& v : cdf_) v /= acc;
}

double VonMisesSampler::draw(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t hi = std::min<std::size_t>(
        std::max<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), 1), cdf_.size() - 1);
    const double c0 = cdf_[hi - 1];
    const double c1 = cdf_[hi];
    const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
    const double theta =
        two_pi * (static_cast<double>(hi - 1) + frac) / static_cast<double>(cdf_.size() - 1) + mu_;
    const double wrapped = std::fmod(theta, two_pi);
    return wrapped < 0.0 ? wrapped + two_pi : wrapped;
}

std::vector<int> sample_via_parent(Parent parent, double concentration, double mu, int m,
                                   Discretization method, int n, std::uint64_t seed) {
    const Lattice lat(m);
    Rng rng(seed);
    std::vector<int> out(static_cast<std::size_t>(n));
    if (method == Discretization::Conditionalize) {
        // plug the parent density into the lattice and normalize
        Eigen::ArrayXd kernel(m);
        for (int r = 0; r < m; ++r) {
            const double theta = two_pi * r / m;
            kernel[r] = parent == Parent::VonMises
                            ? std::exp(concentration * (std::cos(theta - mu) - 1.0))
                            : wc_pdf(theta - mu, concentration);
        }
        const Pmf pmf(lat, kernel / kernel.sum());
        DiscreteSampler sampler(pmf);
        for (auto& v : out) v = sampler.draw(rng);
        return out;
    }
    const auto discretize = [&](double theta) {
        const int r = static_cast<int>(std::floor(m * theta / two_pi));
        return std::clamp(r, 0, m - 1);
    };
    if (parent == Parent::WrappedCauchy) {
        for (auto& v : out) v = discretize(draw_wrapped_cauchy(rng, concentration, mu));
    } else {
        VonMisesSampler sampler(concentration, mu);
        for (auto& v : out) v = discretize(sampler.draw(rng));
    }
    return out;
}

}  // namespace latcirc
