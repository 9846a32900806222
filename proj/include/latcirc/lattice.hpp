#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace latcirc {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

/// Thrown when an iterative scheme fails to converge or a series
/// exceeds its term cap. Distinct from std::invalid_argument, which
/// signals a parameter outside its admissible range.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The regular circular lattice {2*pi*r/m : r = 0..m-1}.
class Lattice {
  public:
    explicit Lattice(int m) : m_(m) {
        if (m < 2) throw std::invalid_argument("Lattice: m must be >= 2, got " + std::to_string(m));
    }

    int size() const { return m_; }

    /// Angle of lattice point r, in [0, 2*pi).
    double angle(long long r) const { return two_pi * static_cast<double>(reduce(r)) / m_; }

    /// Reduce an integer to its residue in {0..m-1}.
    int reduce(long long r) const {
        long long v = r % m_;
        if (v < 0) v += m_;
        return static_cast<int>(v);
    }

    /// Symmetric lattice distance |r| reduced to {0..floor(m/2)}. Used so
    /// that kernels evaluated at +k and -k share the same floating-point
    /// argument and location-family symmetry holds bit-exactly.
    int sym_distance(long long r) const {
        int d = reduce(r);
        return d > m_ - d ? m_ - d : d;
    }

    bool operator==(const Lattice& o) const { return m_ == o.m_; }
    bool operator!=(const Lattice& o) const { return m_ != o.m_; }

  private:
    int m_;
};

/// A probability mass function on a regular lattice. Entries are kept as
/// computed (no silent renormalization); construction checks that the
/// vector is a probability vector up to numerical tolerance.
class Pmf {
  public:
    Pmf(Lattice lattice, Eigen::ArrayXd probs) : lattice_(lattice), probs_(std::move(probs)) {
        if (probs_.size() != lattice_.size())
            throw std::invalid_argument("Pmf: length " + std::to_string(probs_.size()) +
                                        " does not match lattice size " + std::to_string(lattice_.size()));
        for (Eigen::Index r = 0; r < probs_.size(); ++r) {
            if (probs_[r] < 0.0) {
                if (probs_[r] < -1e-12)
                    throw std::invalid_argument("Pmf: negative probability " + std::to_string(probs_[r]) +
                                                " at r=" + std::to_string(r));
                probs_[r] = 0.0;  // clamp quadrature round-off
            }
        }
        const double total = probs_.sum();
        if (std::abs(total - 1.0) > 1e-9)
            throw std::invalid_argument("Pmf: probabilities sum to " + std::to_string(total));
    }

    const Lattice& lattice() const { return lattice_; }
    int m() const { return lattice_.size(); }
    const Eigen::ArrayXd& probs() const { return probs_; }
    double operator[](long long r) const { return probs_[lattice_.reduce(r)]; }

    int argmax() const {
        Eigen::Index idx = 0;
        probs_.maxCoeff(&idx);
        return static_cast<int>(idx);
    }

  private:
    Lattice lattice_;
    Eigen::ArrayXd probs_;
};

/// A pmf supported on an arbitrary finite set of angles in [0, 2*pi),
/// e.g. the union lattice of a mixture with different m per component.
struct IrregularPmf {
    Eigen::ArrayXd angles;  // sorted, distinct
    Eigen::ArrayXd probs;
};

}  // namespace latcirc
