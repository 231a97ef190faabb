#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsihurst/series.hpp"

namespace dsihurst {

/// Parameters for fractional Gaussian noise / fractional Brownian motion
/// sampling.  sigma scales the standard deviation of a unit increment.
struct FbmSpec {
    std::size_t n = 0;
    double hurst = 0.5;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

/// Autocovariance of fractional Gaussian noise at integer lag h:
///   sigma^2/2 * (|h+1|^{2H} - 2|h|^{2H} + |h-1|^{2H}).
double fgn_autocovariance(double hurst, double sigma, long h);

/// Exact sampler for stationary fractional Gaussian noise of fixed length.
///
/// Embeds the n-point covariance in a circulant matrix of power-of-two
/// size m >= 2(n-1) whose eigenvalues come from one real FFT of the
/// wrapped autocovariance.  Sampling then costs one complex FFT: fill a
/// Hermitian vector with independent Gaussians weighted by the eigenvalue
/// square roots and transform.  The first n coordinates of the transform
/// have exactly the target covariance.
///
/// If the embedding produces an eigenvalue below -1e-8 times the largest
/// one it is not usable; the model then falls back to a dense Cholesky
/// factor of the covariance matrix (refused above n = 4096).  Tiny
/// negative eigenvalues above the threshold are clamped to zero.
///
/// The spectral setup is done once in the constructor, so drawing many
/// replications of the same length and Hurst index is cheap.
class FgnModel {
public:
    /// force_dense skips the embedding and factorizes the covariance
    /// directly; it exists so the fallback path stays validated.
    FgnModel(std::size_t n, double hurst, double sigma = 1.0, bool force_dense = false);

    /// One fGn vector of length n.  Equal seeds give identical output.
    std::vector<double> sample(std::uint64_t seed) const;

    double autocovariance(long h) const { return fgn_autocovariance(hurst_, sigma_, h); }
    std::size_t size() const { return n_; }
    double hurst() const { return hurst_; }
    bool used_cholesky_fallback() const { return !cholesky_.empty(); }

private:
    std::size_t n_;
    double hurst_;
    double sigma_;
    std::size_t m_ = 0;                    // circulant size (power of two)
    std::vector<double> sqrt_eigenvalues_; // empty when the fallback is active
    std::vector<double> cholesky_;         // packed lower triangle, row major
};

/// Convenience wrappers around FgnModel.
std::vector<double> generate_fgn(const FbmSpec& spec);

/// Fractional Brownian motion sampled at t = 1..n, built as the running
/// sum of exact fGn increments (so B(1) is the first increment).
TimeSeries generate_fbm(const FbmSpec& spec);

/// Parameters for a simple-Brownian-motion-based discrete scale invariant
/// path on [1, lambda^num_intervals) with mesh points per unit time.
struct SimpleBmDsiSpec {
    double hurst = 0.5;
    double lambda = 2.0;
    std::size_t num_intervals = 0;
    std::size_t mesh = 16;
    std::optional<PiecewiseLinearDrift> drift;
    std::uint64_t seed = 0;
};

/// Discrete scale invariant process built from one Brownian path B:
/// X(t) = lambda^{k(H - 1/2)} B(t) for t in [lambda^{k-1}, lambda^k),
/// k = 1..M, plus the optional drift.  Sampled on the uniform mesh
/// t = 1, 1 + 1/mesh, 1 + 2/mesh, ... up to (excluding) lambda^M.
TimeSeries generate_simple_bm_dsi(const SimpleBmDsiSpec& spec);

/// x with drift.value_at(t) added to every sample; drift must cover all
/// sample times.
TimeSeries add_drift(const TimeSeries& x, const PiecewiseLinearDrift& drift);

/// Derived per-replication seed used by the Monte Carlo harness.  The
/// mt19937_64 initializer mixes each state word, so adjacent indices do
/// not yield correlated streams.
inline std::uint64_t replication_seed(std::uint64_t master, std::uint64_t rep) {
    return master ^ rep;
}

}  // namespace dsihurst
