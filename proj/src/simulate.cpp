#include "dsihurst/simulate.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>

namespace dsihurst {

namespace {

constexpr std::size_t kCholeskyMaxN = 4096;
constexpr double kEigenvalueTolerance = 1e-8;  // relative to the largest eigenvalue

class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}
    double operator()() { return normal_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

// FFTW plan creation/destruction is not thread-safe; executing distinct
// plans concurrently is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

void fft_forward(std::vector<std::complex<double>>& data) {
    std::vector<std::complex<double>> out(data.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    data.swap(out);
}

std::size_t next_power_of_two(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

void validate_fgn_law(double hurst, double sigma) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("fgn: Hurst index must lie in (0, 1)");
    if (!(sigma > 0.0)) throw std::invalid_argument("fgn: sigma must be positive");
}

}  // namespace

double fgn_autocovariance(double hurst, double sigma, long h) {
    validate_fgn_law(hurst, sigma);
    double a = std::abs(static_cast<double>(h));
    double tw = 2.0 * hurst;
    return 0.5 * sigma * sigma *
           (std::pow(a + 1.0, tw) - 2.0 * std::pow(a, tw) + std::pow(std::abs(a - 1.0), tw));
}

FgnModel::FgnModel(std::size_t n, double hurst, double sigma, bool force_dense)
    : n_(n), hurst_(hurst), sigma_(sigma) {
    if (n < 2) throw std::invalid_argument("fgn: need at least two samples");
    validate_fgn_law(hurst, sigma);

    bool embedding_usable = false;
    if (!force_dense) {
        m_ = std::max<std::size_t>(2, next_power_of_two(2 * (n_ - 1)));

        // Wrapped autocovariance c = (g(0), ..., g(m/2), g(m/2-1), ..., g(1));
        // its DFT gives the eigenvalues of the circulant embedding.
        std::vector<std::complex<double>> c(m_);
        for (std::size_t j = 0; j <= m_ / 2; ++j) c[j] = autocovariance(static_cast<long>(j));
        for (std::size_t j = 1; j < m_ / 2; ++j) c[m_ - j] = c[j];
        fft_forward(c);

        double max_eig = 0.0;
        double min_eig = 0.0;
        for (const auto& e : c) {
            max_eig = std::max(max_eig, e.real());
            min_eig = std::min(min_eig, e.real());
        }

        embedding_usable = min_eig >= -kEigenvalueTolerance * max_eig;
        if (embedding_usable) {
            sqrt_eigenvalues_.resize(m_);
            for (std::size_t k = 0; k < m_; ++k)
                sqrt_eigenvalues_[k] = std::sqrt(std::max(0.0, c[k].real()));
        } else if (n_ > kCholeskyMaxN) {
            throw std::runtime_error(
                "fgn: circulant embedding not positive semidefinite (min eigenvalue " +
                std::to_string(min_eig) + ") and n = " + std::to_string(n_) +
                " exceeds the dense Cholesky fallback limit of " +
                std::to_string(kCholeskyMaxN));
        }
    }

    if (!embedding_usable) {
        if (n_ > kCholeskyMaxN)
            throw std::invalid_argument("fgn: dense factorization capped at n = " +
                                        std::to_string(kCholeskyMaxN));
        Eigen::MatrixXd cov(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                cov(i, j) = autocovariance(static_cast<long>(i) - static_cast<long>(j));
        Eigen::LLT<Eigen::MatrixXd> llt(cov);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("fgn: dense Cholesky factorization failed");
        Eigen::MatrixXd lower = llt.matrixL();
        cholesky_.resize(n_ * (n_ + 1) / 2);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j <= i; ++j) cholesky_[i * (i + 1) / 2 + j] = lower(i, j);
        m_ = 0;
    }
}

std::vector<double> FgnModel::sample(std::uint64_t seed) const {
    GaussianRng rng(seed);

    if (!cholesky_.empty()) {
        std::vector<double> z(n_);
        for (auto& v : z) v = rng();
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double acc = 0.0;
            const double* row = &cholesky_[i * (i + 1) / 2];
            for (std::size_t j = 0; j <= i; ++j) acc += row[j] * z[j];
            x[i] = acc;
        }
        return x;
    }

    // Hermitian-symmetric spectral noise: the DFT of this vector is a real
    // Gaussian vector whose first n coordinates have the fGn covariance.
    std::vector<std::complex<double>> a(m_);
    const double inv_m = 1.0 / static_cast<double>(m_);
    a[0] = sqrt_eigenvalues_[0] * std::sqrt(inv_m) * rng();
    for (std::size_t k = 1; k < m_ / 2; ++k) {
        double w = sqrt_eigenvalues_[k] * std::sqrt(0.5 * inv_m);
        double u = rng();
        double v = rng();
        a[k] = std::complex<double>(w * u, w * v);
        a[m_ - k] = std::conj(a[k]);
    }
    a[m_ / 2] = sqrt_eigenvalues_[m_ / 2] * std::sqrt(inv_m) * rng();
    fft_forward(a);

    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = a[i].real();
    return x;
}

std::vector<double> generate_fgn(const FbmSpec& spec) {
    FgnModel model(spec.n, spec.hurst, spec.sigma);
    return model.sample(spec.seed);
}

TimeSeries generate_fbm(const FbmSpec& spec) {
    std::vector<double> increments = generate_fgn(spec);
    for (std::size_t i = 1; i < increments.size(); ++i) increments[i] += increments[i - 1];
    return TimeSeries::from_values(std::move(increments));
}

TimeSeries generate_simple_bm_dsi(const SimpleBmDsiSpec& spec) {
    if (!(spec.hurst > 0.0)) throw std::invalid_argument("simulate dsi: H must be positive");
    if (!(spec.lambda > 1.0)) throw std::invalid_argument("simulate dsi: lambda must exceed 1");
    if (spec.num_intervals == 0)
        throw std::invalid_argument("simulate dsi: need at least one scale interval");
    if (spec.mesh == 0) throw std::invalid_argument("simulate dsi: mesh must be positive");

    const std::size_t m = spec.num_intervals;
    std::vector<double> bounds(m + 1);
    for (std::size_t k = 0; k <= m; ++k) bounds[k] = std::pow(spec.lambda, static_cast<double>(k));
    const double end = bounds[m];
    const double dt = 1.0 / static_cast<double>(spec.mesh);
    const double sqrt_dt = std::sqrt(dt);

    GaussianRng rng(spec.seed);
    std::vector<double> times, values;
    double brownian = rng();  // B(1) ~ N(0, 1)
    std::size_t interval = 0;
    for (std::size_t j = 0;; ++j) {
        double t = 1.0 + static_cast<double>(j) * dt;
        if (t >= end * (1.0 - 1e-12)) break;
        if (j > 0) brownian += sqrt_dt * rng();
        while (interval + 1 < m && t >= bounds[interval + 1] * (1.0 - 1e-12)) ++interval;
        // 1-based interval index: X carries lambda^{k(H-1/2)} on the k-th
        // interval [lambda^{k-1}, lambda^k), so even the first interval is
        // rescaled unless H = 1/2.
        double factor =
            std::pow(spec.lambda, static_cast<double>(interval + 1) * (spec.hurst - 0.5));
        double v = factor * brownian;
        if (spec.drift) {
            if (!spec.drift->covers(t))
                throw std::invalid_argument(
                    "simulate dsi: drift does not cover sample time " + std::to_string(t));
            v += spec.drift->value_at(t);
        }
        times.push_back(t);
        values.push_back(v);
    }
    return TimeSeries(std::move(times), std::move(values));
}

TimeSeries add_drift(const TimeSeries& x, const PiecewiseLinearDrift& drift) {
    TimeSeries out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!drift.covers(out.times[i]))
            throw std::invalid_argument("add drift: drift does not cover sample time " +
                                        std::to_string(out.times[i]));
        out.values[i] += drift.value_at(out.times[i]);
    }
    return out;
}

}  // namespace dsihurst
