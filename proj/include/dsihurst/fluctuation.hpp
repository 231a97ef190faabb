#pragma once

#include <cstddef>
#include <vector>

namespace dsihurst {

enum class FluctuationMethod { fa, dfa, dma };

/// Fluctuation function F(s) over a set of scales, with the Hurst index
/// read off as the log-log slope.
struct FluctuationCurve {
    std::vector<std::size_t> scales;
    std::vector<double> fluctuation;
    double hurst;
    FluctuationMethod method;
};

/// Cumulative sum of mean-centered increments; same length as the input.
std::vector<double> profile(const std::vector<double>& increments);

/// Default analysis scales shared by all three methods: `count`
/// geometrically spaced integers from 8 to n/4 (duplicates merged).
std::vector<std::size_t> default_scales(std::size_t n, std::size_t count = 12);

/// Fluctuation analysis: F(s)^2 is the mean squared profile increment at
/// lag s over all positions.
FluctuationCurve fa(const std::vector<double>& increments,
                    const std::vector<std::size_t>& scales);

/// Detrended fluctuation analysis with per-window line removal
/// (poly_order is fixed at 1).  Non-overlapping windows, forward and
/// backward passes averaged.
FluctuationCurve dfa(const std::vector<double>& increments,
                     const std::vector<std::size_t>& scales, int poly_order = 1);

/// Detrending moving average with the backward (trailing) window:
/// F(n)^2 = sum_{i>=n} (Y_i - MA_n(Y)_i)^2 / (N - n).
FluctuationCurve dma(const std::vector<double>& increments,
                     const std::vector<std::size_t>& windows);

/// OLS slope of log F against log scale; every F must be positive.
double fit_loglog_slope(const std::vector<std::size_t>& scales,
                        const std::vector<double>& fluctuation);

}  // namespace dsihurst
