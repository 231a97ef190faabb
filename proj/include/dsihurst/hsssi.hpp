#pragma once

#include <cstddef>
#include <vector>

#include "dsihurst/series.hpp"

namespace dsihurst {

/// The two sample variances compared at one stride: "subsampled" is the
/// variance of order-r differences of the every-k-th-value series,
/// "unit" the matching-length variance of order-r differences at stride 1.
struct VarianceRatioPair {
    double subsampled;
    double unit;
};

/// Output of the subsample variance-ratio Hurst estimator for
/// self-similar processes with stationary increments.
struct HsssiEstimate {
    std::vector<std::size_t> strides;     // 2 .. max_stride
    std::vector<double> ratios;           // subsampled / unit variance per stride
    std::vector<double> per_k_hurst;      // log(ratio) / (2 log k)
    double hurst;                         // mean of per_k_hurst
    std::size_t max_stride;
    DiffOrder diff_order;
};

/// Largest stride considered for N samples: min(20, floor(N/30)).
/// Throws below N = 60, where no stride >= 2 remains.
std::size_t max_stride(std::size_t n);

/// Variance pair at stride k.  Both variances use divisor floor(N/k) - r:
/// the unit-stride one is taken over the first floor(N/k) - r differences
/// so the two match in length, or over all N - r differences when
/// full_unit_range is set (divisor then N - r).
VarianceRatioPair variance_ratio_pair(const std::vector<double>& z, std::size_t k,
                                      DiffOrder r, bool full_unit_range = false);

/// Hurst estimate: optionally remove a global OLS line, then average
/// log(variance ratio)/(2 log k) over strides k = 2..max_stride.
HsssiEstimate estimate_hsssi(const TimeSeries& x, DiffOrder r, bool detrend = true,
                             bool full_unit_range = false);

}  // namespace dsihurst
