#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dsihurst/series.hpp"

namespace dsihurst {

/// Interval-length ratios of a scale partition and their mean, the
/// estimated scale parameter.
struct ScaleEstimate {
    std::vector<double> per_pair_ratios;
    double mean_ratio;
};

/// Direction of the interval-length ratios: forward divides each interval
/// length by its predecessor's, backward is the elementwise reciprocal.
/// Both conventions appear in practice, so both are exposed.
enum class RatioOrientation { forward, backward };

/// Sampling grid with the same number of points in every scale interval.
struct SamplingGrid {
    std::vector<double> points;
    std::size_t points_per_interval;
    ScalePartition partition;
};

/// Split the time span of x into scale intervals by least-squares
/// piecewise-quadratic segmentation.  Breakpoint candidates are the sample
/// times; dynamic programming over precomputed prefix sums finds the
/// global optimum for a fixed interval count.  With num_intervals empty
/// the count is chosen by penalizing the total squared residual with
/// auto_penalty * M * log(N) * sigma2, where sigma2 is a noise variance
/// estimate from first differences.
ScalePartition detect_scale_intervals(const TimeSeries& x,
                                      std::optional<std::size_t> num_intervals,
                                      std::size_t min_len = 4,
                                      double auto_penalty = 1.0);

/// Interval-length ratios of p in the requested orientation and their mean.
ScaleEstimate estimate_scale(const ScalePartition& p, RatioOrientation orientation);

/// q points per interval: interval k of width w gets points
/// a_{k-1} + i*(w/q) for i = 0..q-1.
SamplingGrid equally_spaced_grid(const ScalePartition& p, std::size_t q);

/// Geometric grid alpha^(n*T + k) for n in [n_min, n_max], k = 0..T-1;
/// consecutive blocks of T points fall into scale intervals with ratio
/// alpha^T.
std::vector<double> geometric_grid(double alpha, std::size_t points_per_interval,
                                   long n_min, long n_max);

/// Value of x at each requested time by the last-observation rule (the
/// sample at the greatest time <= the requested one).  Times must be
/// strictly increasing and must not precede the first sample.
TimeSeries resample_at_times(const TimeSeries& x, const std::vector<double>& times);

/// resample_at_times on the grid's points.
TimeSeries resample_on_grid(const TimeSeries& x, const SamplingGrid& grid);

}  // namespace dsihurst
