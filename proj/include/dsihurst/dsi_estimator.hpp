#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dsihurst/scalegrid.hpp"
#include "dsihurst/series.hpp"

namespace dsihurst {

/// How increments at scale-interval boundaries are treated.  "within"
/// keeps only increments between samples of the same interval; "cross"
/// also uses the increment reaching into the next interval, which
/// straddles two scale regimes but keeps one more term per interval.
enum class IncrementBoundary { within, cross };

/// Output of the scale-interval variance-ratio Hurst estimator.
struct DsiEstimate {
    std::vector<double> interval_variances;  // one per interval
    std::vector<double> variance_ratios;     // interval k over interval k-1
    double ratio_mean;
    std::vector<double> hurst_per_interval;  // one per consecutive interval pair
    double hurst_mean;
    double lambda_used;  // mean of the per-pair scales when those were supplied
    DiffOrder diff_order;
};

/// Sample variance of order-r increment differences per scale interval.
/// y must be x resampled on grid (same times); in cross mode y must carry
/// one extra trailing sample past the final grid point so the last
/// interval also gets its boundary-crossing increment.
std::vector<double> interval_increment_variances(const TimeSeries& y,
                                                 const SamplingGrid& grid, DiffOrder r,
                                                 IncrementBoundary boundary);

/// Hurst estimates from per-interval variances and a single scale:
/// H for interval pair (i, i+1) is log(S²_{i+1}/S²_i) / (2 log lambda).
DsiEstimate estimate_dsi_hurst(const std::vector<double>& variances, double lambda,
                               DiffOrder r);

/// Same, but with one scale per consecutive interval pair (time-dependent
/// scales); lambdas must have one entry fewer than variances.
DsiEstimate estimate_dsi_hurst(const std::vector<double>& variances,
                               const std::vector<double>& lambdas, DiffOrder r);

enum class DriftMode { none, global, piecewise };

/// How the pipeline picks between the forward and backward scale ratio
/// means: automatic takes whichever mean exceeds 1 (interval lengths grow
/// in one direction or the other).
enum class OrientationChoice { forward, backward, automatic };

struct DsiPipelineOptions {
    std::size_t points_per_interval = 64;
    std::optional<std::size_t> num_intervals;   // empty: penalized auto selection
    std::size_t min_interval_len = 4;
    double auto_penalty = 1.0;
    DiffOrder diff_order = DiffOrder::first;
    DriftMode drift_mode = DriftMode::piecewise;
    IncrementBoundary boundary = IncrementBoundary::within;
    OrientationChoice orientation = OrientationChoice::automatic;
    std::optional<ScalePartition> partition;    // supplied: skip detection
    std::optional<double> lambda_override;
    bool per_pair_lambda = false;               // use per-pair ratios for each H
};

struct DsiPipelineResult {
    ScalePartition partition;
    ScaleEstimate scale_forward;
    ScaleEstimate scale_backward;
    PiecewiseLinearDrift drift;  // empty for drift_mode = none
    DsiEstimate estimate;
};

/// Full analysis of a raw series: partition (detected or supplied), drift
/// fit and elimination, grid resampling, per-interval increment variances,
/// scale and Hurst estimation.  Errors are tagged with the failing stage.
DsiPipelineResult dsi_pipeline(const TimeSeries& x, const DsiPipelineOptions& options);

}  // namespace dsihurst
