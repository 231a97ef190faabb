#include "dsihurst/dsi_estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dsihurst/detrend.hpp"

namespace dsihurst {

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error("stage '" + std::string(name) + "': " + e.what());
    }
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

void check_variances(const std::vector<double>& variances) {
    if (variances.size() < 2)
        throw std::invalid_argument("estimate: need variances for at least two intervals");
    for (std::size_t k = 0; k < variances.size(); ++k) {
        if (!(variances[k] > 0.0))
            throw std::invalid_argument("estimate: interval " + std::to_string(k + 1) +
                                        " has degenerate (zero) increment variance");
    }
}

DsiEstimate estimate_impl(const std::vector<double>& variances,
                          const std::vector<double>& lambdas, DiffOrder r) {
    DsiEstimate est;
    est.interval_variances = variances;
    est.diff_order = r;
    for (std::size_t k = 1; k < variances.size(); ++k) {
        double ratio = variances[k] / variances[k - 1];
        est.variance_ratios.push_back(ratio);
        est.hurst_per_interval.push_back(std::log(ratio) / (2.0 * std::log(lambdas[k - 1])));
    }
    est.ratio_mean = mean_of(est.variance_ratios);
    est.hurst_mean = mean_of(est.hurst_per_interval);
    est.lambda_used = mean_of(lambdas);
    return est;
}

}  // namespace

std::vector<double> interval_increment_variances(const TimeSeries& y,
                                                 const SamplingGrid& grid, DiffOrder r,
                                                 IncrementBoundary boundary) {
    const std::size_t q = grid.points_per_interval;
    const std::size_t m = grid.partition.num_intervals();
    const std::size_t order = static_cast<std::size_t>(diff_order_value(r));
    if (q < order + 2)
        throw std::invalid_argument(
            "interval variances: need at least order + 2 points per interval");

    if (y.size() != m * q && y.size() != m * q + 1)
        throw std::invalid_argument("interval variances: series length does not match grid");
    for (std::size_t i = 0; i < m * q; ++i) {
        double g = grid.points[i];
        if (std::abs(y.times[i] - g) > 1e-9 * std::max(1.0, std::abs(g)))
            throw std::invalid_argument("interval variances: series not sampled on the grid");
    }
    if (boundary == IncrementBoundary::cross && y.size() != m * q + 1)
        throw std::invalid_argument(
            "interval variances: cross-boundary mode needs one sample past the last interval");

    std::vector<double> variances;
    variances.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t count = q + (boundary == IncrementBoundary::cross ? 1 : 0);
        std::vector<double> window(y.values.begin() + static_cast<std::ptrdiff_t>(k * q),
                                   y.values.begin() + static_cast<std::ptrdiff_t>(k * q + count));
        variances.push_back(sample_variance(difference(window, r)));
    }
    return variances;
}

DsiEstimate estimate_dsi_hurst(const std::vector<double>& variances, double lambda,
                               DiffOrder r) {
    check_variances(variances);
    if (!(lambda > 1.0)) throw std::invalid_argument("estimate: scale must exceed 1");
    return estimate_impl(variances, std::vector<double>(variances.size() - 1, lambda), r);
}

DsiEstimate estimate_dsi_hurst(const std::vector<double>& variances,
                               const std::vector<double>& lambdas, DiffOrder r) {
    check_variances(variances);
    if (lambdas.size() + 1 != variances.size())
        throw std::invalid_argument("estimate: need one scale per consecutive interval pair");
    for (double l : lambdas) {
        if (!(l > 1.0))
            throw std::invalid_argument("estimate: every per-pair scale must exceed 1");
    }
    return estimate_impl(variances, lambdas, r);
}

DsiPipelineResult dsi_pipeline(const TimeSeries& x, const DsiPipelineOptions& options) {
    if (x.size() < 2) throw std::invalid_argument("pipeline: series too short");

    ScalePartition partition = stage("detect", [&] {
        if (options.partition) return *options.partition;
        return detect_scale_intervals(x, options.num_intervals, options.min_interval_len,
                                      options.auto_penalty);
    });
    if (partition.num_intervals() < 2)
        throw std::runtime_error("stage 'detect': need at least two scale intervals");

    TimeSeries inside = restrict_to_span(x, partition.start(), partition.end());

    PiecewiseLinearDrift drift;
    TimeSeries detrended = stage("drift", [&] {
        switch (options.drift_mode) {
            case DriftMode::none:
                return inside;
            case DriftMode::global:
                drift = fit_global_drift(inside);
                break;
            case DriftMode::piecewise:
                drift = fit_piecewise_drift(inside, partition);
                break;
        }
        return eliminate_drift(inside, drift);
    });

    SamplingGrid grid = stage("resample", [&] {
        return equally_spaced_grid(partition, options.points_per_interval);
    });
    TimeSeries resampled = stage("resample", [&] {
        std::vector<double> at = grid.points;
        if (options.boundary == IncrementBoundary::cross) at.push_back(partition.end());
        return resample_at_times(detrended, at);
    });

    std::vector<double> variances = stage("variances", [&] {
        return interval_increment_variances(resampled, grid, options.diff_order,
                                            options.boundary);
    });

    DsiPipelineResult result{std::move(partition),
                             ScaleEstimate{},
                             ScaleEstimate{},
                             std::move(drift),
                             DsiEstimate{}};
    stage("scale", [&] {
        result.scale_forward = estimate_scale(result.partition, RatioOrientation::forward);
        result.scale_backward = estimate_scale(result.partition, RatioOrientation::backward);
        return 0;
    });

    result.estimate = stage("estimate", [&] {
        const ScaleEstimate* chosen = nullptr;
        switch (options.orientation) {
            case OrientationChoice::forward:
                chosen = &result.scale_forward;
                break;
            case OrientationChoice::backward:
                chosen = &result.scale_backward;
                break;
            case OrientationChoice::automatic:
                chosen = result.scale_forward.mean_ratio >= result.scale_backward.mean_ratio
                             ? &result.scale_forward
                             : &result.scale_backward;
                break;
        }
        if (options.per_pair_lambda)
            return estimate_dsi_hurst(variances, chosen->per_pair_ratios, options.diff_order);
        double lambda =
            options.lambda_override ? *options.lambda_override : chosen->mean_ratio;
        return estimate_dsi_hurst(variances, lambda, options.diff_order);
    });
    return result;
}

}  // namespace dsihurst
