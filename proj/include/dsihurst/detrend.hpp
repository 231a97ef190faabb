#pragma once

#include "dsihurst/series.hpp"

namespace dsihurst {

/// One OLS line over the whole time span, returned as a single-segment
/// drift covering [first time, last time].
PiecewiseLinearDrift fit_global_drift(const TimeSeries& x);

/// One OLS line per scale interval.  Interval k owns samples with
/// a_{k-1} <= t < a_k; the last interval also owns t = a_M.  Every
/// interval needs at least two samples at distinct times.
PiecewiseLinearDrift fit_piecewise_drift(const TimeSeries& x, const ScalePartition& p);

/// values - g(t) at each sample; g must cover all sample times.
TimeSeries eliminate_drift(const TimeSeries& x, const PiecewiseLinearDrift& g);

}  // namespace dsihurst
