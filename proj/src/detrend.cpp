#include "dsihurst/detrend.hpp"

#include <stdexcept>
#include <string>

namespace dsihurst {

PiecewiseLinearDrift fit_global_drift(const TimeSeries& x) {
    if (x.size() < 2) throw std::invalid_argument("fit drift: need at least two samples");
    LineFit fit = ols_line(x.times, x.values);
    return PiecewiseLinearDrift(
        {DriftSegment{x.times.front(), x.times.back(), fit.intercept, fit.slope}});
}

PiecewiseLinearDrift fit_piecewise_drift(const TimeSeries& x, const ScalePartition& p) {
    std::vector<DriftSegment> segments;
    for (std::size_t k = 0; k < p.num_intervals(); ++k) {
        double a = p.breakpoints[k], b = p.breakpoints[k + 1];
        bool last = (k + 1 == p.num_intervals());
        std::vector<double> t, v;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double ti = x.times[i];
            if (ti >= a && (ti < b || (last && ti == b))) {
                t.push_back(ti);
                v.push_back(x.values[i]);
            }
        }
        if (t.size() < 2)
            throw std::invalid_argument("fit drift: interval " + std::to_string(k + 1) +
                                        " has fewer than two samples");
        LineFit fit = ols_line(t, v);
        segments.push_back(DriftSegment{a, b, fit.intercept, fit.slope});
    }
    return PiecewiseLinearDrift(std::move(segments));
}

TimeSeries eliminate_drift(const TimeSeries& x, const PiecewiseLinearDrift& g) {
    TimeSeries out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!g.covers(out.times[i]))
            throw std::invalid_argument("eliminate drift: time " +
                                        std::to_string(out.times[i]) +
                                        " not covered by the drift");
        out.values[i] -= g.value_at(out.times[i]);
    }
    return out;
}

}  // namespace dsihurst
