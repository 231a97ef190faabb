#include "dsihurst/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dsihurst {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x))
            throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> t, std::vector<double> v)
    : times(std::move(t)), values(std::move(v)) {
    if (times.size() != values.size())
        throw std::invalid_argument("time series: times and values differ in length");
    check_finite(times, "time series: times");
    check_finite(values, "time series: values");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("time series: times must be strictly increasing");
    }
}

TimeSeries TimeSeries::from_values(std::vector<double> v) {
    std::vector<double> t(v.size());
    std::iota(t.begin(), t.end(), 1.0);
    return TimeSeries(std::move(t), std::move(v));
}

ScalePartition::ScalePartition(std::vector<double> b) : breakpoints(std::move(b)) {
    if (breakpoints.size() < 2)
        throw std::invalid_argument("scale partition: need at least two breakpoints");
    check_finite(breakpoints, "scale partition: breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("scale partition: breakpoints must be strictly increasing");
    }
}

double ScalePartition::length(std::size_t k) const {
    if (k >= num_intervals())
        throw std::invalid_argument("scale partition: interval index out of range");
    return breakpoints[k + 1] - breakpoints[k];
}

PiecewiseLinearDrift::PiecewiseLinearDrift(std::vector<DriftSegment> segments)
    : segments_(std::move(segments)) {
    for (const auto& s : segments_) {
        if (!(s.end > s.start))
            throw std::invalid_argument("drift: segment must have start < end");
        if (!std::isfinite(s.intercept) || !std::isfinite(s.slope) ||
            !std::isfinite(s.start) || !std::isfinite(s.end))
            throw std::invalid_argument("drift: segment fields must be finite");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (segments_[i].start < segments_[i - 1].end)
            throw std::invalid_argument("drift: segments must be ordered and non-overlapping");
    }
}

const DriftSegment* PiecewiseLinearDrift::find(double t) const {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        bool last = (i + 1 == segments_.size());
        if (t >= s.start && (t < s.end || (last && t == s.end))) return &s;
    }
    return nullptr;
}

bool PiecewiseLinearDrift::covers(double t) const { return find(t) != nullptr; }

double PiecewiseLinearDrift::value_at(double t) const {
    const DriftSegment* s = find(t);
    if (!s)
        throw std::invalid_argument("drift: time " + std::to_string(t) +
                                    " not covered by any segment");
    return s->intercept + s->slope * t;
}

std::vector<double> difference(const std::vector<double>& x, DiffOrder r) {
    int order = diff_order_value(r);
    if (x.size() < static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("difference: series shorter than order + 1");
    // Higher orders are iterated first differences, so composing two
    // first-difference passes reproduces a second difference bit for bit.
    std::vector<double> y = x;
    for (int pass = 0; pass < order; ++pass) {
        for (std::size_t i = 0; i + 1 < y.size(); ++i) y[i] = y[i + 1] - y[i];
        y.pop_back();
    }
    return y;
}

std::vector<double> subsample(const std::vector<double>& x, std::size_t k) {
    if (k == 0) throw std::invalid_argument("subsample: stride must be positive");
    if (x.empty()) throw std::invalid_argument("subsample: empty input");
    std::vector<double> out;
    out.reserve(x.size() / k);
    for (std::size_t i = k; i <= x.size(); i += k) out.push_back(x[i - 1]);
    return out;
}

double sample_variance(const std::vector<double>& y, VarianceDivisor divisor) {
    std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("sample variance: need at least two values");
    double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : y) {
        double d = v - mean;
        ss += d * d;
    }
    double denom = (divisor == VarianceDivisor::count) ? static_cast<double>(n)
                                                       : static_cast<double>(n - 1);
    return ss / denom;
}

LineFit ols_line(const std::vector<double>& t, const std::vector<double>& x) {
    if (t.size() != x.size())
        throw std::invalid_argument("ols: times and values differ in length");
    std::size_t n = t.size();
    if (n < 2) throw std::invalid_argument("ols: need at least two samples");
    double tm = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(n);
    double xm = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double stt = 0.0, stx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dt = t[i] - tm;
        stt += dt * dt;
        stx += dt * (x[i] - xm);
    }
    double scale = std::max(std::abs(t.front()), std::abs(t.back()));
    if (stt <= 1e-24 * std::max(1.0, scale * scale) * static_cast<double>(n))
        throw std::invalid_argument("ols: degenerate design, all times coincide");
    double slope = stx / stt;
    return LineFit{xm - slope * tm, slope};
}

TimeSeries restrict_to_span(const TimeSeries& x, double start, double end) {
    if (!(end >= start)) throw std::invalid_argument("restrict: start must not exceed end");
    TimeSeries out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.times[i] >= start && x.times[i] <= end) {
            out.times.push_back(x.times[i]);
            out.values.push_back(x.values[i]);
        }
    }
    return out;
}

}  // namespace dsihurst
