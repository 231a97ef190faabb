#pragma once

#include <cstddef>
#include <vector>

namespace dsihurst {

/// Order of differencing applied before computing increment variances.
enum class DiffOrder : int { first = 1, second = 2 };

inline int diff_order_value(DiffOrder r) { return static_cast<int>(r); }

/// Regularly or irregularly sampled series: strictly increasing, finite
/// times paired with finite values.  Most routines accept raw value
/// vectors; TimeSeries is used wherever sample times matter.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;

    TimeSeries() = default;
    TimeSeries(std::vector<double> t, std::vector<double> v);

    /// Wrap a value vector with implicit times 1, 2, ..., n.
    static TimeSeries from_values(std::vector<double> v);

    std::size_t size() const { return values.size(); }
};

/// Breakpoints a_0 < a_1 < ... < a_M delimiting M >= 1 scale intervals
/// (a_{k-1}, a_k].  Stored closed on the left for sampling purposes: the
/// k-th interval owns times in [a_{k-1}, a_k), the last one also owns a_M.
struct ScalePartition {
    std::vector<double> breakpoints;

    explicit ScalePartition(std::vector<double> b);

    std::size_t num_intervals() const { return breakpoints.size() - 1; }
    double start() const { return breakpoints.front(); }
    double end() const { return breakpoints.back(); }
    double length(std::size_t k) const;  // length of interval k, 0-based
};

/// One affine piece of a piecewise-linear mean: value(t) = intercept + slope*t
/// for t in [start, end).
struct DriftSegment {
    double start;
    double end;
    double intercept;
    double slope;
};

/// Piecewise-linear deterministic trend.  Segments are ordered and
/// non-overlapping; gaps are allowed but evaluating inside a gap throws.
/// The final segment is treated as closed at its right end.
class PiecewiseLinearDrift {
public:
    PiecewiseLinearDrift() = default;
    explicit PiecewiseLinearDrift(std::vector<DriftSegment> segments);

    double value_at(double t) const;
    bool covers(double t) const;
    bool empty() const { return segments_.empty(); }
    const std::vector<DriftSegment>& segments() const { return segments_; }

private:
    const DriftSegment* find(double t) const;
    std::vector<DriftSegment> segments_;
};

/// Result of an ordinary least squares line fit x ~ intercept + slope * t.
struct LineFit {
    double intercept;
    double slope;
};

enum class VarianceDivisor { count, count_minus_one };

/// Order-r differences of x; output length is x.size() - r.
std::vector<double> difference(const std::vector<double>& x, DiffOrder r);

/// Every k-th entry of x, i.e. x[k-1], x[2k-1], ...; floor(n/k) entries.
std::vector<double> subsample(const std::vector<double>& x, std::size_t k);

/// Mean squared deviation from the sample mean.  The default divides by
/// the number of terms; VarianceDivisor::count_minus_one gives the
/// unbiased n-1 form.
double sample_variance(const std::vector<double>& y,
                       VarianceDivisor divisor = VarianceDivisor::count);

/// Least squares straight line through (t_i, x_i).  Throws if fewer than
/// two samples or all times coincide.
LineFit ols_line(const std::vector<double>& t, const std::vector<double>& x);

/// Samples of x with start <= t <= end, preserving order.
TimeSeries restrict_to_span(const TimeSeries& x, double start, double end);

}  // namespace dsihurst
