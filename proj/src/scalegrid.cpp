#include "dsihurst/scalegrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dsihurst {

namespace {

constexpr std::size_t kMaxAutoIntervals = 8;

// Prefix sums for O(1) least-squares quadratic residuals on any sample
// range.  Times are mapped affinely onto [-1, 1] so the normal equations
// stay well conditioned; the fitted residual is unchanged by that map.
class QuadraticCost {
public:
    QuadraticCost(const std::vector<double>& t, const std::vector<double>& x) {
        n_ = t.size();
        double lo = t.front(), hi = t.back();
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (auto& p : pow_) p.assign(n_ + 1, 0.0);
        for (auto& p : cross_) p.assign(n_ + 1, 0.0);
        sq_.assign(n_ + 1, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double u = (t[i] - mid) / half;
            double up = 1.0;
            for (int j = 0; j <= 4; ++j) {
                pow_[j][i + 1] = pow_[j][i] + up;
                if (j <= 2) cross_[j][i + 1] = cross_[j][i] + up * x[i];
                up *= u;
            }
            sq_[i + 1] = sq_[i] + x[i] * x[i];
        }
    }

    // Sum of squared residuals of the best quadratic over samples [i, j).
    double operator()(std::size_t i, std::size_t j) const {
        std::size_t m = j - i;
        if (m <= 3) return 0.0;  // a quadratic interpolates up to three points
        double s0 = static_cast<double>(m);
        double s1 = pow_[1][j] - pow_[1][i];
        double s2 = pow_[2][j] - pow_[2][i];
        double s3 = pow_[3][j] - pow_[3][i];
        double s4 = pow_[4][j] - pow_[4][i];
        double b0 = cross_[0][j] - cross_[0][i];
        double b1 = cross_[1][j] - cross_[1][i];
        double b2 = cross_[2][j] - cross_[2][i];
        // Solve the 3x3 normal equations by Cramer's rule.
        double d = det3(s0, s1, s2, s1, s2, s3, s2, s3, s4);
        if (!(std::abs(d) > 0.0)) return 0.0;  // coincident points, exact fit
        double c0 = det3(b0, s1, s2, b1, s2, s3, b2, s3, s4) / d;
        double c1 = det3(s0, b0, s2, s1, b1, s3, s2, b2, s4) / d;
        double c2 = det3(s0, s1, b0, s1, s2, b1, s2, s3, b2) / d;
        double sse = (sq_[j] - sq_[i]) - (c0 * b0 + c1 * b1 + c2 * b2);
        return std::max(0.0, sse);
    }

private:
    static double det3(double a, double b, double c, double d, double e, double f,
                       double g, double h, double i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    }

    std::size_t n_;
    std::vector<double> pow_[5];
    std::vector<double> cross_[3];
    std::vector<double> sq_;
};

struct DpResult {
    double cost;
    std::vector<std::size_t> splits;  // start indices of segments 2..M
};

// Optimal segmentation of the first n samples into exactly m segments of
// at least min_len samples each.  dp is filled row by row so callers can
// reuse lower rows when scanning several m values.
class Segmenter {
public:
    Segmenter(const QuadraticCost& cost, std::size_t n, std::size_t min_len)
        : cost_(cost), n_(n), min_len_(min_len) {}

    DpResult solve(std::size_t m) {
        while (rows_.size() < m) add_row();
        const Row& row = rows_[m - 1];
        if (!std::isfinite(row.best[n_]))
            throw std::invalid_argument("detect intervals: series too short for " +
                                        std::to_string(m) + " intervals of length >= " +
                                        std::to_string(min_len_));
        DpResult r;
        r.cost = row.best[n_];
        std::size_t j = n_;
        for (std::size_t s = m; s-- > 1;) {
            j = rows_[s].parent[j];
            r.splits.push_back(j);
        }
        std::reverse(r.splits.begin(), r.splits.end());
        return r;
    }

private:
    struct Row {
        std::vector<double> best;
        std::vector<std::size_t> parent;
    };

    void add_row() {
        const double inf = std::numeric_limits<double>::infinity();
        std::size_t s = rows_.size() + 1;  // segments in this row
        Row row;
        row.best.assign(n_ + 1, inf);
        row.parent.assign(n_ + 1, 0);
        if (s == 1) {
            for (std::size_t j = min_len_; j <= n_; ++j) row.best[j] = cost_(0, j);
        } else {
            const Row& prev = rows_[s - 2];
            for (std::size_t j = s * min_len_; j <= n_; ++j) {
                for (std::size_t i = (s - 1) * min_len_; i + min_len_ <= j; ++i) {
                    if (!std::isfinite(prev.best[i])) continue;
                    double c = prev.best[i] + cost_(i, j);
                    if (c < row.best[j]) {
                        row.best[j] = c;
                        row.parent[j] = i;
                    }
                }
            }
        }
        rows_.push_back(std::move(row));
    }

    const QuadraticCost& cost_;
    std::size_t n_;
    std::size_t min_len_;
    std::vector<Row> rows_;
};

}  // namespace

ScalePartition detect_scale_intervals(const TimeSeries& x,
                                      std::optional<std::size_t> num_intervals,
                                      std::size_t min_len, double auto_penalty) {
    if (min_len < 4)
        throw std::invalid_argument("detect intervals: minimum interval length must be >= 4");
    std::size_t n = x.size();
    if (num_intervals && *num_intervals == 0)
        throw std::invalid_argument("detect intervals: interval count must be positive");
    std::size_t feasible = n / min_len;
    if (feasible == 0 || (num_intervals && *num_intervals > feasible))
        throw std::invalid_argument("detect intervals: series too short");

    QuadraticCost cost(x.times, x.values);
    Segmenter seg(cost, n, min_len);

    DpResult chosen{};
    if (num_intervals) {
        chosen = seg.solve(*num_intervals);
    } else {
        // Penalized model selection over the feasible interval counts.
        double sigma2 = 0.0;
        if (n >= 3) sigma2 = sample_variance(difference(x.values, DiffOrder::first)) / 2.0;
        double logn = std::log(static_cast<double>(n));
        std::size_t m_max = std::min(kMaxAutoIntervals, feasible);
        double best_score = std::numeric_limits<double>::infinity();
        for (std::size_t m = 1; m <= m_max; ++m) {
            DpResult r = seg.solve(m);
            double score = r.cost + auto_penalty * static_cast<double>(m) * logn * sigma2;
            if (score < best_score) {
                best_score = score;
                chosen = std::move(r);
            }
        }
    }

    std::vector<double> breakpoints;
    breakpoints.push_back(x.times.front());
    for (std::size_t idx : chosen.splits) breakpoints.push_back(x.times[idx]);
    breakpoints.push_back(x.times.back());
    return ScalePartition(std::move(breakpoints));
}

ScaleEstimate estimate_scale(const ScalePartition& p, RatioOrientation orientation) {
    std::size_t m = p.num_intervals();
    if (m < 2)
        throw std::invalid_argument("estimate scale: need at least two intervals");
    ScaleEstimate est;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double prev = p.length(i), next = p.length(i + 1);
        est.per_pair_ratios.push_back(orientation == RatioOrientation::forward ? next / prev
                                                                               : prev / next);
    }
    double sum = 0.0;
    for (double r : est.per_pair_ratios) sum += r;
    est.mean_ratio = sum / static_cast<double>(est.per_pair_ratios.size());
    return est;
}

SamplingGrid equally_spaced_grid(const ScalePartition& p, std::size_t q) {
    if (q < 2) throw std::invalid_argument("sampling grid: need at least two points per interval");
    std::vector<double> points;
    points.reserve(p.num_intervals() * q);
    for (std::size_t k = 0; k < p.num_intervals(); ++k) {
        double a = p.breakpoints[k];
        double step = p.length(k) / static_cast<double>(q);
        for (std::size_t i = 0; i < q; ++i) points.push_back(a + static_cast<double>(i) * step);
    }
    return SamplingGrid{std::move(points), q, p};
}

std::vector<double> geometric_grid(double alpha, std::size_t points_per_interval,
                                   long n_min, long n_max) {
    if (!(alpha > 1.0)) throw std::invalid_argument("geometric grid: alpha must exceed 1");
    if (points_per_interval < 1)
        throw std::invalid_argument("geometric grid: need at least one point per interval");
    if (n_min > n_max) throw std::invalid_argument("geometric grid: empty interval range");
    std::vector<double> points;
    for (long n = n_min; n <= n_max; ++n)
        for (std::size_t k = 0; k < points_per_interval; ++k)
            points.push_back(std::pow(
                alpha, static_cast<double>(n) * static_cast<double>(points_per_interval) +
                           static_cast<double>(k)));
    return points;
}

TimeSeries resample_at_times(const TimeSeries& x, const std::vector<double>& times) {
    if (x.size() == 0) throw std::invalid_argument("resample: empty series");
    std::vector<double> values;
    values.reserve(times.size());
    std::size_t pos = 0;
    for (double t : times) {
        if (t < x.times.front())
            throw std::invalid_argument("resample: grid point " + std::to_string(t) +
                                        " precedes the first sample");
        while (pos + 1 < x.size() && x.times[pos + 1] <= t) ++pos;
        values.push_back(x.values[pos]);
    }
    return TimeSeries(times, std::move(values));
}

TimeSeries resample_on_grid(const TimeSeries& x, const SamplingGrid& grid) {
    return resample_at_times(x, grid.points);
}

}  // namespace dsihurst
