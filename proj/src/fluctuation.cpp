#include "dsihurst/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dsihurst/series.hpp"

namespace dsihurst {

namespace {

void check_scales(const std::vector<std::size_t>& scales, std::size_t n,
                  std::size_t min_scale, const char* method) {
    if (scales.empty())
        throw std::invalid_argument(std::string(method) + ": empty scale set");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] < min_scale)
            throw std::invalid_argument(std::string(method) + ": scale " +
                                        std::to_string(scales[i]) + " below minimum " +
                                        std::to_string(min_scale));
        if (4 * scales[i] > n)
            throw std::invalid_argument(std::string(method) + ": scale " +
                                        std::to_string(scales[i]) + " exceeds n/4");
        if (i > 0 && scales[i] <= scales[i - 1])
            throw std::invalid_argument(std::string(method) +
                                        ": scales must be strictly increasing");
    }
}

FluctuationCurve make_curve(FluctuationMethod method, std::vector<std::size_t> scales,
                            std::vector<double> f) {
    FluctuationCurve curve{std::move(scales), std::move(f), 0.0, method};
    curve.hurst = fit_loglog_slope(curve.scales, curve.fluctuation);
    return curve;
}

// Residual sum of squares of the best straight line through
// (0, y[start]), (1, y[start+1]), ..., (s-1, y[start+s-1]).
double line_residual_ss(const std::vector<double>& y, std::size_t start, std::size_t s) {
    double su = 0.0, suu = 0.0, sy = 0.0, suy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
        double u = static_cast<double>(i);
        double v = y[start + i];
        su += u;
        suu += u * u;
        sy += v;
        suy += u * v;
        syy += v * v;
    }
    double m = static_cast<double>(s);
    double det = m * suu - su * su;
    double b1 = (m * suy - su * sy) / det;
    double b0 = (sy - b1 * su) / m;
    return std::max(0.0, syy - b0 * sy - b1 * suy);
}

}  // namespace

std::vector<double> profile(const std::vector<double>& increments) {
    if (increments.size() < 2)
        throw std::invalid_argument("profile: need at least two increments");
    double mean = 0.0;
    for (double v : increments) mean += v;
    mean /= static_cast<double>(increments.size());
    std::vector<double> y(increments.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        acc += increments[i] - mean;
        y[i] = acc;
    }
    return y;
}

std::vector<std::size_t> default_scales(std::size_t n, std::size_t count) {
    if (count < 2) throw std::invalid_argument("default scales: need at least two scales");
    if (n < 32)
        throw std::invalid_argument("default scales: need at least 32 samples, got " +
                                    std::to_string(n));
    double lo = 8.0, hi = static_cast<double>(n) / 4.0;
    std::size_t cap = n / 4;  // rounding must not push a scale past n/4
    std::vector<std::size_t> scales;
    for (std::size_t j = 0; j < count; ++j) {
        double f = static_cast<double>(j) / static_cast<double>(count - 1);
        auto s = static_cast<std::size_t>(std::llround(lo * std::pow(hi / lo, f)));
        if (s > cap) s = cap;
        if (scales.empty() || s > scales.back()) scales.push_back(s);
    }
    return scales;
}

FluctuationCurve fa(const std::vector<double>& increments,
                    const std::vector<std::size_t>& scales) {
    std::vector<double> y = profile(increments);
    check_scales(scales, y.size(), 1, "fa");
    std::vector<double> f;
    f.reserve(scales.size());
    for (std::size_t s : scales) {
        double acc = 0.0;
        std::size_t terms = y.size() - s;
        for (std::size_t t = 0; t < terms; ++t) {
            double d = y[t + s] - y[t];
            acc += d * d;
        }
        f.push_back(std::sqrt(acc / static_cast<double>(terms)));
    }
    return make_curve(FluctuationMethod::fa, scales, std::move(f));
}

FluctuationCurve dfa(const std::vector<double>& increments,
                     const std::vector<std::size_t>& scales, int poly_order) {
    if (poly_order != 1)
        throw std::invalid_argument("dfa: only line detrending (order 1) is supported");
    std::vector<double> y = profile(increments);
    check_scales(scales, y.size(), static_cast<std::size_t>(poly_order) + 2, "dfa");
    std::vector<double> f;
    f.reserve(scales.size());
    for (std::size_t s : scales) {
        std::size_t windows = y.size() / s;
        double acc = 0.0;
        for (std::size_t w = 0; w < windows; ++w) {
            acc += line_residual_ss(y, w * s, s);                 // forward pass
            acc += line_residual_ss(y, y.size() - (w + 1) * s, s);  // backward pass
        }
        f.push_back(std::sqrt(acc / static_cast<double>(2 * windows * s)));
    }
    return make_curve(FluctuationMethod::dfa, scales, std::move(f));
}

FluctuationCurve dma(const std::vector<double>& increments,
                     const std::vector<std::size_t>& windows) {
    std::vector<double> y = profile(increments);
    check_scales(windows, y.size(), 2, "dma");
    std::vector<double> prefix(y.size() + 1, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) prefix[i + 1] = prefix[i] + y[i];
    std::vector<double> f;
    f.reserve(windows.size());
    for (std::size_t n : windows) {
        double acc = 0.0;
        for (std::size_t i = n - 1; i < y.size(); ++i) {
            double ma = (prefix[i + 1] - prefix[i + 1 - n]) / static_cast<double>(n);
            double d = y[i] - ma;
            acc += d * d;
        }
        f.push_back(std::sqrt(acc / static_cast<double>(y.size() - n)));
    }
    return make_curve(FluctuationMethod::dma, windows, std::move(f));
}

double fit_loglog_slope(const std::vector<std::size_t>& scales,
                        const std::vector<double>& fluctuation) {
    if (scales.size() != fluctuation.size())
        throw std::invalid_argument("log-log fit: scales and fluctuations differ in length");
    if (scales.size() < 2)
        throw std::invalid_argument("log-log fit: need at least two scales");
    std::vector<double> lx, ly;
    lx.reserve(scales.size());
    ly.reserve(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(fluctuation[i] > 0.0))
            throw std::invalid_argument("log-log fit: degenerate (non-positive) fluctuation at scale " +
                                        std::to_string(scales[i]));
        lx.push_back(std::log(static_cast<double>(scales[i])));
        ly.push_back(std::log(fluctuation[i]));
    }
    return ols_line(lx, ly).slope;
}

}  // namespace dsihurst
