#include "dsihurst/hsssi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsihurst {

std::size_t max_stride(std::size_t n) {
    std::size_t k = std::min<std::size_t>(20, n / 30);
    if (k < 2)
        throw std::invalid_argument("hsssi: need at least 60 samples, got " +
                                    std::to_string(n));
    return k;
}

VarianceRatioPair variance_ratio_pair(const std::vector<double>& z, std::size_t k,
                                      DiffOrder r, bool full_unit_range) {
    if (k < 1) throw std::invalid_argument("hsssi: stride must be positive");
    const std::size_t order = static_cast<std::size_t>(diff_order_value(r));
    const std::size_t m = z.size() / k;
    if (m < order + 2)
        throw std::invalid_argument("hsssi: too few terms at stride " + std::to_string(k));

    std::vector<double> sub_diffs = difference(subsample(z, k), r);  // m - r terms
    std::vector<double> unit_diffs = difference(z, r);
    if (!full_unit_range) unit_diffs.resize(m - order);

    VarianceRatioPair pair{sample_variance(sub_diffs), sample_variance(unit_diffs)};
    if (!(pair.subsampled > 0.0) || !(pair.unit > 0.0))
        throw std::invalid_argument("hsssi: degenerate (zero) variance at stride " +
                                    std::to_string(k));
    return pair;
}

HsssiEstimate estimate_hsssi(const TimeSeries& x, DiffOrder r, bool detrend,
                             bool full_unit_range) {
    HsssiEstimate est;
    est.max_stride = max_stride(x.size());
    est.diff_order = r;

    std::vector<double> z = x.values;
    if (detrend) {
        LineFit line = ols_line(x.times, x.values);
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] -= line.intercept + line.slope * x.times[i];
    }

    double sum = 0.0;
    for (std::size_t k = 2; k <= est.max_stride; ++k) {
        VarianceRatioPair pair = variance_ratio_pair(z, k, r, full_unit_range);
        double ratio = pair.subsampled / pair.unit;
        double h = std::log(ratio) / (2.0 * std::log(static_cast<double>(k)));
        est.strides.push_back(k);
        est.ratios.push_back(ratio);
        est.per_k_hurst.push_back(h);
        sum += h;
    }
    est.hurst = sum / static_cast<double>(est.per_k_hurst.size());
    return est;
}

}  // namespace dsihurst
