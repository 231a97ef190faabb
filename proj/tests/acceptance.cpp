// Acceptance checks for the library.  Each criterion prints exactly one
// [PASS]/[FAIL] line with the measured quantities and its runtime, and
// the process exits nonzero if any selected criterion fails.  Tolerances
// are fixed here, next to the checks that use them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dsihurst/benchmark.hpp"
#include "dsihurst/detrend.hpp"
#include "dsihurst/dsi_estimator.hpp"
#include "dsihurst/fluctuation.hpp"
#include "dsihurst/hsssi.hpp"
#include "dsihurst/scalegrid.hpp"
#include "dsihurst/series.hpp"
#include "dsihurst/simulate.hpp"

using namespace dsihurst;

namespace {

std::string fmt(double v, const char* spec = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// ---------------------------------------------------------------- 1 ----
// Exact fGn: empirical autocovariance at small lags stays within three
// standard errors of the closed form.  The standard error is computed
// exactly for the known-mean estimator of a Gaussian sequence:
//   Var c(h) = (1/L^2) sum_d (L-|d|) [g(d)^2 + g(d+h) g(d-h)],  L = n-h.
bool criterion1(std::string& detail) {
    const std::size_t n = 100000;
    const long max_lag = 5;
    double worst_z = 0.0;
    std::string worst_at;
    for (double hurst : {0.2, 0.5, 0.8}) {
        FgnModel model(n, hurst);
        std::vector<double> x = model.sample(20260823);
        std::vector<double> gamma(n + max_lag + 1);
        for (std::size_t i = 0; i < gamma.size(); ++i)
            gamma[i] = fgn_autocovariance(hurst, 1.0, static_cast<long>(i));
        auto gamma_at = [&](long d) { return gamma[static_cast<std::size_t>(std::labs(d))]; };
        for (long h = 0; h <= max_lag; ++h) {
            const std::size_t L = n - static_cast<std::size_t>(h);
            double est = 0.0;
            for (std::size_t t = 0; t < L; ++t) est += x[t] * x[t + static_cast<std::size_t>(h)];
            est /= static_cast<double>(L);
            double var = 0.0;
            for (long d = -static_cast<long>(L) + 1; d < static_cast<long>(L); ++d) {
                double w = static_cast<double>(L) - static_cast<double>(std::labs(d));
                var += w * (gamma_at(d) * gamma_at(d) + gamma_at(d + h) * gamma_at(d - h));
            }
            var /= static_cast<double>(L) * static_cast<double>(L);
            double z = (est - gamma_at(h)) / std::sqrt(var);
            if (std::abs(z) > std::abs(worst_z)) {
                worst_z = z;
                worst_at = "H=" + fmt(hurst, "%.1f") + ", lag " + std::to_string(h);
            }
        }
    }
    detail = "worst |z| = " + fmt(std::abs(worst_z)) + " at " + worst_at + " (limit 3)";
    return std::abs(worst_z) < 3.0;
}

// ---------------------------------------------------------------- 2 ----
// Subsample variance ratios on exact fBm scale as k^{2H}.
bool criterion2(std::string& detail) {
    const std::size_t n = 1024, reps = 1000;
    const double tolerance = 0.05;  // relative
    double worst_rel = 0.0;
    std::string worst_at;
    for (double hurst : {0.3, 0.7}) {
        FgnModel model(n, hurst);
        std::vector<std::vector<double>> ratios(3);
        const std::size_t strides[3] = {2, 4, 8};
        for (std::size_t rep = 0; rep < reps; ++rep) {
            std::vector<double> z = model.sample(77000 + rep);
            for (std::size_t i = 1; i < z.size(); ++i) z[i] += z[i - 1];
            for (std::size_t si = 0; si < 3; ++si) {
                VarianceRatioPair pair =
                    variance_ratio_pair(z, strides[si], DiffOrder::first, false);
                ratios[si].push_back(pair.subsampled / pair.unit);
            }
        }
        for (std::size_t si = 0; si < 3; ++si) {
            double target = std::pow(static_cast<double>(strides[si]), 2.0 * hurst);
            double rel = std::abs(mean_of(ratios[si]) - target) / target;
            if (rel > worst_rel) {
                worst_rel = rel;
                worst_at = "H=" + fmt(hurst, "%.1f") + ", k=" + std::to_string(strides[si]);
            }
        }
    }
    detail = "worst relative deviation " + fmt(worst_rel) + " at " + worst_at + " (limit " +
             fmt(tolerance) + ")";
    return worst_rel < tolerance;
}

// ---------------------------------------------------------------- 3 ----
// Second-order subsample estimator on fBm: small bias and MSE across H.
bool criterion3(std::string& detail) {
    const std::size_t n = 2048, reps = 500;
    const double bias_limit = 0.02, mse_limit = 0.005;
    double worst_bias = 0.0, worst_mse = 0.0;
    for (int hi = 1; hi <= 9; ++hi) {
        double hurst = hi / 10.0;
        FgnModel model(n, hurst);
        std::vector<double> estimates;
        estimates.reserve(reps);
        for (std::size_t rep = 0; rep < reps; ++rep) {
            std::vector<double> values = model.sample(31000 + 1000 * hi + rep);
            for (std::size_t i = 1; i < values.size(); ++i) values[i] += values[i - 1];
            estimates.push_back(
                estimate_hsssi(TimeSeries::from_values(values), DiffOrder::second).hurst);
        }
        double bias = mean_of(estimates) - hurst;
        double mse = 0.0;
        for (double e : estimates) mse += (e - hurst) * (e - hurst);
        mse /= static_cast<double>(reps);
        worst_bias = std::max(worst_bias, std::abs(bias));
        worst_mse = std::max(worst_mse, mse);
    }
    detail = "worst |bias| " + fmt(worst_bias) + " (limit " + fmt(bias_limit) +
             "), worst mse " + fmt(worst_mse) + " (limit " + fmt(mse_limit) + ")";
    return worst_bias < bias_limit && worst_mse < mse_limit;
}

// ---------------------------------------------------------------- 4 ----
// Benchmark orderings: (a) diff2 beats every fluctuation baseline at each
// H; (b) diff1 has the lowest MSE for H <= 0.5 and diff2 for H >= 0.6.
// Each comparison carries a 10% slack and must hold on at least 9 of 10
// master seeds.
bool criterion4(std::string& detail) {
    const double slack = 1.10;
    int pass_a = 0, pass_b = 0;
    std::map<std::string, int> violations;  // comparison -> number of seeds violating it
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        BenchConfig cfg;
        cfg.n = 2048;
        cfg.reps = 100;
        cfg.seed = seed;
        cfg.threads = 4;
        MseTable table = run_benchmark(cfg);
        const std::size_t nh = cfg.hurst_grid.size();
        auto mse = [&](BenchMethod m, std::size_t hi) {
            for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
                if (cfg.methods[mi] == m) return table.cells[mi * nh + hi].mse;
            return 0.0;
        };
        bool ok_a = true, ok_b = true;
        for (std::size_t hi = 0; hi < nh; ++hi) {
            double h = cfg.hurst_grid[hi];
            for (BenchMethod m : {BenchMethod::fa, BenchMethod::dfa, BenchMethod::dma}) {
                if (!(mse(BenchMethod::diff2, hi) < slack * mse(m, hi))) {
                    ok_a = false;
                    ++violations["diff2 !< 1.1*" + method_name(m) + " at H=" + fmt(h, "%.1f")];
                }
            }
            BenchMethod best = h < 0.55 ? BenchMethod::diff1 : BenchMethod::diff2;
            for (BenchMethod m : {BenchMethod::fa, BenchMethod::dfa, BenchMethod::dma,
                                  BenchMethod::diff1, BenchMethod::diff2}) {
                if (m == best) continue;
                if (!(mse(best, hi) < slack * mse(m, hi))) {
                    ok_b = false;
                    ++violations[method_name(best) + " !< 1.1*" + method_name(m) + " at H=" +
                                 fmt(h, "%.1f")];
                }
            }
        }
        pass_a += ok_a ? 1 : 0;
        pass_b += ok_b ? 1 : 0;
    }
    detail = "diff2-beats-baselines on " + std::to_string(pass_a) +
             "/10 seeds, best-by-regime on " + std::to_string(pass_b) + "/10 seeds (need 9)";
    if (!violations.empty()) {
        detail += "; violations (seeds/10):";
        for (const auto& [what, count] : violations)
            detail += " [" + what + ": " + std::to_string(count) + "]";
    }
    return pass_a >= 9 && pass_b >= 9;
}

// ---------------------------------------------------------------- 5 ----
// Full pipeline on simulated scale-invariant paths with planted
// piecewise-linear drift: the mean recovered exponent is within 0.1 of
// the planted one, and with the true partition supplied the per-interval
// estimates are unchanged by the drift to within 1e-8.
bool criterion5(std::string& detail) {
    const double lambda = 2.0;
    const std::size_t intervals = 4, q = 64, reps = 200;
    const double mean_tol = 0.1, invariance_tol = 1e-8;
    const ScalePartition true_partition({1, 2, 4, 8, 16});
    const PiecewiseLinearDrift planted({DriftSegment{1, 2, 4.0, -2.0},
                                        DriftSegment{2, 4, -3.0, 1.5},
                                        DriftSegment{4, 8, 10.0, -0.75},
                                        DriftSegment{8, 16, -6.0, 0.5}});
    DsiPipelineOptions opt;
    opt.points_per_interval = q;
    opt.partition = true_partition;
    opt.drift_mode = DriftMode::piecewise;

    double worst_mean_dev = 0.0;
    std::string worst_at;
    for (double hurst : {0.3, 0.5, 0.7}) {
        std::vector<double> recovered;
        recovered.reserve(reps);
        for (std::size_t rep = 0; rep < reps; ++rep) {
            SimpleBmDsiSpec spec;
            spec.hurst = hurst;
            spec.lambda = lambda;
            spec.num_intervals = intervals;
            spec.mesh = 64;
            spec.drift = planted;
            spec.seed = 400000 + rep;
            recovered.push_back(dsi_pipeline(generate_simple_bm_dsi(spec), opt).estimate.hurst_mean);
        }
        double dev = std::abs(mean_of(recovered) - hurst);
        if (dev > worst_mean_dev) {
            worst_mean_dev = dev;
            worst_at = "H=" + fmt(hurst, "%.1f");
        }
    }

    SimpleBmDsiSpec spec;
    spec.hurst = 0.5;
    spec.lambda = lambda;
    spec.num_intervals = intervals;
    spec.mesh = 64;
    spec.seed = 31415;
    TimeSeries clean = generate_simple_bm_dsi(spec);
    spec.drift = planted;
    TimeSeries drifted = generate_simple_bm_dsi(spec);
    DsiEstimate a = dsi_pipeline(clean, opt).estimate;
    DsiEstimate b = dsi_pipeline(drifted, opt).estimate;
    double worst_shift = 0.0;
    for (std::size_t i = 0; i < a.hurst_per_interval.size(); ++i)
        worst_shift = std::max(worst_shift,
                               std::abs(a.hurst_per_interval[i] - b.hurst_per_interval[i]));

    detail = "worst mean deviation " + fmt(worst_mean_dev) + " at " + worst_at + " (limit " +
             fmt(mean_tol) + "); drift shift of per-interval H " + fmt(worst_shift) +
             " (limit " + fmt(invariance_tol) + ")";
    return worst_mean_dev < mean_tol && worst_shift < invariance_tol;
}

// ---------------------------------------------------------------- 6 ----
// Backward scale ratios on the published breakpoint set.
bool criterion6(std::string& detail) {
    const double tol = 1e-4;
    ScaleEstimate est = estimate_scale(ScalePartition({1854, 2186, 2466, 2671, 2785}),
                                       RatioOrientation::backward);
    const double expected[3] = {1.1857, 1.3659, 1.7982};
    double worst = std::abs(est.mean_ratio - 1.4499);
    for (std::size_t i = 0; i < 3; ++i)
        worst = std::max(worst, std::abs(est.per_pair_ratios[i] - expected[i]));
    detail = "lambda = " + fmt(est.mean_ratio, "%.6f") + ", ratios {" +
             fmt(est.per_pair_ratios[0], "%.6f") + ", " + fmt(est.per_pair_ratios[1], "%.6f") +
             ", " + fmt(est.per_pair_ratios[2], "%.6f") + "}, worst deviation " + fmt(worst) +
             " (limit " + fmt(tol) + ")";
    return worst < tol;
}

// ---------------------------------------------------------------- 7 ----
// Exact algebra on z_j = j^2.  The subsample estimator must return
// exactly 2 at every stride.  The same check is applied to the FA and
// DFA log-log slopes on this construction; their fluctuation curves are
// first verified against closed forms, which show the slope-2
// expectation cannot be met by these definitions (FA grows linearly in
// s for s << N, and DFA's exact F(s)^2 = (s^2-1)(s^2-4)/180 has
// log-log slope slightly above 2), so this part reports the measured
// slopes and fails.
bool criterion7(std::string& detail) {
    const double tol = 1e-8;
    const double curve_tol = 1e-6;  // rounding in the per-window fits grows with s^4
    const std::size_t n = 1024;
    std::vector<double> t, z;
    for (std::size_t j = 1; j <= n; ++j) {
        t.push_back(static_cast<double>(j));
        z.push_back(static_cast<double>(j) * static_cast<double>(j));
    }
    HsssiEstimate est = estimate_hsssi(TimeSeries(t, z), DiffOrder::first, true);
    double worst_h = std::abs(est.hurst - 2.0);
    for (double h : est.per_k_hurst) worst_h = std::max(worst_h, std::abs(h - 2.0));

    std::vector<double> inc = difference(z, DiffOrder::first);
    std::vector<std::size_t> scales = default_scales(inc.size());
    FluctuationCurve cfa = fa(inc, scales);
    FluctuationCurve cdfa = dfa(inc, scales);
    double curve_err = 0.0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        double s = static_cast<double>(scales[i]);
        double big_t = static_cast<double>(inc.size() - scales[i]);
        double fa_exact = s * std::sqrt((big_t * big_t + 2.0) / 3.0);
        double dfa_exact = std::sqrt((s * s - 1.0) * (s * s - 4.0) / 180.0);
        curve_err = std::max(curve_err, std::abs(cfa.fluctuation[i] - fa_exact) / fa_exact);
        curve_err = std::max(curve_err, std::abs(cdfa.fluctuation[i] - dfa_exact) / dfa_exact);
    }

    bool subsample_ok = worst_h < tol;
    bool curves_ok = curve_err < curve_tol;
    bool slopes_ok = std::abs(cfa.hurst - 2.0) < tol && std::abs(cdfa.hurst - 2.0) < tol;
    detail = "subsample estimator off by " + fmt(worst_h) + " (limit " + fmt(tol) +
             "); FA slope " + fmt(cfa.hurst, "%.6f") + ", DFA slope " + fmt(cdfa.hurst, "%.6f") +
             " vs required 2 within " + fmt(tol) + "; curves match their closed forms to " +
             fmt(curve_err);
    return subsample_ok && curves_ok && slopes_ok;
}

// ---------------------------------------------------------------- 8 ----
// Cross-cutting invariants: difference composition, scale/translation
// behavior, least-squares orthogonality, the MSE decomposition, and
// thread-count determinism of the benchmark.
bool criterion8(std::string& detail) {
    std::ostringstream why;
    bool ok = true;
    std::mt19937_64 gen(8);
    std::normal_distribution<double> normal(0.0, 1.0);

    {  // iterated first differences equal one second difference, bitwise
        std::vector<double> v(300);
        for (auto& x : v) x = normal(gen);
        if (difference(difference(v, DiffOrder::first), DiffOrder::first) !=
            difference(v, DiffOrder::second)) {
            ok = false;
            why << "difference composition; ";
        }
    }
    {  // variance: translation-invariant, quadratic under scaling
        std::vector<double> v(400), w(400), u(400);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = normal(gen);
            w[i] = v[i] + 17.25;
            u[i] = -3.0 * v[i];
        }
        double base = sample_variance(v);
        if (std::abs(sample_variance(w) - base) > 1e-12 * base ||
            std::abs(sample_variance(u) - 9.0 * base) > 1e-12 * base) {
            ok = false;
            why << "variance scale/translation; ";
        }
    }
    {  // subsample ratio estimator ignores value scaling
        FbmSpec spec;
        spec.n = 512;
        spec.hurst = 0.6;
        spec.seed = 88;
        TimeSeries x = generate_fbm(spec);
        TimeSeries y = x;
        for (auto& val : y.values) val *= 41.5;
        HsssiEstimate ex = estimate_hsssi(x, DiffOrder::first, false);
        HsssiEstimate ey = estimate_hsssi(y, DiffOrder::first, false);
        for (std::size_t i = 0; i < ex.ratios.size(); ++i)
            if (std::abs(ex.ratios[i] - ey.ratios[i]) > 1e-10 * ex.ratios[i]) {
                ok = false;
                why << "hsssi scaling invariance; ";
                break;
            }
    }
    {  // least squares residuals are orthogonal to 1 and t
        std::vector<double> tt, vv;
        for (int i = 0; i < 150; ++i) {
            tt.push_back(1.0 + 0.25 * i);
            vv.push_back(2.0 - 0.4 * tt.back() + normal(gen));
        }
        LineFit fit = ols_line(tt, vv);
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t i = 0; i < tt.size(); ++i) {
            double r = vv[i] - fit.intercept - fit.slope * tt[i];
            s0 += r;
            s1 += r * (tt[i] - tt[0]);
        }
        if (std::abs(s0) > 1e-9 || std::abs(s1) > 1e-8) {
            ok = false;
            why << "least-squares orthogonality; ";
        }
    }
    {  // mse decomposition and bit-identical results across thread counts
        BenchConfig cfg;
        cfg.n = 256;
        cfg.reps = 16;
        cfg.hurst_grid = {0.3, 0.6};
        cfg.seed = 12;
        MseTable one = run_benchmark(cfg);
        for (const MseCell& c : one.cells)
            if (std::abs(c.mse - (c.bias * c.bias + c.variance)) >
                1e-12 * std::max(1.0, c.mse)) {
                ok = false;
                why << "mse decomposition; ";
                break;
            }
        for (std::size_t threads : {3u, 5u}) {
            cfg.threads = threads;
            MseTable other = run_benchmark(cfg);
            for (std::size_t i = 0; i < one.cells.size(); ++i)
                if (one.cells[i].mse != other.cells[i].mse ||
                    one.cells[i].bias != other.cells[i].bias ||
                    one.cells[i].variance != other.cells[i].variance) {
                    ok = false;
                    why << "thread determinism; ";
                    break;
                }
        }
    }
    detail = ok ? "difference composition, variance behavior, estimator scaling, "
                  "orthogonality, mse decomposition, thread determinism all hold"
                : "violated: " + why.str();
    return ok;
}

struct Criterion {
    int id;
    const char* summary;
    bool (*run)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "fGn autocovariance matches the closed form", criterion1},
    {2, "subsample variance ratios scale as k^2H on fBm", criterion2},
    {3, "second-order subsample estimator accuracy across H", criterion3},
    {4, "benchmark MSE orderings across master seeds", criterion4},
    {5, "scale-interval pipeline recovery under planted drift", criterion5},
    {6, "backward scale ratios on the published breakpoints", criterion6},
    {7, "exact algebra on the quadratic construction", criterion7},
    {8, "cross-cutting invariants", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    bool all_ok = true;
    for (const Criterion& c : kCriteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        std::printf("[%s] criterion %d: %s — %s [%.2f s]\n", ok ? "PASS" : "FAIL", c.id,
                    c.summary, detail.c_str(), secs);
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
