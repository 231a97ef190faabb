#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsihurst/series.hpp"

namespace dsihurst {

/// Estimators compared by the Monte Carlo benchmark: the three
/// fluctuation baselines plus the subsample variance-ratio estimator with
/// first (diff1) or second (diff2) order differences.
enum class BenchMethod { fa, dfa, dma, diff1, diff2 };

std::string method_name(BenchMethod m);
BenchMethod method_from_name(const std::string& name);

struct BenchConfig {
    std::size_t n = 2048;         // samples per path
    std::size_t reps = 100;       // replications per (method, H) cell
    std::vector<double> hurst_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<BenchMethod> methods = {BenchMethod::fa, BenchMethod::dfa, BenchMethod::dma,
                                        BenchMethod::diff1, BenchMethod::diff2};
    std::uint64_t seed = 1;
    std::optional<LineFit> drift;  // planted linear trend added to each path
    bool detrend = true;           // line removal inside diff1/diff2
    std::size_t threads = 1;
};

/// One benchmark cell.  reps_used excludes degenerate replications, which
/// are counted separately rather than coerced to a value.
struct MseCell {
    BenchMethod method;
    double hurst;
    double mse;
    double bias;
    double variance;
    std::size_t reps_used;
    std::size_t degenerate;
};

struct MseTable {
    std::vector<MseCell> cells;
};

/// Monte Carlo mean squared error of each method over exact fBm paths.
/// All methods of a replication see the same path (paired comparison) and
/// per-replication seeds derive from the master seed, so the table is
/// bit-identical across runs and thread counts.  Throws if any cell has
/// degenerate estimates on more than 1% of its replications.
MseTable run_benchmark(const BenchConfig& cfg);

/// Flat key=value config ('#' comments, all keys optional):
///   n = 2048            reps = 100          seed = 7
///   hurst = 0.1,0.5,0.9 methods = FA,diff2  threads = 4
///   detrend = on        drift = 0.0,0.05    (intercept,slope)
BenchConfig parse_bench_config(const std::string& path);
BenchConfig parse_bench_config_text(const std::string& text);

/// CSV rows method,H,mse,bias,variance,reps (reps = usable replications).
void write_mse_csv(const MseTable& table, std::ostream& out);

/// Gnuplot-ready long format: per-method blocks of "H mse" pairs
/// separated by double blank lines for use with the index keyword.
void write_mse_plot(const MseTable& table, std::ostream& out);

}  // namespace dsihurst
