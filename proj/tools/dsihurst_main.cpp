// Command-line front end: simulation, breakpoint detection, detrending,
// Hurst estimation, and the Monte Carlo benchmark.  Data tables go to
// stdout (or --out files); human-readable summaries go to stderr.

#include <CLI11.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dsihurst/benchmark.hpp"
#include "dsihurst/csv.hpp"
#include "dsihurst/detrend.hpp"
#include "dsihurst/dsi_estimator.hpp"
#include "dsihurst/fluctuation.hpp"
#include "dsihurst/hsssi.hpp"
#include "dsihurst/scalegrid.hpp"
#include "dsihurst/simulate.hpp"

namespace {

using namespace dsihurst;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Writes to --out when given, otherwise to stdout.
class DataSink {
public:
    explicit DataSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish(const std::string& path) {
        if (file_.is_open()) {
            file_.close();
            if (!file_) throw std::runtime_error("write to '" + path + "' failed");
        }
    }

private:
    std::ofstream file_;
};

struct CsvFlags {
    std::string time_col;
    std::string value_col;
    bool header = false;
};

void add_csv_flags(CLI::App* cmd, CsvFlags& flags) {
    cmd->add_option("--time-col", flags.time_col,
                    "Time column (1-based index or header name)");
    cmd->add_option("--value-col", flags.value_col,
                    "Value column (1-based index or header name)");
    cmd->add_flag("--header", flags.header, "First row is a header");
}

ColumnRef column_ref(const std::string& spec) {
    bool numeric = !spec.empty();
    for (char c : spec)
        if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
    if (numeric) return ColumnRef{static_cast<std::size_t>(std::stoull(spec))};
    return ColumnRef{spec};
}

TimeSeries load_series(const std::string& path, const CsvFlags& flags) {
    CsvOptions options;
    options.header = flags.header;
    if (!flags.time_col.empty()) options.time_col = column_ref(flags.time_col);
    if (!flags.value_col.empty()) options.value_col = column_ref(flags.value_col);
    CsvParseResult parsed = parse_series_csv_file(path, options);
    if (parsed.skipped_rows > 0)
        std::cerr << "note: skipped " << parsed.skipped_rows
                  << " rows with missing or unparseable fields\n";
    return std::move(parsed.series);
}

PiecewiseLinearDrift load_drift_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open drift file '" + path + "'");
    std::vector<DriftSegment> segments;
    std::string line;
    while (std::getline(in, line)) {
        DriftSegment s{};
        char comma;
        std::istringstream row(line);
        if (row >> s.start >> comma >> s.end >> comma >> s.intercept >> comma >> s.slope)
            segments.push_back(s);
        // other rows (header, blanks) are ignored
    }
    if (segments.empty())
        throw std::runtime_error("drift file '" + path + "' has no start,end,alpha,beta rows");
    return PiecewiseLinearDrift(std::move(segments));
}

void write_drift_csv(const PiecewiseLinearDrift& drift, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "start,end,alpha,beta\n";
    for (const auto& s : drift.segments())
        out << fmt(s.start) << ',' << fmt(s.end) << ',' << fmt(s.intercept) << ','
            << fmt(s.slope) << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::optional<ScalePartition> partition_from_flags(const std::vector<double>& breakpoints) {
    if (breakpoints.empty()) return std::nullopt;
    return ScalePartition(breakpoints);
}

DiffOrder order_from_flag(int order) {
    if (order == 1) return DiffOrder::first;
    if (order == 2) return DiffOrder::second;
    throw CLI::ValidationError("--order", "difference order must be 1 or 2");
}

// ---------------------------------------------------------------- simulate

struct SimulateFbmArgs {
    std::size_t n = 1024;
    double hurst = 0.5;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

void run_simulate_fbm(const SimulateFbmArgs& a) {
    TimeSeries x = generate_fbm(FbmSpec{a.n, a.hurst, a.sigma, a.seed});
    DataSink sink(a.out);
    write_series_csv(x, sink.stream());
    sink.finish(a.out);
}

struct SimulateDsiArgs {
    double hurst = 0.5;
    double lambda = 2.0;
    std::size_t intervals = 4;
    std::size_t mesh = 16;
    std::uint64_t seed = 0;
    std::string drift_file;
    std::string out;
};

void run_simulate_dsi(const SimulateDsiArgs& a) {
    SimpleBmDsiSpec spec;
    spec.hurst = a.hurst;
    spec.lambda = a.lambda;
    spec.num_intervals = a.intervals;
    spec.mesh = a.mesh;
    spec.seed = a.seed;
    if (!a.drift_file.empty()) spec.drift = load_drift_file(a.drift_file);
    TimeSeries x = generate_simple_bm_dsi(spec);
    DataSink sink(a.out);
    write_series_csv(x, sink.stream());
    sink.finish(a.out);
}

// ------------------------------------------------------------------ detect

struct DetectArgs {
    std::string file;
    CsvFlags csv;
    std::optional<std::size_t> intervals;
    std::size_t min_len = 4;
    double penalty = 1.0;
    std::string out;
};

void run_detect(const DetectArgs& a) {
    TimeSeries x = load_series(a.file, a.csv);
    ScalePartition p = detect_scale_intervals(x, a.intervals, a.min_len, a.penalty);
    DataSink sink(a.out);
    sink.stream() << "index,a_i\n";
    for (std::size_t i = 0; i < p.breakpoints.size(); ++i)
        sink.stream() << i << ',' << fmt(p.breakpoints[i]) << '\n';
    sink.finish(a.out);
    if (p.num_intervals() >= 2) {
        ScaleEstimate fwd = estimate_scale(p, RatioOrientation::forward);
        ScaleEstimate bwd = estimate_scale(p, RatioOrientation::backward);
        std::cerr << "intervals: " << p.num_intervals()
                  << "  lambda(forward): " << fmt4(fwd.mean_ratio)
                  << "  lambda(backward): " << fmt4(bwd.mean_ratio) << '\n';
    } else {
        std::cerr << "intervals: 1 (no scale ratios)\n";
    }
}

// ----------------------------------------------------------------- detrend

struct DetrendArgs {
    std::string file;
    CsvFlags csv;
    std::string mode = "global";
    std::vector<double> breakpoints;
    std::optional<std::size_t> intervals;
    std::size_t min_len = 4;
    std::string out;
    std::string drift_out;
};

void run_detrend(const DetrendArgs& a) {
    TimeSeries x = load_series(a.file, a.csv);
    PiecewiseLinearDrift drift;
    if (a.mode == "global") {
        drift = fit_global_drift(x);
    } else if (a.mode == "piecewise") {
        std::optional<ScalePartition> p = partition_from_flags(a.breakpoints);
        if (!p) p = detect_scale_intervals(x, a.intervals, a.min_len);
        x = restrict_to_span(x, p->start(), p->end());
        drift = fit_piecewise_drift(x, *p);
    } else {
        throw CLI::ValidationError("--mode", "must be global or piecewise");
    }
    TimeSeries residual = eliminate_drift(x, drift);
    DataSink sink(a.out);
    write_series_csv(residual, sink.stream());
    sink.finish(a.out);
    if (!a.drift_out.empty()) write_drift_csv(drift, a.drift_out);
    for (const auto& s : drift.segments())
        std::cerr << "drift [" << fmt4(s.start) << ", " << fmt4(s.end)
                  << "): alpha=" << fmt4(s.intercept) << " beta=" << fmt4(s.slope) << '\n';
}

// ------------------------------------------------------------ estimate dsi

struct EstimateDsiArgs {
    std::string file;
    CsvFlags csv;
    std::size_t q = 64;
    int order = 1;
    std::string drift_mode = "piecewise";
    std::string boundary = "within";
    std::string orientation = "auto";
    std::vector<double> breakpoints;
    std::optional<std::size_t> intervals;
    std::size_t min_len = 4;
    std::optional<double> lambda;
    bool per_pair_lambda = false;
    std::string out;
    std::string drift_out;
};

void run_estimate_dsi(const EstimateDsiArgs& a) {
    TimeSeries x = load_series(a.file, a.csv);
    DsiPipelineOptions options;
    options.points_per_interval = a.q;
    options.diff_order = order_from_flag(a.order);
    options.num_intervals = a.intervals;
    options.min_interval_len = a.min_len;
    options.partition = partition_from_flags(a.breakpoints);
    options.lambda_override = a.lambda;
    options.per_pair_lambda = a.per_pair_lambda;

    if (a.drift_mode == "none") options.drift_mode = DriftMode::none;
    else if (a.drift_mode == "global") options.drift_mode = DriftMode::global;
    else if (a.drift_mode == "piecewise") options.drift_mode = DriftMode::piecewise;
    else throw CLI::ValidationError("--drift-mode", "must be none, global, or piecewise");

    if (a.boundary == "within") options.boundary = IncrementBoundary::within;
    else if (a.boundary == "cross") options.boundary = IncrementBoundary::cross;
    else throw CLI::ValidationError("--boundary", "must be within or cross");

    if (a.orientation == "forward") options.orientation = OrientationChoice::forward;
    else if (a.orientation == "backward") options.orientation = OrientationChoice::backward;
    else if (a.orientation == "auto") options.orientation = OrientationChoice::automatic;
    else throw CLI::ValidationError("--orientation", "must be forward, backward, or auto");

    DsiPipelineResult result = dsi_pipeline(x, options);
    const DsiEstimate& est = result.estimate;

    DataSink sink(a.out);
    sink.stream() << "k,S2,mu_hat,H\n";
    for (std::size_t k = 0; k < est.interval_variances.size(); ++k) {
        sink.stream() << (k + 1) << ',' << fmt(est.interval_variances[k]) << ',';
        if (k == 0)
            sink.stream() << ",";
        else
            sink.stream() << fmt(est.variance_ratios[k - 1]) << ','
                          << fmt(est.hurst_per_interval[k - 1]);
        sink.stream() << '\n';
    }
    sink.finish(a.out);
    if (!a.drift_out.empty() && !result.drift.empty()) write_drift_csv(result.drift, a.drift_out);

    std::cerr << "breakpoints:";
    for (double b : result.partition.breakpoints) std::cerr << ' ' << fmt4(b);
    std::cerr << "\nlambda(forward): " << fmt4(result.scale_forward.mean_ratio)
              << "  lambda(backward): " << fmt4(result.scale_backward.mean_ratio)
              << "  lambda used: " << fmt4(est.lambda_used) << '\n'
              << "ratio mean: " << fmt4(est.ratio_mean)
              << "  hurst mean: " << fmt4(est.hurst_mean) << '\n';
}

// ---------------------------------------------------------- estimate hsssi

struct EstimateHsssiArgs {
    std::string file;
    CsvFlags csv;
    int order = 2;
    std::string detrend = "on";
    bool full_unit_range = false;
    std::string out;
};

void run_estimate_hsssi(const EstimateHsssiArgs& a) {
    if (a.detrend != "on" && a.detrend != "off")
        throw CLI::ValidationError("--detrend", "must be on or off");
    TimeSeries x = load_series(a.file, a.csv);
    HsssiEstimate est = estimate_hsssi(x, order_from_flag(a.order), a.detrend == "on",
                                       a.full_unit_range);
    DataSink sink(a.out);
    sink.stream() << "k,ratio,H_k\n";
    for (std::size_t i = 0; i < est.strides.size(); ++i)
        sink.stream() << est.strides[i] << ',' << fmt(est.ratios[i]) << ','
                      << fmt(est.per_k_hurst[i]) << '\n';
    sink.finish(a.out);
    std::cerr << "max stride: " << est.max_stride << "  order: " << a.order
              << "  hurst: " << fmt4(est.hurst) << '\n';
}

// ------------------------------------------------- estimate fa / dfa / dma

struct EstimateFlucArgs {
    std::string file;
    CsvFlags csv;
    std::vector<std::size_t> scales;
    std::string out;
};

void run_estimate_fluctuation(const EstimateFlucArgs& a, FluctuationMethod method) {
    TimeSeries x = load_series(a.file, a.csv);
    std::vector<double> increments = difference(x.values, DiffOrder::first);
    std::vector<std::size_t> scales =
        a.scales.empty() ? default_scales(increments.size()) : a.scales;
    FluctuationCurve curve;
    switch (method) {
        case FluctuationMethod::fa: curve = fa(increments, scales); break;
        case FluctuationMethod::dfa: curve = dfa(increments, scales); break;
        case FluctuationMethod::dma: curve = dma(increments, scales); break;
    }
    DataSink sink(a.out);
    sink.stream() << "scale,F\n";
    for (std::size_t i = 0; i < curve.scales.size(); ++i)
        sink.stream() << curve.scales[i] << ',' << fmt(curve.fluctuation[i]) << '\n';
    sink.finish(a.out);
    std::cerr << "hurst (log-log slope): " << fmt4(curve.hurst) << '\n';
}

// --------------------------------------------------------------- benchmark

struct BenchmarkArgs {
    std::string config;
    std::string out;
    std::string plot_out;
};

void run_benchmark_cmd(const BenchmarkArgs& a) {
    BenchConfig cfg = a.config.empty() ? BenchConfig{} : parse_bench_config(a.config);
    MseTable table = run_benchmark(cfg);
    DataSink sink(a.out);
    write_mse_csv(table, sink.stream());
    sink.finish(a.out);
    if (!a.plot_out.empty()) {
        std::ofstream plot(a.plot_out);
        if (!plot) throw std::runtime_error("cannot open '" + a.plot_out + "' for writing");
        write_mse_plot(table, plot);
        if (!plot) throw std::runtime_error("write to '" + a.plot_out + "' failed");
    }
    std::cerr << "benchmark cells: " << table.cells.size() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scale-invariant and self-similar time series analysis"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Generate synthetic series");
    simulate->require_subcommand(1);

    SimulateFbmArgs fbm_args;
    auto* sim_fbm = simulate->add_subcommand("fbm", "Fractional Brownian motion (exact)");
    sim_fbm->add_option("--n", fbm_args.n, "Samples")->check(CLI::PositiveNumber);
    sim_fbm->add_option("--hurst", fbm_args.hurst, "Hurst index in (0,1)");
    sim_fbm->add_option("--sigma", fbm_args.sigma, "Increment scale");
    sim_fbm->add_option("--seed", fbm_args.seed, "RNG seed");
    sim_fbm->add_option("--out", fbm_args.out, "Output CSV (default stdout)");
    sim_fbm->callback([&] { run_simulate_fbm(fbm_args); });

    SimulateDsiArgs dsi_args;
    auto* sim_dsi = simulate->add_subcommand(
        "dsi", "Discrete scale invariant path from simple Brownian motion");
    sim_dsi->add_option("--hurst", dsi_args.hurst, "Hurst index (> 0)");
    sim_dsi->add_option("--lambda", dsi_args.lambda, "Scale parameter (> 1)");
    sim_dsi->add_option("--intervals", dsi_args.intervals, "Scale interval count");
    sim_dsi->add_option("--mesh", dsi_args.mesh, "Samples per unit time");
    sim_dsi->add_option("--seed", dsi_args.seed, "RNG seed");
    sim_dsi->add_option("--drift-file", dsi_args.drift_file,
                        "CSV of start,end,alpha,beta drift segments to add");
    sim_dsi->add_option("--out", dsi_args.out, "Output CSV (default stdout)");
    sim_dsi->callback([&] { run_simulate_dsi(dsi_args); });

    // detect
    DetectArgs detect_args;
    auto* detect = app.add_subcommand("detect", "Detect scale-interval breakpoints");
    detect->add_option("file", detect_args.file, "Input CSV")->required();
    add_csv_flags(detect, detect_args.csv);
    detect->add_option("--intervals", detect_args.intervals,
                       "Interval count (default: penalized auto selection)");
    detect->add_option("--min-len", detect_args.min_len, "Minimum samples per interval");
    detect->add_option("--penalty", detect_args.penalty, "Auto-selection penalty factor");
    detect->add_option("--out", detect_args.out, "Breakpoints CSV (default stdout)");
    detect->callback([&] { run_detect(detect_args); });

    // detrend
    DetrendArgs detrend_args;
    auto* detrend = app.add_subcommand("detrend", "Fit and remove (piecewise) linear drift");
    detrend->add_option("file", detrend_args.file, "Input CSV")->required();
    add_csv_flags(detrend, detrend_args.csv);
    detrend->add_option("--mode", detrend_args.mode, "global or piecewise");
    detrend->add_option("--breakpoints", detrend_args.breakpoints,
                        "Comma-separated breakpoint times (piecewise mode)")
        ->delimiter(',');
    detrend->add_option("--intervals", detrend_args.intervals,
                        "Detect this many intervals (piecewise mode)");
    detrend->add_option("--min-len", detrend_args.min_len, "Minimum samples per interval");
    detrend->add_option("--out", detrend_args.out, "Residual CSV (default stdout)");
    detrend->add_option("--drift-out", detrend_args.drift_out, "Drift segments CSV");
    detrend->callback([&] { run_detrend(detrend_args); });

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Hurst estimation");
    estimate->require_subcommand(1);

    EstimateDsiArgs est_dsi_args;
    auto* est_dsi = estimate->add_subcommand(
        "dsi", "Scale-interval variance-ratio estimator for DSI series");
    est_dsi->add_option("file", est_dsi_args.file, "Input CSV")->required();
    add_csv_flags(est_dsi, est_dsi_args.csv);
    est_dsi->add_option("--q", est_dsi_args.q, "Sample points per interval");
    est_dsi->add_option("--order", est_dsi_args.order, "Difference order (1 or 2)");
    est_dsi->add_option("--drift-mode", est_dsi_args.drift_mode, "none, global, or piecewise");
    est_dsi->add_option("--boundary", est_dsi_args.boundary,
                        "Increment boundary handling: within or cross");
    est_dsi->add_option("--orientation", est_dsi_args.orientation,
                        "Scale ratio orientation: forward, backward, or auto");
    est_dsi->add_option("--breakpoints", est_dsi_args.breakpoints,
                        "Comma-separated breakpoint times (bypasses detection)")
        ->delimiter(',');
    est_dsi->add_option("--intervals", est_dsi_args.intervals,
                        "Detect this many intervals (default: auto)");
    est_dsi->add_option("--min-len", est_dsi_args.min_len, "Minimum samples per interval");
    est_dsi->add_option("--lambda", est_dsi_args.lambda, "Override the estimated scale");
    est_dsi->add_flag("--per-pair-lambda", est_dsi_args.per_pair_lambda,
                      "Use each interval pair's own length ratio");
    est_dsi->add_option("--out", est_dsi_args.out, "Estimate CSV (default stdout)");
    est_dsi->add_option("--drift-out", est_dsi_args.drift_out, "Fitted drift CSV");
    est_dsi->callback([&] { run_estimate_dsi(est_dsi_args); });

    EstimateHsssiArgs est_hsssi_args;
    auto* est_hsssi = estimate->add_subcommand(
        "hsssi", "Subsample variance-ratio estimator for self-similar series");
    est_hsssi->add_option("file", est_hsssi_args.file, "Input CSV")->required();
    add_csv_flags(est_hsssi, est_hsssi_args.csv);
    est_hsssi->add_option("--order", est_hsssi_args.order, "Difference order (1 or 2)");
    est_hsssi->add_option("--detrend", est_hsssi_args.detrend, "on or off");
    est_hsssi->add_flag("--full-unit-range", est_hsssi_args.full_unit_range,
                        "Unit-stride variance over all available differences");
    est_hsssi->add_option("--out", est_hsssi_args.out, "Estimate CSV (default stdout)");
    est_hsssi->callback([&] { run_estimate_hsssi(est_hsssi_args); });

    EstimateFlucArgs est_fluc_args;
    for (auto [name, method, help] :
         {std::tuple{"fa", FluctuationMethod::fa, "Fluctuation analysis"},
          std::tuple{"dfa", FluctuationMethod::dfa, "Detrended fluctuation analysis"},
          std::tuple{"dma", FluctuationMethod::dma, "Detrending moving average"}}) {
        auto* cmd = estimate->add_subcommand(name, help);
        cmd->add_option("file", est_fluc_args.file, "Input CSV")->required();
        add_csv_flags(cmd, est_fluc_args.csv);
        cmd->add_option("--scales", est_fluc_args.scales,
                        "Comma-separated scales (default: 12 geometric, 8..n/4)")
            ->delimiter(',');
        cmd->add_option("--out", est_fluc_args.out, "Curve CSV (default stdout)");
        FluctuationMethod m = method;
        cmd->callback([&, m] { run_estimate_fluctuation(est_fluc_args, m); });
    }

    // benchmark
    BenchmarkArgs bench_args;
    auto* bench = app.add_subcommand("benchmark", "Monte Carlo MSE comparison on fBm");
    bench->add_option("--config", bench_args.config, "Flat key=value config file");
    bench->add_option("--out", bench_args.out, "MSE table CSV (default stdout)");
    bench->add_option("--plot-out", bench_args.plot_out, "Gnuplot long-format file");
    bench->callback([&] { run_benchmark_cmd(bench_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
