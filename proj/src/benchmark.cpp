#include "dsihurst/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dsihurst/fluctuation.hpp"
#include "dsihurst/hsssi.hpp"
#include "dsihurst/simulate.hpp"

namespace dsihurst {

namespace {

// Summation with a balanced reduction tree; the result does not depend on
// how replications were distributed over threads.
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

double estimate_one(BenchMethod method, const TimeSeries& path,
                    const std::vector<double>& increments,
                    const std::vector<std::size_t>& scales, bool detrend) {
    switch (method) {
        case BenchMethod::fa:
            return fa(increments, scales).hurst;
        case BenchMethod::dfa:
            return dfa(increments, scales).hurst;
        case BenchMethod::dma:
            return dma(increments, scales).hurst;
        case BenchMethod::diff1:
            return estimate_hsssi(path, DiffOrder::first, detrend).hurst;
        case BenchMethod::diff2:
            return estimate_hsssi(path, DiffOrder::second, detrend).hurst;
    }
    throw std::logic_error("benchmark: unknown method");
}

void validate_config(const BenchConfig& cfg) {
    if (cfg.n < 60) throw std::invalid_argument("benchmark: need n >= 60");
    if (cfg.reps < 10) throw std::invalid_argument("benchmark: need at least 10 replications");
    if (cfg.hurst_grid.empty()) throw std::invalid_argument("benchmark: empty Hurst grid");
    for (double h : cfg.hurst_grid) {
        if (!(h > 0.0 && h < 1.0))
            throw std::invalid_argument("benchmark: Hurst values must lie in (0, 1)");
    }
    if (cfg.methods.empty()) throw std::invalid_argument("benchmark: empty method set");
    if (cfg.threads < 1) throw std::invalid_argument("benchmark: need at least one thread");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string method_name(BenchMethod m) {
    switch (m) {
        case BenchMethod::fa: return "FA";
        case BenchMethod::dfa: return "DFA";
        case BenchMethod::dma: return "DMA";
        case BenchMethod::diff1: return "diff1";
        case BenchMethod::diff2: return "diff2";
    }
    throw std::logic_error("benchmark: unknown method");
}

BenchMethod method_from_name(const std::string& name) {
    if (name == "FA" || name == "fa") return BenchMethod::fa;
    if (name == "DFA" || name == "dfa") return BenchMethod::dfa;
    if (name == "DMA" || name == "dma") return BenchMethod::dma;
    if (name == "diff1") return BenchMethod::diff1;
    if (name == "diff2") return BenchMethod::diff2;
    throw std::invalid_argument("benchmark: unknown method name '" + name + "'");
}

MseTable run_benchmark(const BenchConfig& cfg) {
    validate_config(cfg);

    const std::size_t n_methods = cfg.methods.size();
    const std::vector<std::size_t> scales = default_scales(cfg.n - 1);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // estimates[h][method][rep]; NaN marks a degenerate replication.
    std::vector<std::vector<std::vector<double>>> estimates(
        cfg.hurst_grid.size(),
        std::vector<std::vector<double>>(n_methods, std::vector<double>(cfg.reps, nan)));

    for (std::size_t hi = 0; hi < cfg.hurst_grid.size(); ++hi) {
        const FgnModel model(cfg.n, cfg.hurst_grid[hi]);

        auto run_reps = [&, hi](std::size_t lo, std::size_t hi_rep) {
            for (std::size_t rep = lo; rep < hi_rep; ++rep) {
                std::uint64_t rep_seed =
                    replication_seed(cfg.seed, hi * cfg.reps + rep);
                std::vector<double> values = model.sample(rep_seed);
                for (std::size_t i = 1; i < values.size(); ++i) values[i] += values[i - 1];
                TimeSeries path = TimeSeries::from_values(std::move(values));
                if (cfg.drift) {
                    for (std::size_t i = 0; i < path.size(); ++i)
                        path.values[i] += cfg.drift->intercept + cfg.drift->slope * path.times[i];
                }
                std::vector<double> increments = difference(path.values, DiffOrder::first);
                for (std::size_t mi = 0; mi < n_methods; ++mi) {
                    try {
                        estimates[hi][mi][rep] = estimate_one(cfg.methods[mi], path,
                                                              increments, scales, cfg.detrend);
                    } catch (const std::exception&) {
                        // left as NaN: degenerate replication
                    }
                }
            }
        };

        std::size_t workers = std::min(cfg.threads, cfg.reps);
        if (workers <= 1) {
            run_reps(0, cfg.reps);
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (cfg.reps + workers - 1) / workers;
            for (std::size_t w = 0; w < workers; ++w) {
                std::size_t lo = w * chunk;
                std::size_t hi_rep = std::min(cfg.reps, lo + chunk);
                if (lo >= hi_rep) break;
                pool.emplace_back(run_reps, lo, hi_rep);
            }
            for (auto& t : pool) t.join();
        }
    }

    MseTable table;
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        for (std::size_t hi = 0; hi < cfg.hurst_grid.size(); ++hi) {
            const double h = cfg.hurst_grid[hi];
            std::vector<double> valid;
            valid.reserve(cfg.reps);
            for (double e : estimates[hi][mi])
                if (!std::isnan(e)) valid.push_back(e);
            std::size_t degenerate = cfg.reps - valid.size();
            if (100 * degenerate > cfg.reps)
                throw std::runtime_error("benchmark: method " + method_name(cfg.methods[mi]) +
                                         " at H=" + format_double(h) + " degenerate on " +
                                         std::to_string(degenerate) + " of " +
                                         std::to_string(cfg.reps) + " replications (> 1%)");
            double count = static_cast<double>(valid.size());
            double mean = pairwise_sum(valid) / count;
            std::vector<double> sq(valid.size()), dev(valid.size());
            for (std::size_t i = 0; i < valid.size(); ++i) {
                double around_truth = valid[i] - h;
                double around_mean = valid[i] - mean;
                sq[i] = around_truth * around_truth;
                dev[i] = around_mean * around_mean;
            }
            MseCell cell;
            cell.method = cfg.methods[mi];
            cell.hurst = h;
            cell.mse = pairwise_sum(sq) / count;
            cell.bias = mean - h;
            cell.variance = pairwise_sum(dev) / count;
            cell.reps_used = valid.size();
            cell.degenerate = degenerate;
            table.cells.push_back(cell);
        }
    }
    return table;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters after number");
    return v;
}

std::uint64_t parse_unsigned(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters after number");
    return v;
}

}  // namespace

BenchConfig parse_bench_config_text(const std::string& text) {
    BenchConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("benchmark config: line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "n") {
                cfg.n = static_cast<std::size_t>(parse_unsigned(value));
            } else if (key == "reps") {
                cfg.reps = static_cast<std::size_t>(parse_unsigned(value));
            } else if (key == "hurst") {
                cfg.hurst_grid.clear();
                for (const auto& item : split_list(value))
                    cfg.hurst_grid.push_back(parse_double(item));
            } else if (key == "methods") {
                cfg.methods.clear();
                for (const auto& item : split_list(value))
                    cfg.methods.push_back(method_from_name(item));
            } else if (key == "seed") {
                cfg.seed = parse_unsigned(value);
            } else if (key == "detrend") {
                if (value != "on" && value != "off")
                    throw std::invalid_argument("detrend must be 'on' or 'off'");
                cfg.detrend = (value == "on");
            } else if (key == "threads") {
                cfg.threads = static_cast<std::size_t>(parse_unsigned(value));
            } else if (key == "drift") {
                auto parts = split_list(value);
                if (parts.size() != 2)
                    throw std::invalid_argument("drift takes 'intercept,slope'");
                cfg.drift = LineFit{parse_double(parts[0]), parse_double(parts[1])};
            } else {
                throw std::invalid_argument("unknown key");
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("benchmark config: line " + std::to_string(lineno) +
                                        ", key '" + key + "': " + e.what());
        }
    }
    validate_config(cfg);
    return cfg;
}

BenchConfig parse_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("benchmark config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bench_config_text(buf.str());
}

void write_mse_csv(const MseTable& table, std::ostream& out) {
    out << "method,H,mse,bias,variance,reps\n";
    for (const auto& c : table.cells) {
        out << method_name(c.method) << ',' << format_double(c.hurst) << ','
            << format_double(c.mse) << ',' << format_double(c.bias) << ','
            << format_double(c.variance) << ',' << c.reps_used << '\n';
    }
}

void write_mse_plot(const MseTable& table, std::ostream& out) {
    bool first = true;
    BenchMethod current{};
    for (const auto& c : table.cells) {
        if (first || c.method != current) {
            if (!first) out << "\n\n";
            out << "# " << method_name(c.method) << "\n";
            current = c.method;
            first = false;
        }
        out << format_double(c.hurst) << ' ' << format_double(c.mse) << '\n';
    }
}

}  // namespace dsihurst
