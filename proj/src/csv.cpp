#include "dsihurst/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dsihurst {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_field(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

// 0-based column position, or npos-style failure via exception.
std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& header,
                           bool has_header, const char* what) {
    if (std::holds_alternative<std::size_t>(ref)) {
        std::size_t idx = std::get<std::size_t>(ref);
        if (idx == 0) throw std::invalid_argument(std::string("csv: ") + what +
                                                  " column index is 1-based");
        return idx - 1;
    }
    const std::string& name = std::get<std::string>(ref);
    if (!has_header)
        throw std::invalid_argument(std::string("csv: ") + what + " column '" + name +
                                    "' requested by name but the file has no header");
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::invalid_argument(std::string("csv: ") + what + " column '" + name +
                                "' not found in header");
}

}  // namespace

CsvParseResult parse_series_csv(std::istream& in, const CsvOptions& options) {
    std::vector<std::string> header;
    std::string line;
    if (options.header) {
        if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
        header = split_row(line);
    }

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) rows.push_back(split_row(line));

    // Default column layout adapts to the file shape: a lone column is
    // values-only, otherwise the first two columns are time and value.
    std::size_t width = header.size();
    for (const auto& r : rows) width = std::max(width, r.size());

    std::optional<std::size_t> time_idx;
    if (options.time_col)
        time_idx = resolve_column(*options.time_col, header, options.header, "time");
    else if (width >= 2 && !options.value_col)
        time_idx = 0;

    std::size_t value_idx;
    if (options.value_col) {
        value_idx = resolve_column(*options.value_col, header, options.header, "value");
    } else {
        value_idx = (width >= 2 && time_idx) ? 1 : 0;
        if (time_idx && value_idx == *time_idx) value_idx = 0;
    }

    std::vector<double> times, values;
    std::size_t skipped = 0;
    for (const auto& fields : rows) {
        double t = 0.0, v = 0.0;
        bool ok = value_idx < fields.size() && parse_field(fields[value_idx], v);
        if (ok && time_idx)
            ok = *time_idx < fields.size() && parse_field(fields[*time_idx], t);
        if (!ok) {
            ++skipped;
            continue;
        }
        if (time_idx) times.push_back(t);
        values.push_back(v);
    }

    if (values.size() < 2) throw std::runtime_error("csv: fewer than two valid rows");
    try {
        TimeSeries series = time_idx ? TimeSeries(std::move(times), std::move(values))
                                     : TimeSeries::from_values(std::move(values));
        return CsvParseResult{std::move(series), skipped};
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("csv: ") + e.what());
    }
}

CsvParseResult parse_series_csv_file(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
    return parse_series_csv(in, options);
}

void write_series_csv(const TimeSeries& x, std::ostream& out) {
    char buf[80];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x.times[i], x.values[i]);
        out << buf;
    }
}

void write_series_csv_file(const TimeSeries& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    write_series_csv(x, out);
    if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

}  // namespace dsihurst
