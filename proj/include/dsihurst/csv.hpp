#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "dsihurst/series.hpp"

namespace dsihurst {

/// Column selector: 1-based position, or header name (needs header=true).
using ColumnRef = std::variant<std::size_t, std::string>;

struct CsvOptions {
    std::optional<ColumnRef> time_col;
    std::optional<ColumnRef> value_col;
    bool header = false;
};

struct CsvParseResult {
    TimeSeries series;
    std::size_t skipped_rows;  // rows with missing or unparseable fields
};

/// Comma-separated series reader.  With no explicit column selection,
/// single-column files are read as values with times 1..n, and files with
/// two or more columns as (time, value) in the first two columns.  Rows
/// whose required fields are blank or unparseable are skipped and
/// counted.  Fewer than two valid rows, or explicit times that fail to
/// increase, are errors.
CsvParseResult parse_series_csv(std::istream& in, const CsvOptions& options = {});
CsvParseResult parse_series_csv_file(const std::string& path, const CsvOptions& options = {});

/// Two-column time,value output with round-trip decimal precision.
void write_series_csv(const TimeSeries& x, std::ostream& out);
void write_series_csv_file(const TimeSeries& x, const std::string& path);

}  // namespace dsihurst
