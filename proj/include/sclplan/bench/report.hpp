#pragma once

#include <string>
#include <vector>

#include "sclplan/bench/metrics.hpp"

namespace sclplan::bench {

// Header row plus data rows. The reader handles exactly what our writers
// produce: comma separation, no quoting or escapes.
struct CsvFile {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Cell by column name from the first data row; empty when the column is
    // missing or the cell is blank.
    std::string cell(const std::string& column) const;
};

CsvFile read_csv(const std::string& path);  // throws ConfigError

// Signed candidate-minus-baseline deltas between two metrics.csv files,
// one line per shared metric. Token counts measured by different backends
// are not in the same unit, so a differing backend adds a footnote instead
// of silently comparing them.
std::string delta_report(const CsvFile& baseline, const CsvFile& candidate);

}  // namespace sclplan::bench
