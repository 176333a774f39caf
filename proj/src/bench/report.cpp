#include "sclplan/bench/report.hpp"

#include <cstdio>
#include <fstream>

#include "sclplan/util/strings.hpp"

namespace sclplan::bench {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

std::string CsvFile::cell(const std::string& column) const {
    if (rows.empty()) return {};
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == column && i < rows[0].size()) return rows[0][i];
    return {};
}

CsvFile read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    CsvFile file;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (file.header.empty())
            file.header = split_row(line);
        else
            file.rows.push_back(split_row(line));
    }
    if (file.header.empty() || file.rows.empty())
        throw ConfigError("'" + path + "' holds no table");
    return file;
}

std::string delta_report(const CsvFile& baseline, const CsvFile& candidate) {
    auto describe = [](const CsvFile& f) {
        return f.cell("suite") + " / " + f.cell("mode") + " / " +
               f.cell("backend") + " (seed " + f.cell("seed") + ")";
    };
    std::string out;
    out += "baseline:  " + describe(baseline) + "\n";
    out += "candidate: " + describe(candidate) + "\n\n";

    char line[200];
    std::snprintf(line, sizeof(line), "%-42s %11s %11s %11s\n", "metric",
                  "baseline", "candidate", "delta");
    out += line;

    for (const char* label : kMetricLabels) {
        std::string b = baseline.cell(label);
        std::string c = candidate.cell(label);
        if (b.empty() && c.empty()) continue;
        if (b.empty() || c.empty()) {
            std::snprintf(line, sizeof(line), "%-42s %11s %11s %11s\n", label,
                          b.empty() ? "n/a" : b.c_str(),
                          c.empty() ? "n/a" : c.c_str(), "n/a");
            out += line;
            continue;
        }
        double bv = std::stod(b), cv = std::stod(c);
        std::snprintf(line, sizeof(line), "%-42s %11.3f %11.3f %+11.3f\n",
                      label, bv, cv, cv - bv);
        out += line;
    }

    if (baseline.cell("backend") != candidate.cell("backend")) {
        out += "\nnote: the two runs used different completion backends;"
               " token counts are backend-specific units and their delta is"
               " not meaningful.\n";
    }
    return out;
}

}  // namespace sclplan::bench
