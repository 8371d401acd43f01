#include "re100/profile_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace re100 {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_missing(const std::string& cell) {
    std::string t = trimmed(cell);
    if (t.empty()) return true;
    return t == "nan" || t == "NaN" || t == "NA";
}

// Missing entries marked NaN; interpolated circularly afterwards.
double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
    std::string t = trimmed(cell);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw IngestError("row " + std::to_string(row) + ", column '" + column +
                          "': non-numeric cell '" + t + "'");
    if (value < 0.0)
        throw IngestError("row " + std::to_string(row) + ", column '" + column +
                          "': negative value " + t);
    return value;
}

// Fills NaN runs of length <= 3 by linear interpolation between the circular
// neighbors; longer runs are an error.
void fill_gaps(std::vector<double>& v, const std::string& column, IngestReport* report) {
    const int n = static_cast<int>(v.size());
    int present = 0;
    for (double x : v)
        if (!std::isnan(x)) ++present;
    if (present == 0)
        throw IngestError("column '" + column + "': no usable values");

    for (int t = 0; t < n; ++t) {
        if (!std::isnan(v[static_cast<std::size_t>(t)])) continue;
        // Only start at the head of a run.
        int prev = (t - 1 + n) % n;
        if (std::isnan(v[static_cast<std::size_t>(prev)])) continue;
        int len = 0;
        int end = t;
        while (std::isnan(v[static_cast<std::size_t>(end)])) {
            ++len;
            end = (end + 1) % n;
        }
        if (len > 3)
            throw IngestError("column '" + column + "': " + std::to_string(len) +
                              " consecutive missing hours starting at row " +
                              std::to_string(t + 1) + " (limit 3)");
        double a = v[static_cast<std::size_t>(prev)];
        double b = v[static_cast<std::size_t>(end)];
        for (int k = 1; k <= len; ++k) {
            int idx = (t + k - 1) % n;
            v[static_cast<std::size_t>(idx)] =
                a + (b - a) * static_cast<double>(k) / static_cast<double>(len + 1);
        }
        if (report)
            report->notes.push_back("column '" + column + "': interpolated " +
                                    std::to_string(len) + " missing hour(s) at row " +
                                    std::to_string(t + 1));
    }
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

ProfileSet ingest_occto(const std::string& path, const std::string& region,
                        const std::string& year, IngestReport* report) {
    std::ifstream in(path);
    if (!in)
        throw IngestError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw IngestError("'" + path + "': empty file");
    auto header = split_row(line);
    if (header.size() < 2)
        throw IngestError("'" + path + "': header needs at least timestamp and demand columns");
    if (trimmed(header[0]) != "timestamp" || trimmed(header[1]) != "demand")
        throw IngestError("'" + path + "': header must start with 'timestamp,demand', got '" +
                          line + "'");
    const std::size_t ncols = header.size();

    std::vector<std::string> timestamps;
    std::vector<std::vector<double>> columns(ncols - 1);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trimmed(line).empty()) continue;
        auto cells = split_row(line);
        if (cells.size() != ncols)
            throw IngestError("row " + std::to_string(row) + ": expected " +
                              std::to_string(ncols) + " cells, got " +
                              std::to_string(cells.size()));
        timestamps.push_back(trimmed(cells[0]));
        for (std::size_t c = 1; c < ncols; ++c) {
            double value = is_missing(cells[c])
                               ? std::numeric_limits<double>::quiet_NaN()
                               : parse_cell(cells[c], row, trimmed(header[c]));
            columns[c - 1].push_back(value);
        }
    }
    if (timestamps.size() < 2)
        throw IngestError("'" + path + "': needs at least 2 data rows, got " +
                          std::to_string(timestamps.size()));

    for (std::size_t c = 0; c < columns.size(); ++c)
        fill_gaps(columns[c], trimmed(header[c + 1]), report);

    auto normalize_column = [&](std::size_t c, ProfileKind kind) {
        try {
            return normalize(columns[c], kind, trimmed(header[c + 1]));
        } catch (const Error& e) {
            throw IngestError("column '" + trimmed(header[c + 1]) + "': " + e.what());
        }
    };

    ProfileSet set{normalize_column(0, ProfileKind::demand), {}, region, year,
                   std::move(timestamps)};
    for (std::size_t c = 1; c < columns.size(); ++c)
        set.generations.emplace_back(trimmed(header[c + 1]),
                                     normalize_column(c, ProfileKind::generation));
    return set;
}

void export_occto(const ProfileSet& set, const std::string& path) {
    const int steps = set.steps();
    for (const auto& [name, profile] : set.generations)
        if (profile.steps() != steps)
            throw ValidationError("export: generation '" + name + "' has mismatched length");

    std::ofstream out(path);
    if (!out)
        throw IngestError("cannot write '" + path + "'");
    out << "timestamp,demand";
    for (const auto& [name, profile] : set.generations) out << "," << name;
    out << "\n";
    for (int t = 0; t < steps; ++t) {
        const auto idx = static_cast<std::size_t>(t);
        if (idx < set.timestamps.size())
            out << set.timestamps[idx];
        else
            out << t;
        out << "," << format_value(set.demand.values()[idx]);
        for (const auto& [name, profile] : set.generations)
            out << "," << format_value(profile.values()[idx]);
        out << "\n";
    }
}

}  // namespace re100
