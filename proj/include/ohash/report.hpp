#pragma once

#include "bench_lab.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ohash::report {

class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// One parsed benchmark CSV row. Timing stays textual so reports reproduce
/// the CSV's digits exactly.
struct CsvRow {
    std::string algo;
    std::string text;
    unsigned sigma = 0;
    std::size_t m = 0;
    std::optional<double> mean_ms;
    std::string mean_text;
};

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep))
        out.push_back(field);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t line, const char* column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw CsvError(line, std::string("bad ") + column + " value '" + s + "'");
    return value;
}

inline std::optional<double> parse_ms(const std::string& s, std::size_t line, const char* column) {
    if (s == "NA")
        return std::nullopt;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && v >= 0)
            return v;
    } catch (const std::exception&) {
    }
    throw CsvError(line, std::string("bad ") + column + " value '" + s + "'");
}

} // namespace detail

/// Parses benchmark CSV. Throws CsvError naming the offending line.
inline std::vector<CsvRow> parse_bench_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!saw_header) {
            if (line != bench::kCsvHeader)
                throw CsvError(lineno, "expected header '" + std::string(bench::kCsvHeader) + "'");
            saw_header = true;
            continue;
        }
        if (line.empty())
            continue;
        const auto f = detail::split(line, ',');
        if (f.size() != 11)
            throw CsvError(lineno, "expected 11 fields, found " + std::to_string(f.size()));
        CsvRow row;
        row.algo = f[0];
        row.text = f[1];
        if (row.algo.empty() || row.text.empty())
            throw CsvError(lineno, "empty algo or text field");
        row.sigma = detail::parse_number<unsigned>(f[2], lineno, "sigma");
        row.m = detail::parse_number<std::size_t>(f[3], lineno, "m");
        row.mean_ms = detail::parse_ms(f[4], lineno, "mean_ms");
        row.mean_text = f[4];
        detail::parse_ms(f[5], lineno, "std_ms");
        if (f[6] != "NA")
            detail::parse_number<std::uint64_t>(f[6], lineno, "occ_total");
        for (int c = 7; c <= 9; ++c)
            detail::parse_number<std::size_t>(f[c], lineno, "q histogram");
        detail::parse_ms(f[10], lineno, "prep_ms");
        rows.push_back(std::move(row));
    }
    if (!saw_header)
        throw CsvError(lineno == 0 ? 1 : lineno, "empty CSV");
    if (rows.empty())
        throw CsvError(lineno + 1, "CSV has no data rows");
    return rows;
}

/// Mean times for one text class: rows are pattern lengths, columns algorithms.
struct ReportTable {
    std::string text;
    unsigned sigma = 0;
    std::vector<std::string> algos;
    std::vector<std::size_t> lengths;
    /// cells[row][col] points into the parsed rows; nullptr marks a missing cell.
    std::vector<std::vector<const CsvRow*>> cells;

    /// Columns holding the row minimum (all of them on ties).
    std::vector<std::size_t> fastest(std::size_t row) const {
        std::optional<double> best;
        for (const CsvRow* c : cells[row])
            if (c && c->mean_ms && (!best || *c->mean_ms < *best))
                best = c->mean_ms;
        std::vector<std::size_t> out;
        for (std::size_t col = 0; col < algos.size(); ++col) {
            const CsvRow* c = cells[row][col];
            if (best && c && c->mean_ms && *c->mean_ms == *best)
                out.push_back(col);
        }
        return out;
    }
};

/// Groups rows by text class in order of first appearance. Algorithms keep
/// first-appearance order; lengths are sorted.
inline std::vector<ReportTable> build_tables(const std::vector<CsvRow>& rows) {
    std::vector<ReportTable> tables;
    auto index_of = [](auto& vec, const auto& value) {
        const auto it = std::find(vec.begin(), vec.end(), value);
        if (it != vec.end())
            return static_cast<std::size_t>(it - vec.begin());
        vec.push_back(value);
        return vec.size() - 1;
    };

    std::vector<std::string> order;
    for (const CsvRow& r : rows) {
        const std::size_t t = index_of(order, r.text);
        if (t == tables.size()) {
            tables.emplace_back();
            tables.back().text = r.text;
            tables.back().sigma = r.sigma;
        }
        ReportTable& table = tables[t];
        index_of(table.algos, r.algo);
        if (std::find(table.lengths.begin(), table.lengths.end(), r.m) == table.lengths.end())
            table.lengths.push_back(r.m);
    }
    for (ReportTable& table : tables) {
        std::sort(table.lengths.begin(), table.lengths.end());
        table.cells.assign(table.lengths.size(), std::vector<const CsvRow*>(table.algos.size(), nullptr));
    }
    for (const CsvRow& r : rows) {
        const std::size_t t = static_cast<std::size_t>(std::find(order.begin(), order.end(), r.text) - order.begin());
        ReportTable& table = tables[t];
        const auto row = std::lower_bound(table.lengths.begin(), table.lengths.end(), r.m) - table.lengths.begin();
        const auto col = std::find(table.algos.begin(), table.algos.end(), r.algo) - table.algos.begin();
        table.cells[row][col] = &r;
    }
    return tables;
}

/// Fixed-width text table; the fastest cell of every row carries a '*'.
inline std::string render_table(const ReportTable& table) {
    constexpr int kWidth = 12;
    std::ostringstream out;
    out << "# text: " << table.text << " (sigma " << table.sigma << "), mean search time in ms, * = fastest\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%4s", "m");
    out << buf;
    for (const auto& a : table.algos) {
        std::snprintf(buf, sizeof buf, "%*s", kWidth, a.c_str());
        out << buf;
    }
    out << '\n';
    for (std::size_t r = 0; r < table.lengths.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%4zu", table.lengths[r]);
        out << buf;
        const auto best = table.fastest(r);
        for (std::size_t c = 0; c < table.algos.size(); ++c) {
            const CsvRow* cell = table.cells[r][c];
            std::string text = cell ? cell->mean_text : "-";
            if (std::find(best.begin(), best.end(), c) != best.end())
                text += '*';
            else
                text += ' ';
            std::snprintf(buf, sizeof buf, "%*s", kWidth, text.c_str());
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

/// Space-separated plot data: '#' header, then m followed by one mean per
/// algorithm ("NA" where inapplicable or missing).
inline std::string render_plot_data(const ReportTable& table) {
    std::ostringstream out;
    out << "# m";
    for (const auto& a : table.algos)
        out << ' ' << a;
    out << '\n';
    for (std::size_t r = 0; r < table.lengths.size(); ++r) {
        out << table.lengths[r];
        for (const CsvRow* cell : table.cells[r])
            out << ' ' << (cell ? cell->mean_text : std::string("NA"));
        out << '\n';
    }
    return out.str();
}

} // namespace ohash::report
