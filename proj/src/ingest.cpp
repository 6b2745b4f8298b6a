#include "recovercast/ingest.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace recovercast {

namespace {

constexpr std::string_view kHeaderPrefix[] = {"Province/State", "Country/Region", "Lat",
                                              "Long"};
constexpr std::size_t kMetaColumns = 4;

template <typename T>
bool parse_number(std::string_view text, T& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::optional<double> parse_coordinate(std::string_view cell, std::size_t line_no) {
    cell = trim(cell);
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    if (!parse_number(cell, value)) {
        throw IngestError(IngestErrorKind::NonNumericCount,
                          "line " + std::to_string(line_no) + ": bad coordinate '" +
                              std::string(cell) + "'");
    }
    return value;
}

}  // namespace

std::optional<Date> parse_jhu_date(std::string_view text) {
    text = trim(text);
    unsigned parts[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        auto slash = (i < 2) ? text.find('/') : std::string_view::npos;
        if (i < 2 && slash == std::string_view::npos) return std::nullopt;
        auto field = text.substr(0, slash);
        if (field.empty() || field.size() > 2 || !parse_number(field, parts[i])) {
            return std::nullopt;
        }
        if (i < 2) text.remove_prefix(slash + 1);
    }
    using namespace std::chrono;
    const year_month_day ymd{year{2000 + static_cast<int>(parts[2])}, month{parts[0]},
                             day{parts[1]}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd};
}

std::string format_iso(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

const char* to_string(IngestErrorKind kind) {
    switch (kind) {
        case IngestErrorKind::MalformedHeader: return "MalformedHeader";
        case IngestErrorKind::RaggedRow: return "RaggedRow";
        case IngestErrorKind::NonNumericCount: return "NonNumericCount";
        case IngestErrorKind::EmptyTable: return "EmptyTable";
        case IngestErrorKind::SeriesTooShort: return "SeriesTooShort";
    }
    return "Unknown";
}

IngestError::IngestError(IngestErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

RegionSeriesTable parse_jhu_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) {
        throw IngestError(IngestErrorKind::MalformedHeader, "missing header row");
    }
    // Tolerate a UTF-8 byte-order mark.
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    const auto header = split_csv_line(line);
    if (header.size() < kMetaColumns) {
        throw IngestError(IngestErrorKind::MalformedHeader,
                          "expected Province/State,Country/Region,Lat,Long columns");
    }
    for (std::size_t i = 0; i < kMetaColumns; ++i) {
        if (trim(header[i]) != kHeaderPrefix[i]) {
            throw IngestError(IngestErrorKind::MalformedHeader,
                              "column " + std::to_string(i + 1) + " is '" + header[i] +
                                  "', expected '" + std::string(kHeaderPrefix[i]) + "'");
        }
    }

    RegionSeriesTable table;
    table.dates.reserve(header.size() - kMetaColumns);
    for (std::size_t i = kMetaColumns; i < header.size(); ++i) {
        auto date = parse_jhu_date(header[i]);
        if (!date) {
            throw IngestError(IngestErrorKind::MalformedHeader,
                              "unparsable date column '" + header[i] + "'");
        }
        if (!table.dates.empty() && *date != table.dates.back() + std::chrono::days{1}) {
            throw IngestError(IngestErrorKind::MalformedHeader,
                              "date column '" + header[i] + "' does not follow the previous day");
        }
        table.dates.push_back(*date);
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw IngestError(IngestErrorKind::RaggedRow,
                              "line " + std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) + " fields, header has " +
                                  std::to_string(header.size()));
        }
        RegionRecord rec;
        rec.province = std::string(trim(fields[0]));
        rec.country = std::string(trim(fields[1]));
        rec.latitude = parse_coordinate(fields[2], line_no);
        rec.longitude = parse_coordinate(fields[3], line_no);
        rec.counts.reserve(table.dates.size());
        for (std::size_t i = kMetaColumns; i < fields.size(); ++i) {
            const auto cell = trim(fields[i]);
            std::int64_t count = 0;
            if (!parse_number(cell, count) || count < 0) {
                throw IngestError(IngestErrorKind::NonNumericCount,
                                  "line " + std::to_string(line_no) + ", column " +
                                      std::to_string(i + 1) + ": '" + std::string(cell) +
                                      "' is not a non-negative integer");
            }
            rec.counts.push_back(count);
        }
        table.regions.push_back(std::move(rec));
    }
    return table;
}

RegionSeriesTable load_jhu_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    }
    return parse_jhu_csv(in);
}

CumulativeSeries aggregate_global(const RegionSeriesTable& table) {
    if (table.regions.empty()) {
        throw IngestError(IngestErrorKind::EmptyTable, "table has no regions");
    }
    CumulativeSeries out;
    out.dates = table.dates;
    out.values.assign(table.dates.size(), 0.0);
    for (const auto& region : table.regions) {
        for (std::size_t t = 0; t < out.values.size(); ++t) {
            out.values[t] += static_cast<double>(region.counts[t]);
        }
    }
    return out;
}

DeltaSeries to_daily_deltas(const CumulativeSeries& series) {
    if (series.values.size() < 2) {
        throw IngestError(IngestErrorKind::SeriesTooShort,
                          "need at least 2 points, got " + std::to_string(series.values.size()));
    }
    DeltaSeries out;
    out.values.reserve(series.values.size() - 1);
    for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
        out.values.push_back(series.values[i + 1] - series.values[i]);
    }
    if (series.dates.size() == series.values.size()) {
        out.dates.assign(series.dates.begin() + 1, series.dates.end());
    }
    return out;
}

CumulativeSeries reconstruct_cumulative(double base, const DeltaSeries& deltas) {
    CumulativeSeries out;
    out.dates = deltas.dates;
    out.values.reserve(deltas.values.size());
    double running = base;
    for (double d : deltas.values) {
        running += d;
        out.values.push_back(running);
    }
    return out;
}

}  // namespace recovercast
