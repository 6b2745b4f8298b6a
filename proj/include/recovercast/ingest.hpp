#ifndef RECOVERCAST_INGEST_HPP
#define RECOVERCAST_INGEST_HPP

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace recovercast {

using Date = std::chrono::sys_days;

/// Parses a JHU-style `M/D/YY` date (no zero padding required, years 2000+).
std::optional<Date> parse_jhu_date(std::string_view text);

/// ISO-8601 `YYYY-MM-DD`.
std::string format_iso(Date date);

enum class IngestErrorKind {
    MalformedHeader,
    RaggedRow,
    NonNumericCount,
    EmptyTable,
    SeriesTooShort,
};

const char* to_string(IngestErrorKind kind);

class IngestError : public std::runtime_error {
public:
    IngestError(IngestErrorKind kind, const std::string& detail);
    IngestErrorKind kind() const noexcept { return kind_; }

private:
    IngestErrorKind kind_;
};

struct RegionRecord {
    std::string province;  // empty when the upstream cell is blank
    std::string country;
    std::optional<double> latitude;
    std::optional<double> longitude;
    std::vector<std::int64_t> counts;
};

/// Per-region cumulative counts on a shared, contiguous daily date axis.
struct RegionSeriesTable {
    std::vector<RegionRecord> regions;
    std::vector<Date> dates;
};

struct CumulativeSeries {
    std::vector<Date> dates;
    std::vector<double> values;
};

/// Day-over-day change. `dates[i]` is the day on which `values[i]` was
/// observed, i.e. the later of the two cumulative samples it was taken from.
struct DeltaSeries {
    std::vector<Date> dates;
    std::vector<double> values;
};

/// Splits one CSV record, honouring double-quoted fields ("" escapes a quote).
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads a JHU CSSE wide-format table. Either returns a fully valid table or
/// throws IngestError (MalformedHeader, RaggedRow or NonNumericCount).
RegionSeriesTable parse_jhu_csv(std::istream& in);
RegionSeriesTable load_jhu_csv(const std::string& path);

CumulativeSeries aggregate_global(const RegionSeriesTable& table);

DeltaSeries to_daily_deltas(const CumulativeSeries& series);

/// Prefix sum of `deltas` starting from `base`; inverse of to_daily_deltas.
CumulativeSeries reconstruct_cumulative(double base, const DeltaSeries& deltas);

}  // namespace recovercast

#endif  // RECOVERCAST_INGEST_HPP
