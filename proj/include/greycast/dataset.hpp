#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greycast/series.hpp"

namespace greycast {

enum class TrafficParameter { Speed, TravelTime, Volume, Occupancy };

std::string_view parameter_name(TrafficParameter parameter);
/// Column label used in reports: S, TT, V, O.
std::string_view parameter_code(TrafficParameter parameter);
std::optional<TrafficParameter> parse_parameter(std::string_view text);

struct RejectedRow {
    std::size_t line = 0;
    std::string reason;
};

struct Dataset {
    std::vector<Series> series;
    std::string source;
    TrafficParameter parameter = TrafficParameter::Speed;
    /// Rows dropped during ingestion (negative observations).
    std::vector<RejectedRow> rejected;
};

struct IngestOptions {
    TrafficParameter parameter = TrafficParameter::Speed;
    /// Sampling interval; inferred from ISO timestamps when empty, else 60 s.
    std::optional<Seconds> interval;
    /// Split ISO-timestamped rows into one series per calendar day.
    bool group_by_day = true;
};

/// Reads `timestamp,value[,location]` rows after a one-line header.
///
/// Timestamps are ISO-8601 (YYYY-MM-DDTHH:MM[:SS]) or integer indices. One
/// series is produced per (day, location) group in order of first
/// appearance. Negative values are dropped and listed in Dataset::rejected.
/// Throws IoError when the file cannot be read, InvalidInput for an empty
/// file and ParseError (with the 1-based line number) for malformed rows.
Dataset ingest_csv(const std::string& path, const IngestOptions& options = {});
/// Same parser over in-memory text; `source` names it in errors and reports.
Dataset parse_csv(std::string_view text, const IngestOptions& options = {}, std::string source = "<memory>");

/// Non-overlapping block means; a trailing partial block is dropped.
Series aggregate(const Series& series, Seconds target_interval);

/// Adds N(0, sigma^2) noise to every element of each maximal run of >= 3
/// identical consecutive values, clipping at 0. Deterministic for a seed.
Series augment_stuck_values(const Series& series, double sigma = 0.01, std::uint64_t seed = 42);

}  // namespace greycast
