#include "greycast/dataset.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "greycast/errors.hpp"

namespace greycast {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        return std::nullopt;
    }
    return value;
}

struct Timestamp {
    std::string day;  // empty for integer indices
    double seconds = 0.0;
};

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    long long index = 0;
    const auto* end = text.data() + text.size();
    if (auto [ptr, ec] = std::from_chars(text.data(), end, index); ec == std::errc{} && ptr == end && !text.empty()) {
        return Timestamp{{}, static_cast<double>(index)};
    }
    // YYYY-MM-DD[T ]HH:MM[:SS[.fff]], optional trailing Z.
    const std::string buffer(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    char sep = 0;
    int consumed = 0;
    if (std::sscanf(buffer.c_str(), "%4d-%2d-%2d%c%2d:%2d%n", &y, &mo, &d, &sep, &h, &mi, &consumed) != 6 ||
        (sep != 'T' && sep != ' ')) {
        return std::nullopt;
    }
    double sec = 0.0;
    std::string_view rest = std::string_view(buffer).substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest.back() == 'Z') {
        rest.remove_suffix(1);
    }
    if (!rest.empty()) {
        if (rest.front() != ':') {
            return std::nullopt;
        }
        auto parsed = parse_double(rest.substr(1));
        if (!parsed) {
            return std::nullopt;
        }
        sec = *parsed;
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec < 0.0 || sec >= 61.0) {
        return std::nullopt;
    }
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return Timestamp{buffer.substr(0, 10), static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec};
}

struct Group {
    std::string label;
    std::vector<double> values;
    std::vector<double> times;
};

}  // namespace

std::string_view parameter_name(TrafficParameter parameter) {
    switch (parameter) {
        case TrafficParameter::Speed: return "speed";
        case TrafficParameter::TravelTime: return "travelTime";
        case TrafficParameter::Volume: return "volume";
        case TrafficParameter::Occupancy: return "occupancy";
    }
    return "?";
}

std::string_view parameter_code(TrafficParameter parameter) {
    switch (parameter) {
        case TrafficParameter::Speed: return "S";
        case TrafficParameter::TravelTime: return "TT";
        case TrafficParameter::Volume: return "V";
        case TrafficParameter::Occupancy: return "O";
    }
    return "?";
}

std::optional<TrafficParameter> parse_parameter(std::string_view text) {
    for (auto p : {TrafficParameter::Speed, TrafficParameter::TravelTime, TrafficParameter::Volume,
                   TrafficParameter::Occupancy}) {
        if (text == parameter_name(p) || text == parameter_code(p)) {
            return p;
        }
    }
    return std::nullopt;
}

Dataset ingest_csv(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream content;
    content << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading " + path);
    }
    return parse_csv(content.str(), options, path);
}

Dataset parse_csv(std::string_view text, const IngestOptions& options, std::string source) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    if (trim(text).empty()) {
        throw InvalidInput(source + " is empty");
    }

    Dataset dataset;
    dataset.source = std::move(source);
    dataset.parameter = options.parameter;

    std::vector<Group> groups;
    std::map<std::string, std::size_t> group_index;
    bool has_location = false;
    bool iso = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto newline = text.find('\n', pos);
        std::string_view line = text.substr(pos, newline == std::string_view::npos ? text.npos : newline - pos);
        pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_no;
        if (line_no == 1) {
            has_location = split_fields(line).size() >= 3;
            continue;
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() < 2 || fields.size() > (has_location ? 3u : 2u)) {
            throw ParseError("expected " + std::string(has_location ? "3" : "2") + " fields", line_no);
        }
        const auto stamp = parse_timestamp(fields[0]);
        if (!stamp) {
            throw ParseError("malformed timestamp '" + std::string(fields[0]) + "'", line_no);
        }
        const auto value = parse_double(fields[1]);
        if (!value || !std::isfinite(*value)) {
            throw ParseError("non-numeric value '" + std::string(fields[1]) + "'", line_no);
        }
        if (*value < 0.0) {
            dataset.rejected.push_back({line_no, "negative value " + std::string(fields[1])});
            continue;
        }
        iso = iso || !stamp->day.empty();
        std::string key = has_location ? std::string(fields[2]) : std::string();
        if (options.group_by_day && !stamp->day.empty()) {
            key = key.empty() ? stamp->day : key + "/" + stamp->day;
        }
        auto [it, inserted] = group_index.try_emplace(key, groups.size());
        if (inserted) {
            groups.push_back({key, {}, {}});
        }
        groups[it->second].values.push_back(*value);
        groups[it->second].times.push_back(stamp->seconds);
    }

    if (groups.empty()) {
        throw InvalidInput(dataset.source + " has no usable rows");
    }
    for (auto& g : groups) {
        Seconds interval{60.0};
        if (options.interval) {
            interval = *options.interval;
        } else if (iso && g.times.size() >= 2 && g.times[1] > g.times[0]) {
            interval = Seconds{g.times[1] - g.times[0]};
        }
        std::string label = g.label.empty() ? dataset.source : g.label;
        dataset.series.emplace_back(std::move(g.values), interval, std::move(label));
    }
    return dataset;
}

Series aggregate(const Series& series, Seconds target_interval) {
    const double ratio = target_interval.count() / series.interval().count();
    const double block = std::round(ratio);
    if (!(block >= 1.0) || std::abs(ratio - block) > 1e-9 * ratio) {
        throw InvalidInput("target interval must be an integer multiple of the series interval");
    }
    const auto size = static_cast<std::size_t>(block);
    const std::size_t blocks = series.size() / size;
    if (blocks == 0) {
        throw InvalidInput("series is shorter than one aggregation block");
    }
    std::vector<double> out;
    out.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            sum += series[b * size + i];
        }
        out.push_back(sum / static_cast<double>(size));
    }
    return Series(std::move(out), target_interval, series.label());
}

Series augment_stuck_values(const Series& series, double sigma, std::uint64_t seed) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidInput("noise sigma must be positive");
    }
    std::vector<double> values(series.values().begin(), series.values().end());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    std::size_t start = 0;
    while (start < values.size()) {
        std::size_t end = start + 1;
        while (end < values.size() && values[end] == values[start]) {
            ++end;
        }
        if (end - start >= 3) {
            for (std::size_t i = start; i < end; ++i) {
                values[i] = std::max(0.0, values[i] + noise(rng));
            }
        }
        start = end;
    }
    return Series(std::move(values), series.interval(), series.label());
}

}  // namespace greycast
