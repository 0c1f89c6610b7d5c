#include "greycast/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

#include "greycast/errors.hpp"
#include "greycast/metrics.hpp"

namespace greycast {

namespace {

struct Cell {
    bool ok = false;
    std::string error;
    double rmse = 0.0;
    double mape = std::numeric_limits<double>::quiet_NaN();
    std::size_t excluded = 0;
    std::size_t fallbacks = 0;
    double seconds = 0.0;
    double step_seconds = 0.0;
    ForecastTrace trace;
};

double sorted_mean(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    return sum / static_cast<double>(values.size());
}

RollingConfig config_for(const ModelSpec& model, const CompareOptions& options) {
    RollingConfig config = options.base;
    config.model = model;
    config.omega.reset();
    if (model.is_grey() && is_trig(model.grey_kind)) {
        const auto it = options.omegas.find(model.grey_kind);
        config.omega = it != options.omegas.end() ? it->second : default_omega(model.grey_kind);
    }
    return config;
}

Cell run_cell(const Series& series, const RollingConfig& config, bool keep_trace) {
    Cell cell;
    const auto started = std::chrono::steady_clock::now();
    try {
        ForecastTrace trace = roll_forecast(series, config);
        cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        const auto predicted = trace.predicted_values();
        const auto observed = trace.observed_values();
        cell.rmse = rmse(predicted, observed);
        const MapeResult m = mape(predicted, observed);
        cell.mape = m.percent;
        cell.excluded = m.excluded;
        cell.fallbacks = trace.fallback_count();
        std::chrono::nanoseconds total{0};
        for (auto t : trace.step_times) total += t;
        cell.step_seconds = std::chrono::duration<double>(total).count() / static_cast<double>(trace.step_times.size());
        if (keep_trace) {
            cell.trace = std::move(trace);
        }
        cell.ok = true;
    } catch (const Error& e) {
        cell.error = e.what();
    }
    return cell;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return quoted + "\"";
}

std::string fixed(double value, int decimals) {
    if (!std::isfinite(value)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

}  // namespace

const ModelRow* EvalReport::find(const std::string& model) const {
    for (const auto& row : rows) {
        if (row.model == model) {
            return &row;
        }
    }
    return nullptr;
}

std::optional<ImprovementRow> improvement_row(const EvalReport& report, const std::string& reference,
                                              const std::string& candidate) {
    const ModelRow* ref = report.find(reference);
    const ModelRow* cand = report.find(candidate);
    if (!ref || !cand || ref->failed() || cand->failed() || !(ref->rmse > 0.0) || !(ref->mape > 0.0) ||
        !std::isfinite(cand->mape)) {
        return std::nullopt;
    }
    ImprovementRow row;
    row.reference = reference;
    row.candidate = candidate;
    row.rmse_percent = improvement(ref->rmse, cand->rmse);
    row.mape_percent = improvement(ref->mape, cand->mape);
    return row;
}

EvalReport compare(const Dataset& dataset, const std::vector<ModelSpec>& models, const CompareOptions& options,
                   std::vector<TraceRecord>* traces) {
    if (dataset.series.empty()) {
        throw InvalidInput("dataset has no series");
    }
    if (models.empty()) {
        throw InvalidInput("no models to compare");
    }
    std::vector<RollingConfig> configs;
    configs.reserve(models.size());
    for (const auto& model : models) {
        configs.push_back(config_for(model, options));
        configs.back().validate();
    }

    const std::size_t series_count = dataset.series.size();
    std::vector<std::vector<Cell>> cells(models.size(), std::vector<Cell>(series_count));
    const bool keep = traces != nullptr;

    // Each worker owns whole series so per-series timing stays single-threaded.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t s = next++; s < series_count; s = next++) {
            for (std::size_t m = 0; m < models.size(); ++m) {
                cells[m][s] = run_cell(dataset.series[s], configs[m], keep);
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(series_count)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::future<void>> futures;
        for (unsigned j = 0; j < jobs; ++j) {
            futures.push_back(std::async(std::launch::async, worker));
        }
        for (auto& f : futures) f.get();
    }

    EvalReport report;
    for (std::size_t m = 0; m < models.size(); ++m) {
        ModelRow row;
        row.model = models[m].name();
        std::vector<double> rmses, mapes, seconds, steps;
        for (std::size_t s = 0; s < series_count; ++s) {
            Cell& cell = cells[m][s];
            if (!cell.ok) {
                row.errors.push_back(dataset.series[s].label() + ": " + cell.error);
                continue;
            }
            rmses.push_back(cell.rmse);
            if (std::isfinite(cell.mape)) {
                mapes.push_back(cell.mape);
            }
            seconds.push_back(cell.seconds);
            steps.push_back(cell.step_seconds);
            row.excluded_pairs += cell.excluded;
            row.fallback_steps += cell.fallbacks;
            if (keep) {
                for (const auto& p : cell.trace.predictions) {
                    traces->push_back({dataset.series[s].label(), row.model, p});
                }
            }
        }
        row.series_count = rmses.size();
        if (!rmses.empty()) {
            row.rmse = sorted_mean(rmses);
            row.mape = mapes.empty() ? std::numeric_limits<double>::quiet_NaN() : sorted_mean(mapes);
            row.compute_seconds = sorted_mean(seconds);
            row.mean_step_seconds = sorted_mean(steps);
        } else {
            row.rmse = row.mape = std::numeric_limits<double>::quiet_NaN();
        }
        report.rows.push_back(std::move(row));
    }
    report.improvement = improvement_row(report);
    return report;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    const auto end = std::to_chars(buf, buf + sizeof buf, value).ptr;
    return std::string(buf, end);
}

std::string format_report(const EvalReport& report, const ReportOptions& options) {
    std::ostringstream out;
    if (options.format == ReportFormat::Csv) {
        out << "model,metric,value,series_count,excluded_pairs\n";
        for (const auto& row : report.rows) {
            out << csv_field(row.model) << ",rmse," << format_number(row.rmse) << ',' << row.series_count << ','
                << row.excluded_pairs << '\n';
            out << csv_field(row.model) << ",mape," << format_number(row.mape) << ',' << row.series_count << ','
                << row.excluded_pairs << '\n';
            if (options.include_timing) {
                out << csv_field(row.model) << ",ct," << format_number(row.compute_seconds) << ',' << row.series_count << ','
                    << row.excluded_pairs << '\n';
                out << csv_field(row.model) << ",step_time," << format_number(row.mean_step_seconds) << ','
                    << row.series_count << ',' << row.excluded_pairs << '\n';
            }
        }
        if (report.improvement) {
            const auto& imp = *report.improvement;
            const std::string name = "%Imp(" + imp.candidate + " vs " + imp.reference + ")";
            out << csv_field(name) << ",rmse," << format_number(imp.rmse_percent) << ",,\n";
            out << csv_field(name) << ",mape," << format_number(imp.mape_percent) << ",,\n";
        }
        return out.str();
    }

    std::size_t name_width = 6;
    for (const auto& row : report.rows) name_width = std::max(name_width, row.model.size());
    auto pad = [](std::string s, std::size_t width, bool right) {
        if (s.size() >= width) return s;
        return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
    };
    out << pad("Method", name_width, false) << pad("RMSE", 12, true) << pad("MAPE(%)", 10, true);
    if (options.include_timing) out << pad("CT(s)", 10, true) << pad("step(us)", 10, true);
    out << pad("series", 8, true) << pad("excluded", 10, true) << pad("fallback", 10, true) << '\n';
    for (const auto& row : report.rows) {
        out << pad(row.model, name_width, false) << pad(fixed(row.rmse, 4), 12, true)
            << pad(fixed(row.mape, 2), 10, true);
        if (options.include_timing) {
            out << pad(fixed(row.compute_seconds, 3), 10, true)
                << pad(fixed(row.mean_step_seconds * 1e6, 2), 10, true);
        }
        out << pad(std::to_string(row.series_count), 8, true) << pad(std::to_string(row.excluded_pairs), 10, true)
            << pad(std::to_string(row.fallback_steps), 10, true) << '\n';
    }
    if (report.improvement) {
        const auto& imp = *report.improvement;
        out << pad("% Imp", name_width, false) << pad(fixed(imp.rmse_percent, 0) + "%", 12, true)
            << pad(fixed(imp.mape_percent, 0) + "%", 10, true) << "   (" << imp.candidate << " over "
            << imp.reference << ")\n";
    }
    for (const auto& row : report.rows) {
        for (const auto& e : row.errors) {
            out << "! " << row.model << " skipped " << e << '\n';
        }
    }
    return out.str();
}

std::string format_traces(const std::vector<TraceRecord>& traces) {
    std::ostringstream out;
    out << "series,model,index,observed,predicted,residual,fallback_flag\n";
    for (const auto& r : traces) {
        const auto& p = r.prediction;
        out << csv_field(r.series) << ',' << csv_field(r.model) << ',' << p.index << ',' << format_number(p.observed) << ','
            << format_number(p.predicted) << ',' << format_number(p.observed - p.predicted) << ','
            << (p.fallback ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace greycast
