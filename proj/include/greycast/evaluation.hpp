#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greycast/dataset.hpp"
#include "greycast/rolling.hpp"

namespace greycast {

/// Averages over the series of a dataset for one model.
struct ModelRow {
    std::string model;
    double rmse = 0.0;
    double mape = 0.0;
    /// Mean wall time to roll one series, in seconds.
    double compute_seconds = 0.0;
    /// Mean wall time of a single rolling step, in seconds.
    double mean_step_seconds = 0.0;
    std::size_t series_count = 0;
    std::size_t excluded_pairs = 0;
    std::size_t fallback_steps = 0;
    /// Series that could not be rolled at all, with the reason.
    std::vector<std::string> errors;

    bool failed() const noexcept { return series_count == 0; }
};

/// Percent improvement of a candidate model over a reference model.
struct ImprovementRow {
    std::string reference = "EFGVM";
    std::string candidate = "GM_C";
    double rmse_percent = 0.0;
    double mape_percent = 0.0;
};

struct EvalReport {
    std::vector<ModelRow> rows;
    std::optional<ImprovementRow> improvement;

    const ModelRow* find(const std::string& model) const;
};

/// One prediction in long format, for box plots and trace inspection.
struct TraceRecord {
    std::string series;
    std::string model;
    Prediction prediction;
};

struct CompareOptions {
    /// Template for every model; its `model` and `omega` fields are replaced per model.
    RollingConfig base;
    /// Per-kind angular frequencies; kinds without an entry use their defaults.
    std::map<ModelKind, double> omegas;
    /// Worker threads for series-level parallelism.
    unsigned jobs = 1;
};

/// Rolls every model over every series and averages RMSE/MAPE across series.
/// Reductions sort the per-series values first, so the report is identical
/// for any job count. Series that fail outright are recorded on the row.
EvalReport compare(const Dataset& dataset, const std::vector<ModelSpec>& models, const CompareOptions& options,
                   std::vector<TraceRecord>* traces = nullptr);

/// Improvement of `candidate` over `reference`, when both rows are usable.
std::optional<ImprovementRow> improvement_row(const EvalReport& report, const std::string& reference = "EFGVM",
                                              const std::string& candidate = "GM_C");

enum class ReportFormat { Table, Csv };

struct ReportOptions {
    ReportFormat format = ReportFormat::Table;
    /// Timing varies run to run; omitting it keeps reports byte-reproducible.
    bool include_timing = false;
};

std::string format_report(const EvalReport& report, const ReportOptions& options = {});
/// Header: series,model,index,observed,predicted,residual,fallback_flag.
std::string format_traces(const std::vector<TraceRecord>& traces);
/// Shortest round-trip decimal text.
std::string format_number(double value);

}  // namespace greycast
