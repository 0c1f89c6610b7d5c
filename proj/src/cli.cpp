#include "greycast/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greycast/config.hpp"
#include "greycast/dataset.hpp"
#include "greycast/errors.hpp"
#include "greycast/evaluation.hpp"
#include "greycast/metrics.hpp"
#include "greycast/rolling.hpp"
#include "greycast/synthetic.hpp"

namespace greycast {

namespace {

struct Options {
    std::size_t window = 4;
    std::optional<double> omega;
    std::uint64_t seed = 42;
    std::string ef_residual_window = "24";
    bool standard_psi = false;
    bool clamp = false;
    std::string format = "table";
    std::string config_path;

    std::string input;
    std::string synth;
    std::size_t synth_count = 1;
    std::optional<double> interval;
    std::optional<double> aggregate_seconds;
    std::string parameter = "speed";
    bool augment = false;
    std::string trace_path;
    std::string output_path;
    bool timing = false;
    unsigned jobs = 1;
    std::string model = "GM_C";
    std::string models;
    std::string grid = "0.05:100:0.05";
    int horizon = 1;
    std::size_t series_number = 1;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GREYCAST_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (*end != '\0') {
            throw InvalidInput(std::string("GREYCAST_SEED is not an unsigned integer: ") + env);
        }
        return value;
    }
    return 42;
}

ReportFormat report_format(const Options& opt) {
    return opt.format == "csv" ? ReportFormat::Csv : ReportFormat::Table;
}

ModelConfig model_config(const Options& opt) {
    return opt.config_path.empty() ? default_model_config() : load_model_config(opt.config_path);
}

RollingConfig base_config(const Options& opt, const ModelConfig& models) {
    RollingConfig config;
    config.window = opt.window;
    config.horizon = opt.horizon;
    config.clamp_non_negative = opt.clamp;
    config.benchmarks = models.benchmarks;
    config.benchmarks.psi_route = opt.standard_psi ? PsiRoute::PolynomialDivision : PsiRoute::Printed;
    if (opt.ef_residual_window == "in-window") {
        config.ef_mode = EfResidualMode::InWindow;
    } else {
        std::size_t used = 0;
        long long n = 0;
        try {
            n = std::stoll(opt.ef_residual_window, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != opt.ef_residual_window.size() || n < 3) {
            throw InvalidInput("--ef-residual-window expects an integer >= 3 or 'in-window'");
        }
        config.ef_mode = EfResidualMode::Online;
        config.ef_residual_window = static_cast<std::size_t>(n);
    }
    return config;
}

ModelSpec require_model(const std::string& name) {
    auto spec = parse_model(name);
    if (!spec) {
        throw InvalidInput("unknown model '" + name + "'");
    }
    return *spec;
}

std::vector<ModelSpec> model_list(const Options& opt) {
    if (opt.models.empty()) {
        auto list = all_grey_variants();
        for (const auto& b : benchmark_models()) list.push_back(b);
        return list;
    }
    std::vector<ModelSpec> list;
    std::string name;
    int depth = 0;
    for (char c : opt.models + ",") {
        if (c == ',' && depth == 0) {
            if (!name.empty()) list.push_back(require_model(name));
            name.clear();
            continue;
        }
        depth += c == '(' ? 1 : c == ')' ? -1 : 0;
        name += c;
    }
    if (list.empty()) {
        throw InvalidInput("--models lists no models");
    }
    return list;
}

Dataset load_dataset(const Options& opt) {
    if (opt.input.empty() == opt.synth.empty()) {
        throw InvalidInput("exactly one of --input or --synth is required");
    }
    Dataset dataset;
    if (!opt.input.empty()) {
        IngestOptions ingest;
        auto parameter = parse_parameter(opt.parameter);
        if (!parameter) {
            throw InvalidInput("unknown --parameter '" + opt.parameter + "'");
        }
        ingest.parameter = *parameter;
        if (opt.interval) {
            if (!(*opt.interval > 0.0)) throw InvalidInput("--interval must be positive");
            ingest.interval = Seconds{*opt.interval};
        }
        dataset = ingest_csv(opt.input, ingest);
    } else {
        if (opt.synth_count == 0) {
            throw InvalidInput("--synth-count must be at least 1");
        }
        dataset.source = opt.synth;
        for (std::size_t i = 0; i < opt.synth_count; ++i) {
            dataset.series.push_back(generate_synthetic(parse_synthetic_spec(opt.synth, opt.seed + i)));
        }
    }
    if (opt.aggregate_seconds) {
        for (auto& s : dataset.series) {
            s = aggregate(s, Seconds{*opt.aggregate_seconds});
        }
    }
    if (opt.augment) {
        for (std::size_t i = 0; i < dataset.series.size(); ++i) {
            dataset.series[i] = augment_stuck_values(dataset.series[i], 0.01, opt.seed + i);
        }
    }
    return dataset;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << content) || !file.flush()) {
        throw IoError("cannot write " + path);
    }
}

void emit(const Options& opt, std::ostream& out, const std::string& content) {
    if (opt.output_path.empty()) {
        out << content;
    } else {
        write_file(opt.output_path, content);
    }
}

void report_rejected(const Dataset& dataset, std::ostream& err) {
    if (!dataset.rejected.empty()) {
        err << "dropped " << dataset.rejected.size() << " row(s) with negative values";
        err << " (first at line " << dataset.rejected.front().line << ")\n";
    }
}

std::string pad(std::string text, std::size_t width) {
    if (text.size() < width) text.insert(0, width - text.size(), ' ');
    return text;
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

int cmd_forecast(const Options& opt, std::ostream& out, std::ostream& err) {
    const ModelConfig models = model_config(opt);
    const Dataset dataset = load_dataset(opt);
    report_rejected(dataset, err);
    if (opt.series_number < 1 || opt.series_number > dataset.series.size()) {
        throw InvalidInput("--series must be between 1 and " + std::to_string(dataset.series.size()));
    }
    const Series& series = dataset.series[opt.series_number - 1];
    RollingConfig config = base_config(opt, models);
    config.model = require_model(opt.model);
    if (config.model.is_grey() && is_trig(config.model.grey_kind)) {
        config.omega = opt.omega ? *opt.omega : models.omegas.at(config.model.grey_kind);
    }
    const ForecastTrace trace = roll_forecast(series, config);

    std::vector<TraceRecord> records;
    for (const auto& p : trace.predictions) {
        records.push_back({series.label(), config.model.name(), p});
    }
    if (!opt.trace_path.empty()) {
        write_file(opt.trace_path, format_traces(records));
    }

    std::ostringstream text;
    if (report_format(opt) == ReportFormat::Csv) {
        text << format_traces(records);
    } else {
        text << "model " << config.model.name() << ", series " << series.label() << '\n';
        text << pad("index", 8) << pad("observed", 14) << pad("predicted", 14) << "  fallback\n";
        for (const auto& p : trace.predictions) {
            text << pad(std::to_string(p.index), 8) << pad(fixed(p.observed, 4), 14) << pad(fixed(p.predicted, 4), 14)
                 << (p.fallback ? "  yes" : "  no") << '\n';
        }
        if (!trace.predictions.empty()) {
            const auto pred = trace.predicted_values();
            const auto obs = trace.observed_values();
            const MapeResult m = mape(pred, obs);
            text << "RMSE " << fixed(rmse(pred, obs), 4) << ", MAPE " << fixed(m.percent, 2) << "%";
            text << ", fallback steps " << trace.fallback_count() << '\n';
        }
    }
    emit(opt, out, text.str());
    return kExitOk;
}

OmegaGrid parse_grid(const std::string& text) {
    std::vector<double> parts;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ':')) {
        std::size_t used = 0;
        try {
            parts.push_back(std::stod(token, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != token.size()) {
            throw InvalidInput("--grid expects lo:hi:step");
        }
    }
    if (parts.size() != 3) {
        throw InvalidInput("--grid expects lo:hi:step");
    }
    OmegaGrid grid{parts[0], parts[1], parts[2]};
    grid.validate();
    return grid;
}

int cmd_calibrate(const Options& opt, std::ostream& out, std::ostream& err) {
    const ModelConfig models = model_config(opt);
    const OmegaGrid grid = parse_grid(opt.grid);
    const Dataset dataset = load_dataset(opt);
    report_rejected(dataset, err);
    if (opt.series_number < 1 || opt.series_number > dataset.series.size()) {
        throw InvalidInput("--series must be between 1 and " + std::to_string(dataset.series.size()));
    }
    RollingConfig config = base_config(opt, models);
    config.model = require_model(opt.model);
    const CalibrationResult result = calibrate_omega(dataset.series[opt.series_number - 1], grid, config);

    std::ostringstream text;
    if (report_format(opt) == ReportFormat::Csv) {
        text << "model,omega,rmse\n";
        text << config.model.name() << ',' << format_number(result.omega) << ',' << format_number(result.rmse) << '\n';
    } else {
        text << config.model.name() << ": omega " << fixed(result.omega, 2) << ", RMSE " << fixed(result.rmse, 4)
             << " (" << result.evaluated.size() << " candidates)\n";
    }
    emit(opt, out, text.str());
    return kExitOk;
}

int run_report(const Options& opt, const std::vector<ModelSpec>& list, std::ostream& out, std::ostream& err,
               bool single) {
    const ModelConfig models = model_config(opt);
    const Dataset dataset = load_dataset(opt);
    report_rejected(dataset, err);

    CompareOptions options;
    options.base = base_config(opt, models);
    options.omegas = models.omegas;
    options.jobs = opt.jobs;
    if (single && opt.omega && list.front().is_grey()) {
        options.omegas[list.front().grey_kind] = *opt.omega;
    }

    std::vector<TraceRecord> traces;
    const EvalReport report = compare(dataset, list, options, opt.trace_path.empty() ? nullptr : &traces);
    if (!opt.trace_path.empty()) {
        write_file(opt.trace_path, format_traces(traces));
    }
    for (const auto& row : report.rows) {
        for (const auto& e : row.errors) {
            err << row.model << ": " << e << '\n';
        }
    }
    emit(opt, out, format_report(report, {report_format(opt), opt.timing}));
    return kExitOk;
}

int cmd_synth(const Options& opt, std::ostream& out) {
    if (opt.synth.empty()) {
        throw InvalidInput("synth requires --synth <generator spec>");
    }
    if (opt.synth_count == 0) {
        throw InvalidInput("--synth-count must be at least 1");
    }
    std::ostringstream text;
    text << (opt.synth_count > 1 ? "index,value,series\n" : "index,value\n");
    for (std::size_t i = 0; i < opt.synth_count; ++i) {
        const Series s = generate_synthetic(parse_synthetic_spec(opt.synth, opt.seed + i));
        for (std::size_t k = 0; k < s.size(); ++k) {
            text << (k + 1) << ',' << format_number(s[k]);
            if (opt.synth_count > 1) text << ",s" << (i + 1);
            text << '\n';
        }
    }
    emit(opt, out, text.str());
    return kExitOk;
}

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::CalibrationFailed:
            return kExitCalibrationFailed;
        case ErrorKind::Io:
            return kExitIo;
        default:
            return kExitInvalidInput;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Grey-model short-term traffic forecasting"};
    app.name("greycast");
    app.require_subcommand(1);
    app.fallthrough();

    try {
        opt.seed = default_seed();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    app.add_option("--window", opt.window, "Rolling window length (>= 4)")->capture_default_str();
    app.add_option("--omega", opt.omega, "Angular frequency for a single trigonometric model");
    app.add_option("--seed", opt.seed, "RNG seed (GREYCAST_SEED overrides the default)")->capture_default_str();
    app.add_option("--ef-residual-window", opt.ef_residual_window,
                   "Residuals kept for Fourier correction, or 'in-window'")
        ->capture_default_str();
    app.add_flag("--standard-psi", opt.standard_psi, "Use polynomial-division psi weights for ARIMA/SARIMA");
    app.add_flag("--clamp-nonnegative", opt.clamp, "Clamp forecasts at zero");
    app.add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();
    app.add_option("--config", opt.config_path, "Model configuration file (INI)");

    app.add_option("--input", opt.input, "Input CSV (timestamp,value[,location])");
    app.add_option("--synth", opt.synth, "Synthetic generator spec, e.g. seasonal:period=12,sigma=0.5");
    app.add_option("--synth-count", opt.synth_count, "Synthetic series to generate (seeds seed, seed+1, ...)")
        ->capture_default_str();
    app.add_option("--interval", opt.interval, "Input sampling interval in seconds");
    app.add_option("--aggregate", opt.aggregate_seconds, "Aggregate to this interval in seconds");
    app.add_option("--parameter", opt.parameter, "speed, travel-time, volume or occupancy")->capture_default_str();
    app.add_flag("--augment", opt.augment, "Add N(0, 0.01^2) noise to stuck-value runs");
    app.add_option("--trace", opt.trace_path, "Write per-step predictions as long-format CSV");
    app.add_option("-o,--output", opt.output_path, "Write output to a file instead of stdout");
    app.add_flag("--timing", opt.timing, "Include compute-time rows in reports");
    app.add_option("--horizon", opt.horizon, "Steps ahead")->capture_default_str();

    auto* forecast = app.add_subcommand("forecast", "Roll one model over one series");
    forecast->add_option("-m,--model", opt.model, "Model name")->capture_default_str();
    forecast->add_option("--series", opt.series_number, "1-based series number in the dataset")->capture_default_str();

    auto* calibrate = app.add_subcommand("calibrate", "Grid-search omega for a trigonometric model");
    calibrate->add_option("-m,--model", opt.model, "Model name")->capture_default_str();
    calibrate->add_option("--grid", opt.grid, "Grid as lo:hi:step")->capture_default_str();
    calibrate->add_option("--series", opt.series_number, "1-based series number in the dataset")
        ->capture_default_str();

    auto* evaluate = app.add_subcommand("evaluate", "Average one model's accuracy over a dataset");
    evaluate->add_option("-m,--model", opt.model, "Model name")->capture_default_str();
    evaluate->add_option("--jobs", opt.jobs, "Worker threads")->capture_default_str();

    auto* cmp = app.add_subcommand("compare", "Accuracy table for many models");
    cmp->add_option("--models", opt.models, "Comma-separated model names (default: all)");
    cmp->add_option("--jobs", opt.jobs, "Worker threads")->capture_default_str();

    app.add_subcommand("synth", "Write synthetic series as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (opt.jobs == 0) {
            throw InvalidInput("--jobs must be at least 1");
        }
        if (*forecast) return cmd_forecast(opt, out, err);
        if (*calibrate) return cmd_calibrate(opt, out, err);
        if (*evaluate) return run_report(opt, {require_model(opt.model)}, out, err, true);
        if (*cmp) return run_report(opt, model_list(opt), out, err, false);
        return cmd_synth(opt, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
}

}  // namespace greycast
