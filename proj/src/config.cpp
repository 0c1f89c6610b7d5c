#include "greycast/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "greycast/errors.hpp"

namespace greycast {

namespace {

using boost::property_tree::ptree;

double to_double(const std::string& section, const std::string& key, std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw InvalidInput("[" + section + "] " + key + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

int to_int(const std::string& section, const std::string& key, const std::string& text) {
    const double v = to_double(section, key, text);
    if (v != std::floor(v)) {
        throw InvalidInput("[" + section + "] " + key + ": expected an integer");
    }
    return static_cast<int>(v);
}

std::vector<double> to_list(const std::string& section, const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        std::istringstream words(token);
        std::string word;
        while (words >> word) {
            out.push_back(to_double(section, key, word));
        }
    }
    return out;
}

void check_keys(const std::string& section, const ptree& tree, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : tree) {
        if (!allowed.contains(key)) {
            throw InvalidInput("unknown key '" + key + "' in section [" + section + "]");
        }
    }
}

void read_arima(const std::string& section, const ptree& tree, ArimaSpec& spec) {
    check_keys(section, tree, {"phi", "theta", "seasonal_phi", "d", "D", "season_period", "mu", "truncation"});
    if (auto v = tree.get_optional<std::string>("phi")) spec.phi = to_list(section, "phi", *v);
    if (auto v = tree.get_optional<std::string>("theta")) spec.theta = to_list(section, "theta", *v);
    if (auto v = tree.get_optional<std::string>("seasonal_phi")) spec.seasonal_phi = to_list(section, "seasonal_phi", *v);
    if (auto v = tree.get_optional<std::string>("d")) spec.d = to_int(section, "d", *v);
    if (auto v = tree.get_optional<std::string>("D")) spec.seasonal_d = to_int(section, "D", *v);
    if (auto v = tree.get_optional<std::string>("season_period")) spec.season_period = to_int(section, "season_period", *v);
    if (auto v = tree.get_optional<std::string>("mu")) spec.mu = to_double(section, "mu", *v);
    if (auto v = tree.get_optional<std::string>("truncation")) spec.truncation = to_int(section, "truncation", *v);
    spec.validate();
}

ModelConfig from_tree(const ptree& root) {
    ModelConfig config = default_model_config();
    for (const auto& [section, tree] : root) {
        if (section == "LINEAR") {
            check_keys(section, tree, {"intercept", "coeffs", "delay"});
            auto& spec = config.benchmarks.linear;
            if (auto v = tree.get_optional<std::string>("intercept")) spec.intercept = to_double(section, "intercept", *v);
            if (auto v = tree.get_optional<std::string>("coeffs")) spec.coeffs = to_list(section, "coeffs", *v);
            if (auto v = tree.get_optional<std::string>("delay")) spec.delay = to_int(section, "delay", *v);
            spec.validate();
        } else if (section == "SETAR") {
            check_keys(section, tree,
                       {"low_intercept", "low_coeffs", "high_intercept", "high_coeffs", "threshold", "delay", "lag_step"});
            auto& spec = config.benchmarks.setar;
            if (auto v = tree.get_optional<std::string>("low_intercept")) spec.low_intercept = to_double(section, "low_intercept", *v);
            if (auto v = tree.get_optional<std::string>("low_coeffs")) spec.low_coeffs = to_list(section, "low_coeffs", *v);
            if (auto v = tree.get_optional<std::string>("high_intercept")) spec.high_intercept = to_double(section, "high_intercept", *v);
            if (auto v = tree.get_optional<std::string>("high_coeffs")) spec.high_coeffs = to_list(section, "high_coeffs", *v);
            if (auto v = tree.get_optional<std::string>("threshold")) spec.threshold = to_double(section, "threshold", *v);
            if (auto v = tree.get_optional<std::string>("delay")) spec.delay = to_int(section, "delay", *v);
            if (auto v = tree.get_optional<std::string>("lag_step")) spec.lag_step = to_int(section, "lag_step", *v);
            spec.validate();
        } else if (section == "ARIMA") {
            read_arima(section, tree, config.benchmarks.arima);
        } else if (section == "SARIMA") {
            read_arima(section, tree, config.benchmarks.sarima);
        } else if (auto kind = parse_model_kind(section); kind && is_trig(*kind)) {
            check_keys(section, tree, {"omega"});
            if (auto v = tree.get_optional<std::string>("omega")) {
                const double omega = to_double(section, "omega", *v);
                if (!(omega > 0.0)) {
                    throw InvalidInput("[" + section + "] omega must be positive");
                }
                config.omegas[*kind] = omega;
            }
        } else {
            throw InvalidInput("unknown config section [" + section + "]");
        }
    }
    return config;
}

}  // namespace

ModelConfig default_model_config() {
    ModelConfig config;
    for (ModelKind kind : kAllGreyKinds) {
        if (is_trig(kind)) {
            config.omegas[kind] = default_omega(kind);
        }
    }
    return config;
}

ModelConfig parse_model_config(std::string_view text) {
    std::istringstream in{std::string(text)};
    ptree root;
    try {
        boost::property_tree::read_ini(in, root);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ParseError(e.message(), e.line());
    }
    return from_tree(root);
}

ModelConfig load_model_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path);
    }
    std::ostringstream content;
    content << in.rdbuf();
    return parse_model_config(content.str());
}

}  // namespace greycast
