#include "greycast/grey_models.hpp"

#include <cmath>
#include <string>

#include "greycast/errors.hpp"
#include "greycast/grey_core.hpp"

namespace greycast {

namespace {

void check_window(std::span<const double> window, bool strictly_positive) {
    if (window.size() < 4) {
        throw InsufficientData("grey model window needs at least 4 values (got " + std::to_string(window.size()) +
                               ")");
    }
    for (std::size_t i = 0; i < window.size(); ++i) {
        const double v = window[i];
        if (!std::isfinite(v)) {
            throw InvalidInput("non-finite value at index " + std::to_string(i));
        }
        if (strictly_positive ? !(v > 0.0) : v < 0.0) {
            throw InvalidInput(std::string(strictly_positive ? "non-positive" : "negative") + " value at index " +
                               std::to_string(i));
        }
    }
}

void check_omega(double omega) {
    if (!std::isfinite(omega) || !(omega > 0.0)) {
        throw InvalidInput("omega must be positive and finite");
    }
}

double finite_or_throw(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw NumericalDegeneracy(std::string(what) + " produced a non-finite value");
    }
    return value;
}

// -expm1(-a s) / a, with its a -> 0 limit s.
double growth_integral(double a, double s) {
    if (std::abs(a) <= kDegenerateA) {
        return s;
    }
    return -std::expm1(-a * s) / a;
}

// Particular response of the trigonometric forcing terms (without the constant input).
double trig_particular(const GreyFit& fit, double t) {
    const double a = fit.a;
    const double w = *fit.omega;
    const double denom = a * a + w * w;
    const double s = std::sin(w * t);
    const double c = std::cos(w * t);
    switch (fit.kind) {
        case ModelKind::GM_S:
            return *fit.b1 * (a * s - w * c) / denom;
        case ModelKind::GM_C:
            return *fit.b1 * (a * c + w * s) / denom;
        case ModelKind::GM_SC:
            return (*fit.b1 * (a * s - w * c) + *fit.b2 * (a * c + w * s)) / denom;
        case ModelKind::GM_ESC:
            return std::exp(-a * t) * (-*fit.b1 * c + *fit.b2 * s) / w;
        default:
            return 0.0;
    }
}

struct Design {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd targets;
    MeanSeries z;
};

Design gm11_design(std::span<const double> window) {
    Design d;
    d.z = mean_sequence(accumulate(window));
    const auto rows = static_cast<Eigen::Index>(d.z.values.size());
    d.matrix.resize(rows, 2);
    d.targets.resize(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        d.matrix(r, 0) = -d.z.values[static_cast<std::size_t>(r)];
        d.matrix(r, 1) = 1.0;
        d.targets(r) = window[static_cast<std::size_t>(r) + 1];
    }
    return d;
}

}  // namespace

std::string_view short_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::GM11: return "GM(1,1)";
        case ModelKind::GVM: return "GVM";
        case ModelKind::GM_S: return "GM_S";
        case ModelKind::GM_C: return "GM_C";
        case ModelKind::GM_SC: return "GM_SC";
        case ModelKind::GM_ESC: return "GM_ESC";
    }
    return "?";
}

std::string ef_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::GM11: return "EFGM";
        case ModelKind::GVM: return "EFGVM";
        default: return "EF" + std::string(short_name(kind));
    }
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
    if (name == "GM11") {
        return ModelKind::GM11;
    }
    for (ModelKind kind : kAllGreyKinds) {
        if (name == short_name(kind)) {
            return kind;
        }
    }
    return std::nullopt;
}

bool is_trig(ModelKind kind) { return kind != ModelKind::GM11 && kind != ModelKind::GVM; }

double default_omega(ModelKind kind) {
    switch (kind) {
        case ModelKind::GM_S: return 4.30;
        case ModelKind::GM_C: return 2.65;
        case ModelKind::GM_SC: return 9.30;
        case ModelKind::GM_ESC: return 74.10;
        default: throw InvalidInput(std::string(short_name(kind)) + " has no angular frequency");
    }
}

std::size_t min_window(ModelKind kind) { return kind == ModelKind::GM_SC ? 5 : 4; }

double GreyFit::constant_term() const {
    switch (kind) {
        case ModelKind::GM11:
        case ModelKind::GVM: return *b;
        case ModelKind::GM_S:
        case ModelKind::GM_C: return *b2;
        default: return *b3;
    }
}

GreyFit fit_gm11(std::span<const double> window) {
    check_window(window, false);
    const Design d = gm11_design(window);
    const Eigen::VectorXd p = solve_least_squares({d.matrix, d.targets});
    GreyFit fit;
    fit.kind = ModelKind::GM11;
    fit.a = p(0);
    fit.b = p(1);
    fit.x0_1 = window[0];
    fit.window_len = window.size();
    return fit;
}

GreyFit fit_gvm(std::span<const double> window) {
    check_window(window, true);
    const MeanSeries z = mean_sequence(accumulate(window));
    const auto rows = static_cast<Eigen::Index>(z.values.size());
    Eigen::MatrixXd design(rows, 2);
    Eigen::VectorXd targets(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double zk = z.values[static_cast<std::size_t>(r)];
        design(r, 0) = -zk;
        design(r, 1) = zk * zk;
        targets(r) = window[static_cast<std::size_t>(r) + 1];
    }
    const Eigen::VectorXd p = solve_least_squares({design, targets});
    GreyFit fit;
    fit.kind = ModelKind::GVM;
    fit.a = p(0);
    fit.b = p(1);
    fit.x0_1 = window[0];
    fit.window_len = window.size();
    return fit;
}

GreyFit fit_trig(std::span<const double> window, ModelKind kind, double omega) {
    if (kind != ModelKind::GM_S && kind != ModelKind::GM_C && kind != ModelKind::GM_SC) {
        throw InvalidInput("fit_trig supports GM_S, GM_C and GM_SC only");
    }
    check_window(window, false);
    check_omega(omega);
    const MeanSeries z = mean_sequence(accumulate(window));
    const auto rows = static_cast<Eigen::Index>(z.values.size());
    const Eigen::Index cols = kind == ModelKind::GM_SC ? 4 : 3;
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd targets(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        // Row r holds the equation at within-window time k = r + 2.
        const double k = static_cast<double>(r + 2);
        design(r, 0) = -z.values[static_cast<std::size_t>(r)];
        switch (kind) {
            case ModelKind::GM_S: design(r, 1) = std::sin(omega * k); break;
            case ModelKind::GM_C: design(r, 1) = std::cos(omega * k); break;
            default:
                design(r, 1) = std::sin(omega * k);
                design(r, 2) = std::cos(omega * k);
                break;
        }
        design(r, cols - 1) = 1.0;
        targets(r) = window[static_cast<std::size_t>(r) + 1];
    }
    const Eigen::VectorXd p = solve_least_squares({design, targets});
    GreyFit fit;
    fit.kind = kind;
    fit.a = p(0);
    fit.b1 = p(1);
    if (kind == ModelKind::GM_SC) {
        fit.b2 = p(2);
        fit.b3 = p(3);
    } else {
        fit.b2 = p(2);
    }
    fit.omega = omega;
    fit.x0_1 = window[0];
    fit.window_len = window.size();
    fit.K = integration_constant(fit);
    return fit;
}

GreyFit fit_esc(std::span<const double> window, double omega) {
    check_window(window, false);
    check_omega(omega);
    const Design d = gm11_design(window);
    const Eigen::VectorXd stage1 = solve_least_squares({d.matrix, d.targets});
    const double a = stage1(0);
    const double b3 = stage1(1);

    const Eigen::VectorXd residuals = d.targets - d.matrix * stage1;
    const auto rows = d.matrix.rows();
    Eigen::MatrixXd design(rows, 2);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double k = static_cast<double>(r + 2);
        const double decay = std::exp(-k * a);
        design(r, 0) = decay * std::sin(omega * k);
        design(r, 1) = decay * std::cos(omega * k);
    }
    if (!design.allFinite() || design.cwiseAbs().maxCoeff() < 1e-300) {
        throw NumericalDegeneracy("GM_ESC stage-2 design underflowed or overflowed (a = " + std::to_string(a) + ")");
    }
    const Eigen::VectorXd stage2 = solve_least_squares({design, residuals});

    GreyFit fit;
    fit.kind = ModelKind::GM_ESC;
    fit.a = a;
    fit.b1 = stage2(0);
    fit.b2 = stage2(1);
    fit.b3 = b3;
    fit.omega = omega;
    fit.x0_1 = window[0];
    fit.window_len = window.size();
    fit.K = integration_constant(fit);
    return fit;
}

GreyFit fit_model(std::span<const double> window, ModelKind kind, std::optional<double> omega) {
    switch (kind) {
        case ModelKind::GM11: return fit_gm11(window);
        case ModelKind::GVM: return fit_gvm(window);
        case ModelKind::GM_ESC: return fit_esc(window, omega.value_or(default_omega(kind)));
        default: return fit_trig(window, kind, omega.value_or(default_omega(kind)));
    }
}

std::optional<double> integration_constant(const GreyFit& fit) {
    if (!is_trig(fit.kind) || std::abs(fit.a) <= kDegenerateA) {
        return std::nullopt;
    }
    const double a = fit.a;
    const double c = fit.constant_term();
    if (fit.kind == ModelKind::GM_ESC) {
        // x1(t) = e^{-at} (K + Q(t)) + b3/a with Q(t) = (b2 sin wt - b1 cos wt) / w.
        const double w = *fit.omega;
        const double q1 = (*fit.b2 * std::sin(w) - *fit.b1 * std::cos(w)) / w;
        return std::exp(a) * (fit.x0_1 - c / a) - q1;
    }
    return std::exp(a) * (fit.x0_1 - c / a - trig_particular(fit, 1.0));
}

double accumulated_response(const GreyFit& fit, double t) {
    const double a = fit.a;
    const double s = t - 1.0;
    if (fit.kind == ModelKind::GVM) {
        const double x0 = fit.x0_1;
        const double b = *fit.b;
        const double denom = std::abs(a) <= kDegenerateA ? 1.0 - b * x0 * s : (b * x0 + (a - b * x0) * std::exp(a * s)) / a;
        if (std::abs(denom) <= kDegenerateA) {
            throw NumericalDegeneracy("GVM accumulated response denominator vanishes at t = " + std::to_string(t));
        }
        return finite_or_throw(x0 / denom, "GVM accumulated response");
    }
    const double decay = std::exp(-a * s);
    double value = fit.x0_1 * decay + fit.constant_term() * growth_integral(a, s);
    if (is_trig(fit.kind)) {
        value += trig_particular(fit, t) - trig_particular(fit, 1.0) * decay;
    }
    return finite_or_throw(value, "accumulated response");
}

double forecast_gm11(const GreyFit& fit, int k) {
    if (fit.kind != ModelKind::GM11) {
        throw InvalidInput("forecast_gm11 requires a GM(1,1) fit");
    }
    if (k < 1) {
        throw InvalidInput("forecast step k must be >= 1");
    }
    const double a = fit.a;
    const double b = *fit.b;
    if (std::abs(a) <= kDegenerateA) {
        return b;
    }
    // (1 - e^a)(x0 - b/a) rearranged so the b/a pole cancels analytically.
    const double em1 = std::expm1(a);
    const double value = std::exp(-a * k) * (-em1 * fit.x0_1 + (em1 / a) * b);
    return finite_or_throw(value, "GM(1,1) forecast");
}

double forecast_gvm(const GreyFit& fit, int k) {
    if (fit.kind != ModelKind::GVM) {
        throw InvalidInput("forecast_gvm requires a GVM fit");
    }
    if (k < 2) {
        throw InvalidInput("GVM forecast step k must be >= 2");
    }
    const double a = fit.a;
    const double b = *fit.b;
    const double x0 = fit.x0_1;
    if (std::abs(a) <= kDegenerateA) {
        return finite_or_throw(accumulated_response(fit, k) - accumulated_response(fit, k - 1), "GVM forecast");
    }
    const double first_denom = b * x0 + (a - b * x0) * std::exp(a * (k - 1));
    const double second_denom = b * x0 + (a - b * x0) * std::exp(a * (k - 2));
    if (!(std::abs(first_denom) > kDegenerateA)) {
        throw NumericalDegeneracy("GVM forecast: first factor denominator vanishes");
    }
    if (!(std::abs(second_denom) > kDegenerateA)) {
        throw NumericalDegeneracy("GVM forecast: second factor denominator vanishes");
    }
    const double first = a * x0 * (a - b * x0) / first_denom;
    const double second = -std::expm1(a) * std::exp(a * (k - 2)) / second_denom;
    return finite_or_throw(first * second, "GVM forecast");
}

double forecast_trig(const GreyFit& fit, int k) {
    if (!is_trig(fit.kind)) {
        throw InvalidInput("forecast_trig requires a trigonometric grey fit");
    }
    if (k < 1) {
        throw InvalidInput("forecast step k must be >= 1");
    }
    const double next = accumulated_response(fit, k + 1.0);
    const double prev = accumulated_response(fit, static_cast<double>(k));
    return finite_or_throw(restore(next, prev), "trigonometric forecast");
}

double predict(const GreyFit& fit, int position) {
    if (position < 2) {
        throw InvalidInput("prediction position must be >= 2");
    }
    switch (fit.kind) {
        case ModelKind::GM11: return forecast_gm11(fit, position - 1);
        case ModelKind::GVM: return forecast_gvm(fit, position);
        default: return forecast_trig(fit, position - 1);
    }
}

}  // namespace greycast
