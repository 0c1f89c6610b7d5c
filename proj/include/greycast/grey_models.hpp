#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace greycast {

/// The six grey models; short names follow the usual GM(1,1) family notation.
enum class ModelKind { GM11, GVM, GM_S, GM_C, GM_SC, GM_ESC };

inline constexpr ModelKind kAllGreyKinds[] = {ModelKind::GM11, ModelKind::GVM,   ModelKind::GM_S,
                                              ModelKind::GM_C, ModelKind::GM_SC, ModelKind::GM_ESC};

std::string_view short_name(ModelKind kind);
/// Fourier error-corrected name: EFGM, EFGVM, EFGM_S, ...
std::string ef_name(ModelKind kind);
/// Accepts short names plus the "GM11" alias; case-sensitive.
std::optional<ModelKind> parse_model_kind(std::string_view name);

bool is_trig(ModelKind kind);
/// Calibrated angular frequencies shipped as defaults (rad per step).
double default_omega(ModelKind kind);
/// Smallest window giving at least as many equations as parameters.
std::size_t min_window(ModelKind kind);

/// Development coefficients with |a| at or below this use the a -> 0 limit.
inline constexpr double kDegenerateA = 1e-12;

/// Parameters of one fitted grey model.
///
/// GM(1,1) and GVM use (a, b). GM_S / GM_C use (a, b1, b2) with b2 the
/// constant input; GM_SC / GM_ESC use (a, b1, b2, b3) with b3 constant.
/// Unused coefficients are empty. K is the integration constant of the
/// accumulated response x1(t) = K e^{-at} + particular(t); it is empty for
/// GM(1,1), GVM and whenever |a| <= kDegenerateA.
struct GreyFit {
    ModelKind kind = ModelKind::GM11;
    double a = 0.0;
    std::optional<double> b;
    std::optional<double> b1;
    std::optional<double> b2;
    std::optional<double> b3;
    std::optional<double> omega;
    double x0_1 = 0.0;
    std::optional<double> K;
    std::size_t window_len = 0;

    /// Constant input term (b for GM11/GVM, b2 for GM_S/GM_C, b3 otherwise).
    double constant_term() const;
};

GreyFit fit_gm11(std::span<const double> window);
GreyFit fit_gvm(std::span<const double> window);
/// kind must be GM_S, GM_C or GM_SC.
GreyFit fit_trig(std::span<const double> window, ModelKind kind, double omega);
/// Two-stage estimate: (a, b3) from the GM(1,1) design, then (b1, b2) on its residuals.
GreyFit fit_esc(std::span<const double> window, double omega);
/// Dispatches on kind; omega is ignored for GM11/GVM and defaults per kind otherwise.
GreyFit fit_model(std::span<const double> window, ModelKind kind, std::optional<double> omega = std::nullopt);

/// x0(k+1) = (1 - e^a)(x0(1) - b/a) e^{-ak}; returns b when |a| <= kDegenerateA.
double forecast_gm11(const GreyFit& fit, int k);

/// Verhulst product form, evaluated verbatim:
///   [a x0 (a - b x0) / (b x0 + (a - b x0) e^{a(k-1)})] *
///   [(1 - e^a) e^{a(k-2)} / (b x0 + (a - b x0) e^{a(k-2)})]
/// which equals x1(k) - x1(k-1) of the Verhulst response with x1(1) = x0(1).
/// Requires k >= 2.
double forecast_gvm(const GreyFit& fit, int k);

/// x0(k+1) = x1(k+1) - x1(k) from the accumulated whitenization response.
double forecast_trig(const GreyFit& fit, int k);

/// Accumulated response x1(t) with x1(1) = x0(1), for any kind.
double accumulated_response(const GreyFit& fit, double t);

/// Restored value at within-window position `position` (>= 2). Position w+1 is
/// the one-step-ahead forecast of a fit over w points; w+h is h steps ahead.
double predict(const GreyFit& fit, int position);

/// Recomputes K from (a, b1, b2, b3/b2, omega, x0_1); empty when not defined.
std::optional<double> integration_constant(const GreyFit& fit);

}  // namespace greycast
