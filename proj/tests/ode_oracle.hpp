#pragma once

#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "greycast/grey_models.hpp"

namespace greycast::testing {

/// Whitenization ODE right-hand side for a fit, written out independently of
/// the closed forms.
inline double whitenization_rhs(const GreyFit& f, double t, double x) {
    const double w = f.omega.value_or(0.0);
    switch (f.kind) {
        case ModelKind::GM11: return -f.a * x + *f.b;
        case ModelKind::GVM: return -f.a * x + *f.b * x * x;
        case ModelKind::GM_S: return -f.a * x + *f.b1 * std::sin(w * t) + *f.b2;
        case ModelKind::GM_C: return -f.a * x + *f.b1 * std::cos(w * t) + *f.b2;
        case ModelKind::GM_SC: return -f.a * x + *f.b1 * std::sin(w * t) + *f.b2 * std::cos(w * t) + *f.b3;
        case ModelKind::GM_ESC:
            return -f.a * x + std::exp(-f.a * t) * (*f.b1 * std::sin(w * t) + *f.b2 * std::cos(w * t)) + *f.b3;
    }
    return 0.0;
}

/// x1(t) from x1(1) = x0_1 by adaptive Dormand-Prince integration.
inline double integrate_response(const GreyFit& fit, double t_end) {
    namespace odeint = boost::numeric::odeint;
    using State = double;
    double x = fit.x0_1;
    if (t_end == 1.0) return x;
    auto rhs = [&fit](const State& s, State& ds, double t) { ds = whitenization_rhs(fit, t, s); };
    const double w = fit.omega.value_or(1.0);
    // Keep steps well inside one forcing period so the controller cannot skip oscillations.
    const double dt = std::min(0.01, 0.05 / w);
    odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14, 1e-14), rhs, x, 1.0,
                               t_end, dt);
    return x;
}

}  // namespace greycast::testing
