#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "greycast/series.hpp"

namespace greycast {

/// Running prefix sums x1(k) = x0(1) + ... + x0(k), summed left to right.
struct AccumulatedSeries {
    std::vector<double> values;

    /// First-order difference; inverts accumulate().
    std::vector<double> difference() const;
};

/// Adjacent means z1(k) = (x1(k-1) + x1(k)) / 2 for k = 2..n; values[0] is z1(2).
struct MeanSeries {
    std::vector<double> values;
};

struct LeastSquaresProblem {
    Eigen::MatrixXd design;
    Eigen::VectorXd targets;
};

/// Normal-matrix condition estimates above this reject the fit.
inline constexpr double kMaxCondition = 1e12;

AccumulatedSeries accumulate(std::span<const double> values);
inline AccumulatedSeries accumulate(const Series& series) { return accumulate(series.values()); }

MeanSeries mean_sequence(const AccumulatedSeries& acc);

/// x0(k+1) = x1(k+1) - x1(k).
double restore(double acc_forecast, double acc_prev);

/// Minimiser of ||design * p - targets||_2 via column-pivoted Householder QR.
///
/// The condition estimate is cond(D)^2 where D is the design with unit-norm
/// columns, i.e. the condition number of the equilibrated normal matrix.
/// Throws SingularSystem when it exceeds kMaxCondition, InsufficientData when
/// rows < cols and InvalidInput on non-finite entries.
Eigen::VectorXd solve_least_squares(const LeastSquaresProblem& problem);

/// Condition estimate used by solve_least_squares (exposed for diagnostics).
double normal_condition_estimate(const Eigen::MatrixXd& design);

}  // namespace greycast
