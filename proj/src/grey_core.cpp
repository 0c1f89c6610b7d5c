#include "greycast/grey_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "greycast/errors.hpp"

namespace greycast {

std::vector<double> AccumulatedSeries::difference() const {
    std::vector<double> out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        out[k] = k == 0 ? values[0] : values[k] - values[k - 1];
    }
    return out;
}

AccumulatedSeries accumulate(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidInput("cannot accumulate an empty sequence");
    }
    AccumulatedSeries acc;
    acc.values.reserve(values.size());
    double running = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidInput("non-finite value at index " + std::to_string(i));
        }
        running += values[i];
        acc.values.push_back(running);
    }
    return acc;
}

MeanSeries mean_sequence(const AccumulatedSeries& acc) {
    if (acc.values.size() < 2) {
        throw InsufficientData("mean sequence needs at least 2 accumulated values");
    }
    MeanSeries z;
    z.values.reserve(acc.values.size() - 1);
    for (std::size_t k = 1; k < acc.values.size(); ++k) {
        z.values.push_back((acc.values[k - 1] + acc.values[k]) / 2.0);
    }
    return z;
}

double restore(double acc_forecast, double acc_prev) {
    if (!std::isfinite(acc_forecast) || !std::isfinite(acc_prev)) {
        throw InvalidInput("restore requires finite accumulated values");
    }
    return acc_forecast - acc_prev;
}

double normal_condition_estimate(const Eigen::MatrixXd& design) {
    Eigen::MatrixXd scaled = design;
    for (Eigen::Index c = 0; c < scaled.cols(); ++c) {
        const double norm = scaled.col(c).norm();
        if (norm == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        scaled.col(c) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (smallest == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double ratio = sv(0) / smallest;
    return ratio * ratio;
}

Eigen::VectorXd solve_least_squares(const LeastSquaresProblem& problem) {
    const auto& design = problem.design;
    if (design.rows() != problem.targets.size()) {
        throw InvalidInput("design rows and target length differ");
    }
    if (design.cols() == 0 || design.rows() < design.cols()) {
        throw InsufficientData("least squares needs rows >= cols (got " + std::to_string(design.rows()) + "x" +
                               std::to_string(design.cols()) + ")");
    }
    if (!design.allFinite() || !problem.targets.allFinite()) {
        throw InvalidInput("least squares inputs must be finite");
    }
    const double condition = normal_condition_estimate(design);
    if (!(condition <= kMaxCondition)) {
        throw SingularSystem("normal matrix is singular or ill-conditioned", condition);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    Eigen::VectorXd solution = qr.solve(problem.targets);
    if (!solution.allFinite()) {
        throw SingularSystem("least squares produced a non-finite solution", condition);
    }
    return solution;
}

}  // namespace greycast
