#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace greycast::testing {

/// Seeded source for hand-rolled property generators.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double normal(double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng_); }

    /// Uniform in [lo, hi] with |x| >= gap.
    double away_from_zero(double lo, double hi, double gap) {
        for (;;) {
            const double x = uniform(lo, hi);
            if (std::abs(x) >= gap) return x;
        }
    }

    std::vector<double> vector(std::size_t n, double lo, double hi) {
        std::vector<double> out(n);
        for (auto& v : out) v = uniform(lo, hi);
        return out;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// x0(k) = (b - a x1(k-1)) / (1 + a/2), the basic-form GM(1,1) recursion.
inline std::vector<double> gm11_sequence(double a, double b, double x1, std::size_t n) {
    std::vector<double> x{x1};
    double acc = x1;
    while (x.size() < n) {
        const double next = (b - a * acc) / (1.0 + a / 2.0);
        x.push_back(next);
        acc += next;
    }
    return x;
}

/// Normal equations (B^T B) p = B^T y solved by Gaussian elimination with
/// partial pivoting, independent of the QR path under test.
inline std::vector<double> normal_equations(const std::vector<std::vector<double>>& rows, const std::vector<double>& y) {
    const std::size_t m = rows.front().size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) a[i][j] += rows[r][i] * rows[r][j];
            a[i][m] += rows[r][i] * y[r];
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < m; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
        }
        std::swap(a[c], a[pivot]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = a[i][m] / a[i][i];
    return p;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace greycast::testing
