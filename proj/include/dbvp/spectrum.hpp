#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dbvp/errors.hpp"

namespace dbvp {

inline constexpr double kSingularTol = 1e-9;   // |lambda - lambda_n| below this is singular
inline constexpr double kBoundaryTol = 1e-12;  // slack on boundary-value checks

/// Eigenvalues of -y(t+1) + 2 y(t) - y(t-1) on {1..T} with zero boundary values:
/// lambda_n = 2 - 2 cos(n pi / (T+1)), n = 1..T, strictly increasing in (0, 4).
struct Spectrum {
    int T;
    std::vector<double> values;   // ascending, values[n-1] = lambda_n

    double lambda1() const { return values.front(); }
};

inline Spectrum eigenvalues(int T) {
    if (T < 1) throw DomainError("eigenvalues: T must be positive, got " + std::to_string(T));
    Spectrum s{T, {}};
    s.values.reserve(static_cast<std::size_t>(T));
    for (int n = 1; n <= T; ++n) {
        s.values.push_back(2.0 - 2.0 * std::cos(n * M_PI / (T + 1)));
    }
    return s;
}

inline double lambda1(int T) {
    if (T < 1) throw DomainError("lambda1: T must be positive, got " + std::to_string(T));
    return 2.0 - 2.0 * std::cos(M_PI / (T + 1));
}

/// Index (1-based) and value of the eigenvalue nearest to lambda.
struct NearestEigenvalue {
    int n;
    double value;
    double distance;
};

inline NearestEigenvalue nearest_eigenvalue(int T, double lambda) {
    NearestEigenvalue best{0, 0.0, std::numeric_limits<double>::infinity()};
    for (int n = 1; n <= T; ++n) {
        double v = 2.0 - 2.0 * std::cos(n * M_PI / (T + 1));
        double d = std::abs(lambda - v);
        if (d < best.distance) best = {n, v, d};
    }
    return best;
}

} // namespace dbvp
