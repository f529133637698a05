#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dbvp/errors.hpp"

namespace dbvp {

/// Real-valued function on the integer grid {0, 1, ..., T+1}.
///
/// The two boundary entries t = 0 and t = T+1 are always stored explicitly;
/// interior-only vectors are never passed between modules. Indices outside
/// [0, T+1] are hard errors, not wraps.
class MeshFunction {
public:
    explicit MeshFunction(int grid_size, double fill = 0.0)
        : T_(checked_size(grid_size)), values_(static_cast<std::size_t>(grid_size) + 2, fill) {}

    MeshFunction(int grid_size, std::vector<double> values)
        : T_(checked_size(grid_size)), values_(std::move(values)) {
        if (values_.size() != static_cast<std::size_t>(T_) + 2) {
            throw DomainError("mesh function on grid T=" + std::to_string(T_) + " needs exactly " +
                              std::to_string(T_ + 2) + " values, got " + std::to_string(values_.size()));
        }
    }

    /// Builds y(t) = fn(t) for t = 0..T+1.
    template <typename Fn>
    static MeshFunction from_function(int grid_size, Fn&& fn) {
        MeshFunction y(grid_size);
        for (int t = 0; t <= grid_size + 1; ++t) y.values_[static_cast<std::size_t>(t)] = fn(t);
        return y;
    }

    int grid_size() const { return T_; }          // the grid parameter T
    int size() const { return T_ + 2; }           // number of stored values

    double operator[](int t) const { return values_[checked_index(t)]; }
    double& operator[](int t) { return values_[checked_index(t)]; }

    const std::vector<double>& values() const { return values_; }

    bool all_finite() const {
        return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
    }

private:
    static int checked_size(int grid_size) {
        if (grid_size < 1) throw DomainError("grid parameter T must be positive, got " + std::to_string(grid_size));
        return grid_size;
    }

    std::size_t checked_index(int t) const {
        if (t < 0 || t > T_ + 1) {
            throw DomainError("mesh index " + std::to_string(t) + " outside [0, " + std::to_string(T_ + 1) + "]");
        }
        return static_cast<std::size_t>(t);
    }

    int T_;
    std::vector<double> values_;
};

/// Forward difference y(t+1) - y(t); defined for 0 <= t <= T.
inline double delta(const MeshFunction& y, int t) {
    if (t < 0 || t > y.grid_size()) {
        throw DomainError("delta needs 0 <= t <= T, got t=" + std::to_string(t) + " with T=" +
                          std::to_string(y.grid_size()));
    }
    return y[t + 1] - y[t];
}

/// Second-difference stencil y(t+1) - 2 y(t) + y(t-1); defined for 1 <= t <= T.
inline double delta2(const MeshFunction& y, int t) {
    if (t < 1 || t > y.grid_size()) {
        throw DomainError("delta2 needs 1 <= t <= T, got t=" + std::to_string(t) + " with T=" +
                          std::to_string(y.grid_size()));
    }
    return y[t + 1] - 2.0 * y[t] + y[t - 1];
}

inline double sup_norm(const MeshFunction& y) {
    double m = 0.0;
    for (double v : y.values()) m = std::max(m, std::abs(v));
    return m;
}

/// Sup-norm distance between two mesh functions on the same grid.
inline double sup_distance(const MeshFunction& a, const MeshFunction& b) {
    if (a.grid_size() != b.grid_size()) {
        throw DomainError("sup_distance: grid mismatch T=" + std::to_string(a.grid_size()) + " vs T=" +
                          std::to_string(b.grid_size()));
    }
    double m = 0.0;
    for (int t = 0; t < a.size(); ++t) {
        m = std::max(m, std::abs(a.values()[static_cast<std::size_t>(t)] - b.values()[static_cast<std::size_t>(t)]));
    }
    return m;
}

} // namespace dbvp
