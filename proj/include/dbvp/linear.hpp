#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dbvp/errors.hpp"
#include "dbvp/mesh.hpp"
#include "dbvp/spectrum.hpp"

namespace dbvp {

/// -y(t+1) + (2 - lambda) y(t) - y(t-1) = h(t) for t in [1,T],
/// with y(0) = 0 and y(T+1) = B. Only the interior entries of h are used.
struct LinearProblem {
    int T;
    double lambda;
    MeshFunction h;
    double B = 0.0;
};

/// Max over t in [1,T] of | -delta2(y,t) - lambda y(t) - h(t) |.
/// Infinite when a boundary value is off by more than 1e-12.
inline double residual_linear(const LinearProblem& p, const MeshFunction& y) {
    if (y.grid_size() != p.T) {
        throw DomainError("residual_linear: solution grid T=" + std::to_string(y.grid_size()) +
                          " does not match problem T=" + std::to_string(p.T));
    }
    if (std::abs(y[0]) > kBoundaryTol || std::abs(y[p.T + 1] - p.B) > kBoundaryTol) {
        return std::numeric_limits<double>::infinity();
    }
    double r = 0.0;
    for (int t = 1; t <= p.T; ++t) {
        r = std::max(r, std::abs(-delta2(y, t) - p.lambda * y[t] - p.h[t]));
    }
    return r;
}

struct LinearSolveResult {
    MeshFunction y;
    double residual;                  // residual_linear of the returned solution
    bool in_max_principle_regime;     // lambda < lambda_1(T)
};

namespace detail {

// Thomas elimination for the shifted stencil; d holds the right-hand side of
// the interior rows and is overwritten with the solution.
inline void tridiagonal_solve_inplace(double diag, std::vector<double>& d) {
    const std::size_t n = d.size();
    std::vector<double> upper(n);  // scaled superdiagonal after elimination
    double piv = diag;
    upper[0] = -1.0 / piv;
    d[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag + upper[i - 1];          // diag - (-1) * upper'
        upper[i] = -1.0 / piv;
        d[i] = (d[i] + d[i - 1]) / piv;     // rhs - (-1) * previous
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        d[i] -= upper[i] * d[i + 1];
    }
}

} // namespace detail

/// Direct tridiagonal elimination of the shifted problem. Throws
/// SingularOperatorError when lambda sits within 1e-9 of an eigenvalue and
/// SolveError when the elimination produces non-finite values. The residual
/// is always computed post hoc; no diagonal-dominance assumption is made.
inline LinearSolveResult solve_linear(const LinearProblem& p) {
    if (p.h.grid_size() != p.T) {
        throw DomainError("solve_linear: h grid T=" + std::to_string(p.h.grid_size()) +
                          " does not match problem T=" + std::to_string(p.T));
    }
    const NearestEigenvalue near = nearest_eigenvalue(p.T, p.lambda);
    if (near.distance < kSingularTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "singular operator: lambda=" << p.lambda << " is within " << kSingularTol
            << " of eigenvalue lambda_" << near.n << "=" << near.value << " (T=" << p.T << ")";
        throw SingularOperatorError(msg.str(), near.n, near.value);
    }

    std::vector<double> d(static_cast<std::size_t>(p.T));
    for (int t = 1; t <= p.T; ++t) d[static_cast<std::size_t>(t - 1)] = p.h[t];
    d.back() += p.B;   // right neighbour of row T is the boundary value

    const double diag = 2.0 - p.lambda;
    std::vector<double> rhs = d;
    detail::tridiagonal_solve_inplace(diag, d);

    // One pass of iterative refinement keeps the residual near round-off even
    // for shifts close to the regime edge.
    std::vector<double> corr(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        double left = (i == 0) ? 0.0 : d[i - 1];
        double right = (i + 1 == d.size()) ? 0.0 : d[i + 1];
        corr[i] = rhs[i] - (diag * d[i] - left - right);
    }
    detail::tridiagonal_solve_inplace(diag, corr);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += corr[i];

    MeshFunction y(p.T);
    y[0] = 0.0;
    y[p.T + 1] = p.B;
    for (int t = 1; t <= p.T; ++t) y[t] = d[static_cast<std::size_t>(t - 1)];

    if (!y.all_finite()) {
        throw SolveError("tridiagonal elimination broke down (non-finite solution) at lambda=" +
                         std::to_string(p.lambda) + ", T=" + std::to_string(p.T));
    }
    const double res = residual_linear(p, y);
    return LinearSolveResult{std::move(y), res, p.lambda < lambda1(p.T)};
}

} // namespace dbvp
