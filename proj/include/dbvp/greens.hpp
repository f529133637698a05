#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dbvp/errors.hpp"
#include "dbvp/linear.hpp"
#include "dbvp/mesh.hpp"
#include "dbvp/spectrum.hpp"

namespace dbvp {

/// Branch of the closed-form kernel, selected by the sign of lambda.
/// lambda is treated as exactly zero when |lambda| < 1e-12.
enum class KernelCase { Oscillatory, Exponential, Polynomial };

inline constexpr double kLambdaZeroTol = 1e-12;

inline const char* to_string(KernelCase c) {
    switch (c) {
        case KernelCase::Oscillatory: return "oscillatory";
        case KernelCase::Exponential: return "exponential";
        case KernelCase::Polynomial: return "polynomial";
    }
    return "?";
}

/// Solution of the shifted homogeneous equation carrying the right boundary
/// datum: psi(0) = 0, psi(T+1) = 1, delta2(psi,t) + lambda psi(t) = 0.
struct HomogeneousFactor {
    int T;
    double lambda;
    MeshFunction psi;
};

namespace detail {

inline void require_below_lambda1(double lambda, int T, const char* who) {
    const double lam1 = lambda1(T);
    if (!(lambda < lam1 - kSingularTol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << who << ": lambda=" << lambda << " must lie strictly below the first eigenvalue lambda_1="
            << lam1 << " (T=" << T << "); the maximum principle and the sign-definite kernel hold only there";
        throw OutOfRegimeError(msg.str());
    }
}

inline KernelCase classify(double lambda) {
    if (std::abs(lambda) < kLambdaZeroTol) return KernelCase::Polynomial;
    return lambda > 0.0 ? KernelCase::Oscillatory : KernelCase::Exponential;
}

// Exponential-case helpers, written against r = ln(alpha) > 0 so that powers
// of alpha never overflow. growth(k) = 1 - beta^(2k) = 1 - exp(-2 k r).
struct ExponentialRoots {
    double alpha;       // larger root of m^2 + (lambda-2) m + 1 = 0
    double beta;        // 1/alpha, the smaller root
    double log_alpha;
    double root_gap;    // alpha - beta = sqrt(lambda^2 - 4 lambda)
};

inline ExponentialRoots exponential_roots(double lambda) {
    const double gap = std::sqrt(lambda * lambda - 4.0 * lambda);
    const double alpha = 1.0 + 0.5 * (-lambda + gap);
    return ExponentialRoots{alpha, 1.0 / alpha, std::log1p(0.5 * (-lambda + gap)), gap};
}

inline double one_minus_beta_pow(const ExponentialRoots& roots, int k) {
    return -std::expm1(-2.0 * k * roots.log_alpha);
}

} // namespace detail

/// Closed-form kernel G(t,s) of the shifted operator with zero boundary
/// values, rows t = 0..T+1 and columns s = 1..T, for lambda < lambda_1.
///
/// Each branch is the explicit solution of the two-sided construction: a
/// homogeneous solution vanishing at t = 0, corrected past the diagonal by
/// the Cauchy function so the column also vanishes at t = T+1. Every column
/// is the impulse response of the operator, every interior entry is
/// strictly negative, and G is symmetric on [1,T]^2.
class GreensKernel {
public:
    int grid_size() const { return T_; }
    double lambda() const { return lambda_; }
    KernelCase kernel_case() const { return case_; }

    /// Oscillatory case only: theta = arccos((2 - lambda)/2).
    double theta() const { return theta_; }
    /// Exponential case only: the two reciprocal characteristic roots.
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    /// G(t,s) for t in [0, T+1], s in [1, T].
    double operator()(int t, int s) const {
        if (t < 0 || t > T_ + 1 || s < 1 || s > T_) {
            throw DomainError("kernel index (t=" + std::to_string(t) + ", s=" + std::to_string(s) +
                              ") outside rows [0," + std::to_string(T_ + 1) + "] x columns [1," +
                              std::to_string(T_) + "]");
        }
        return g_[static_cast<std::size_t>(t) * static_cast<std::size_t>(T_) + static_cast<std::size_t>(s - 1)];
    }

    const MeshFunction& psi() const { return psi_; }

    friend GreensKernel build_kernel(double lambda, int T);

private:
    GreensKernel(int T, double lambda, KernelCase c, MeshFunction psi)
        : T_(T), lambda_(lambda), case_(c),
          g_(static_cast<std::size_t>(T + 2) * static_cast<std::size_t>(T), 0.0), psi_(std::move(psi)) {}

    double& at(int t, int s) {
        return g_[static_cast<std::size_t>(t) * static_cast<std::size_t>(T_) + static_cast<std::size_t>(s - 1)];
    }

    int T_;
    double lambda_;
    KernelCase case_;
    double theta_ = 0.0;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    std::vector<double> g_;
    MeshFunction psi_;
};

/// The homogeneous factor for lambda < lambda_1. Case forms:
/// sin(theta t)/sin(theta (T+1)), (alpha^t - beta^t)/(alpha^(T+1) - beta^(T+1)),
/// and t/(T+1) at lambda = 0 (the unique choice meeting psi(T+1) = 1).
inline HomogeneousFactor homogeneous_factor(double lambda, int T) {
    detail::require_below_lambda1(lambda, T, "homogeneous_factor");
    MeshFunction psi(T);
    switch (detail::classify(lambda)) {
        case KernelCase::Polynomial:
            for (int t = 0; t <= T + 1; ++t) psi[t] = static_cast<double>(t) / (T + 1);
            break;
        case KernelCase::Oscillatory: {
            const double theta = std::acos(1.0 - lambda / 2.0);
            const double denom = std::sin(theta * (T + 1));
            for (int t = 0; t <= T + 1; ++t) psi[t] = std::sin(theta * t) / denom;
            break;
        }
        case KernelCase::Exponential: {
            const auto roots = detail::exponential_roots(lambda);
            const double denom = detail::one_minus_beta_pow(roots, T + 1);
            for (int t = 0; t <= T + 1; ++t) {
                psi[t] = std::exp(roots.log_alpha * (t - (T + 1))) *
                         detail::one_minus_beta_pow(roots, t) / denom;
            }
            break;
        }
    }
    psi[0] = 0.0;
    psi[T + 1] = 1.0;
    return HomogeneousFactor{T, lambda, std::move(psi)};
}

/// Evaluates the case-appropriate closed form at every (t,s).
/// Requires lambda < lambda_1(T) minus the singular tolerance.
inline GreensKernel build_kernel(double lambda, int T) {
    if (T < 1) throw DomainError("build_kernel: T must be positive, got " + std::to_string(T));
    detail::require_below_lambda1(lambda, T, "build_kernel");

    const KernelCase c = detail::classify(lambda);
    GreensKernel k(T, lambda, c, homogeneous_factor(lambda, T).psi);

    switch (c) {
        case KernelCase::Polynomial: {
            for (int s = 1; s <= T; ++s) {
                for (int t = 1; t <= T; ++t) {
                    k.at(t, s) = (t <= s) ? t * (s - (T + 1.0)) / (T + 1.0)
                                          : s * (t - (T + 1.0)) / (T + 1.0);
                }
            }
            break;
        }
        case KernelCase::Oscillatory: {
            const double theta = std::acos(1.0 - lambda / 2.0);
            k.theta_ = theta;
            const double sin_theta = std::sin(theta);
            const double sin_full = std::sin(theta * (T + 1));
            for (int s = 1; s <= T; ++s) {
                const double hom = -std::sin(theta * (T + 1 - s)) / (sin_theta * sin_full);
                for (int t = 1; t <= T; ++t) {
                    double v = hom * std::sin(theta * t);
                    if (t > s) v += std::sin(theta * (t - s)) / sin_theta;   // Cauchy correction
                    k.at(t, s) = v;
                }
            }
            break;
        }
        case KernelCase::Exponential: {
            const auto roots = detail::exponential_roots(lambda);
            k.alpha_ = roots.alpha;
            k.beta_ = roots.beta;
            const double denom = roots.root_gap * detail::one_minus_beta_pow(roots, T + 1);
            // Both branches are evaluated through ratios of alpha powers so
            // that nothing overflows or cancels for strongly negative shifts.
            for (int s = 1; s <= T; ++s) {
                for (int t = 1; t <= T; ++t) {
                    double v;
                    if (t <= s) {
                        v = -std::exp(roots.log_alpha * (t - s)) * detail::one_minus_beta_pow(roots, t) *
                            detail::one_minus_beta_pow(roots, T + 1 - s) / denom;
                    } else {
                        v = -std::exp(roots.log_alpha * (s - t)) * detail::one_minus_beta_pow(roots, s) *
                            detail::one_minus_beta_pow(roots, T + 1 - t) / denom;
                    }
                    k.at(t, s) = v;
                }
            }
            break;
        }
    }
    // Boundary rows vanish identically.
    for (int s = 1; s <= T; ++s) {
        k.at(0, s) = 0.0;
        k.at(T + 1, s) = 0.0;
    }
    return k;
}

/// y(t) = B psi(t) - sum_s G(t,s) h(s); boundary entries are set, not summed.
inline MeshFunction solve_via_green(const GreensKernel& kernel, const MeshFunction& h, double B) {
    const int T = kernel.grid_size();
    if (h.grid_size() != T) {
        throw DomainError("solve_via_green: h grid T=" + std::to_string(h.grid_size()) +
                          " does not match kernel T=" + std::to_string(T));
    }
    MeshFunction y(T);
    for (int t = 1; t <= T; ++t) {
        double acc = 0.0;
        for (int s = 1; s <= T; ++s) acc += kernel(t, s) * h[s];
        y[t] = B * kernel.psi()[t] - acc;
    }
    y[0] = 0.0;
    y[T + 1] = B;
    return y;
}

/// Scan of the interior sign claim G(t,s) < 0.
struct NegativityReport {
    bool pass = true;
    double max_interior_entry = -std::numeric_limits<double>::infinity();
    int argmax_t = 0;
    int argmax_s = 0;
    std::vector<std::pair<int, int>> violations;   // (t,s) with G(t,s) >= 0
};

inline NegativityReport verify_negativity(const GreensKernel& kernel) {
    NegativityReport report;
    const int T = kernel.grid_size();
    for (int t = 1; t <= T; ++t) {
        for (int s = 1; s <= T; ++s) {
            const double v = kernel(t, s);
            if (v > report.max_interior_entry) {
                report.max_interior_entry = v;
                report.argmax_t = t;
                report.argmax_s = s;
            }
            if (!(v < 0.0)) report.violations.emplace_back(t, s);
        }
    }
    report.pass = report.violations.empty();
    return report;
}

/// Symmetry and impulse-response certification of a kernel. The impulse
/// identity delta2(G(.,s), t) + lambda G(t,s) = [t == s] is checked with the
/// raw stencil, column by column.
struct KernelCertification {
    bool symmetry_pass = true;
    double max_asymmetry = 0.0;
    bool impulse_pass = true;
    double max_impulse_residual = 0.0;
    double symmetry_tol;
    double impulse_tol;
};

inline KernelCertification certify_kernel(const GreensKernel& kernel, double symmetry_tol = 1e-11,
                                          double impulse_tol = 1e-10) {
    KernelCertification cert;
    cert.symmetry_tol = symmetry_tol;
    cert.impulse_tol = impulse_tol;
    const int T = kernel.grid_size();
    const double lambda = kernel.lambda();
    for (int s = 1; s <= T; ++s) {
        for (int t = 1; t <= T; ++t) {
            cert.max_asymmetry = std::max(cert.max_asymmetry, std::abs(kernel(t, s) - kernel(s, t)));
            const double stencil = kernel(t + 1, s) - 2.0 * kernel(t, s) + kernel(t - 1, s);
            const double expected = (t == s) ? 1.0 : 0.0;
            cert.max_impulse_residual =
                std::max(cert.max_impulse_residual, std::abs(stencil + lambda * kernel(t, s) - expected));
        }
    }
    cert.symmetry_pass = cert.max_asymmetry < symmetry_tol;
    cert.impulse_pass = cert.max_impulse_residual < impulse_tol;
    return cert;
}

/// Randomized check of the maximum principle: nonnegative forcing and
/// boundary datum must give a nonnegative solution. Each trial is solved
/// through both the kernel and the direct elimination.
struct MaxPrincipleReport {
    bool pass = true;
    int trials = 0;
    int violations = 0;
    double min_value = std::numeric_limits<double>::infinity();
    double max_path_difference = 0.0;   // sup |green - direct| across trials
};

inline MaxPrincipleReport check_maximum_principle(double lambda, int T, int trials,
                                                  std::uint64_t seed = 0) {
    detail::require_below_lambda1(lambda, T, "check_maximum_principle");
    const GreensKernel kernel = build_kernel(lambda, T);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    MaxPrincipleReport report;
    report.trials = trials;
    for (int k = 0; k < trials; ++k) {
        MeshFunction h(T);
        for (int t = 1; t <= T; ++t) h[t] = unit(rng);
        const double B = unit(rng);

        const MeshFunction via_green = solve_via_green(kernel, h, B);
        const LinearSolveResult direct = solve_linear(LinearProblem{T, lambda, h, B});
        report.max_path_difference =
            std::max(report.max_path_difference, sup_distance(via_green, direct.y));

        bool bad = false;
        for (int t = 0; t <= T + 1; ++t) {
            report.min_value = std::min(report.min_value, std::min(via_green[t], direct.y[t]));
            if (via_green[t] < -kBoundaryTol || direct.y[t] < -kBoundaryTol) bad = true;
        }
        if (bad) ++report.violations;
    }
    report.pass = report.violations == 0;
    return report;
}

} // namespace dbvp
