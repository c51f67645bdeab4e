#pragma once

#include <functional>

#include "kirchhoff/moment_constant.hpp"

namespace kirchhoff {

/// Endpoint behaviour of an integrand on its interval.
enum class Singularity {
    none,
    inverse_sqrt_right  // g(s) ~ c / sqrt(b - s) as s -> b
};

struct Integrand {
    std::function<double(double)> f;
    Singularity singularity = Singularity::none;
};

struct QuadratureResult {
    double value;
    double error_estimate;  // >= 0
    long evaluations;       // >= 1
    bool converged;
};

inline constexpr double kDefaultQuadTol = 1e-11;
inline constexpr long kQuadEvalBudget = 1'000'000;

/// Adaptive Gauss-Kronrod (7,15) integration of g over [a, b].
///
/// An inverse-square-root singularity at the right endpoint is removed by the
/// substitution u^2 = b - s before any refinement takes place. Convergence
/// means error_estimate <= max(tol, tol * |value|). A NaN returned by the
/// integrand raises QuadratureError immediately; exhausting the evaluation
/// budget returns the best estimate with converged = false.
QuadratureResult integrate_adaptive(const Integrand& g, double a, double b,
                                    double tol = kDefaultQuadTol,
                                    long max_evaluations = kQuadEvalBudget);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b) through log-gamma.
double beta_oracle(double a, double b);

/// L_{k,d} = integral over (0,1) of s^d / sqrt(1 - s^{k+1}), k > 0, d >= 0.
/// Evaluated by quadrature after the singularity-removing substitution.
MomentConstant l_constant(double k, double d, double tol = kDefaultQuadTol);

/// Accurate 1 - (1 - z)^e for z in [0, 1]; avoids cancellation for small z.
double one_minus_pow(double z, double e);

}  // namespace kirchhoff
