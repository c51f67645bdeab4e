#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "kirchhoff/constants.hpp"
#include "kirchhoff/ground_state.hpp"

namespace kirchhoff {

/// Parameters of the nonlocal problem
///   -(integral of (1-x)^n u^q) u'' = lambda u^p,  u(0) = u(1) = 0,  u > 0.
struct ProblemSpec {
    double p;
    double q;
    int n;
    double lambda;

    void validate() const;
    /// q - p + 1; the bifurcation exponent. Zero marks the degenerate case.
    double exponent() const { return q - p + 1.0; }
    bool degenerate() const;
};

enum class SolutionKind { unique, family, infeasible };

/// Result of the amplitude trichotomy: either a unique scalar multiple of the
/// ground state, the full family {t W : t > 0} at the critical lambda, or no
/// solution at all.
struct ExactSolution {
    SolutionKind kind;
    double amplitude;  // t such that u = t W; NaN unless kind == unique
    std::shared_ptr<const GroundState> ground_state;
    MomentConstant m;  // the M_{n,q} that decided the case
    ProblemSpec spec;
};

ExactSolution solve_exact(const ProblemSpec& spec);
ExactSolution solve_exact(const ProblemSpec& spec,
                          std::shared_ptr<const GroundState> gs);

/// lambda(alpha) = M_{n,q} xi^{-(q-p+1)} alpha^{q-p+1}. For n = 1 the
/// equivalent product form (p+1) L_{p,0} L_{p,q} alpha^{q-p+1} is evaluated as
/// well and the two are cross-checked. Throws DegenerateCaseError when the
/// exponent vanishes (the curve is the vertical line lambda = M_{n,q}).
double lambda_of_alpha(const GroundState& gs, int n, double q, double alpha);

/// alpha = t_lambda * xi for the unique variant; throws otherwise.
double alpha_of_lambda(const ExactSolution& sol);

struct BifurcationCurve {
    std::vector<std::pair<double, double>> samples;  // (alpha, lambda)
    double exponent;                                 // q - p + 1
};

/// Log-spaced samples of the power-law curve over [alpha_min, alpha_max].
BifurcationCurve bifurcation_curve(const GroundState& gs, int n, double q,
                                   double alpha_min, double alpha_max, int count);

/// (h * u^q)(t) = integral over [0, t] of h(t - s) u(s)^q ds.
double convolution_eval(const std::function<double(double)>& kernel,
                        const std::function<double(double)>& u, double q, double t);

/// Values u_0..u_N on the uniform mesh x_i = i/N.
struct MeshProfile {
    std::vector<double> values;
    std::size_t intervals() const { return values.size() - 1; }
};

/// The exact solution sampled on the mesh. For the family variant a concrete
/// t must be supplied; for infeasible this throws.
MeshProfile sample_solution(const ExactSolution& sol, std::size_t N,
                            double family_t = -1.0);

struct ResidualReport {
    std::vector<std::size_t> mesh_sizes;   // N, 2N, 4N
    std::vector<double> max_norms;
    std::vector<double> l2_norms;
    double observed_order;                 // mean log2 decay of the max-norm
    double coefficient;                    // Kirchhoff coefficient on the finest mesh
    double coefficient_rel_dev;            // vs t^q M_{n,q}
};

/// Centered-second-difference residual of the sampled exact solution on
/// meshes N, 2N, 4N, with the coefficient integral by composite Simpson.
ResidualReport residual_check(const ExactSolution& sol, std::size_t N,
                              double family_t = -1.0);

struct NewtonReport {
    MeshProfile profile;
    bool converged;
    int iterations;
    double residual;  // final max-norm of the discrete system
};

/// Damped Newton iteration on the full discretized nonlocal system
/// (second differences + Simpson coefficient), including the rank-one
/// Jacobian term from the coefficient's dependence on u. Independent of the
/// analytic construction. Throws DegenerateCaseError when q - p + 1 = 0.
NewtonReport newton_solve_discrete(const ProblemSpec& spec, std::size_t N,
                                   const MeshProfile& initial);

/// c x(1-x) on the mesh; a solution-independent initial guess.
MeshProfile parabola_profile(std::size_t N, double c);

}  // namespace kirchhoff
