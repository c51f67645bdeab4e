#include "kirchhoff/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

constexpr double kExponentTol = 1e-12;
constexpr double kMatchingTol = 1e-9;  // relative, for lambda = M_{n,q}

double simpson_weight(std::size_t i, std::size_t N, double h) {
    if (i == 0 || i == N) return h / 3.0;
    return (i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
}

/// Kirchhoff coefficient of a mesh profile by composite Simpson.
double coefficient_simpson(const std::vector<double>& u, double q, int n) {
    const std::size_t N = u.size() - 1;
    const double h = 1.0 / static_cast<double>(N);
    double k = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) * h;
        k += simpson_weight(i, N, h) * std::pow(1.0 - x, n) * std::pow(u[i], q);
    }
    return k;
}

/// Solve (T + a b^T) delta = rhs with T tridiagonal, via Thomas elimination
/// and the Sherman-Morrison correction.
std::vector<double> solve_rank_one(std::vector<double> diag, double off,
                                   const std::vector<double>& a,
                                   const std::vector<double>& b,
                                   std::vector<double> rhs) {
    const std::size_t m = diag.size();
    // Thomas with two right-hand sides (rhs and a).
    std::vector<double> y = std::move(rhs);
    std::vector<double> z = a;
    for (std::size_t i = 1; i < m; ++i) {
        const double w = off / diag[i - 1];
        diag[i] -= w * off;
        y[i] -= w * y[i - 1];
        z[i] -= w * z[i - 1];
    }
    y[m - 1] /= diag[m - 1];
    z[m - 1] /= diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        y[i] = (y[i] - off * y[i + 1]) / diag[i];
        z[i] = (z[i] - off * z[i + 1]) / diag[i];
    }
    double bty = 0.0, btz = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        bty += b[i] * y[i];
        btz += b[i] * z[i];
    }
    const double factor = bty / (1.0 + btz);
    for (std::size_t i = 0; i < m; ++i) y[i] -= factor * z[i];
    return y;
}

}  // namespace

void ProblemSpec::validate() const {
    if (!(p > 1.0)) throw std::domain_error("ProblemSpec: requires p > 1");
    if (!(q > 1.0)) throw std::domain_error("ProblemSpec: requires q > 1");
    if (n < 1) throw std::domain_error("ProblemSpec: requires n >= 1");
    if (!(lambda > 0.0)) throw std::domain_error("ProblemSpec: requires lambda > 0");
}

bool ProblemSpec::degenerate() const {
    return std::abs(exponent()) <= kExponentTol;
}

ExactSolution solve_exact(const ProblemSpec& spec) {
    spec.validate();
    return solve_exact(spec, std::make_shared<GroundState>(spec.p));
}

ExactSolution solve_exact(const ProblemSpec& spec,
                          std::shared_ptr<const GroundState> gs) {
    spec.validate();
    const MomentConstant m = m_constant(*gs, spec.n, spec.q);
    ExactSolution sol{SolutionKind::unique,
                      std::numeric_limits<double>::quiet_NaN(), std::move(gs), m,
                      spec};
    if (!spec.degenerate()) {
        sol.kind = SolutionKind::unique;
        sol.amplitude = std::pow(spec.lambda / m.value, 1.0 / spec.exponent());
    } else if (std::abs(spec.lambda - m.value) <= kMatchingTol * std::abs(m.value)) {
        sol.kind = SolutionKind::family;
    } else {
        sol.kind = SolutionKind::infeasible;
    }
    return sol;
}

double lambda_of_alpha(const GroundState& gs, int n, double q, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("lambda_of_alpha: requires alpha > 0");
    const double p = gs.p();
    const double e = q - p + 1.0;
    if (std::abs(e) <= kExponentTol) {
        throw DegenerateCaseError(
            "lambda_of_alpha: q - p + 1 = 0; the curve is the vertical line "
            "lambda = M_{n,q}");
    }
    const double m = m_constant(gs, n, q).value;
    const double general = m * std::pow(gs.xi(), -e) * std::pow(alpha, e);
    if (n == 1) {
        const double product = (p + 1.0) * l_constant(p, 0.0).value *
                               l_constant(p, q).value * std::pow(alpha, e);
        if (std::abs(general - product) > 1e-10 * std::abs(general)) {
            std::ostringstream os;
            os << "lambda_of_alpha: n=1 dual formulas disagree: " << general
               << " vs " << product;
            throw OracleFailure(os.str());
        }
    }
    return general;
}

double alpha_of_lambda(const ExactSolution& sol) {
    if (sol.kind != SolutionKind::unique) {
        throw std::logic_error(
            "alpha_of_lambda: no scalar amplitude for family/infeasible variants");
    }
    return sol.amplitude * sol.ground_state->xi();
}

BifurcationCurve bifurcation_curve(const GroundState& gs, int n, double q,
                                   double alpha_min, double alpha_max, int count) {
    if (!(alpha_min > 0.0) || !(alpha_max > alpha_min) || count < 2) {
        throw std::domain_error("bifurcation_curve: bad alpha range");
    }
    const double e = q - gs.p() + 1.0;
    if (std::abs(e) <= kExponentTol) {
        throw DegenerateCaseError("bifurcation_curve: degenerate exponent");
    }
    const double m = m_constant(gs, n, q).value;
    const double coeff = m * std::pow(gs.xi(), -e);

    BifurcationCurve curve;
    curve.exponent = e;
    curve.samples.reserve(static_cast<std::size_t>(count));
    const double lmin = std::log(alpha_min), lmax = std::log(alpha_max);
    for (int i = 0; i < count; ++i) {
        const double a =
            std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                static_cast<double>(count - 1));
        curve.samples.emplace_back(a, coeff * std::pow(a, e));
    }
    return curve;
}

double convolution_eval(const std::function<double(double)>& kernel,
                        const std::function<double(double)>& u, double q, double t) {
    if (t < 0.0 || t > 1.0) {
        throw std::domain_error("convolution_eval: requires t in [0, 1]");
    }
    if (t == 0.0) return 0.0;
    Integrand g{[&kernel, &u, q, t](double s) {
                    return kernel(t - s) * std::pow(u(s), q);
                },
                Singularity::none};
    QuadratureResult r = integrate_adaptive(g, 0.0, t);
    if (!r.converged) throw QuadratureError("convolution_eval: did not converge");
    return r.value;
}

MeshProfile sample_solution(const ExactSolution& sol, std::size_t N,
                            double family_t) {
    double t;
    switch (sol.kind) {
        case SolutionKind::unique:
            t = sol.amplitude;
            break;
        case SolutionKind::family:
            if (!(family_t > 0.0)) {
                throw std::domain_error(
                    "sample_solution: the family variant needs a caller-chosen t > 0");
            }
            t = family_t;
            break;
        case SolutionKind::infeasible:
        default:
            throw std::logic_error("sample_solution: no solution to sample");
    }
    MeshProfile u;
    u.values.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        u.values[i] =
            t * sol.ground_state->evaluate_w(static_cast<double>(i) /
                                             static_cast<double>(N));
    }
    return u;
}

ResidualReport residual_check(const ExactSolution& sol, std::size_t N,
                              double family_t) {
    if (N < 64) throw std::domain_error("residual_check: requires N >= 64");
    if (N % 2 != 0) ++N;  // Simpson needs an even interval count
    const ProblemSpec& spec = sol.spec;

    ResidualReport report;
    double t = (sol.kind == SolutionKind::family) ? family_t : sol.amplitude;
    const double coeff_exact =
        std::pow(t, spec.q) * sol.m.value;  // t^q M_{n,q}

    for (std::size_t mesh = N; mesh <= 4 * N; mesh *= 2) {
        const MeshProfile u = sample_solution(sol, mesh, family_t);
        for (std::size_t i = 1; i < mesh; ++i) {
            if (!(u.values[i] > 0.0)) {
                throw std::domain_error(
                    "residual_check: profile must be positive in the interior");
            }
        }
        const double h = 1.0 / static_cast<double>(mesh);
        const double k = coefficient_simpson(u.values, spec.q, spec.n);
        double rmax = 0.0, rl2 = 0.0;
        for (std::size_t i = 1; i < mesh; ++i) {
            const double d2 =
                (u.values[i + 1] - 2.0 * u.values[i] + u.values[i - 1]) / (h * h);
            const double r = -k * d2 - spec.lambda * std::pow(u.values[i], spec.p);
            rmax = std::max(rmax, std::abs(r));
            rl2 += r * r * h;
        }
        report.mesh_sizes.push_back(mesh);
        report.max_norms.push_back(rmax);
        report.l2_norms.push_back(std::sqrt(rl2));
        report.coefficient = k;
        report.coefficient_rel_dev =
            std::abs(k - coeff_exact) / std::abs(coeff_exact);
    }

    double order_sum = 0.0;
    for (std::size_t i = 0; i + 1 < report.max_norms.size(); ++i) {
        order_sum += std::log2(report.max_norms[i] / report.max_norms[i + 1]);
    }
    report.observed_order =
        order_sum / static_cast<double>(report.max_norms.size() - 1);
    return report;
}

NewtonReport newton_solve_discrete(const ProblemSpec& spec, std::size_t N,
                                   const MeshProfile& initial) {
    spec.validate();
    if (spec.degenerate()) {
        throw DegenerateCaseError(
            "newton_solve_discrete: the solution set at q - p + 1 = 0 is a "
            "continuum or empty; the Newton target is ill-posed");
    }
    if (N < 8 || N % 2 != 0) {
        throw std::domain_error("newton_solve_discrete: N must be even and >= 8");
    }
    if (initial.values.size() != N + 1) {
        throw std::domain_error("newton_solve_discrete: initial profile size mismatch");
    }
    for (std::size_t i = 1; i < N; ++i) {
        if (!(initial.values[i] > 0.0)) {
            throw std::domain_error(
                "newton_solve_discrete: initial profile must be positive inside");
        }
    }

    const double h = 1.0 / static_cast<double>(N);
    const std::size_t m = N - 1;
    std::vector<double> u = initial.values;
    u[0] = u[N] = 0.0;

    auto residual = [&](const std::vector<double>& v, std::vector<double>& f) {
        const double k = coefficient_simpson(v, spec.q, spec.n);
        for (std::size_t i = 1; i < N; ++i) {
            const double d2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
            f[i - 1] = -k * d2 - spec.lambda * std::pow(v[i], spec.p);
        }
        return k;
    };
    auto max_norm = [](const std::vector<double>& f) {
        double r = 0.0;
        for (double x : f) r = std::max(r, std::abs(x));
        return r;
    };

    std::vector<double> f(m), rhs(m), a(m), b(m), delta;
    double k = residual(u, f);
    double fnorm = max_norm(f);

    constexpr int kMaxIterations = 60;
    constexpr double kResidualTol = 1e-10;
    int iter = 0;
    for (; iter < kMaxIterations && fnorm > kResidualTol; ++iter) {
        // J = T + a b^T: T from the local terms, the rank-one part from the
        // coefficient integral's dependence on u.
        std::vector<double> diag(m);
        const double off = -k / (h * h);
        for (std::size_t i = 1; i < N; ++i) {
            diag[i - 1] =
                2.0 * k / (h * h) - spec.lambda * spec.p * std::pow(u[i], spec.p - 1.0);
            const double d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
            a[i - 1] = -d2;
            const double x = static_cast<double>(i) * h;
            b[i - 1] = simpson_weight(i, N, h) * std::pow(1.0 - x, spec.n) *
                       spec.q * std::pow(u[i], spec.q - 1.0);
        }
        for (std::size_t i = 0; i < m; ++i) rhs[i] = -f[i];
        delta = solve_rank_one(diag, off, a, b, rhs);

        // Step damping: halve until the residual decreases and the interior
        // stays positive.
        double step = 1.0;
        bool accepted = false;
        std::vector<double> trial(N + 1, 0.0);
        std::vector<double> ftrial(m);
        for (int halving = 0; halving <= 30; ++halving) {
            bool positive = true;
            for (std::size_t i = 1; i < N; ++i) {
                trial[i] = u[i] + step * delta[i - 1];
                if (!(trial[i] > 0.0)) positive = false;
            }
            if (positive) {
                const double ktrial = residual(trial, ftrial);
                const double fnew = max_norm(ftrial);
                if (fnew < fnorm || fnew <= kResidualTol) {
                    u = trial;
                    f = ftrial;
                    fnorm = fnew;
                    k = ktrial;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }

    NewtonReport report;
    report.profile.values = std::move(u);
    report.converged = fnorm <= kResidualTol;
    report.iterations = iter;
    report.residual = fnorm;
    return report;
}

MeshProfile parabola_profile(std::size_t N, double c) {
    MeshProfile u;
    u.values.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(N);
        u.values[i] = c * x * (1.0 - x);
    }
    return u;
}

}  // namespace kirchhoff
