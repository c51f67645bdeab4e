#include "kirchhoff/constants.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

constexpr double kIndexTol = 1e-12;

bool near(double a, double b) {
    return std::abs(a - b) <= kIndexTol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// S_{0,d} = sqrt((p+1)/2) xi^{(2d-p+1)/2} L_{p,d}.
double s0_closed(const GroundState& gs, double d) {
    const double p = gs.p();
    const double xi = gs.xi();
    return std::sqrt((p + 1.0) / 2.0) * std::pow(xi, (2.0 * d - p + 1.0) / 2.0) *
           l_constant(p, d).value;
}

/// S_{2,p} = xi - sqrt(2(p+1)) xi^{(3-p)/2} L_{p,1}.
double s2p_closed(const GroundState& gs) {
    const double p = gs.p();
    const double xi = gs.xi();
    return xi - std::sqrt(2.0 * (p + 1.0)) * std::pow(xi, (3.0 - p) / 2.0) *
                    l_constant(p, 1.0).value;
}

/// Classify q as base + m(p+1) with base in {0, p}. Throws if unreachable.
struct Descent {
    int m;
    bool base_is_p;
};

Descent classify_descent(double q, double p) {
    const double step = p + 1.0;
    const double m0 = std::round(q / step);
    if (m0 >= 0.0 && near(q, m0 * step)) {
        return Descent{static_cast<int>(m0), false};
    }
    const double m1 = std::round((q - p) / step);
    if (m1 >= 0.0 && near(q, p + m1 * step)) {
        return Descent{static_cast<int>(m1), true};
    }
    std::ostringstream os;
    os << "q = " << q << " is not m(p+1) or m(p+1)+p for p = " << p;
    throw UnsupportedIndexError(os.str());
}

double binomial(int n, int r) {
    double c = 1.0;
    for (int i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
    return c;
}

}  // namespace

MomentConstant s_quadrature(const GroundState& gs, double k, double d, double tol) {
    if (!(k >= 0.0) || !(d >= 0.0)) {
        throw std::domain_error("s_quadrature: requires k, d >= 0");
    }
    Integrand g{[&gs, k, d](double x) {
                    return std::pow(x, k) * std::pow(gs.evaluate_w(x), d);
                },
                Singularity::none};
    QuadratureResult r = integrate_adaptive(g, 0.0, 0.5, tol);
    if (!r.converged) {
        throw QuadratureError("s_quadrature: did not converge");
    }
    return MomentConstant{Kind::S, k, d, gs.p(), r.value, Method::quadrature};
}

MomentConstant s_closed_form(const GroundState& gs, double k, double d) {
    const double p = gs.p();
    const double xi = gs.xi();
    auto make = [&](double v) {
        return MomentConstant{Kind::S, k, d, p, v, Method::closed_form};
    };
    if (near(k, 0.0)) return make(s0_closed(gs, d));
    if (near(k, 1.0) && near(d, 0.0)) return make(1.0 / 8.0);
    if (near(k, 2.0) && near(d, 0.0)) return make(1.0 / 24.0);
    if (near(k, 1.0) && near(d, p)) return make(xi);
    if (near(k, 2.0) && near(d, p)) return make(s2p_closed(gs));
    std::ostringstream os;
    os << "no closed form for S_{" << k << "," << d << "} (p = " << p << ")";
    throw NoClosedFormError(os.str());
}

MomentConstant s1_recursion(const GroundState& gs, double q) {
    const double p = gs.p();
    const double xi = gs.xi();
    const Descent desc = classify_descent(q, p);

    double base = desc.base_is_p ? p : 0.0;
    double s = desc.base_is_p ? xi : 1.0 / 8.0;
    for (int j = 1; j <= desc.m; ++j) {
        const double qj = base + j * (p + 1.0);
        s = (p + 1.0) / (2.0 * qj - p + 1.0) *
            (std::pow(xi, qj - p + 1.0) / (qj - p + 1.0) +
             2.0 * (qj - p) / (p + 1.0) * std::pow(xi, p + 1.0) * s);
    }
    return MomentConstant{Kind::S, 1.0, q, p, s, Method::recursion};
}

MomentConstant s2_recursion(const GroundState& gs, double q) {
    const double p = gs.p();
    const double xi = gs.xi();
    const Descent desc = classify_descent(q, p);

    double base = desc.base_is_p ? p : 0.0;
    double s = desc.base_is_p ? s2p_closed(gs) : 1.0 / 24.0;
    for (int j = 1; j <= desc.m; ++j) {
        const double qj = base + j * (p + 1.0);
        const double lp = l_constant(p, qj - p + 1.0).value;
        const double boundary =
            (std::pow(xi, qj - p + 1.0) -
             std::sqrt(2.0 * (p + 1.0)) *
                 std::pow(xi, (2.0 * qj - 3.0 * p + 3.0) / 2.0) * lp) /
            (qj - p + 1.0);
        s = (p + 1.0) / (2.0 * qj - p + 1.0) *
            (boundary + 2.0 * (qj - p) / (p + 1.0) * std::pow(xi, p + 1.0) * s);
    }
    return MomentConstant{Kind::S, 2.0, q, p, s, Method::recursion};
}

MomentConstant s_rp_reduction(const GroundState& gs, int r) {
    if (r < 2) throw std::domain_error("s_rp_reduction: requires r >= 2");
    const double p = gs.p();
    const double xi = gs.xi();

    double s_lower;
    Method method;
    if (r == 2) {
        s_lower = s0_closed(gs, 1.0);  // S_{0,1}
        method = Method::recursion;
    } else {
        s_lower = s_quadrature(gs, static_cast<double>(r - 2), 1.0).value;
        method = Method::quadrature;
    }
    const double rr = static_cast<double>(r);
    const double value =
        rr * std::pow(0.5, rr - 1.0) * xi - rr * (rr - 1.0) * s_lower;
    return MomentConstant{Kind::S, rr, p, p, value, method};
}

MomentConstant m_quadrature(const GroundState& gs, double n, double q, double tol) {
    Integrand g{[&gs, n, q](double x) {
                    return std::pow(1.0 - x, n) * std::pow(gs.evaluate_w(x), q);
                },
                Singularity::none};
    QuadratureResult r = integrate_adaptive(g, 0.0, 1.0, tol);
    if (!r.converged) throw QuadratureError("m_quadrature: did not converge");
    return MomentConstant{Kind::M, n, q, gs.p(), r.value, Method::quadrature};
}

MomentConstant r_quadrature(const GroundState& gs, double k, double q, double tol) {
    Integrand g{[&gs, k, q](double x) {
                    return std::pow(x, k) * std::pow(gs.evaluate_w(x), q);
                },
                Singularity::none};
    QuadratureResult r = integrate_adaptive(g, 0.0, 1.0, tol);
    if (!r.converged) throw QuadratureError("r_quadrature: did not converge");
    return MomentConstant{Kind::R, k, q, gs.p(), r.value, Method::quadrature};
}

MomentConstant m_constant(const GroundState& gs, int n, double q) {
    if (n < 0) throw std::domain_error("m_constant: requires n >= 0");
    const double p = gs.p();
    const double xi = gs.xi();
    const double nn = static_cast<double>(n);
    auto make = [&](double v, Method m) {
        return MomentConstant{Kind::M, nn, q, p, v, m};
    };

    if (n == 0) return make(2.0 * s0_closed(gs, q), Method::closed_form);
    if (n == 1) return make(s0_closed(gs, q), Method::closed_form);

    if (n == 2) {
        try {
            const double v = s0_closed(gs, q) - 2.0 * s1_recursion(gs, q).value +
                             2.0 * s2_recursion(gs, q).value;
            return make(v, Method::recursion);
        } catch (const UnsupportedIndexError&) {
            // fall through to quadrature
        }
    }

    if (near(q, p)) {
        if (n == 3) {
            const double v =
                std::sqrt(2.0 / (p + 1.0)) * std::pow(xi, (p + 1.0) / 2.0) -
                3.0 * std::sqrt(2.0 * (p + 1.0)) * std::pow(xi, (3.0 - p) / 2.0) *
                    l_constant(p, 1.0).value;
            return make(v, Method::closed_form);
        }
        // Binomial reduction through S_{r,p}: full closed forms for r <= 2,
        // the S_{r-2,1} inputs for r >= 3 come from quadrature.
        auto s_rp = [&](int r) -> MomentConstant {
            if (r == 0) return s_closed_form(gs, 0.0, p);
            if (r == 1) return s_closed_form(gs, 1.0, p);
            return s_rp_reduction(gs, r);
        };
        double sum = 0.0;
        Method method = Method::recursion;
        for (int r = 0; r <= n - 1; ++r) {
            const MomentConstant s = s_rp(r);
            if (s.method == Method::quadrature) method = Method::quadrature;
            sum += ((r % 2 == 0) ? 1.0 : -1.0) * binomial(n, r) * s.value;
        }
        if (n % 2 == 0) {
            const MomentConstant s = s_rp(n);
            if (s.method == Method::quadrature) method = Method::quadrature;
            sum += 2.0 * s.value;
        }
        return make(sum, method);
    }

    return m_quadrature(gs, nn, q);
}

MomentConstant r_constant(const GroundState& gs, int k, double q) {
    if (k < 0) throw std::domain_error("r_constant: requires k >= 0");
    const double p = gs.p();
    const double kk = static_cast<double>(k);
    auto make = [&](double v, Method m) {
        return MomentConstant{Kind::R, kk, q, p, v, m};
    };

    if (k == 0) return make(2.0 * s0_closed(gs, q), Method::closed_form);
    if (k == 1) return make(s0_closed(gs, q), Method::closed_form);
    if (k == 2) {
        try {
            const double v = s0_closed(gs, q) - 2.0 * s1_recursion(gs, q).value +
                             2.0 * s2_recursion(gs, q).value;
            return make(v, Method::recursion);
        } catch (const UnsupportedIndexError&) {
            // fall through
        }
    }
    return r_quadrature(gs, kk, q);
}

}  // namespace kirchhoff
