#include "kirchhoff/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

// Gauss-Kronrod (7,15) abscissae and weights on [-1,1], positive half.
// Indices 1, 3, 5, 7 are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double integral;
    double error;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

double eval_checked(const std::function<double(double)>& f, double s) {
    const double v = f(s);
    if (std::isnan(v)) {
        std::ostringstream os;
        os << "integrand returned NaN at s = " << s;
        throw QuadratureError(os.str());
    }
    return v;
}

Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = eval_checked(f, c);
    double resk = kKronrodWeights[7] * fc;
    double resg = kGaussWeights[3] * fc;
    double resabs = std::abs(resk);

    std::array<double, 7> flo{}, fhi{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        flo[j] = eval_checked(f, c - dx);
        fhi[j] = eval_checked(f, c + dx);
        const double sum = flo[j] + fhi[j];
        resk += kKronrodWeights[j] * sum;
        resabs += kKronrodWeights[j] * (std::abs(flo[j]) + std::abs(fhi[j]));
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * sum;
    }
    evals += 15;

    const double reskh = 0.5 * resk;
    double resasc = kKronrodWeights[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kKronrodWeights[j] *
                  (std::abs(flo[j] - reskh) + std::abs(fhi[j] - reskh));
    }
    resasc *= h;

    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    // Round-off floor: cannot claim less error than ~50 eps of |integral|.
    err = std::max(err, 50.0 * 1.1e-16 * resabs * std::abs(h));

    return Panel{a, b, resk * h, err};
}

QuadratureResult integrate_smooth(const std::function<double(double)>& f, double a,
                                  double b, double tol, long max_evaluations) {
    long evals = 0;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;

    Panel p0 = gk15(f, a, b, evals);
    double total = p0.integral;
    double toterr = p0.error;
    heap.push(p0);

    auto done = [&] {
        return toterr <= std::max(tol, tol * std::abs(total));
    };

    while (!done() && evals + 30 <= max_evaluations) {
        Panel worst = heap.top();
        if (worst.b - worst.a < 1e-15 * (std::abs(worst.a) + std::abs(worst.b) + 1.0)) {
            break;  // interval no longer refinable in double precision
        }
        heap.pop();
        total -= worst.integral;
        toterr -= worst.error;

        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, mid, evals);
        Panel right = gk15(f, mid, worst.b, evals);
        total += left.integral + right.integral;
        toterr += left.error + right.error;
        heap.push(left);
        heap.push(right);
    }

    return QuadratureResult{total, std::max(toterr, 0.0), evals, done()};
}

}  // namespace

double one_minus_pow(double z, double e) {
    if (z >= 1.0) return 1.0;
    return -std::expm1(e * std::log1p(-z));
}

QuadratureResult integrate_adaptive(const Integrand& g, double a, double b, double tol,
                                    long max_evaluations) {
    if (!(a < b)) throw std::domain_error("integrate_adaptive: requires a < b");
    if (!(tol > 0.0)) throw std::domain_error("integrate_adaptive: requires tol > 0");

    if (g.singularity == Singularity::inverse_sqrt_right) {
        // u^2 = b - s maps the endpoint singularity to a bounded integrand.
        const auto& f = g.f;
        auto transformed = [&f, b](double u) { return 2.0 * u * f(b - u * u); };
        return integrate_smooth(transformed, 0.0, std::sqrt(b - a), tol,
                                max_evaluations);
    }
    return integrate_smooth(g.f, a, b, tol, max_evaluations);
}

double beta_oracle(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("beta_oracle: arguments must be positive");
    }
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

MomentConstant l_constant(double k, double d, double tol) {
    if (!(k > 0.0)) throw std::domain_error("l_constant: requires k > 0");
    if (!(d >= 0.0)) throw std::domain_error("l_constant: requires d >= 0");

    // Substitution s = 1 - u^2; the denominator 1 - s^{k+1} ~ (k+1) u^2 is
    // computed through expm1/log1p so the quotient stays accurate as u -> 0.
    const double e = k + 1.0;
    Integrand transformed{
        [d, e](double u) {
            const double z = u * u;             // 1 - s
            const double s = 1.0 - z;
            const double denom = one_minus_pow(z, e);
            return 2.0 * u * std::pow(s, d) / std::sqrt(denom);
        },
        Singularity::none};

    QuadratureResult r = integrate_adaptive(transformed, 0.0, 1.0, tol);
    if (!r.converged) {
        std::ostringstream os;
        os << "l_constant(" << k << ", " << d << "): quadrature did not converge, "
           << "error estimate " << r.error_estimate;
        throw QuadratureError(os.str());
    }
    return MomentConstant{Kind::L, k, d, 0.0, r.value, Method::quadrature};
}

}  // namespace kirchhoff
