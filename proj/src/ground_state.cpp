#include "kirchhoff/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

constexpr std::size_t kTableSize = 2048;
constexpr double kTimeMapTol = 5e-13;
constexpr double kInvertTolX = 1e-12;
constexpr double kXiSliver = 1e-8;  // relative band around w = xi mapped to x = 1/2

}  // namespace

double sup_norm_xi(double p) {
    if (!(p > 1.0)) throw std::domain_error("sup_norm_xi: requires p > 1");
    const double l = l_constant(p, 0.0).value;
    return std::pow(2.0 * (p + 1.0), 1.0 / (p - 1.0)) *
           std::pow(l, 2.0 / (p - 1.0));
}

GroundState::GroundState(double p) : p_(p) {
    if (!(p > 1.0)) throw std::domain_error("GroundState: requires p > 1");
    l_p0_ = l_constant(p, 0.0).value;
    xi_ = std::pow(2.0 * (p + 1.0), 1.0 / (p - 1.0)) *
          std::pow(l_p0_, 2.0 / (p - 1.0));
    coeff_ = std::sqrt((p + 1.0) / 2.0) * std::pow(xi_, (1.0 - p) / 2.0);

    // Nodes clustered near w = xi where dx/dw has the inverse-square-root
    // flattening: w_i = xi * sin(pi/2 * i/(N-1)).
    table_w_.reserve(kTableSize);
    table_x_.reserve(kTableSize);
    constexpr double half_pi = 1.5707963267948966;
    double prev_x = -1.0;
    for (std::size_t i = 0; i < kTableSize; ++i) {
        const double w = xi_ * std::sin(half_pi * static_cast<double>(i) /
                                        static_cast<double>(kTableSize - 1));
        const double x = time_map_x_of_w(std::min(w, xi_));
        if (x <= prev_x) continue;  // drop ties from the x = 1/2 sliver
        table_w_.push_back(w);
        table_x_.push_back(x);
        prev_x = x;
    }
    if (table_x_.back() < 0.5) {
        table_w_.push_back(xi_);
        table_x_.push_back(0.5);
    }
}

double GroundState::time_map_of_ratio(double r) const {
    const double e = p_ + 1.0;
    if (r <= 0.75) {
        Integrand g{[e](double s) { return 1.0 / std::sqrt(1.0 - std::pow(s, e)); },
                    Singularity::none};
        QuadratureResult res = integrate_adaptive(g, 0.0, r, kTimeMapTol);
        return res.value;
    }
    // Complement through the singular tail, with the substitution s = 1 - u^2
    // applied explicitly so 1 - s^{p+1} is formed without cancellation.
    Integrand tail{[e](double u) {
                       const double denom = one_minus_pow(u * u, e);
                       return 2.0 * u / std::sqrt(denom);
                   },
                   Singularity::none};
    QuadratureResult res =
        integrate_adaptive(tail, 0.0, std::sqrt(1.0 - r), kTimeMapTol);
    return l_p0_ - res.value;
}

double GroundState::time_map_x_of_w(double w) const {
    if (w < -1e-12 * xi_ || w > xi_ * (1.0 + 1e-12)) {
        throw std::domain_error("time_map_x_of_w: w outside [0, xi]");
    }
    if (w <= 0.0) return 0.0;
    if (xi_ - w <= kXiSliver * xi_) return 0.5;
    return coeff_ * time_map_of_ratio(w / xi_);
}

double GroundState::evaluate_w(double x) const {
    if (x < -1e-12 || x > 1.0 + 1e-12) {
        throw std::domain_error("evaluate_w: x outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    if (x > 0.5) x = 1.0 - x;
    if (x <= 0.0) return 0.0;
    if (0.5 - x <= 1e-13) return xi_;

    // Bracket from the inverse table.
    auto it = std::upper_bound(table_x_.begin(), table_x_.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - table_x_.begin());
    if (hi == 0) hi = 1;
    if (hi >= table_x_.size()) hi = table_x_.size() - 1;
    double wlo = table_w_[hi - 1], whi = table_w_[hi];
    double flo = table_x_[hi - 1] - x, fhi = table_x_[hi] - x;
    if (flo > 0.0) { wlo = 0.0; flo = -x; }
    if (fhi < 0.0) { whi = xi_; fhi = 0.5 - x; }

    // Secant with bisection safeguard on the monotone residual x(w) - x.
    for (int iter = 0; iter < 200; ++iter) {
        double w;
        const double df = fhi - flo;
        if (df != 0.0) {
            w = wlo - flo * (whi - wlo) / df;
            const double margin = 1e-3 * (whi - wlo);
            if (!(w > wlo + margin && w < whi - margin)) {
                w = 0.5 * (wlo + whi);
            }
        } else {
            w = 0.5 * (wlo + whi);
        }
        const double fw = time_map_x_of_w(w) - x;
        if (std::abs(fw) <= kInvertTolX) return w;
        if (fw < 0.0) { wlo = w; flo = fw; }
        else { whi = w; fhi = fw; }
        if (whi - wlo <= 1e-15 * xi_) break;
    }
    return 0.5 * (wlo + whi);
}

double GroundState::evaluate_w_prime(double x) const {
    if (x < -1e-12 || x > 1.0 + 1e-12) {
        throw std::domain_error("evaluate_w_prime: x outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    const double sign = (x <= 0.5) ? 1.0 : -1.0;
    const double w = evaluate_w(std::min(x, 1.0 - x));
    const double energy = std::pow(xi_, p_ + 1.0) - std::pow(w, p_ + 1.0);
    return sign * std::sqrt(std::max(0.0, 2.0 / (p_ + 1.0) * energy));
}

std::vector<double> shoot_ode_oracle(double p, std::size_t mesh_size) {
    if (!(p > 1.0)) throw std::domain_error("shoot_ode_oracle: requires p > 1");
    if (mesh_size < 100) {
        throw std::domain_error("shoot_ode_oracle: requires mesh_size >= 100");
    }
    const double xi = sup_norm_xi(p);
    const double h = 1.0 / static_cast<double>(mesh_size);

    auto accel = [p](double w) { return -std::pow(std::max(w, 0.0), p); };

    std::vector<double> profile(mesh_size + 1);
    double w = 0.0;
    double v = std::sqrt(2.0 / (p + 1.0)) * std::pow(xi, (p + 1.0) / 2.0);
    profile[0] = w;
    for (std::size_t i = 0; i < mesh_size; ++i) {
        const double k1w = v, k1v = accel(w);
        const double k2w = v + 0.5 * h * k1v, k2v = accel(w + 0.5 * h * k1w);
        const double k3w = v + 0.5 * h * k2v, k3v = accel(w + 0.5 * h * k2w);
        const double k4w = v + h * k3v, k4v = accel(w + h * k3w);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (w > 10.0 * xi) {
            std::ostringstream os;
            os << "shoot_ode_oracle: blow-up at x = " << (i + 1) * h
               << " (w = " << w << ", xi = " << xi << ")";
            throw OracleFailure(os.str());
        }
        profile[i + 1] = w;
    }
    return profile;
}

}  // namespace kirchhoff
