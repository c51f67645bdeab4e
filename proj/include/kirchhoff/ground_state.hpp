#pragma once

#include <cstddef>
#include <vector>

#include "kirchhoff/quadrature.hpp"

namespace kirchhoff {

/// sup-norm of the ground state: (2(p+1))^{1/(p-1)} L_{p,0}^{2/(p-1)}.
double sup_norm_xi(double p);

/// The unique positive solution W of -W'' = W^p on (0,1), W(0) = W(1) = 0,
/// represented through its time map x(w) and an inverse table for fast
/// bracketed inversion. Immutable after construction; safe to share across
/// threads.
class GroundState {
public:
    explicit GroundState(double p);

    double p() const { return p_; }
    double xi() const { return xi_; }

    /// x(w) on [0, 1/2]: position at which the rising branch reaches height w.
    /// Strictly increasing; x(0) = 0, x(xi) = 1/2.
    double time_map_x_of_w(double w) const;

    /// W(x) on [0, 1], by reflection about x = 1/2 and bracketed inversion of
    /// the time map on the left half.
    double evaluate_w(double x) const;

    /// W'(x) from the energy identity; positive on [0, 1/2), zero at 1/2,
    /// negative beyond by reflection.
    double evaluate_w_prime(double x) const;

private:
    double time_map_of_ratio(double r) const;  // integral of 1/sqrt(1 - s^{p+1})

    double p_;
    double xi_;
    double l_p0_;    // L_{p,0}
    double coeff_;   // sqrt((p+1)/2) * xi^{(1-p)/2}
    std::vector<double> table_w_;  // strictly increasing, table_w_[0] = 0
    std::vector<double> table_x_;  // matching x(w) values, ends at 1/2
};

/// Fixed-step RK4 integration of -W'' = W^p from W(0) = 0 with the exact
/// initial slope, returning W on the uniform mesh x_i = i/mesh_size
/// (mesh_size + 1 values). Test oracle; not used by evaluation paths.
std::vector<double> shoot_ode_oracle(double p, std::size_t mesh_size);

}  // namespace kirchhoff
