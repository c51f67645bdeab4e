#pragma once

#include "kirchhoff/ground_state.hpp"
#include "kirchhoff/moment_constant.hpp"

namespace kirchhoff {

/// S_{k,d} = integral over [0, 1/2] of x^k W(x)^d, by adaptive quadrature
/// sampling evaluate_w directly.
MomentConstant s_quadrature(const GroundState& gs, double k, double d,
                            double tol = kDefaultQuadTol);

/// Closed forms for S_{k,d}. Supported pairs: (1,0), (2,0), (2,p), and
/// (0,d) for arbitrary d >= 0 (this covers (0,1), (0,p) and (0,q)), plus
/// (1,p). Anything else throws NoClosedFormError; callers fall back to
/// s_quadrature.
MomentConstant s_closed_form(const GroundState& gs, double k, double d);

/// S_{1,q} by the integration-by-parts recursion in steps of p+1, valid when
/// q = m(p+1) or q = m(p+1)+p for integer m >= 0. Terminates at S_{1,0} = 1/8
/// or S_{1,p} = xi.
MomentConstant s1_recursion(const GroundState& gs, double q);

/// S_{2,q}, same descent, terminating at S_{2,0} = 1/24 or the S_{2,p}
/// closed form.
MomentConstant s2_recursion(const GroundState& gs, double q);

/// S_{r,p} = r (1/2)^{r-1} xi - r(r-1) S_{r-2,1} for integer r >= 2.
/// S_{0,1} has a closed form; S_{k,1} for k >= 1 does not and is supplied by
/// quadrature (the result is then tagged quadrature).
MomentConstant s_rp_reduction(const GroundState& gs, int r);

/// M_{n,q} = integral over [0,1] of (1-x)^n W(x)^q, by the most specific
/// available closed form or recursion, with a quadrature fallback that always
/// exists. The method field records the path taken.
MomentConstant m_constant(const GroundState& gs, int n, double q);

/// R_{k,q} = integral over [0,1] of x^k W(x)^q. Uses R_{1,q} = S_{0,q} and
/// R_{2,q} = S_{0,q} - 2 S_{1,q} + 2 S_{2,q} where the recursions apply.
MomentConstant r_constant(const GroundState& gs, int k, double q);

/// M_{n,q} (or R_{k,q}) by direct full-interval quadrature; the independent
/// counterpart for the closed-form/recursion paths.
MomentConstant m_quadrature(const GroundState& gs, double n, double q,
                            double tol = kDefaultQuadTol);
MomentConstant r_quadrature(const GroundState& gs, double k, double q,
                            double tol = kDefaultQuadTol);

}  // namespace kirchhoff
