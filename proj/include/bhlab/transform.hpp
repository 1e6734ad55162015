#pragma once

#include <vector>

#include "bhlab/grid.hpp"
#include "bhlab/spectral.hpp"

namespace bhlab {

// Near-identity change of variables x = xi - eps*g(xi) with g(xi) = h(x).
// The pair (g, eps) fully determines the map; slope_cert = sup|eps * g_xi|
// certifies invertibility (< 1) and controls every norm-equivalence factor.
struct transform_pair {
    field g;            // g sampled on the xi grid (same grid as the input h)
    double eps = 0.0;
    double slope_cert = 0.0;
    int iterations = 0;
    double final_update = 0.0;
    std::vector<double> updates; // sup-norm update per fixed-point iteration
};

struct transform_options {
    double tol = 1e-13;   // stop when the sup-norm update falls below this
    int max_iter = 200;
    bool newton_polish = false; // one Newton correction after the fixed point
};

// Solve g(xi) = h(xi - eps*g(xi)) by fixed-point iteration starting from
// g = h.  Requires sup|eps*h_x| <= 1/3, which certifies slope_cert <= 1/2.
transform_pair forward_solve(const field& h, double eps, const transform_options& opt = {});

// Wrap an externally produced g (e.g. from the transformed evolution) with a
// freshly computed certificate; errors if the map is not invertible.
transform_pair pair_from_g(const field& g, double eps);

// Evaluate h on the given x grid by interpolating the scattered monotone
// pairs (xi_i - eps*g_i, g_i) with local 6-point Lagrange polynomials.
field inverse_eval(const transform_pair& p, const grid& x_grid);

// h_x and h_xx at the transformed nodes via the chain rule
//   h_x = g_xi / (1 - eps*g_xi),  h_xx = g_xixi / (1 - eps*g_xi)^3.
struct chain_derivs {
    std::vector<double> h_x;
    std::vector<double> h_xx;
};
chain_derivs chain_derivatives(const transform_pair& p);

// Norm transfer between the two coordinate systems:
//   integral of h^2 dx      =  integral of g^2 (1 - eps*g_xi) dxi
//   integral of h_xx^2 dx   =  integral of g_xixi^2 / (1 - eps*g_xi)^5 dxi
// plus the resulting two-sided comparison
//   (2/3)^(5/2) ||g_xixi|| <= ||h_xx|| <= 2^(5/2) ||g_xixi||
// valid whenever slope_cert <= 1/2.
struct norm_transfer_report {
    double l2_h = 0.0;        // direct quadrature of h on the x grid
    double l2_g = 0.0;        // quadrature of g on the xi grid
    double l2_residual = 0.0;
    double h2_h = 0.0;        // direct ||h_xx|| on the x grid
    double h2_weighted = 0.0; // weighted xi-quadrature of the same integral
    double h2_residual = 0.0;
    double h2semi_g = 0.0;    // ||g_xixi||
    double sandwich_lo = 0.0;
    double sandwich_hi = 0.0;
    bool sandwich_ok = false;
};
norm_transfer_report norm_transfer(const transform_pair& p);

// Interpolation inequality sup|g_xi| <= sqrt(8/3) ||g||^(1/4) ||g_xixi||^(3/4).
struct gn_report {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0; // lhs / rhs
    bool ok = false;
};
gn_report gn_check(const field& g);

}  // namespace bhlab
