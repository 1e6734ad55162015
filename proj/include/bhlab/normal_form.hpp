#pragma once

#include <vector>

#include "bhlab/grid.hpp"

namespace bhlab {

// Dependent-variable counterpart of the coordinate change: v = u + B(u,u)
// with B(u,u) = (eps/2) |dx| (h^2), h = H[u] and |dx| = H o d/dx.  The
// quadratic term it removes reappears as a cubic one in the v-equation.
struct nf_pair {
    field u;
    field v;
    double eps = 0.0;
};

// v = u + (eps/2) H[(h^2)_x] with the square dealiased.  Periodic mean-zero
// u only.
nf_pair nf_forward(const field& u, double eps);

// Residual diagnostics along a trajectory of the original equation:
//   res_transformed  v_t + (eps^2/2)|dx|[ h |dx|(u^2) ] - H[v]   (cubic balance)
//   res_linear_v     v_t - H[v]                                  (O(eps^2))
//   res_linear_u     u_t - H[u]                                  (O(eps))
// v_t, u_t by 4th-order central differencing of snapshots taken every
// dt_sample, so the first/last two sample times carry no rows.  The cubic
// balance should sit at the differencing + discretization floor, while the
// two linear residuals expose the order gained by the transformation.
struct nf_residual_report {
    std::vector<double> times;
    std::vector<double> res_transformed_sup;
    std::vector<double> res_transformed_l2;
    std::vector<double> res_linear_v_sup;
    std::vector<double> res_linear_u_sup;
    double dt = 0.0;
    double dt_sample = 0.0;
};
nf_residual_report nf_residual(const field& u0, double eps, double t_end,
                               double dt, double dt_sample);

// Solve g = h - eps*h*h_x for h by marching h_eps = h*h_x from h|_{eps=0} = g
// along characteristics -- which is exactly the coordinate change, so this
// returns the inverse map evaluated on g's own grid.  Requires
// sup|eps*g_xi| <= 1/2.
field nf_invert_ode(const field& g, double eps);

// sup|forward_solve(h,eps).g - (h - eps*h*h_x)| for each eps, plus the
// log-log slope fitted over the nonzero entries (expected 2: the two
// transforms agree to first order in eps).
struct transform_comparison {
    std::vector<double> eps_values;
    std::vector<double> diff_sup;
    double slope = 0.0;
    double intercept = 0.0;
};
transform_comparison compare_transforms(const field& h, const std::vector<double>& eps_list);

}  // namespace bhlab
