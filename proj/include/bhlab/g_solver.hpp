#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bhlab/grid.hpp"
#include "bhlab/kernels.hpp"

namespace bhlab {

struct g_config {
    double eps = 0.0;
    // Number of Taylor orders kept in the analytic image-tail correction on
    // periodic grids (images |m| >= 2; the m = 0, +-1 windows are exact).
    int tail_terms = 16;
    // Crossover to the series branch of the kernel family.
    double series_switch = 1e-3;
};

// Right-hand side of the transformed evolution in divergence form,
//   g_t = H[g] - (eps^2/pi) d/dxi  int (xi - xi~) g_xi~ phi(c) dxi~,
// c the difference quotient of g.  On periodic grids the kernel is summed
// over all integer translates of the domain: three windows exactly, the
// rest via cached lattice-sum tables.  On line grids the integral is
// truncated at the grid ends.
field rhs_g_phi(const field& g, const g_config& cfg);

// Same operator with the xi-derivative taken under the integral sign
// analytically (integrand phi_c(c) [g~ c_xi~ - (xi - xi~) g~' c_xi], with
// the diagonal limit phi_c(g') g g''/2).  Used as an independent check of
// the divergence form; on periodic grids only the three exact windows are
// included, so agreement there is limited to the image-tail scale.
field rhs_g_expanded(const field& g, const g_config& cfg);

// Dense difference-quotient matrix c[i][j] = (g_i - g_j)/(xi_i - xi_j),
// diagonal c[i][i] = g_xi(xi_i).  Raw node differences on both grid kinds
// (no periodic images), mainly for line-grid analysis.
std::vector<std::vector<double>> difference_quotient(const field& g);

struct g_sample {
    double t = 0.0;
    double l2 = 0.0;        // ||g||
    double h2semi = 0.0;    // ||g_xixi||
    double cert = 0.0;      // N eps ||g||^(1/4) ||g_xixi||^(3/4)
    double bound_rhs = 0.0; // (1/2) eps^2 A ||g0||^(1/2) ||g_xixi||^(5/2)
};

struct g_trajectory {
    std::vector<g_sample> samples;
    std::vector<std::pair<double, field>> checkpoints;
    bool regime_exit = false;   // smallness certificate left (0, 1/2]
    double t_exit = 0.0;
    std::string exit_reason;
    double dt = 0.0;
    long steps = 0;
};

// RK4 integration of the divergence-form evolution.  The smallness
// certificate is monitored every step; if it exceeds 1/2 the run halts and
// regime_exit is set (the a-priori estimates no longer apply, so continuing
// would certify nothing).  Snapshots are captured at the step nearest each
// requested checkpoint time.
g_trajectory integrate_g(const field& g0, double t_end, double dt,
                         double sample_interval, const g_config& cfg,
                         const std::vector<double>& checkpoint_times = {});

// First time ||g_xixi|| reaches twice its initial value, linearly
// interpolated between samples; nullopt if it never does.
std::optional<double> h2_doubling_time(const g_trajectory& traj);

// A-posteriori check of the energy inequality
//   d/dt ||g_xixi|| <= (1/2) eps^2 A ||g0||^(1/2) ||g_xixi||^(5/2)
// against centered differences of the sampled norms.  slack covers the
// differencing error.
struct energy_budget_report {
    double E0 = 0.0;             // ||g0||^(1/4) ||g0_xixi||^(3/4)
    double eps_threshold = 0.0;  // 1/(2 sqrt(2) N E0)
    double lifespan_coef = 0.0;  // 2/(3 A E0^2); guaranteed horizon coef/eps^2
    double max_violation = 0.0;  // max over interior samples of observed - bound
    double slack = 0.0;
    bool ok = false;
    // one row per interior sample: {t, observed d/dt, bound}
    std::vector<std::array<double, 3>> rows;
};
energy_budget_report energy_budget(const g_trajectory& traj, double eps);

// Two-path consistency check on a periodic grid: path A evolves u under the
// original equation and transforms u -> h -> g at each checkpoint; path B
// transforms once at t = 0 and evolves g directly.  Both use RK4 with the
// same dt.  sup_err[k] is the node-wise sup difference at checkpoint k.
struct cross_validate_report {
    std::vector<double> times;
    std::vector<double> sup_err;
    std::vector<double> l2_err;
    std::vector<double> cert_a;     // transform certificate along path A
    bool precondition_lost = false; // sup|eps h_x| left the contraction range
    double dt = 0.0;
    std::size_t steps = 0;
};
cross_validate_report cross_validate(const field& u0, double eps, double t_end,
                                     int checkpoints, double dt,
                                     const g_config& cfg);

}  // namespace bhlab
