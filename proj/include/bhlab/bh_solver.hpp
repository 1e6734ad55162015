#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bhlab/grid.hpp"
#include "bhlab/spectral.hpp"

namespace bhlab {

// u_t + eps*u*u_x = H[u], integrated pseudospectrally (periodic) or with
// finite differences and the principal-value Hilbert sum (line).
struct bh_config {
    double eps = 0.0;
    bool include_hilbert = true;   // off: pure advection test mode
    bool include_nonlinear = true; // off: exact rotation test mode
};

struct bh_state {
    double t = 0.0;
    field u;
};

// -eps*u*u_x + H[u] with the quadratic product dealiased on periodic grids.
field rhs_u(const field& u, const bh_config& cfg);

// One classical RK4 step.  Refuses steps beyond the advective stability
// bound dt <= C * spacing / (eps * sup|u|) with C = 2 (the working policies
// below stay a factor of several under it).
void step_rk4(bh_state& s, double dt, const bh_config& cfg);

// u0*cos(t) + H[u0]*sin(t), the exact eps = 0 solution.
field exact_linear_solution(const field& u0, double t);

// 1 / (eps * max(-u0_x)); +infinity when u0_x >= 0 everywhere.
double burgers_breaking_time(const field& u0, double eps);

struct blowup_criterion {
    double slope_factor = 50.0;  // fire when sup|u_x| >= factor * initial
    double tail_fraction = 1e-4; // or when the spectral tail fraction exceeds this
};

struct dt_policy {
    enum class kind { fixed, cfl };
    kind type = kind::cfl;
    double dt = 0.01;      // fixed value
    double cap = 0.01;     // upper bound for the cfl policy
    double cfl_c = 0.25;   // dt = min(cap, c * spacing / (eps * sup|u0|))
    double resolve(const field& u0, double eps) const;
};

struct sample_point {
    double t = 0.0;
    double l2 = 0.0;
    double h2 = 0.0; // second-derivative seminorm
    double sup_ux = 0.0;
    double tail_fraction = 0.0;
};

struct breaking_report {
    bool detected = false;
    double t_threshold = 0.0; // first time a detector fired
    double t_breaking = 0.0;  // linear extrapolation of 1/sup|u_x| to zero
    std::string reason;       // "slope", "tail" or "" when censored
};

struct trajectory {
    std::vector<sample_point> samples;
    breaking_report breaking;
    double dt = 0.0;
    long steps = 0;
};

// Integrate until t_end or until a detector fires.  Near breaking the slope
// monitor switches to per-step sampling so that the 1/sup|u_x| extrapolation
// has a well-resolved approach window.
trajectory integrate_until(bh_state& s, double t_end, const blowup_criterion& crit,
                           const dt_policy& pol, double sample_interval, const bh_config& cfg,
                           const std::function<void(const bh_state&)>& on_sample = nullptr);

}  // namespace bhlab
