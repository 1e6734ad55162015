#include "bhlab/bh_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bhlab {

namespace {

// Fused periodic right-hand side: one forward transform feeds both the
// Hilbert multiplier and the derivative multiplier, and the product is
// dealiased with the 2/3 rule.
field rhs_periodic(const field& u, const bh_config& cfg) {
    std::size_t n = u.g.size();
    auto c = spectrum(u);
    field rhs = field::zeros(u.g);

    if (cfg.include_nonlinear && cfg.eps != 0.0) {
        auto cd = c;
        double inv_scale = 1.0 / u.g.scale();
        for (std::size_t k = 0; k <= n / 2; ++k)
            cd[k] *= std::complex<double>(0.0, double(k) * inv_scale);
        cd[n / 2] = 0.0;
        field ux = field_from_spectrum(u.g, std::move(cd));
        field prod = field::zeros(u.g);
        for (std::size_t i = 0; i < n; ++i) prod.v[i] = u.v[i] * ux.v[i];
        prod = dealias(prod);
        axpy(-cfg.eps, prod, rhs);
    }
    if (cfg.include_hilbert) {
        auto ch = std::move(c);
        ch[0] = 0.0;
        for (std::size_t k = 1; k < n / 2; ++k) ch[k] *= std::complex<double>(0.0, -1.0);
        ch[n / 2] = 0.0;
        field hu = field_from_spectrum(u.g, std::move(ch));
        axpy(1.0, hu, rhs);
    }
    return rhs;
}

field rhs_line(const field& u, const bh_config& cfg) {
    field rhs = field::zeros(u.g);
    if (cfg.include_nonlinear && cfg.eps != 0.0) {
        field ux = derivative(u, 1);
        for (std::size_t i = 0; i < u.size(); ++i)
            rhs.v[i] = -cfg.eps * u.v[i] * ux.v[i];
    }
    if (cfg.include_hilbert) axpy(1.0, hilbert(u), rhs);
    return rhs;
}

}  // namespace

field rhs_u(const field& u, const bh_config& cfg) {
    u.check_finite("rhs_u input");
    return u.g.kind() == grid_kind::periodic ? rhs_periodic(u, cfg) : rhs_line(u, cfg);
}

void step_rk4(bh_state& s, double dt, const bh_config& cfg) {
    require(dt != 0.0 && std::isfinite(dt), errc::invalid_argument, "step_rk4: bad dt");
    if (cfg.include_nonlinear && cfg.eps != 0.0) {
        double speed = std::abs(cfg.eps) * sup_norm(s.u);
        if (speed > 0.0) {
            double bound = 2.0 * s.u.g.spacing() / speed;
            require(std::abs(dt) <= bound, errc::precondition,
                    "step_rk4: dt violates the advective stability bound");
        }
    }

    field l1 = rhs_u(s.u, cfg);
    field u2 = s.u;
    axpy(0.5 * dt, l1, u2);
    field l2 = rhs_u(u2, cfg);
    field u3 = s.u;
    axpy(0.5 * dt, l2, u3);
    field l3 = rhs_u(u3, cfg);
    field u4 = s.u;
    axpy(dt, l3, u4);
    field l4 = rhs_u(u4, cfg);

    double w = dt / 6.0;
    for (std::size_t i = 0; i < s.u.size(); ++i)
        s.u.v[i] += w * (l1.v[i] + 2.0 * l2.v[i] + 2.0 * l3.v[i] + l4.v[i]);
    s.t += dt;

    if (s.u.g.kind() == grid_kind::periodic) {
        // Hold the mean-zero invariant against rounding drift.
        double m = s.u.quadrature_mean();
        for (double& x : s.u.v) x -= m;
    }
}

field exact_linear_solution(const field& u0, double t) {
    field h = hilbert(u0);
    field out = u0;
    double c = std::cos(t), s = std::sin(t);
    for (std::size_t i = 0; i < out.size(); ++i) out.v[i] = c * u0.v[i] + s * h.v[i];
    return out;
}

double burgers_breaking_time(const field& u0, double eps) {
    field ux = derivative(u0, 1);
    double m = 0.0;
    for (double x : ux.v) m = std::max(m, -x);
    if (m <= 0.0 || eps == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (std::abs(eps) * m);
}

double dt_policy::resolve(const field& u0, double eps) const {
    if (type == kind::fixed) {
        require(dt > 0.0 && std::isfinite(dt), errc::config, "dt policy: bad fixed dt");
        return dt;
    }
    double speed = std::abs(eps) * sup_norm(u0);
    double value = cap;
    if (speed > 0.0) value = std::min(cap, cfl_c * u0.g.spacing() / speed);
    require(value > 0.0 && std::isfinite(value), errc::config, "dt policy: degenerate dt");
    return value;
}

trajectory integrate_until(bh_state& s, double t_end, const blowup_criterion& crit,
                           const dt_policy& pol, double sample_interval, const bh_config& cfg,
                           const std::function<void(const bh_state&)>& on_sample) {
    require(t_end > s.t, errc::invalid_argument, "integrate_until: t_end must exceed state time");
    require(sample_interval > 0.0, errc::invalid_argument,
            "integrate_until: sample interval must be positive");

    trajectory traj;
    double dt = pol.resolve(s.u, cfg.eps);
    traj.dt = dt;
    long steps_per_sample = std::max(1L, std::lround(sample_interval / dt));

    double sup_ux0 = sup_norm(derivative(s.u, 1));
    require(sup_ux0 > 0.0 || !cfg.include_nonlinear, errc::invalid_argument,
            "integrate_until: flat initial data has no slope reference");

    bool periodic = s.u.g.kind() == grid_kind::periodic;
    std::vector<std::pair<double, double>> approach; // (t, sup|u_x|) near breaking

    auto record = [&](double sup_ux, double tail) {
        sample_point p;
        p.t = s.t;
        p.l2 = l2_norm(s.u);
        p.h2 = l2_norm(derivative(s.u, 2));
        p.sup_ux = sup_ux;
        p.tail_fraction = tail;
        traj.samples.push_back(p);
        if (on_sample) on_sample(s);
    };
    record(sup_ux0, periodic ? tail_energy_fraction(s.u) : 0.0);

    const double t0 = s.t;
    bool near_breaking = false;
    for (long i = 1;; ++i) {
        double target = t0 + double(i) * dt;
        if (target > t_end + 0.5 * dt) break;
        step_rk4(s, dt, cfg);
        s.t = target; // keep the clock free of accumulated addition error

        bool sample_due = (i % steps_per_sample == 0) || target >= t_end - 0.5 * dt;
        if (!sample_due && !near_breaking) continue;

        double sup_ux = sup_norm(derivative(s.u, 1));
        if (sup_ux >= 3.0 * sup_ux0) {
            near_breaking = true;
            approach.emplace_back(s.t, sup_ux);
        }
        double tail = periodic ? tail_energy_fraction(s.u) : 0.0;
        if (sample_due) record(sup_ux, tail);

        bool slope_fired = sup_ux >= crit.slope_factor * sup_ux0;
        bool tail_fired = periodic && tail >= crit.tail_fraction;
        if (slope_fired || tail_fired) {
            if (!sample_due) record(sup_ux, tail);
            traj.breaking.detected = true;
            traj.breaking.t_threshold = s.t;
            traj.breaking.reason = slope_fired ? "slope" : "tail";
            traj.steps = i;

            // Fit 1/sup|u_x| against t over the approach window and
            // extrapolate to zero: for slope blow-up of the generic
            // 1/(t*-t) type the fit is asymptotically linear.
            std::vector<std::pair<double, double>> win;
            for (const auto& [tt, sx] : approach)
                if (sx >= 5.0 * sup_ux0) win.emplace_back(tt, 1.0 / sx);
            // Thin evenly to at most 40 points: the fit should span the whole
            // approach range, not just the last few steps, or the root can
            // sit many window-spans ahead and extrapolation turns hopeless.
            if (win.size() > 40) {
                std::vector<std::pair<double, double>> thin;
                thin.reserve(40);
                for (std::size_t k = 0; k < 40; ++k)
                    thin.push_back(win[k * (win.size() - 1) / 39]);
                win = std::move(thin);
            }
            if (win.size() >= 5) {
                double sx = 0, sy = 0, sxx = 0, sxy = 0;
                for (const auto& [x, y] : win) {
                    sx += x;
                    sy += y;
                    sxx += x * x;
                    sxy += x * y;
                }
                double m = double(win.size());
                double denom = m * sxx - sx * sx;
                double slope = (m * sxy - sx * sy) / denom;
                double icept = (sy - slope * sx) / m;
                if (slope < 0.0) {
                    double root = -icept / slope;
                    // Plausibility: the root must lie ahead of the window but
                    // not further than the window's own time span (after
                    // firing at factor F the remaining time of a generic
                    // 1/(t*-t) blow-up is a small fraction of the approach
                    // span, whatever the time scale of the run is).
                    double span = win.back().first - win.front().first;
                    double reach = std::max(span, 100.0 * dt);
                    if (root >= win.back().first && root <= win.back().first + reach)
                        traj.breaking.t_breaking = root;
                }
            }
            if (traj.breaking.t_breaking == 0.0) traj.breaking.t_breaking = s.t;
            return traj;
        }
        traj.steps = i;
    }
    return traj;
}

}  // namespace bhlab
