#include "bhlab/g_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "bhlab/analysis.hpp"
#include "bhlab/bh_solver.hpp"
#include "bhlab/spectral.hpp"
#include "bhlab/transform.hpp"

namespace bhlab {

namespace {

// Inner quadrature S(xi_i) = sum_{j != i} w_j g'_j B_ij of the divergence
// form.  On periodic grids B_ij sums the kernel over all integer translates:
// the m = 0, +-1 windows exactly and the |m| >= 2 remainder through the
// cached lattice-sum tables (Taylor in dg, geometric in eps*dg/period).
// B is antisymmetric in (i, j) -- raw differences plus a symmetric image
// set -- so g' B g' sums to zero and the outer spectral derivative then
// conserves the discrete L2 norm to round-off.
std::vector<double> inner_integral_periodic(const field& g, const std::vector<double>& gx,
                                            const phi_family& fam, const periodized_tail& tail) {
    const std::size_t n = g.size();
    const double h = g.g.spacing();
    const double P = g.g.period();
    const double eps = fam.eps;
    const int K = tail.terms();
    std::vector<double> S(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double gi = g[i];
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::ptrdiff_t q = std::ptrdiff_t(i) - std::ptrdiff_t(j);
            const double d = double(q) * h;
            const double dg = gi - g[j];
            double B = d * fam.phi(dg / d)
                     + (d - P) * fam.phi(dg / (d - P))
                     + (d + P) * fam.phi(dg / (d + P));
            const double y = eps * dg;
            double pw = dg * dg; // eps^(k-2) dg^k at k = 2
            for (int k = 2; k <= K; ++k) {
                B += pw / double(k) * tail.at(k, q);
                pw *= y;
            }
            acc += gx[j] * B;
        }
        S[i] = h * acc;
    }
    return S;
}

// Line version: plain trapezoid over the truncated domain (the integrand
// decays like the data squared, so truncation error lives at the far ends).
std::vector<double> inner_integral_line(const field& g, const std::vector<double>& gx,
                                        const phi_family& fam) {
    const std::size_t n = g.size();
    const std::vector<double> x = g.g.nodes();
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = g.g.weight(j);
    std::vector<double> S(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i], gi = g[i];
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue; // integrand vanishes linearly on the diagonal
            const double d = xi - x[j];
            acc += w[j] * gx[j] * d * fam.phi((gi - g[j]) / d);
        }
        S[i] = acc;
    }
    return S;
}

field rhs_phi_impl(const field& g, const g_config& cfg, const periodized_tail* tail) {
    field out = hilbert(g);
    if (cfg.eps == 0.0) return out; // eps^2 prefactor kills the integral term
    const phi_family fam{cfg.eps, cfg.series_switch};
    const std::vector<double> gx = derivative(g, 1).v;
    std::vector<double> S = (g.g.kind() == grid_kind::periodic)
                                ? inner_integral_periodic(g, gx, fam, *tail)
                                : inner_integral_line(g, gx, fam);
    field dS = derivative(field(g.g, std::move(S)), 1);
    axpy(-cfg.eps * cfg.eps / std::numbers::pi, dS, out);
    return out;
}

// Classical RK4 step with a caller-supplied right-hand side.
template <class Rhs>
void step_g_rk4(field& g, double dt, Rhs&& rhs) {
    field k1 = rhs(g);
    field y = g;
    axpy(0.5 * dt, k1, y);
    field k2 = rhs(y);
    y = g;
    axpy(0.5 * dt, k2, y);
    field k3 = rhs(y);
    y = g;
    axpy(dt, k3, y);
    field k4 = rhs(y);
    axpy(dt / 6.0, k1, g);
    axpy(dt / 3.0, k2, g);
    axpy(dt / 3.0, k3, g);
    axpy(dt / 6.0, k4, g);
}

}  // namespace

field rhs_g_phi(const field& g, const g_config& cfg) {
    if (g.g.kind() == grid_kind::periodic && cfg.eps != 0.0) {
        periodized_tail tail(g.g, cfg.tail_terms);
        return rhs_phi_impl(g, cfg, &tail);
    }
    return rhs_phi_impl(g, cfg, nullptr);
}

field rhs_g_expanded(const field& g, const g_config& cfg) {
    field out = hilbert(g);
    if (cfg.eps == 0.0) return out;
    const phi_family fam{cfg.eps, cfg.series_switch};
    const std::size_t n = g.size();
    const std::vector<double> x = g.g.nodes();
    const std::vector<double> gx = derivative(g, 1).v;
    const std::vector<double> gxx = derivative(g, 2).v;
    const bool periodic = g.g.kind() == grid_kind::periodic;
    const double P = periodic ? g.g.period() : 0.0;
    const double coef = cfg.eps * cfg.eps / std::numbers::pi;
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = g.g.weight(j);

    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i], gi = g[i];
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d0 = xi - x[j];
            const double dg = gi - g[j];
            double e = 0.0;
            for (int m = periodic ? -1 : 0; m <= (periodic ? 1 : 0); ++m) {
                const double d = d0 - P * double(m);
                if (j == i && m == 0) {
                    // diagonal limit: c -> g', c_xi and c_xi~ -> g''/2
                    e += fam.phi_c(gx[i]) * gi * gxx[i] * 0.5;
                    continue;
                }
                const double c = dg / d;
                const double cxt = (c - gx[j]) / d;  // d c / d xi~
                const double cx = -(c - gx[i]) / d;  // d c / d xi
                e += fam.phi_c(c) * (g[j] * cxt - d * gx[j] * cx);
            }
            acc += w[j] * e;
        }
        out[i] += coef * acc;
    }
    return out;
}

std::vector<std::vector<double>> difference_quotient(const field& g) {
    const std::size_t n = g.size();
    const std::vector<double> x = g.g.nodes();
    const std::vector<double> gx = derivative(g, 1).v;
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            c[i][j] = (i == j) ? gx[i] : (g[i] - g[j]) / (x[i] - x[j]);
    }
    return c;
}

g_trajectory integrate_g(const field& g0, double t_end, double dt,
                         double sample_interval, const g_config& cfg,
                         const std::vector<double>& checkpoint_times) {
    g0.check_finite("integrate_g initial data");
    require(t_end >= 0.0 && dt > 0.0 && sample_interval > 0.0, errc::invalid_argument,
            "integrate_g: t_end, dt and sample_interval must be positive");
    const long steps = std::lround(t_end / dt);
    require(std::abs(double(steps) * dt - t_end) <= 1e-8 * std::max(dt, t_end),
            errc::invalid_argument, "integrate_g: t_end must be a whole number of steps");

    std::optional<periodized_tail> tail;
    if (g0.g.kind() == grid_kind::periodic && cfg.eps != 0.0)
        tail.emplace(g0.g, cfg.tail_terms);
    auto rhs = [&](const field& f) { return rhs_phi_impl(f, cfg, tail ? &*tail : nullptr); };

    const estimate_constants C = constants();
    const long per_sample = std::max<long>(1, std::lround(sample_interval / dt));

    std::vector<long> cp_idx;
    for (double tc : checkpoint_times) {
        require(tc >= -1e-12 && tc <= t_end + 1e-12, errc::invalid_argument,
                "integrate_g: checkpoint time outside [0, t_end]");
        cp_idx.push_back(std::clamp(std::lround(tc / dt), 0l, steps));
    }

    g_trajectory traj;
    traj.dt = dt;
    field g = g0;
    const double l2_0 = l2_norm(g0);

    auto measure = [&](double t) {
        g_sample s;
        s.t = t;
        s.l2 = l2_norm(g);
        s.h2semi = l2_norm(derivative(g, 2));
        s.cert = C.interp_const * std::abs(cfg.eps) * std::pow(s.l2, 0.25) * std::pow(s.h2semi, 0.75);
        s.bound_rhs = 0.5 * cfg.eps * cfg.eps * C.cubic_const * std::sqrt(l2_0) * std::pow(s.h2semi, 2.5);
        return s;
    };
    auto snapshot = [&](long i, double t) {
        for (long k : cp_idx)
            if (k == i) traj.checkpoints.emplace_back(t, g);
    };

    g_sample s0 = measure(0.0);
    traj.samples.push_back(s0);
    snapshot(0, 0.0);
    if (s0.cert > 0.5 * (1.0 + 1e-12)) {
        traj.regime_exit = true;
        traj.t_exit = 0.0;
        traj.exit_reason = "smallness certificate above 1/2 at t = 0";
        return traj;
    }

    for (long i = 1; i <= steps; ++i) {
        step_g_rk4(g, dt, rhs);
        const double t = double(i) * dt;
        g.check_finite("integrate_g state");
        traj.steps = i;
        const g_sample s = measure(t);
        if (s.cert > 0.5 * (1.0 + 1e-12)) {
            traj.samples.push_back(s);
            snapshot(i, t);
            traj.regime_exit = true;
            traj.t_exit = t;
            traj.exit_reason = "smallness certificate crossed 1/2";
            break;
        }
        if (i % per_sample == 0 || i == steps) traj.samples.push_back(s);
        snapshot(i, t);
    }
    return traj;
}

std::optional<double> h2_doubling_time(const g_trajectory& traj) {
    if (traj.samples.empty()) return std::nullopt;
    const double X0 = traj.samples.front().h2semi;
    if (X0 <= 0.0) return std::nullopt;
    const double target = 2.0 * X0;
    for (std::size_t k = 1; k < traj.samples.size(); ++k) {
        const auto& a = traj.samples[k - 1];
        const auto& b = traj.samples[k];
        if (b.h2semi >= target) {
            if (b.h2semi == a.h2semi) return b.t;
            return a.t + (target - a.h2semi) * (b.t - a.t) / (b.h2semi - a.h2semi);
        }
    }
    return std::nullopt;
}

energy_budget_report energy_budget(const g_trajectory& traj, double eps) {
    require(!traj.samples.empty(), errc::invalid_argument, "energy_budget: empty trajectory");
    const auto& s = traj.samples;
    const estimate_constants C = constants();

    energy_budget_report r;
    r.E0 = std::pow(s[0].l2, 0.25) * std::pow(s[0].h2semi, 0.75);
    const double inf = std::numeric_limits<double>::infinity();
    r.eps_threshold = r.E0 > 0.0 ? 1.0 / (2.0 * std::sqrt(2.0) * C.interp_const * r.E0) : inf;
    r.lifespan_coef = r.E0 > 0.0 ? 2.0 / (3.0 * C.cubic_const * r.E0 * r.E0) : inf;

    const double rate = 0.5 * eps * eps * C.cubic_const * std::sqrt(s[0].l2);
    double gap = 0.0;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        const double fd = (s[k + 1].h2semi - s[k - 1].h2semi) / (s[k + 1].t - s[k - 1].t);
        const double bound = rate * std::pow(s[k].h2semi, 2.5);
        r.rows.push_back({s[k].t, fd, bound});
        r.max_violation = std::max(r.max_violation, fd - bound);
        gap = std::max(gap, s[k].t - s[k - 1].t);
    }
    // centered-difference error is (gap^2/6) X'''; estimate X''' from third
    // differences of the sampled norms
    double third = 0.0;
    for (std::size_t k = 0; k + 3 < s.size(); ++k) {
        const double d3 = std::abs(s[k + 3].h2semi - 3.0 * s[k + 2].h2semi +
                                   3.0 * s[k + 1].h2semi - s[k].h2semi);
        const double dloc = s[k + 1].t - s[k].t;
        if (dloc > 0.0) third = std::max(third, d3 / (dloc * dloc * dloc));
    }
    r.slack = 1e-9 * std::max(1.0, s[0].h2semi) + gap * gap / 6.0 * third;
    r.ok = r.max_violation <= r.slack;
    return r;
}

cross_validate_report cross_validate(const field& u0, double eps, double t_end,
                                     int checkpoints, double dt, const g_config& cfg) {
    require(u0.g.kind() == grid_kind::periodic, errc::invalid_argument,
            "cross_validate: periodic grids only");
    require(checkpoints >= 1 && t_end > 0.0 && dt > 0.0, errc::invalid_argument,
            "cross_validate: need checkpoints >= 1, t_end > 0, dt > 0");
    const long steps = std::lround(t_end / dt);
    require(steps >= checkpoints && std::abs(double(steps) * dt - t_end) <= 1e-8 * t_end,
            errc::invalid_argument, "cross_validate: t_end must be a whole number of steps");

    g_config gc = cfg;
    gc.eps = eps;
    bh_config bc;
    bc.eps = eps;

    field u = project_mean_zero(u0);
    auto slope = [&](const field& h) {
        return std::abs(eps) * sup_norm(derivative(h, 1));
    };
    field h0 = hilbert(u);
    require(slope(h0) <= 1.0 / 3.0 + 1e-12, errc::precondition,
            "cross_validate: initial sup|eps h_x| outside the contraction range");

    field gB = forward_solve(h0, eps).g;
    std::optional<periodized_tail> tail;
    if (eps != 0.0) tail.emplace(u0.g, gc.tail_terms);
    auto rhs = [&](const field& f) { return rhs_phi_impl(f, gc, tail ? &*tail : nullptr); };

    std::vector<char> is_cp(std::size_t(steps) + 1, 0);
    for (int k = 0; k <= checkpoints; ++k)
        is_cp[std::size_t(std::lround(double(steps) * k / checkpoints))] = 1;

    cross_validate_report rep;
    rep.dt = dt;
    rep.steps = std::size_t(steps);

    bh_state sa{0.0, u};
    for (long i = 0; i <= steps; ++i) {
        if (is_cp[std::size_t(i)]) {
            field hA = hilbert(sa.u);
            if (slope(hA) > 1.0 / 3.0 + 1e-12) {
                rep.precondition_lost = true;
                break;
            }
            transform_pair pa = forward_solve(hA, eps);
            rep.times.push_back(double(i) * dt);
            rep.sup_err.push_back(sup_diff(pa.g, gB));
            rep.l2_err.push_back(l2_norm(pa.g - gB));
            rep.cert_a.push_back(pa.slope_cert);
        }
        if (i == steps) break;
        step_rk4(sa, dt, bc);
        step_g_rk4(gB, dt, rhs);
    }
    return rep;
}

}  // namespace bhlab
