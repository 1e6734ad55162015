#include "bhlab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "bhlab/analysis.hpp"
#include "bhlab/bh_solver.hpp"
#include "bhlab/g_solver.hpp"
#include "bhlab/initial_data.hpp"
#include "bhlab/normal_form.hpp"
#include "bhlab/spectral.hpp"
#include "bhlab/transform.hpp"
#include "bhlab/version.hpp"

namespace bhlab {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

grid make_grid(const kv_map& cfg) {
    const std::string kind = cfg_str(cfg, "grid.kind", "periodic");
    if (kind == "periodic")
        return grid::periodic(std::size_t(cfg_int(cfg, "grid.n", 1024)),
                              cfg_num(cfg, "grid.scale", 1.0));
    if (kind == "line")
        return grid::line(std::size_t(cfg_int(cfg, "grid.n", 513)),
                          cfg_num(cfg, "grid.half_width", 12.0));
    fail(errc::config, "grid.kind must be 'periodic' or 'line', got '" + kind + "'");
}

field make_initial(const kv_map& cfg, const grid& g) {
    const std::string profile = cfg_str(cfg, "data.profile", "sine");
    const double amplitude = cfg_num(cfg, "data.amplitude", 1.0);
    const auto seed = std::uint64_t(cfg_int(cfg, "data.seed", 1234));
    if (profile == "random_band")
        return random_band_limited(g, seed, int(cfg_int(cfg, "data.kmin", 1)),
                                   int(cfg_int(cfg, "data.kmax", 8)), amplitude);
    if (profile == "random_packets")
        return random_wave_packets(g, seed, int(cfg_int(cfg, "data.packets", 3)), amplitude);
    return named_profile(g, profile, amplitude, int(cfg_int(cfg, "data.mode", 1)),
                         cfg_num(cfg, "data.width", 1.0), cfg_num(cfg, "data.center", 0.0));
}

dt_policy make_policy(const kv_map& cfg) {
    dt_policy pol;
    const std::string kind = cfg_str(cfg, "time.policy", "cfl");
    if (kind == "fixed") pol.type = dt_policy::kind::fixed;
    else if (kind == "cfl") pol.type = dt_policy::kind::cfl;
    else fail(errc::config, "time.policy must be 'fixed' or 'cfl', got '" + kind + "'");
    pol.dt = cfg_num(cfg, "time.dt", 0.01);
    pol.cap = cfg_num(cfg, "time.dt_cap", 0.01);
    pol.cfl_c = cfg_num(cfg, "time.cfl", 0.25);
    return pol;
}

blowup_criterion make_criterion(const kv_map& cfg) {
    blowup_criterion crit;
    crit.slope_factor = cfg_num(cfg, "detect.slope_factor", 50.0);
    crit.tail_fraction = cfg_num(cfg, "detect.tail_fraction", 1e-4);
    return crit;
}

int reason_code(const std::string& reason) {
    if (reason == "slope") return 1;
    if (reason == "tail") return 2;
    return 0;
}

// Two-column plot file matching the scaling figure's axes.
std::string scaling_plot(const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream os;
    os.precision(12);
    os << "# log10(2*pi*eps)  log10(T_s)\n";
    for (const auto& [eps, ts] : rows)
        os << std::log10(2.0 * std::numbers::pi * eps) << "  " << std::log10(ts) << "\n";
    return os.str();
}

// Nested-grid self-convergence helper: error of f against a reference field
// on a grid with (ref.n - 1) divisible by (f.n - 1), compared on shared
// nodes (line grids).
double shared_node_error(const field& f, const field& ref) {
    const std::size_t stride = (ref.size() - 1) / (f.size() - 1);
    double err = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        err = std::max(err, std::abs(f[j] - ref[j * stride]));
    return err;
}

}  // namespace

run_result run_simulate(const kv_map& cfg) {
    run_result rr;
    rr.experiment = "simulate";
    const std::string mode = cfg_str(cfg, "simulate.mode", "bh");
    const double eps = cfg_num(cfg, "eps", 0.1);
    const grid g = make_grid(cfg);
    const field f0 = make_initial(cfg, g);
    const double t_end = cfg_num(cfg, "time.t_end", 10.0);
    const double sample = cfg_num(cfg, "time.sample_interval", 0.1);
    std::ostringstream text;
    text.precision(6);

    if (mode == "g") {
        g_config gc;
        gc.eps = eps;
        gc.tail_terms = int(cfg_int(cfg, "simulate.tail_terms", 16));
        dt_policy pol = make_policy(cfg);
        const double dt = pol.type == dt_policy::kind::fixed ? pol.dt : pol.resolve(f0, eps);
        const double t_whole = double(std::lround(t_end / dt)) * dt;
        const g_trajectory traj = integrate_g(f0, t_whole, dt, sample, gc);

        std::vector<std::vector<double>> rows;
        for (const auto& s : traj.samples)
            rows.push_back({s.t, s.l2, s.h2semi, s.bound_rhs, s.cert});
        rr.artifacts.push_back({"g_monitor.csv",
                                to_csv({"t", "l2_g", "h2semi_g", "bound_rhs", "cert"}, rows)});

        const energy_budget_report eb = energy_budget(traj, eps);
        const auto doubling = h2_doubling_time(traj);
        rr.scalars["dt"] = traj.dt;
        rr.scalars["steps"] = double(traj.steps);
        rr.scalars["regime_exit"] = traj.regime_exit ? 1.0 : 0.0;
        rr.scalars["t_exit"] = traj.t_exit;
        rr.scalars["doubling_time"] = doubling ? *doubling : nan_value;
        rr.scalars["l2_drift_rel"] =
            std::abs(traj.samples.back().l2 - traj.samples.front().l2) /
            traj.samples.front().l2;
        rr.scalars["energy_bound_ok"] = eb.ok ? 1.0 : 0.0;
        rr.scalars["energy_max_violation"] = eb.max_violation;
        rr.scalars["E0"] = eb.E0;
        rr.scalars["eps_threshold"] = eb.eps_threshold;
        rr.scalars["lifespan_coef"] = eb.lifespan_coef;
        text << "g-flow: " << traj.steps << " steps at dt " << traj.dt << "\n"
             << "  |g| drift " << rr.scalars["l2_drift_rel"] << " relative, growth bound "
             << (eb.ok ? "holds" : "VIOLATED") << " (max excess " << eb.max_violation << ")\n";
        if (doubling) text << "  |g_xixi| doubled at t = " << *doubling << "\n";
        if (traj.regime_exit)
            text << "  regime exit at t = " << traj.t_exit << ": " << traj.exit_reason << "\n";
    } else {
        bh_config bc;
        bc.eps = eps;
        if (mode == "burgers") bc.include_hilbert = false;
        else if (mode == "linear") bc.include_nonlinear = false;
        else require(mode == "bh", errc::config,
                     "simulate.mode must be bh|burgers|linear|g, got '" + mode + "'");
        bh_state st{0.0, f0};
        trajectory tr =
            integrate_until(st, t_end, make_criterion(cfg), make_policy(cfg), sample, bc);

        std::vector<std::vector<double>> rows;
        for (const auto& s : tr.samples)
            rows.push_back({s.t, s.l2, s.h2, s.sup_ux, s.tail_fraction});
        rr.artifacts.push_back({"trajectory.csv",
                                to_csv({"t", "l2", "h2", "sup_ux", "tail_fraction"}, rows)});
        rr.scalars["dt"] = tr.dt;
        rr.scalars["steps"] = double(tr.steps);
        rr.scalars["breaking_detected"] = tr.breaking.detected ? 1.0 : 0.0;
        rr.scalars["t_threshold"] = tr.breaking.detected ? tr.breaking.t_threshold : nan_value;
        rr.scalars["t_breaking"] = tr.breaking.detected ? tr.breaking.t_breaking : nan_value;
        rr.scalars["l2_drift_rel"] =
            std::abs(tr.samples.back().l2 - tr.samples.front().l2) / tr.samples.front().l2;
        text << mode << " run: " << tr.steps << " steps at dt " << tr.dt << ", |u| drift "
             << rr.scalars["l2_drift_rel"] << " relative\n";
        if (tr.breaking.detected)
            text << "  breaking detected (" << tr.breaking.reason << ") at t = "
                 << tr.breaking.t_breaking << " (threshold " << tr.breaking.t_threshold << ")\n";
        else
            text << "  no breaking before t = " << t_end << "\n";
    }
    rr.text = text.str();
    return rr;
}

run_result run_sweep(const kv_map& cfg) {
    run_result rr;
    rr.experiment = "sweep";
    const std::vector<double> eps_list = cfg_list(cfg, "eps_list", {0.16, 0.08, 0.04, 0.02});
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        require(eps_list[i] < eps_list[i - 1], errc::config,
                "eps_list must be strictly decreasing");
    const std::string mode = cfg_str(cfg, "sweep.mode", "both");
    require(mode == "bh" || mode == "burgers" || mode == "both", errc::config,
            "sweep.mode must be bh|burgers|both, got '" + mode + "'");
    const double fit_min = cfg_num(cfg, "sweep.fit_min_eps", 0.0);
    const double fit_max = cfg_num(cfg, "sweep.fit_max_eps",
                                   std::numeric_limits<double>::infinity());
    std::ostringstream text;
    text.precision(6);

    for (const bool bh : {true, false}) {
        if (bh && mode == "burgers") continue;
        if (!bh && mode == "bh") continue;
        const char* tag = bh ? "bh" : "burgers";
        std::vector<std::vector<double>> rows;
        std::vector<std::pair<double, double>> plot;
        std::vector<double> lx, ly;
        int censored = 0;
        double burgers_worst = 0.0;

        for (const double e : eps_list) {
            const grid g = make_grid(cfg);
            const field u0 = make_initial(cfg, g);
            bh_config bc;
            bc.eps = e;
            bc.include_hilbert = bh;
            const double t_pred = burgers_breaking_time(u0, e);
            double t_max = cfg_num(cfg, "sweep.t_max", 0.0);
            if (t_max <= 0.0)
                t_max = bh ? cfg_num(cfg, "sweep.t_max_factor", 10.0) / (e * e)
                           : (std::isfinite(t_pred) ? 4.0 * t_pred : 100.0 / e);
            bh_state st{0.0, u0};
            trajectory tr = integrate_until(st, t_max, make_criterion(cfg), make_policy(cfg),
                                            cfg_num(cfg, "time.sample_interval", 0.5), bc);
            const bool cens = !tr.breaking.detected;
            if (cens) ++censored;
            const double ts = cens ? nan_value : tr.breaking.t_breaking;
            rows.push_back({e, ts, cens ? nan_value : tr.breaking.t_threshold,
                            cens ? 1.0 : 0.0, double(reason_code(tr.breaking.reason)), tr.dt,
                            double(tr.steps), bh ? nan_value : t_pred});
            if (!cens) {
                plot.emplace_back(e, ts);
                if (e >= fit_min && e <= fit_max) {
                    lx.push_back(std::log(e));
                    ly.push_back(std::log(ts));
                }
                if (!bh && std::isfinite(t_pred))
                    burgers_worst = std::max(burgers_worst, std::abs(ts - t_pred) / t_pred);
            }
        }

        rr.artifacts.push_back(
            {std::string("sweep_") + tag + ".csv",
             to_csv({"eps", "t_breaking", "t_threshold", "censored", "reason_code", "dt",
                     "steps", "t_burgers_exact"},
                    rows)});
        rr.artifacts.push_back({std::string("scaling_") + tag + ".txt", scaling_plot(plot)});
        rr.scalars[std::string("censored_") + tag] = double(censored);
        if (censored > 0)
            text << tag << " sweep: " << censored
                 << " censored run(s) excluded from the fit\n";
        if (lx.size() >= 2) {
            const linfit_result fit = linfit(lx, ly);
            rr.scalars[std::string("slope_") + tag] = fit.slope;
            rr.scalars[std::string("intercept_") + tag] = fit.intercept;
            text << tag << " sweep: fitted T_s slope " << fit.slope << " over " << lx.size()
                 << " runs\n";
        } else {
            text << tag << " sweep: too few uncensored runs to fit a slope\n";
        }
        if (!bh) rr.scalars["burgers_max_rel_err"] = burgers_worst;
    }
    rr.text = text.str();
    return rr;
}

run_result run_crosscheck(const kv_map& cfg) {
    run_result rr;
    rr.experiment = "crosscheck";
    const std::vector<double> ns = cfg_list(cfg, "cross.n_list", {128, 256, 512});
    const std::vector<double> dts = cfg_list(cfg, "cross.dt_list", {0.04, 0.02, 0.01});
    require(ns.size() == dts.size() && !ns.empty(), errc::config,
            "cross.n_list and cross.dt_list must have equal nonzero length");
    const double eps = cfg_num(cfg, "eps", 0.1);
    const double t_end = cfg_num(cfg, "cross.t_end", 5.0);
    const int checkpoints = int(cfg_int(cfg, "cross.checkpoints", 5));
    g_config gc;
    gc.eps = eps;
    gc.tail_terms = int(cfg_int(cfg, "cross.tail_terms", 16));

    std::vector<std::vector<double>> rows;
    std::vector<double> errs;
    double cert_max = 0.0;
    bool lost = false;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        kv_map local = cfg;
        local["grid.kind"] = "periodic";
        local["grid.n"] = std::to_string(std::size_t(ns[i]));
        const grid g = make_grid(local);
        const field u0 = make_initial(cfg, g);
        const cross_validate_report rep =
            cross_validate(u0, eps, t_end, checkpoints, dts[i], gc);
        lost = lost || rep.precondition_lost;
        double rung_cert = 0.0;
        for (double c : rep.cert_a) rung_cert = std::max(rung_cert, c);
        cert_max = std::max(cert_max, rung_cert);
        const double err = rep.sup_err.empty() ? nan_value : rep.sup_err.back();
        const double l2e = rep.l2_err.empty() ? nan_value : rep.l2_err.back();
        errs.push_back(err);
        const double order =
            i > 0 ? std::log2(errs[i - 1] / errs[i]) : nan_value;
        rows.push_back({ns[i], dts[i], err, l2e, rung_cert, order});
    }
    rr.artifacts.push_back(
        {"crosscheck.csv",
         to_csv({"n", "dt", "sup_err", "l2_err", "cert_max", "order"}, rows)});
    rr.scalars["err_finest"] = errs.back();
    double order_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < rows.size(); ++i) order_min = std::min(order_min, rows[i][5]);
    rr.scalars["order_min"] = rows.size() > 1 ? order_min : nan_value;
    rr.scalars["cert_max"] = cert_max;
    rr.scalars["precondition_lost"] = lost ? 1.0 : 0.0;

    std::ostringstream text;
    text.precision(6);
    text << "two-path check at eps " << eps << ", t_end " << t_end << ":\n";
    for (const auto& r : rows)
        text << "  n " << r[0] << " dt " << r[1] << "  sup err " << r[2] << " order " << r[5]
             << "\n";
    rr.text = text.str();
    return rr;
}

run_result run_convergence(const kv_map& cfg) {
    run_result rr;
    rr.experiment = "convergence";
    const std::string study = cfg_str(cfg, "conv.study", "all");
    std::ostringstream text;
    text.precision(6);

    if (study == "rotation" || study == "all") {
        // eps = 0 flow against the exact oscillation, fixed grid, dt ladder
        const grid g = grid::periodic(std::size_t(cfg_int(cfg, "conv.n", 128)));
        const field u0 = named_profile(g, "two_mode", 1.0, 1, 1.0, 0.0);
        const field ref = exact_linear_solution(u0, 1.0);
        bh_config bc; // eps = 0
        std::vector<std::vector<double>> rows;
        std::vector<double> lx, ly;
        for (const double dt : {0.1, 0.05, 0.025, 0.0125}) {
            bh_state st{0.0, u0};
            const long steps = std::lround(1.0 / dt);
            for (long k = 0; k < steps; ++k) step_rk4(st, dt, bc);
            const double err = sup_diff(st.u, ref);
            rows.push_back({dt, err});
            lx.push_back(std::log(dt));
            ly.push_back(std::log(err));
        }
        const linfit_result fit = linfit(lx, ly);
        rr.artifacts.push_back({"convergence_rotation.csv", to_csv({"dt", "sup_err"}, rows)});
        rr.scalars["order_rotation"] = fit.slope;
        text << "time integrator vs exact oscillation: order " << fit.slope << "\n";
    }

    if (study == "spatial" || study == "all") {
        // periodic spectral floor on band-limited data
        double floor_err = 0.0;
        for (const std::size_t n : {64u, 128u, 256u}) {
            const grid g = grid::periodic(n);
            field u = field::zeros(g), dref = field::zeros(g), href = field::zeros(g);
            for (std::size_t j = 0; j < n; ++j) {
                const double x = g.node(j);
                u[j] = std::sin(x) + 0.5 * std::cos(3.0 * x);
                dref[j] = std::cos(x) - 1.5 * std::sin(3.0 * x);
                href[j] = -std::cos(x) + 0.5 * std::sin(3.0 * x);
            }
            floor_err = std::max(floor_err, sup_diff(derivative(u, 1), dref));
            floor_err = std::max(floor_err, sup_diff(hilbert(u), href));
        }
        rr.scalars["floor_spatial_periodic"] = floor_err;
        text << "periodic derivative/Hilbert floor on band-limited data: " << floor_err << "\n";

        // line finite differences: nested-grid self-convergence on a Gaussian
        const double L = 10.0;
        const grid gref = grid::line(2049, L);
        const field fref = named_profile(gref, "gaussian", 1.0, 1, 1.5, 0.0);
        const field dref = derivative(fref, 1);
        std::vector<std::vector<double>> rows;
        std::vector<double> lx, ly;
        for (const std::size_t n : {129u, 257u, 513u}) {
            const grid g = grid::line(n, L);
            const field f = named_profile(g, "gaussian", 1.0, 1, 1.5, 0.0);
            const double err = shared_node_error(derivative(f, 1), dref);
            rows.push_back({double(n), err});
            lx.push_back(std::log(g.spacing()));
            ly.push_back(std::log(err));
        }
        const linfit_result fit = linfit(lx, ly);
        rr.artifacts.push_back({"convergence_line_fd.csv", to_csv({"n", "sup_err"}, rows)});
        rr.scalars["order_spatial_line"] = fit.slope;
        text << "line finite-difference derivative: order " << fit.slope << "\n";
    }

    if (study == "quadrature" || study == "all") {
        // transformed-equation right-hand side: nested-grid self-convergence
        // and the divergence-vs-expanded agreement order
        const double L = 12.0;
        const double eps = cfg_num(cfg, "eps", 0.1);
        g_config gc;
        gc.eps = eps;
        const grid gref = grid::line(2049, L);
        const field fref = named_profile(gref, "gaussian", 1.0, 1, 1.0, 0.0);
        const field rref = rhs_g_phi(fref, gc);
        std::vector<std::vector<double>> rows;
        std::vector<double> lx, ly, ex, ey;
        for (const std::size_t n : {257u, 513u, 1025u}) {
            const grid g = grid::line(n, L);
            const field f = named_profile(g, "gaussian", 1.0, 1, 1.0, 0.0);
            const field r_phi = rhs_g_phi(f, gc);
            const double err = shared_node_error(r_phi, rref);
            const double equiv = sup_diff(r_phi, rhs_g_expanded(f, gc));
            rows.push_back({double(n), err, equiv});
            lx.push_back(std::log(g.spacing()));
            ly.push_back(std::log(err));
            ex.push_back(std::log(g.spacing()));
            ey.push_back(std::log(equiv));
        }
        rr.artifacts.push_back(
            {"convergence_quadrature.csv", to_csv({"n", "sup_err", "equiv_gap"}, rows)});
        rr.scalars["order_quadrature"] = linfit(lx, ly).slope;
        rr.scalars["order_equivalence"] = linfit(ex, ey).slope;
        text << "g-equation quadrature: self-convergence order "
             << rr.scalars["order_quadrature"] << ", divergence-vs-expanded order "
             << rr.scalars["order_equivalence"] << "\n";
    }

    require(!rr.scalars.empty(), errc::config,
            "conv.study must be rotation|spatial|quadrature|all, got '" + study + "'");
    rr.text = text.str();
    return rr;
}

run_result run_constants(const kv_map& cfg) {
    run_result rr;
    rr.experiment = "constants";
    const estimate_constants C = constants();
    double E0 = cfg_num(cfg, "E0", 0.0);
    if (E0 <= 0.0) {
        const grid g = make_grid(cfg);
        E0 = amplitude_functional(make_initial(cfg, g));
    }
    rr.scalars["N"] = C.interp_const;
    rr.scalars["M"] = C.maximal_const;
    rr.scalars["A"] = C.cubic_const;
    rr.scalars["E0"] = E0;
    rr.scalars["eps0"] = eps_threshold(E0);
    rr.scalars["k"] = lifespan_coefficient(E0);
    std::ostringstream text;
    text.precision(8);
    text << "interpolation constant N = " << C.interp_const << "\n"
         << "maximal-function constant M = " << C.maximal_const << "\n"
         << "production constant A = " << C.cubic_const << "\n"
         << "amplitude functional E0 = " << E0 << "\n"
         << "smallness threshold eps0 = " << rr.scalars["eps0"] << "\n"
         << "lifespan coefficient k = " << rr.scalars["k"]
         << "  (guaranteed horizon k/eps^2)\n";
    rr.text = text.str();
    return rr;
}

run_result run_transform_demo(const kv_map& cfg) {
    run_result rr;
    rr.experiment = "transform-demo";
    const double eps = cfg_num(cfg, "eps", 0.1);
    const grid g = make_grid(cfg);
    const field h = make_initial(cfg, g);

    const transform_pair p = forward_solve(h, eps);
    const field back = inverse_eval(p, g);
    const norm_transfer_report nt = norm_transfer(p);
    const gn_report gn = gn_check(p.g);

    std::vector<std::vector<double>> iters;
    for (std::size_t i = 0; i < p.updates.size(); ++i)
        iters.push_back({double(i + 1), p.updates[i]});
    rr.artifacts.push_back({"iterations.csv", to_csv({"iteration", "sup_update"}, iters)});

    std::vector<std::vector<double>> map_rows;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double xi = g.node(j);
        map_rows.push_back({xi, p.g[j], xi - eps * p.g[j], h[j]});
    }
    rr.artifacts.push_back({"transform_map.csv", to_csv({"xi", "g", "x", "h_at_xi"}, map_rows)});

    rr.scalars["iterations"] = double(p.iterations);
    rr.scalars["slope_cert"] = p.slope_cert;
    rr.scalars["roundtrip_sup_err"] = sup_diff(back, h);
    rr.scalars["l2_residual"] = nt.l2_residual;
    rr.scalars["h2_residual"] = nt.h2_residual;
    rr.scalars["sandwich_ok"] = nt.sandwich_ok ? 1.0 : 0.0;
    rr.scalars["gn_ratio"] = gn.ratio;

    std::ostringstream text;
    text.precision(6);
    text << "fixed point converged in " << p.iterations << " iterations, certificate "
         << p.slope_cert << "\n"
         << "round trip sup error " << rr.scalars["roundtrip_sup_err"] << "\n"
         << "norm transfer residuals: l2 " << nt.l2_residual << ", weighted h2 "
         << nt.h2_residual << "\n"
         << "second-derivative sandwich [" << nt.sandwich_lo << ", " << nt.sandwich_hi
         << "] " << (nt.sandwich_ok ? "holds" : "VIOLATED") << "\n";
    rr.text = text.str();
    return rr;
}

run_result run_experiment(const kv_map& cfg) {
    const std::string exp = cfg_str(cfg, "experiment");
    const auto t0 = std::chrono::steady_clock::now();
    run_result rr;
    if (exp == "simulate") rr = run_simulate(cfg);
    else if (exp == "sweep") rr = run_sweep(cfg);
    else if (exp == "crosscheck") rr = run_crosscheck(cfg);
    else if (exp == "convergence") rr = run_convergence(cfg);
    else if (exp == "constants") rr = run_constants(cfg);
    else if (exp == "transform-demo") rr = run_transform_demo(cfg);
    else fail(errc::config, "unknown experiment: " + exp);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    nlohmann::json meta;
    meta["experiment"] = exp;
    meta["version"] = version_string;
    meta["wall_clock_s"] = wall;
    meta["config"] = cfg;
    meta["scalars"] = rr.scalars;
    std::vector<std::string> names;
    for (const auto& a : rr.artifacts) names.push_back(a.name);
    meta["artifacts"] = names;
    rr.artifacts.push_back({"metadata.json", meta.dump(2) + "\n"});
    return rr;
}

}  // namespace bhlab
