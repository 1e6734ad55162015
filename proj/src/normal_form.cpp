#include "bhlab/normal_form.hpp"

#include <cmath>

#include "bhlab/bh_solver.hpp"
#include "bhlab/io.hpp"
#include "bhlab/spectral.hpp"
#include "bhlab/transform.hpp"

namespace bhlab {

namespace {

// |dx| = H o d/dx (the positive first-order operator |k| in Fourier space)
field abs_dx(const field& f) { return hilbert(derivative(f, 1)); }

field pointwise(const field& a, const field& b) {
    require(a.g == b.g, errc::invalid_argument, "pointwise product: grid mismatch");
    field r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= b[i];
    return r;
}

}  // namespace

nf_pair nf_forward(const field& u, double eps) {
    require(u.g.kind() == grid_kind::periodic, errc::invalid_argument,
            "nf_forward: periodic grids only");
    require(std::abs(u.quadrature_mean()) <= 1e-10 * std::max(1.0, sup_norm(u)),
            errc::invalid_argument, "nf_forward: mean-zero data required");
    field h = hilbert(u);
    field v = u;
    axpy(0.5 * eps, abs_dx(dealias(pointwise(h, h))), v);
    return {u, std::move(v), eps};
}

nf_residual_report nf_residual(const field& u0, double eps, double t_end,
                               double dt, double dt_sample) {
    require(u0.g.kind() == grid_kind::periodic, errc::invalid_argument,
            "nf_residual: periodic grids only");
    require(dt > 0.0 && dt_sample > 0.0 && t_end > 0.0, errc::invalid_argument,
            "nf_residual: dt, dt_sample and t_end must be positive");
    require(dt_sample <= 0.01 + 1e-12, errc::invalid_argument,
            "nf_residual: dt_sample must be <= 0.01 for usable time differencing");
    const long per = std::lround(dt_sample / dt);
    require(per >= 1 && std::abs(double(per) * dt - dt_sample) <= 1e-9 * dt_sample,
            errc::invalid_argument, "nf_residual: dt must divide dt_sample");
    const long nsamp = std::lround(t_end / dt_sample);
    require(std::abs(double(nsamp) * dt_sample - t_end) <= 1e-8 * t_end && nsamp >= 4,
            errc::invalid_argument,
            "nf_residual: t_end must cover at least five samples exactly");

    // march the original equation, keeping u snapshots every dt_sample
    bh_config cfg;
    cfg.eps = eps;
    bh_state s{0.0, project_mean_zero(u0)};
    std::vector<field> us, vs;
    us.reserve(std::size_t(nsamp) + 1);
    us.push_back(s.u);
    for (long i = 1; i <= nsamp; ++i) {
        for (long k = 0; k < per; ++k) step_rk4(s, dt, cfg);
        us.push_back(s.u);
    }
    vs.reserve(us.size());
    for (const field& u : us) vs.push_back(nf_forward(u, eps).v);

    nf_residual_report rep;
    rep.dt = dt;
    rep.dt_sample = dt_sample;
    auto ddt = [&](const std::vector<field>& f, std::size_t k) {
        // 4th-order central: (f_{k-2} - 8 f_{k-1} + 8 f_{k+1} - f_{k+2}) / (12 dt_sample)
        field d = f[k - 2] - f[k + 2];
        axpy(-8.0, f[k - 1], d);
        axpy(8.0, f[k + 1], d);
        return (1.0 / (12.0 * dt_sample)) * d;
    };
    for (std::size_t k = 2; k + 2 < us.size(); ++k) {
        const field& u = us[k];
        const field& v = vs[k];
        const field ut = ddt(us, k);
        const field vt = ddt(vs, k);
        const field h = hilbert(u);

        field res = vt - hilbert(v);
        rep.res_linear_v_sup.push_back(sup_norm(res));
        // cubic balance of the transformed equation
        axpy(0.5 * eps * eps,
             abs_dx(dealias(pointwise(h, abs_dx(dealias(pointwise(u, u)))))), res);
        rep.times.push_back(double(k) * dt_sample);
        rep.res_transformed_sup.push_back(sup_norm(res));
        rep.res_transformed_l2.push_back(l2_norm(res));
        rep.res_linear_u_sup.push_back(sup_norm(ut - hilbert(u)));
    }
    return rep;
}

field nf_invert_ode(const field& g, double eps) {
    transform_pair p = pair_from_g(g, eps);
    require(p.slope_cert <= 0.5 + 1e-12, errc::precondition,
            "nf_invert_ode: sup|eps*g_xi| must be <= 1/2");
    return inverse_eval(p, g.g);
}

transform_comparison compare_transforms(const field& h, const std::vector<double>& eps_list) {
    transform_comparison rep;
    const field hx = derivative(h, 1);
    std::vector<double> lx, ly;
    for (double e : eps_list) {
        double diff = 0.0;
        if (e != 0.0) {
            const field g_coord = forward_solve(h, e).g;
            field g_nf = h;
            axpy(-e, dealias(pointwise(h, hx)), g_nf);
            diff = sup_diff(g_coord, g_nf);
        }
        rep.eps_values.push_back(e);
        rep.diff_sup.push_back(diff);
        if (e > 0.0 && diff > 0.0) {
            lx.push_back(std::log(e));
            ly.push_back(std::log(diff));
        }
    }
    if (lx.size() >= 2) {
        const linfit_result f = linfit(lx, ly);
        rep.slope = f.slope;
        rep.intercept = f.intercept;
    }
    return rep;
}

}  // namespace bhlab
