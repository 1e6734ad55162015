#include "bhlab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bhlab {

namespace {

double slope_certificate(const field& g, double eps) {
    field gx = derivative(g, 1);
    return std::abs(eps) * sup_norm(gx);
}

}  // namespace

transform_pair forward_solve(const field& h, double eps, const transform_options& opt) {
    h.check_finite("forward_solve input");
    require(std::isfinite(eps), errc::invalid_argument, "forward_solve: eps must be finite");

    field hx = derivative(h, 1);
    double steepness = std::abs(eps) * sup_norm(hx);
    require(steepness <= 1.0 / 3.0 + 1e-12, errc::precondition,
            "forward_solve: sup|eps*h_x| exceeds 1/3");

    std::vector<double> xi = h.g.nodes();
    std::vector<double> shifted(xi.size());

    transform_pair p;
    p.eps = eps;
    p.g = h; // contraction starts from the identity-map guess
    int grow_streak = 0;
    double prev_update = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opt.max_iter; ++it) {
        for (std::size_t i = 0; i < xi.size(); ++i) shifted[i] = xi[i] - eps * p.g.v[i];
        std::vector<double> next = interpolate(h, shifted);
        double update = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            update = std::max(update, std::abs(next[i] - p.g.v[i]));
        p.g.v = std::move(next);
        p.updates.push_back(update);
        p.iterations = it;
        p.final_update = update;
        if (update <= opt.tol) break;
        grow_streak = (update > prev_update) ? grow_streak + 1 : 0;
        if (grow_streak >= 3)
            fail(errc::numeric, "forward_solve: fixed-point updates growing; iteration diverged");
        prev_update = update;
        if (it == opt.max_iter)
            fail(errc::numeric, "forward_solve: fixed point did not converge");
    }

    if (opt.newton_polish) {
        // g <- g - (g - h(xi - eps*g)) / (1 + eps*h'(xi - eps*g))
        for (std::size_t i = 0; i < xi.size(); ++i) shifted[i] = xi[i] - eps * p.g.v[i];
        std::vector<double> hv = interpolate(h, shifted);
        std::vector<double> hd = interpolate(hx, shifted);
        for (std::size_t i = 0; i < xi.size(); ++i)
            p.g.v[i] -= (p.g.v[i] - hv[i]) / (1.0 + eps * hd[i]);
    }

    p.slope_cert = slope_certificate(p.g, eps);
    require(p.slope_cert < 1.0, errc::numeric,
            "forward_solve: constructed map is not invertible (slope certificate >= 1)");
    return p;
}

transform_pair pair_from_g(const field& g, double eps) {
    g.check_finite("pair_from_g input");
    require(std::isfinite(eps), errc::invalid_argument, "pair_from_g: eps must be finite");
    transform_pair p;
    p.g = g;
    p.eps = eps;
    p.slope_cert = slope_certificate(g, eps);
    require(p.slope_cert < 1.0, errc::precondition,
            "pair_from_g: map is not invertible (slope certificate >= 1)");
    return p;
}

namespace {

// 6-point Lagrange interpolation on strictly increasing scattered nodes.
double scattered_lagrange(const std::vector<double>& xs, const std::vector<double>& ys,
                          double x) {
    std::size_t n = xs.size();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::ptrdiff_t idx = std::distance(xs.begin(), it) - 1;
    std::ptrdiff_t start = std::clamp<std::ptrdiff_t>(idx - 2, 0, std::ptrdiff_t(n) - 6);
    double acc = 0.0;
    for (int a = 0; a < 6; ++a) {
        double xa = xs[std::size_t(start + a)];
        double num = 1.0, den = 1.0;
        for (int b = 0; b < 6; ++b) {
            if (b == a) continue;
            double xb = xs[std::size_t(start + b)];
            num *= (x - xb);
            den *= (xa - xb);
        }
        acc += ys[std::size_t(start + a)] * num / den;
    }
    return acc;
}

}  // namespace

field inverse_eval(const transform_pair& p, const grid& x_grid) {
    const grid& gi = p.g.g;
    require(x_grid.kind() == gi.kind(), errc::invalid_argument,
            "inverse_eval: target grid kind must match the transform grid");
    std::size_t n = gi.size();
    std::vector<double> xs(n), ys(p.g.v);
    for (std::size_t i = 0; i < n; ++i) xs[i] = gi.node(i) - p.eps * p.g.v[i];
    for (std::size_t i = 1; i < n; ++i)
        require(xs[i] > xs[i - 1], errc::numeric, "inverse_eval: transformed nodes not monotone");

    field out = field::zeros(x_grid);
    if (gi.kind() == grid_kind::periodic) {
        double P = gi.period();
        // Pad both ends with wrapped copies so every query sees a full window.
        const std::size_t pad = 6;
        std::vector<double> xe, ye;
        xe.reserve(n + 2 * pad);
        ye.reserve(n + 2 * pad);
        for (std::size_t i = n - pad; i < n; ++i) {
            xe.push_back(xs[i] - P);
            ye.push_back(ys[i]);
        }
        xe.insert(xe.end(), xs.begin(), xs.end());
        ye.insert(ye.end(), ys.begin(), ys.end());
        for (std::size_t i = 0; i < pad; ++i) {
            xe.push_back(xs[i] + P);
            ye.push_back(ys[i]);
        }
        for (std::size_t i = 0; i < x_grid.size(); ++i) {
            double x = x_grid.node(i);
            x -= P * std::floor((x - xs[0]) / P);
            out.v[i] = scattered_lagrange(xe, ye, x);
        }
    } else {
        double tol = gi.spacing();
        for (std::size_t i = 0; i < x_grid.size(); ++i) {
            double x = x_grid.node(i);
            require(x >= xs.front() - tol && x <= xs.back() + tol, errc::invalid_argument,
                    "inverse_eval: query outside the transformed line domain");
            out.v[i] = scattered_lagrange(xs, ys, std::clamp(x, xs.front(), xs.back()));
        }
    }
    return out;
}

chain_derivs chain_derivatives(const transform_pair& p) {
    field gx = derivative(p.g, 1);
    field gxx = derivative(p.g, 2);
    chain_derivs out;
    out.h_x.resize(gx.size());
    out.h_xx.resize(gx.size());
    for (std::size_t i = 0; i < gx.size(); ++i) {
        double d = 1.0 - p.eps * gx.v[i];
        require(d > 0.0, errc::numeric, "chain_derivatives: Jacobian sign change");
        out.h_x[i] = gx.v[i] / d;
        out.h_xx[i] = gxx.v[i] / (d * d * d);
    }
    return out;
}

norm_transfer_report norm_transfer(const transform_pair& p) {
    const grid& gi = p.g.g;
    norm_transfer_report r;
    r.l2_g = l2_norm(p.g);

    field h = inverse_eval(p, gi);
    r.l2_h = l2_norm(h);
    r.l2_residual = std::abs(r.l2_h - r.l2_g);

    field gx = derivative(p.g, 1);
    field gxx = derivative(p.g, 2);
    double acc = 0.0;
    for (std::size_t i = 0; i < gi.size(); ++i) {
        double d = 1.0 - p.eps * gx.v[i];
        acc += gi.weight(i) * gxx.v[i] * gxx.v[i] / (d * d * d * d * d);
    }
    r.h2_weighted = std::sqrt(acc);
    r.h2_h = l2_norm(derivative(h, 2));
    r.h2_residual = std::abs(r.h2_h - r.h2_weighted);

    r.h2semi_g = l2_norm(gxx);
    r.sandwich_lo = std::pow(2.0 / 3.0, 2.5) * r.h2semi_g;
    r.sandwich_hi = std::pow(2.0, 2.5) * r.h2semi_g;
    double tol = 1.0 + 1e-12;
    r.sandwich_ok = p.slope_cert <= 0.5 + 1e-12 && r.sandwich_lo <= r.h2_weighted * tol &&
                    r.h2_weighted <= r.sandwich_hi * tol;
    return r;
}

gn_report gn_check(const field& g) {
    gn_report r;
    r.lhs = sup_norm(derivative(g, 1));
    double l2 = l2_norm(g);
    double h2 = l2_norm(derivative(g, 2));
    r.rhs = std::sqrt(8.0 / 3.0) * std::pow(l2, 0.25) * std::pow(h2, 0.75);
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    r.ok = r.lhs <= r.rhs * (1.0 + 1e-10) || (r.lhs == 0.0 && r.rhs == 0.0);
    return r;
}

}  // namespace bhlab
