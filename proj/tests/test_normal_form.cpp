#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "bhlab/error.hpp"
#include "bhlab/initial_data.hpp"
#include "bhlab/normal_form.hpp"
#include "bhlab/spectral.hpp"
#include "bhlab/transform.hpp"

using namespace bhlab;

TEST_CASE("quadratic correction on a single harmonic has a closed form") {
    // u = a cos x: h = H[u] = a sin x, h^2 = a^2 (1 - cos 2x)/2, so
    // v = u + (eps/2) H[(h^2)_x] = a cos x - (eps a^2 / 2) cos 2x.
    grid gr = grid::periodic(128);
    const double a = 0.5, eps = 0.2;
    field u = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) u[j] = a * std::cos(gr.node(j));
    nf_pair p = nf_forward(u, eps);
    CHECK(p.eps == eps);
    CHECK(sup_diff(p.u, u) == 0.0);
    for (std::size_t j = 0; j < gr.size(); ++j) {
        double expect = a * std::cos(gr.node(j)) -
                        0.5 * eps * a * a * std::cos(2.0 * gr.node(j));
        CHECK(p.v[j] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("conjugation identity: H[v] = h - eps h h_x for unaliased data") {
    // with all products exactly representable on the grid the identity is a
    // discrete one, not just an asymptotic statement
    grid gr = grid::periodic(128);
    field u = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) {
        double x = gr.node(j);
        u[j] = 0.4 * std::cos(x) + 0.2 * std::sin(2.0 * x) - 0.1 * std::cos(3.0 * x);
    }
    const double eps = 0.15;
    nf_pair p = nf_forward(u, eps);
    field h = hilbert(u);
    field hx = derivative(h, 1);
    field rhs = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) rhs[j] = h[j] - eps * h[j] * hx[j];
    CHECK(sup_diff(hilbert(p.v), rhs) < 1e-12);
}

TEST_CASE("forward map rejects line grids and nonzero mean") {
    grid gl = grid::line(65, 8.0);
    field f = named_profile(gl, "gaussian", 0.5, 1, 1.0, 0.0);
    CHECK_THROWS_AS(nf_forward(f, 0.1), error);

    grid gp = grid::periodic(64);
    field u = field::zeros(gp);
    for (std::size_t j = 0; j < gp.size(); ++j) u[j] = 1.0 + std::cos(gp.node(j));
    CHECK_THROWS_AS(nf_forward(u, 0.1), error);
}

TEST_CASE("characteristic inversion agrees with the interpolated inverse map") {
    grid gr = grid::periodic(256);
    field g = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) {
        double x = gr.node(j);
        g[j] = 0.3 * std::sin(x) + 0.1 * std::sin(2.0 * x);
    }
    const double eps = 0.15;
    field h_ode = nf_invert_ode(g, eps);
    transform_pair p = pair_from_g(g, eps);
    field h_interp = inverse_eval(p, gr);
    CHECK(sup_diff(h_ode, h_interp) < 1e-7);
    // and h really inverts the fixed point: forward_solve(h) returns g
    transform_pair back = forward_solve(h_ode, eps);
    CHECK(sup_diff(back.g, g) < 1e-7);
}

TEST_CASE("characteristic inversion at eps = 0 is the identity") {
    grid gr = grid::periodic(64);
    field g = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) g[j] = 0.7 * std::sin(gr.node(j));
    CHECK(sup_diff(nf_invert_ode(g, 0.0), g) < 1e-14);
}

TEST_CASE("coordinate and dependent-variable transforms agree to first order") {
    grid gr = grid::periodic(256);
    field h = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) h[j] = 0.8 * std::cos(gr.node(j));
    transform_comparison tc =
        compare_transforms(h, {0.2, 0.1, 0.05, 0.025});
    REQUIRE(tc.eps_values.size() == 4);
    REQUIRE(tc.diff_sup.size() == 4);
    CHECK(std::is_sorted(tc.diff_sup.rbegin(), tc.diff_sup.rend()));
    CHECK(tc.slope == doctest::Approx(2.0).epsilon(0.06));
    // quartering eps should divide the gap by ~16
    CHECK(tc.diff_sup[1] / tc.diff_sup[3] == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("transformed residual beats both naive residuals on a short run") {
    grid gr = grid::periodic(256);
    field u0 = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) u0[j] = 0.5 * std::cos(gr.node(j));
    nf_residual_report rep = nf_residual(u0, 0.1, 1.0, 0.0025, 0.01);
    REQUIRE(!rep.times.empty());
    REQUIRE(rep.times.size() == rep.res_transformed_sup.size());
    REQUIRE(rep.times.size() == rep.res_linear_v_sup.size());
    REQUIRE(rep.times.size() == rep.res_linear_u_sup.size());
    double worst_t = *std::max_element(rep.res_transformed_sup.begin(),
                                       rep.res_transformed_sup.end());
    double worst_v = *std::max_element(rep.res_linear_v_sup.begin(),
                                       rep.res_linear_v_sup.end());
    double worst_u = *std::max_element(rep.res_linear_u_sup.begin(),
                                       rep.res_linear_u_sup.end());
    CHECK(worst_t < worst_v);        // cubic balance beats the v-linearization
    CHECK(worst_t < 0.1 * worst_u);  // and is far below the u-linearization
    CHECK(worst_u > 1e-3);           // the naive residual is genuinely O(eps)
}
