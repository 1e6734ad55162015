#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bhlab/analysis.hpp"
#include "bhlab/error.hpp"
#include "bhlab/initial_data.hpp"
#include "bhlab/spectral.hpp"

using namespace bhlab;

TEST_CASE("estimate constants match their closed forms") {
    estimate_constants c = constants();
    CHECK(c.interp_const == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-15));
    CHECK(c.maximal_const == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c.cubic_const ==
          doctest::Approx(48.0 + 128.0 * (1.0 + std::sqrt(2.0)) / 3.0).epsilon(1e-15));
    // pinned decimal values, so a silent redefinition cannot slip through
    CHECK(c.interp_const == doctest::Approx(1.6329931618554521).epsilon(1e-12));
    CHECK(c.maximal_const == doctest::Approx(2.4142135623730951).epsilon(1e-12));
    CHECK(c.cubic_const == doctest::Approx(151.00644532791872).epsilon(1e-12));
}

TEST_CASE("amplitude functional on pure harmonics") {
    // g = a sin(k x): ||g|| = a sqrt(pi), ||g''|| = a k^2 sqrt(pi),
    // so E0 = ||g||^(1/4) ||g''||^(3/4) = a sqrt(pi) k^(3/2)
    grid gr = grid::periodic(256);
    const double pi = std::numbers::pi;

    field s1 = named_profile(gr, "sine", 1.0, 1, 1.0, 0.0);
    CHECK(amplitude_functional(s1) == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));

    field s3 = named_profile(gr, "sine", 2.0, 3, 1.0, 0.0);
    CHECK(amplitude_functional(s3) ==
          doctest::Approx(2.0 * std::sqrt(pi) * std::pow(3.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("threshold and lifespan coefficient closed forms and scaling") {
    // eps0(E0) = 1/(2 sqrt(2) N E0); with N = sqrt(8/3) this is sqrt(3)/(8 E0)
    CHECK(eps_threshold(1.0) == doctest::Approx(std::sqrt(3.0) / 8.0).epsilon(1e-14));
    CHECK(eps_threshold(2.0) == doctest::Approx(std::sqrt(3.0) / 16.0).epsilon(1e-14));
    // k(E0) = 2/(3 A E0^2) scales like 1/E0^2
    double k1 = lifespan_coefficient(1.0);
    CHECK(k1 == doctest::Approx(2.0 / (3.0 * constants().cubic_const)).epsilon(1e-14));
    CHECK(lifespan_coefficient(3.0) == doctest::Approx(k1 / 9.0).epsilon(1e-13));
    CHECK_THROWS_AS(eps_threshold(0.0), error);
    CHECK_THROWS_AS(lifespan_coefficient(-1.0), error);
}

TEST_CASE("maximal function: pointwise bounds and exact ramp averages") {
    grid gr = grid::line(129, 4.0);
    field f = field::zeros(gr);
    // positive increasing ramp: trapezoid averages over [x_i, x_j] are exactly
    // (f_i + f_j)/2 for linear data, maximized by the longest interval
    for (std::size_t j = 0; j < gr.size(); ++j) f[j] = gr.node(j) + 5.0;
    field m = maximal_function(f);
    const double fmax = f[gr.size() - 1];
    for (std::size_t j = 0; j + 1 < gr.size(); ++j)
        CHECK(m[j] == doctest::Approx(0.5 * (f[j] + fmax)).epsilon(1e-12));
    CHECK(m[gr.size() - 1] == doctest::Approx(fmax).epsilon(1e-12));

    // generic field: |f| <= m[f] <= sup|f|, and m scales linearly
    field w = named_profile(gr, "gaussian_derivative", 1.0, 1, 1.0, 0.0);
    field mw = maximal_function(w);
    for (std::size_t j = 0; j < gr.size(); ++j) {
        CHECK(mw[j] >= std::abs(w[j]) - 1e-14);
        CHECK(mw[j] <= sup_norm(w) + 1e-14);
    }
    field w2 = w;
    for (std::size_t j = 0; j < gr.size(); ++j) w2[j] *= 2.0;
    field mw2 = maximal_function(w2);
    for (std::size_t j = 0; j < gr.size(); ++j)
        CHECK(mw2[j] == doctest::Approx(2.0 * mw[j]).epsilon(1e-13));
}

TEST_CASE("maximal function is constant on constants") {
    grid gr = grid::line(65, 3.0);
    field f = field::zeros(gr);
    for (std::size_t j = 0; j < gr.size(); ++j) f[j] = -0.7; // sign is stripped
    field m = maximal_function(f);
    for (std::size_t j = 0; j < gr.size(); ++j)
        CHECK(m[j] == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("maximal bound check holds with a sane ratio") {
    grid gr = grid::line(257, 10.0);
    field g = named_profile(gr, "gaussian", 1.0, 1, 1.0, 0.0);
    maximal_report r = maximal_bound_check(g);
    CHECK(r.ok);
    CHECK(r.lhs <= r.rhs);
    // m[f] >= |f| forces ratio >= 1/M; below 1 means the bound is not tight here
    CHECK(r.ratio >= 1.0 / constants().maximal_const - 1e-12);
    CHECK(r.ratio < 1.0);
}

TEST_CASE("estimate suite: every inequality holds on a gaussian") {
    grid gr = grid::line(513, 12.0);
    field g = named_profile(gr, "gaussian", 1.0, 1, 1.0, 0.0);
    estimate_report rep = estimate_suite(g, 0.1);
    REQUIRE(rep.rows.size() == 5);
    CHECK(rep.all_ok);
    for (const auto& row : rep.rows) {
        INFO(row.name);
        CHECK(row.ok);
        CHECK(row.margin == doctest::Approx(row.rhs - row.lhs).epsilon(1e-12));
        CHECK(row.lhs <= row.rhs);
    }
    // spot-check the interp row against independently computed norms
    const estimate_row* interp = nullptr;
    for (const auto& row : rep.rows)
        if (row.name == "interp") interp = &row;
    REQUIRE(interp != nullptr);
    CHECK(interp->lhs == doctest::Approx(sup_norm(derivative(g, 1))).epsilon(1e-12));
    CHECK(interp->rhs ==
          doctest::Approx(constants().interp_const * amplitude_functional(g)).epsilon(1e-12));
    // integration-by-parts identity for the production integral: exact on the
    // whole line; on a truncated domain the conversion of the xi~ derivative
    // leaves boundary terms ~1/L^3, because the difference quotient decays
    // only algebraically even for gaussian data.  Check smallness at L = 12
    // and the cubic decay under domain doubling at fixed spacing.
    CHECK(std::abs(rep.identity_residual) < 2e-3 * std::abs(rep.I_direct));
    grid wide = grid::line(1025, 24.0);
    field gw = named_profile(wide, "gaussian", 1.0, 1, 1.0, 0.0);
    estimate_report rep2 = estimate_suite(gw, 0.1);
    CHECK(rep2.identity_residual < 0.25 * rep.identity_residual);
}

TEST_CASE("estimate suite rejects periodic input") {
    grid gr = grid::periodic(64);
    field g = named_profile(gr, "sine", 1.0, 1, 1.0, 0.0);
    CHECK_THROWS_AS(estimate_suite(g, 0.1), error);
    CHECK_THROWS_AS(maximal_function(g), error);
}

TEST_CASE("inequality campaign: no failures on seeded wave packets") {
    grid gr = grid::line(257, 10.0);
    campaign_report rep = inequality_campaign(gr, 7, 25, 0.1);
    CHECK(rep.fields == 25);
    CHECK(rep.failures == 0);
    CHECK(rep.failure_notes.empty());
    CHECK(rep.worst_interp_ratio > 0.0);
    CHECK(rep.worst_interp_ratio <= 1.0);
    CHECK(rep.worst_maximal_ratio > 0.0);
    CHECK(rep.worst_maximal_ratio <= 1.0);
    CHECK(rep.worst_quotient_ratio <= 1.0);
    CHECK(rep.worst_dquotient_ratio <= 1.0);
    CHECK(rep.worst_production_ratio <= 1.0);
    CHECK_THROWS_AS(inequality_campaign(gr, 7, 0, 0.1), error);
}
