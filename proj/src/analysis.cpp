#include "bhlab/analysis.hpp"

#include <cmath>
#include <sstream>

#include "bhlab/initial_data.hpp"
#include "bhlab/kernels.hpp"
#include "bhlab/spectral.hpp"

namespace bhlab {

estimate_constants constants() {
    const double M = 1.0 + std::sqrt(2.0);
    return {std::sqrt(8.0 / 3.0), M, 48.0 + 128.0 * M / 3.0};
}

double amplitude_functional(const field& g0) {
    return std::pow(l2_norm(g0), 0.25) * std::pow(l2_norm(derivative(g0, 2)), 0.75);
}

double eps_threshold(double E0) {
    require(E0 > 0.0, errc::invalid_argument, "eps_threshold: E0 must be positive");
    return 1.0 / (2.0 * std::sqrt(2.0) * constants().interp_const * E0);
}

double lifespan_coefficient(double E0) {
    require(E0 > 0.0, errc::invalid_argument, "lifespan_coefficient: E0 must be positive");
    return 2.0 / (3.0 * constants().cubic_const * E0 * E0);
}

field maximal_function(const field& f) {
    require(f.g.kind() == grid_kind::line, errc::invalid_argument,
            "maximal_function: line grids only");
    const std::size_t n = f.size();
    const double h = f.g.spacing();
    // prefix[i] = sum_{k <= i} |f_k|, so the trapezoid integral of |f| over
    // [x_j, x_i] is h * (prefix[i] - prefix[j-1] - (|f_i| + |f_j|)/2) etc.
    std::vector<double> a(n), prefix(n);
    double run = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = std::abs(f[k]);
        run += a[k];
        prefix[k] = run;
    }
    field m = field::zeros(f.g);
    for (std::size_t i = 0; i < n; ++i) {
        double best = a[i]; // degenerate interval: the average tends to |f(x_i)|
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::size_t lo = std::min(i, j), hi = std::max(i, j);
            const double integral =
                h * (prefix[hi] - (lo > 0 ? prefix[lo - 1] : 0.0) - 0.5 * (a[lo] + a[hi]));
            best = std::max(best, integral / (h * double(hi - lo)));
        }
        m[i] = best;
    }
    return m;
}

maximal_report maximal_bound_check(const field& g) {
    const field gx = derivative(g, 1);
    maximal_report r;
    r.lhs = l2_norm(maximal_function(gx));
    r.rhs = constants().maximal_const * l2_norm(gx);
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    r.ok = r.lhs <= r.rhs * (1.0 + 1e-12);
    return r;
}

namespace {

estimate_row make_row(std::string name, double lhs, double rhs) {
    estimate_row row;
    row.name = std::move(name);
    row.lhs = lhs;
    row.rhs = rhs;
    row.margin = rhs - lhs;
    row.ok = lhs <= rhs * (1.0 + 1e-12) + 1e-300;
    return row;
}

}  // namespace

estimate_report estimate_suite(const field& g, double eps) {
    require(g.g.kind() == grid_kind::line, errc::invalid_argument,
            "estimate_suite: line grids only");
    const estimate_constants C = constants();
    const std::size_t n = g.size();
    const std::vector<double> x = g.g.nodes();
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = g.g.weight(j);

    const std::vector<double> gx = derivative(g, 1).v;
    const field gxx_f = derivative(g, 2);
    const std::vector<double>& gxx = gxx_f.v;
    const std::vector<double> gxxx = derivative(g, 3).v;

    const double l2_gx = l2_norm(field(g.g, gx));
    const double l2_gxx = l2_norm(gxx_f);
    const phi_family fam{eps};

    // row-streamed quadratures over the difference-quotient plane
    double max_q = 0.0, max_dq = 0.0;
    double I1 = 0.0, I2 = 0.0, I3 = 0.0;
    std::vector<double> S(n, 0.0); // inner integral of the divergence form
    for (std::size_t i = 0; i < n; ++i) {
        double q2 = 0.0, dq2 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0, sS = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double c, cx;
            if (j == i) {
                c = gx[i];
                cx = 0.5 * gxx[i];
            } else {
                const double d = x[i] - x[j];
                c = (g[i] - g[j]) / d;
                cx = -(c - gx[i]) / d;
                sS += w[j] * gx[j] * d * fam.phi(c);
                s3 += w[j] * d * fam.psi3(c) * cx * cx * cx; // diagonal term carries (xi - xi~) = 0
            }
            q2 += w[j] * c * c;
            dq2 += w[j] * cx * cx;
            const double p2 = fam.psi2(c);
            s1 += w[j] * p2 * cx;
            s2 += w[j] * p2 * cx * cx;
        }
        max_q = std::max(max_q, q2);
        max_dq = std::max(max_dq, dq2);
        I1 += w[i] * gxx[i] * gxx[i] * s1;
        I2 += w[i] * gxx[i] * s2;
        I3 += w[i] * gxx[i] * s3;
        S[i] = sS;
    }

    estimate_report rep;
    rep.rows.push_back(make_row("interp", sup_norm(field(g.g, gx)),
                                C.interp_const * std::pow(l2_norm(g), 0.25) * std::pow(l2_gxx, 0.75)));
    rep.rows.push_back(make_row("quotient_l2", std::sqrt(max_q), 2.0 * l2_gx));
    rep.rows.push_back(make_row("quotient_dl2", std::sqrt(max_dq), (4.0 / 3.0) * l2_gxx));
    {
        maximal_report m = maximal_bound_check(g);
        rep.rows.push_back(make_row("maximal", m.lhs, m.rhs));
    }

    rep.I_parts = -2.5 * I1 + 3.0 * I2 - I3;
    // independent evaluation: quadrature of g_xixixi times the second grid
    // derivative of the inner integral
    const std::vector<double> d2S = derivative(field(g.g, std::move(S)), 2).v;
    double direct = 0.0;
    for (std::size_t i = 0; i < n; ++i) direct += w[i] * gxxx[i] * d2S[i];
    rep.I_direct = direct;
    rep.identity_residual = std::abs(rep.I_direct - rep.I_parts);

    rep.rows.push_back(make_row("production", std::abs(rep.I_parts),
                                C.cubic_const * l2_gx * l2_gxx * l2_gxx * l2_gxx));
    rep.all_ok = true;
    for (const auto& row : rep.rows) rep.all_ok = rep.all_ok && row.ok;
    return rep;
}

campaign_report inequality_campaign(const grid& g, std::uint64_t seed, int count, double eps) {
    require(g.kind() == grid_kind::line, errc::invalid_argument,
            "inequality_campaign: line grids only");
    require(count > 0, errc::invalid_argument, "inequality_campaign: count must be positive");

    campaign_report rep;
    for (int k = 0; k < count; ++k) {
        field f = random_wave_packets(g, seed + std::uint64_t(k), 3 + k % 3, 1.0);
        // keep |eps*c| well inside the admissible half-ball: |c| <= sup|g_xi|
        const double slope = sup_norm(derivative(f, 1));
        if (eps != 0.0 && std::abs(eps) * slope > 0.45)
            f = (0.45 / (std::abs(eps) * slope)) * f;

        const estimate_report er = estimate_suite(f, eps);
        ++rep.fields;
        auto ratio = [](const estimate_row& row) {
            return row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
        };
        for (const auto& row : er.rows) {
            double* worst = nullptr;
            if (row.name == "interp") worst = &rep.worst_interp_ratio;
            else if (row.name == "quotient_l2") worst = &rep.worst_quotient_ratio;
            else if (row.name == "quotient_dl2") worst = &rep.worst_dquotient_ratio;
            else if (row.name == "maximal") worst = &rep.worst_maximal_ratio;
            else if (row.name == "production") worst = &rep.worst_production_ratio;
            if (worst) *worst = std::max(*worst, ratio(row));
            if (!row.ok) {
                ++rep.failures;
                std::ostringstream os;
                os << "field " << k << ": " << row.name << " lhs=" << row.lhs
                   << " rhs=" << row.rhs;
                rep.failure_notes.push_back(os.str());
            }
        }
    }
    return rep;
}

}  // namespace bhlab
