#include "bhlab/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bhlab {

double phi_family::domain_limit() const {
    if (eps == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * (1.0 + 1e-9) / std::abs(eps);
}

namespace {
inline void check_domain(double z) {
    // z = eps*c; the family is only used where the smallness certificate
    // keeps |eps*c| <= 1/2.
    if (!(std::abs(z) <= 0.5 * (1.0 + 1e-9)))
        fail(errc::numeric, "kernel domain exit: |eps*c| > 1/2");
}
}  // namespace

double phi_family::phi(double c) const {
    double z = eps * c;
    check_domain(z);
    if (std::abs(z) < series_switch) {
        // phi = c^2 * (1/2 + z/3 + z^2/4 + z^3/5 + z^4/6 + z^5/7) + O(c^2 z^6)
        double s = 1.0 / 7.0;
        s = s * z + 1.0 / 6.0;
        s = s * z + 1.0 / 5.0;
        s = s * z + 1.0 / 4.0;
        s = s * z + 1.0 / 3.0;
        s = s * z + 1.0 / 2.0;
        return c * c * s;
    }
    return -(std::log1p(-z) + z) / (eps * eps);
}

double phi_family::phi_c(double c) const {
    double z = eps * c;
    check_domain(z);
    return c / (1.0 - z);
}

double phi_family::psi2(double c) const {
    double z = eps * c;
    check_domain(z);
    double d = 1.0 - z;
    return c / (d * d);
}

double phi_family::psi3(double c) const {
    double z = eps * c;
    check_domain(z);
    double d = 1.0 - z;
    return (1.0 + z) / (d * d * d);
}

// ---------------------------------------------------------------------------
// Lattice sums.
//
// With u = cot(z), d/dz u = -(1 + u^2), so every S_j is (pi/P)^j * C_j(u)
// evaluated at z = pi*d/P, where C_1 = u and C_{j+1} = -C_j'/j.  The C_j are
// polynomials in u with integer-over-factorial coefficients generated once.
// ---------------------------------------------------------------------------

lattice_sums::lattice_sums(double period, int max_order) : period_(period), max_order_(max_order) {
    require(period > 0.0, errc::invalid_argument, "lattice_sums: period must be positive");
    require(max_order >= 1 && max_order <= 64, errc::invalid_argument,
            "lattice_sums: order out of range");
    poly_.resize(std::size_t(max_order) + 1);
    poly_[1] = {0.0, 1.0}; // C_1 = u
    for (int j = 1; j < max_order; ++j) {
        const auto& a = poly_[std::size_t(j)];
        std::vector<double> b(a.size() + 1, 0.0);
        // C_{j+1} = (1/j) * sum_p a_p * p * (u^{p-1} + u^{p+1})
        for (std::size_t p = 1; p < a.size(); ++p) {
            double t = a[p] * double(p) / double(j);
            b[p - 1] += t;
            b[p + 1] += t;
        }
        poly_[std::size_t(j) + 1] = std::move(b);
    }
}

double lattice_sums::S(int j, double d) const {
    require(j >= 1 && j <= max_order_, errc::invalid_argument, "lattice_sums::S: bad order");
    double z = std::numbers::pi * d / period_;
    double u = 1.0 / std::tan(z);
    const auto& a = poly_[std::size_t(j)];
    double acc = 0.0;
    for (std::size_t p = a.size(); p-- > 0;) acc = acc * u + a[p];
    return acc * std::pow(std::numbers::pi / period_, double(j));
}

double lattice_sums::tail_term(int k, double d) const {
    require(k >= 2 && k <= max_order_ + 1, errc::invalid_argument,
            "lattice_sums::tail_term: bad power");
    double acc = S(k - 1, d);
    for (int m = -1; m <= 1; ++m) {
        double base = d - period_ * double(m);
        acc -= std::pow(base, double(1 - k));
    }
    return acc;
}

periodized_tail::periodized_tail(const grid& g, int terms) : terms_(terms) {
    require(g.kind() == grid_kind::periodic, errc::invalid_argument,
            "periodized_tail: periodic grids only");
    require(terms >= 2 && terms <= 64, errc::invalid_argument,
            "periodized_tail: term count out of range");
    std::ptrdiff_t n = std::ptrdiff_t(g.size());
    offset_ = n - 1;
    lattice_sums sums(g.period(), terms - 1);
    table_.assign(std::size_t(terms - 1), std::vector<double>(std::size_t(2 * n - 1), 0.0));
    for (int k = 2; k <= terms; ++k) {
        auto& row = table_[std::size_t(k - 2)];
        for (std::ptrdiff_t q = -(n - 1); q <= n - 1; ++q) {
            if (q == 0) continue; // diagonal is never used (difference is zero)
            row[std::size_t(q + offset_)] = sums.tail_term(k, double(q) * g.spacing());
        }
    }
}

}  // namespace bhlab
