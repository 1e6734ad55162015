#pragma once

#include <cstddef>
#include <vector>

#include "bhlab/grid.hpp"

namespace bhlab {

// Scalar kernel family built from phi(c) = -(1/eps^2) * (log(1 - eps*c) + eps*c),
// the potential whose derivative phi_c = c/(1 - eps*c) turns the transformed
// quadratic nonlinearity into a single difference-quotient integral.  All
// members are restricted to |eps*c| <= 1/2, where the closed forms are
// cancellation free and the classical bounds
//     |phi| <= c^2,   |psi2| <= 4|c|,   |psi3| <= 12
// hold (psi2 = c/(1-eps*c)^2 and psi3 = (1+eps*c)/(1-eps*c)^3 are the second
// and third derivatives of psi(c) = c*phi - 2*Phi).
struct phi_family {
    double eps = 0.0;
    // Below this value of |eps*c| the log form loses digits to cancellation
    // and a 6-term Taylor series (exact at eps = 0) is used instead.  At the
    // default crossover the series truncation error is ~1e-19 relative while
    // the log form has already lost ~3 digits, so both branches stay well
    // inside 1e-12 of the true value everywhere.
    double series_switch = 1e-3;

    double phi(double c) const;
    double phi_c(double c) const;
    double psi2(double c) const;
    double psi3(double c) const;

    // Largest |c| the family accepts before raising a domain error.
    double domain_limit() const;
};

// Lattice sums S_j(d) = sum_{m in Z} (d - P*m)^(-j) for the period P of a
// periodic grid.  They are evaluated in closed form as polynomials in
// cot(pi*d/P) (S_1 is the conditionally convergent symmetric sum).  The
// g-equation on a periodic grid uses them to account for all periodic images
// of the line kernel beyond the directly summed ones, so that the quadrature
// approximates the whole-line integral of a periodic integrand instead of a
// bare fundamental-domain truncation.
class lattice_sums {
public:
    lattice_sums(double period, int max_order);

    double period() const { return period_; }
    int max_order() const { return max_order_; }

    // S_j(d); d must not be an integer multiple of the period.
    double S(int j, double d) const;

    // tail_term(k, d) = sum_{|m| >= 2} (d - P*m)^(1-k)  for k >= 2,
    // i.e. S_{k-1}(d) with the m = -1, 0, +1 singular images removed.
    double tail_term(int k, double d) const;

private:
    double period_;
    int max_order_;
    // cot-polynomial coefficients: poly_[j][p] multiplies cot(pi d/P)^p in C_j.
    std::vector<std::vector<double>> poly_;
};

// Per-grid cache of tail_term values for every raw node offset d = q*h,
// q in [-(n-1), n-1].  Kernel tables depend only on the offset, so the
// storage is O(n * terms) rather than O(n^2).
class periodized_tail {
public:
    periodized_tail(const grid& g, int terms);

    int terms() const { return terms_; }
    // tail_term(k, q*h) for k = 2..terms; q != 0.
    double at(int k, std::ptrdiff_t q) const {
        return table_[std::size_t(k - 2)][std::size_t(q + offset_)];
    }

private:
    int terms_;
    std::ptrdiff_t offset_;
    std::vector<std::vector<double>> table_;
};

}  // namespace bhlab
