#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "bhlab/grid.hpp"

namespace bhlab {

// Discrete norms.  l2 is the quadrature-weighted L2 norm; h1semi and h2semi
// are the L2 norms of the first and second grid derivatives (seminorms; the
// full Sobolev norms follow by Pythagoras); sup is the max-norm on the nodes.
struct norm_set {
    double l2 = 0.0;
    double h1semi = 0.0;
    double h2semi = 0.0;
    double sup = 0.0;
};

norm_set norms(const field& f);
double l2_norm(const field& f);

// Hilbert transform.
//   periodic: Fourier multiplier -i*sgn(k); the k = 0 and Nyquist modes are
//             zeroed, so the output is mean free.
//   line:     principal-value trapezoid sum (1/pi) sum_{j != i} w_j f_j /
//             (x_i - x_j) plus the diagonal term -w_i f'(x_i) of the
//             subtracted integrand.  Its empirical convergence order is
//             measured in the tests rather than assumed.
field hilbert(const field& f);

// Grid derivative of order 1..3.  periodic: spectral multiplier (ik)^order
// with the Nyquist mode zeroed for odd orders.  line: centered finite
// differences of formal order 4 (one-sided stencils of the same order at the
// boundary), generated by polynomial fitting on a sliding window.
field derivative(const field& f, int order);

// 2/3-rule dealiasing: zero all modes with |k| > n/3.  On a line grid this is
// an identity copy (finite differences do not alias products the same way).
field dealias(const field& f);
std::size_t dealias_cutoff(std::size_t n); // retained band is |k| <= cutoff

// Fraction of spectral energy in the top third of the retained band, i.e.
// modes with dealias_cutoff*2/3 < k <= dealias_cutoff.  Under the 2/3 rule
// everything above the cutoff is identically zero, so the detector watches
// the highest band that can actually hold energy.  Periodic grids only.
double tail_energy_fraction(const field& f);

// Interpolation at arbitrary points.
//   periodic: exact trigonometric (band-limited) evaluation of the DFT
//             interpolant, any real x (wrapped into the period).
//   line:     local 6-point Lagrange polynomial (order 6); points must lie
//             inside [-L, L] up to a one-spacing clamp tolerance.
std::vector<double> interpolate(const field& f, const std::vector<double>& x);
double interpolate_at(const field& f, double x);

// Subtract the quadrature mean (periodic fields are evolved mean free).
field project_mean_zero(const field& f);

// Half-complex spectrum of a periodic field (size n/2+1), unnormalized DFT.
std::vector<std::complex<double>> spectrum(const field& f);

// Inverse of spectrum(): rebuild the field (applies the 1/n normalization).
// Takes the coefficients by value because the backward transform destroys them.
field field_from_spectrum(const grid& g, std::vector<std::complex<double>> coeff);

}  // namespace bhlab
