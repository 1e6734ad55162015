#include "bhlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace bhlab {

namespace {

// ---------------------------------------------------------------------------
// FFT backend.  Plans are cached per length and created under a lock; the
// new-array execute calls are safe to run concurrently.  FFTW_UNALIGNED keeps
// the plans usable with plain std::vector storage, FFTW_ESTIMATE keeps plan
// construction deterministic.
// ---------------------------------------------------------------------------

struct plan_pair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

plan_pair& plans_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, plan_pair> cache;
    std::lock_guard<std::mutex> lock(mu);
    plan_pair& p = cache[n];
    if (!p.fwd) {
        std::vector<double> re(n);
        std::vector<std::complex<double>> cx(n / 2 + 1);
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        p.fwd = fftw_plan_dft_r2c_1d(int(n), re.data(),
                                     reinterpret_cast<fftw_complex*>(cx.data()), flags);
        p.inv = fftw_plan_dft_c2r_1d(int(n), reinterpret_cast<fftw_complex*>(cx.data()),
                                     re.data(), flags);
        require(p.fwd && p.inv, errc::internal, "fftw plan creation failed");
    }
    return p;
}

std::vector<std::complex<double>> rfft(const std::vector<double>& in) {
    std::size_t n = in.size();
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(plans_for(n).fwd, const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

// Takes the coefficient buffer by value: the c2r transform destroys its input.
std::vector<double> irfft(std::vector<std::complex<double>> c, std::size_t n) {
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plans_for(n).inv, reinterpret_cast<fftw_complex*>(c.data()),
                         out.data());
    double s = 1.0 / double(n);
    for (double& x : out) x *= s;
    return out;
}

// ---------------------------------------------------------------------------
// Finite-difference weights (Fornberg's algorithm) for the line backend.
// ---------------------------------------------------------------------------

// Weights for the m-th derivative at z from the given nodes; exact for
// polynomials of degree nodes-1, so the formal order is nodes - m.
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    int nd = int(x.size());
    std::vector<std::vector<double>> c(nd, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < nd; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nd);
    for (int i = 0; i < nd; ++i) w[i] = c[i][m];
    return w;
}

field line_derivative(const field& f, int order) {
    const grid& g = f.g;
    std::size_t n = g.size();
    // Window of order+4 nodes (odd for even derivatives) keeps the formal
    // order at 4 or better everywhere, including the one-sided boundaries.
    std::size_t w = std::size_t(order) + 4;
    if (w % 2 == 0) ++w;
    require(n >= w, errc::invalid_argument, "line grid too small for derivative stencil");
    std::size_t half = (w - 1) / 2;
    double h = g.spacing();

    std::vector<double> offs(w);
    auto window_weights = [&](double z_rel, std::size_t wlen) {
        std::vector<double> xs(wlen);
        for (std::size_t k = 0; k < wlen; ++k) xs[k] = double(k) * h;
        return fd_weights(z_rel, xs, order);
    };

    // One interior stencil plus bespoke stencils for the clamped windows.
    std::vector<double> interior = window_weights(double(half) * h, w);
    field out = field::zeros(g);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t start = (i <= half) ? 0 : (i >= n - 1 - half ? n - w : i - half);
        const std::vector<double>* wts = &interior;
        std::vector<double> boundary;
        if (start != i - half || i < half) {
            boundary = window_weights(double(i - start) * h, w);
            wts = &boundary;
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < w; ++k) acc += (*wts)[k] * f.v[start + k];
        out.v[i] = acc;
    }
    return out;
}

field line_hilbert(const field& f) {
    const grid& g = f.g;
    std::size_t n = g.size();
    double h = g.spacing();
    // Principal value quadrature on a uniform grid: skip the singular node,
    // then restore the diagonal contribution of the subtracted integrand,
    // (f(y) - f(x))/(x - y) -> -f'(x).  Without that term the rule is only
    // first order; with it the interior error is O(h^2) for decaying data.
    std::vector<double> inv_d(n, 0.0);
    for (std::size_t q = 1; q < n; ++q) inv_d[q] = 1.0 / (double(q) * h);
    constexpr double inv_pi = 1.0 / std::numbers::pi;
    const field df = line_derivative(f, 1);
    field out = field::zeros(g);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = -g.weight(i) * df.v[i];
        for (std::size_t j = 0; j < i; ++j)
            acc += g.weight(j) * f.v[j] * inv_d[i - j];
        for (std::size_t j = i + 1; j < n; ++j)
            acc -= g.weight(j) * f.v[j] * inv_d[j - i];
        out.v[i] = inv_pi * acc;
    }
    return out;
}

}  // namespace

std::vector<std::complex<double>> spectrum(const field& f) {
    require(f.g.kind() == grid_kind::periodic, errc::invalid_argument,
            "spectrum: periodic grids only");
    return rfft(f.v);
}

field field_from_spectrum(const grid& g, std::vector<std::complex<double>> coeff) {
    require(g.kind() == grid_kind::periodic, errc::invalid_argument,
            "field_from_spectrum: periodic grids only");
    require(coeff.size() == g.size() / 2 + 1, errc::invalid_argument,
            "field_from_spectrum: coefficient count does not match grid");
    return field(g, irfft(std::move(coeff), g.size()));
}

field hilbert(const field& f) {
    f.check_finite("hilbert input");
    if (f.g.kind() == grid_kind::line) return line_hilbert(f);
    std::size_t n = f.g.size();
    auto c = rfft(f.v);
    c[0] = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) c[k] *= std::complex<double>(0.0, -1.0);
    c[n / 2] = 0.0;
    return field(f.g, irfft(std::move(c), n));
}

field derivative(const field& f, int order) {
    require(order >= 1 && order <= 3, errc::invalid_argument, "derivative order must be 1..3");
    f.check_finite("derivative input");
    if (f.g.kind() == grid_kind::line) return line_derivative(f, order);
    std::size_t n = f.g.size();
    auto c = rfft(f.v);
    double inv_scale = 1.0 / f.g.scale();
    for (std::size_t k = 0; k <= n / 2; ++k) {
        std::complex<double> ik(0.0, double(k) * inv_scale);
        std::complex<double> mult = 1.0;
        for (int p = 0; p < order; ++p) mult *= ik;
        c[k] *= mult;
    }
    if (order % 2 == 1) c[n / 2] = 0.0;
    return field(f.g, irfft(std::move(c), n));
}

std::size_t dealias_cutoff(std::size_t n) { return n / 3; }

field dealias(const field& f) {
    if (f.g.kind() == grid_kind::line) return f;
    std::size_t n = f.g.size();
    std::size_t cut = dealias_cutoff(n);
    auto c = rfft(f.v);
    for (std::size_t k = cut + 1; k <= n / 2; ++k) c[k] = 0.0;
    return field(f.g, irfft(std::move(c), n));
}

double tail_energy_fraction(const field& f) {
    require(f.g.kind() == grid_kind::periodic, errc::invalid_argument,
            "tail_energy_fraction: periodic grids only");
    std::size_t n = f.g.size();
    std::size_t cut = dealias_cutoff(n);
    std::size_t lo = (2 * cut) / 3; // tail band is lo < k <= cut
    auto c = rfft(f.v);
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
        double e = std::norm(c[k]) * ((k == 0 || k == n / 2) ? 1.0 : 2.0);
        total += e;
        if (k > lo && k <= cut) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

norm_set norms(const field& f) {
    f.check_finite("norms input");
    norm_set r;
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        acc += f.g.weight(j) * f.v[j] * f.v[j];
        r.sup = std::max(r.sup, std::abs(f.v[j]));
    }
    r.l2 = std::sqrt(acc);
    r.h1semi = l2_norm(derivative(f, 1));
    r.h2semi = l2_norm(derivative(f, 2));
    return r;
}

double l2_norm(const field& f) {
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) acc += f.g.weight(j) * f.v[j] * f.v[j];
    return std::sqrt(acc);
}

field project_mean_zero(const field& f) {
    field r = f;
    double m = f.quadrature_mean();
    for (double& x : r.v) x -= m;
    return r;
}

namespace {

double trig_eval(const std::vector<std::complex<double>>& c, std::size_t n, double theta) {
    // theta = 2*pi*x/period.  Incremental phase rotation with periodic
    // refresh keeps the cost at one complex multiply per mode without
    // accumulating rounding drift.
    std::complex<double> rot = std::polar(1.0, theta);
    std::complex<double> ph = rot;
    double acc = c[0].real();
    for (std::size_t k = 1; k < n / 2; ++k) {
        if (k % 64 == 0) ph = std::polar(1.0, double(k) * theta);
        acc += 2.0 * (c[k].real() * ph.real() - c[k].imag() * ph.imag());
        ph *= rot;
    }
    acc += c[n / 2].real() * std::cos(double(n / 2) * theta);
    return acc / double(n);
}

double lagrange6(const field& f, double x) {
    const grid& g = f.g;
    std::size_t n = g.size();
    double L = g.half_width(), h = g.spacing();
    require(x >= -L - h && x <= L + h, errc::invalid_argument,
            "interpolate: point outside the line domain");
    x = std::clamp(x, -L, L);
    double pos = (x + L) / h;
    std::ptrdiff_t idx = std::ptrdiff_t(std::floor(pos));
    std::ptrdiff_t start = std::clamp<std::ptrdiff_t>(idx - 2, 0, std::ptrdiff_t(n) - 6);
    double acc = 0.0;
    for (int a = 0; a < 6; ++a) {
        double xa = g.node(std::size_t(start + a));
        double num = 1.0, den = 1.0;
        for (int b = 0; b < 6; ++b) {
            if (b == a) continue;
            double xb = g.node(std::size_t(start + b));
            num *= (x - xb);
            den *= (xa - xb);
        }
        acc += f.v[std::size_t(start + a)] * num / den;
    }
    return acc;
}

}  // namespace

std::vector<double> interpolate(const field& f, const std::vector<double>& x) {
    f.check_finite("interpolate input");
    std::vector<double> out(x.size());
    if (f.g.kind() == grid_kind::periodic) {
        auto c = rfft(f.v);
        std::size_t n = f.g.size();
        double two_pi_over_p = 2.0 * std::numbers::pi / f.g.period();
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = trig_eval(c, n, x[i] * two_pi_over_p);
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = lagrange6(f, x[i]);
    }
    return out;
}

double interpolate_at(const field& f, double x) {
    if (f.g.kind() == grid_kind::periodic) {
        auto c = rfft(f.v);
        return trig_eval(c, f.g.size(), x * 2.0 * std::numbers::pi / f.g.period());
    }
    return lagrange6(f, x);
}

}  // namespace bhlab
