#pragma once

#include <cstddef>
#include <vector>

#include "bhlab/error.hpp"

namespace bhlab {

enum class grid_kind { periodic, line };

// Uniform one-dimensional grid.
//
// periodic: n nodes x_j = j*h on [0, P) with period P = 2*pi*scale, h = P/n.
//           n must be even (real FFT layout); powers of two are fastest.
// line:     n nodes x_j = -L + j*h on [-L, L], h = 2L/(n-1), n odd so that
//           x = 0 is a node.
class grid {
public:
    static grid periodic(std::size_t n, double scale = 1.0);
    static grid line(std::size_t n, double half_width);

    grid_kind kind() const { return kind_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }
    double scale() const;      // periodic only
    double period() const;     // periodic only
    double half_width() const; // line only
    double node(std::size_t j) const;
    std::vector<double> nodes() const;

    // Trapezoid quadrature weight (uniform h on the periodic grid, halved at
    // the two ends of a line grid).
    double weight(std::size_t j) const;

    bool operator==(const grid& o) const;
    bool operator!=(const grid& o) const { return !(*this == o); }

private:
    grid(grid_kind k, std::size_t n, double param, double h)
        : kind_(k), n_(n), param_(param), h_(h) {}

    grid_kind kind_;
    std::size_t n_;
    double param_; // scale (periodic) or half width (line)
    double h_;
};

// Real scalar field sampled on a grid.
struct field {
    grid g;
    std::vector<double> v;

    field() : g(grid::periodic(4)), v(4, 0.0) {}
    field(const grid& gr, std::vector<double> vals);
    static field zeros(const grid& gr) { return field(gr, std::vector<double>(gr.size(), 0.0)); }

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    double quadrature_mean() const;
    void check_finite(const char* what) const;
};

// Elementwise helpers used throughout the solvers.
field operator+(const field& a, const field& b);
field operator-(const field& a, const field& b);
field operator*(double s, const field& a);
void axpy(double s, const field& x, field& y); // y += s*x
double sup_norm(const field& f);
double sup_diff(const field& a, const field& b);

}  // namespace bhlab
