#include "bhlab/grid.hpp"

#include <cmath>
#include <numbers>

namespace bhlab {

grid grid::periodic(std::size_t n, double scale) {
    require(n >= 4 && n % 2 == 0, errc::invalid_argument,
            "periodic grid needs an even n >= 4");
    require(scale > 0.0 && std::isfinite(scale), errc::invalid_argument,
            "periodic grid scale must be positive and finite");
    double period = 2.0 * std::numbers::pi * scale;
    return grid(grid_kind::periodic, n, scale, period / double(n));
}

grid grid::line(std::size_t n, double half_width) {
    require(n >= 5 && n % 2 == 1, errc::invalid_argument,
            "line grid needs an odd n >= 5");
    require(half_width > 0.0 && std::isfinite(half_width), errc::invalid_argument,
            "line grid half width must be positive and finite");
    return grid(grid_kind::line, n, half_width, 2.0 * half_width / double(n - 1));
}

double grid::scale() const {
    require(kind_ == grid_kind::periodic, errc::invalid_argument, "scale: periodic grids only");
    return param_;
}

double grid::period() const {
    require(kind_ == grid_kind::periodic, errc::invalid_argument, "period: periodic grids only");
    return h_ * double(n_);
}

double grid::half_width() const {
    require(kind_ == grid_kind::line, errc::invalid_argument, "half_width: line grids only");
    return param_;
}

double grid::node(std::size_t j) const {
    if (kind_ == grid_kind::periodic) return h_ * double(j);
    return -param_ + h_ * double(j);
}

std::vector<double> grid::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
    return x;
}

double grid::weight(std::size_t j) const {
    if (kind_ == grid_kind::line && (j == 0 || j + 1 == n_)) return 0.5 * h_;
    return h_;
}

bool grid::operator==(const grid& o) const {
    return kind_ == o.kind_ && n_ == o.n_ && param_ == o.param_;
}

field::field(const grid& gr, std::vector<double> vals) : g(gr), v(std::move(vals)) {
    require(v.size() == g.size(), errc::invalid_argument,
            "field: value count does not match grid size");
}

double field::quadrature_mean() const {
    double s = 0.0, w = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        s += g.weight(j) * v[j];
        w += g.weight(j);
    }
    return s / w;
}

void field::check_finite(const char* what) const {
    for (double x : v)
        if (!std::isfinite(x)) fail(errc::numeric, std::string(what) + ": non-finite sample");
}

field operator+(const field& a, const field& b) {
    require(a.g == b.g, errc::invalid_argument, "field +: grid mismatch");
    field r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.v[i] += b.v[i];
    return r;
}

field operator-(const field& a, const field& b) {
    require(a.g == b.g, errc::invalid_argument, "field -: grid mismatch");
    field r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.v[i] -= b.v[i];
    return r;
}

field operator*(double s, const field& a) {
    field r = a;
    for (double& x : r.v) x *= s;
    return r;
}

void axpy(double s, const field& x, field& y) {
    require(x.g == y.g, errc::invalid_argument, "axpy: grid mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y.v[i] += s * x.v[i];
}

double sup_norm(const field& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double sup_diff(const field& a, const field& b) {
    require(a.g == b.g, errc::invalid_argument, "sup_diff: grid mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_argument: return "invalid_argument";
        case errc::config: return "config";
        case errc::precondition: return "precondition";
        case errc::regime: return "regime";
        case errc::numeric: return "numeric";
        case errc::io: return "io";
        case errc::internal: return "internal";
    }
    return "unknown";
}

}  // namespace bhlab
