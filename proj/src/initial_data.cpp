#include "bhlab/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "bhlab/spectral.hpp"

namespace bhlab {

namespace {

// Explicit Box-Muller: the distribution classes in <random> are not pinned
// across standard library versions, the raw engine is.
struct gauss_source {
    std::mt19937_64 eng;
    bool have = false;
    double spare = 0.0;

    explicit gauss_source(std::uint64_t seed) : eng(seed) {}

    double uniform() {
        return (double(eng() >> 11) + 0.5) * 0x1p-53; // (0, 1)
    }
    double normal() {
        if (have) {
            have = false;
            return spare;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(a);
        have = true;
        return r * std::cos(a);
    }
};

field rescale_to_sup(field f, double amplitude) {
    double s = sup_norm(f);
    require(s > 0.0, errc::internal, "generator produced a flat field");
    double c = amplitude / s;
    for (double& x : f.v) x *= c;
    return f;
}

}  // namespace

field random_band_limited(const grid& g, std::uint64_t seed, int kmin, int kmax,
                          double amplitude) {
    require(g.kind() == grid_kind::periodic, errc::invalid_argument,
            "random_band_limited: periodic grids only");
    require(kmin >= 1 && kmax >= kmin, errc::invalid_argument,
            "random_band_limited: need 1 <= kmin <= kmax");
    require(std::size_t(kmax) <= dealias_cutoff(g.size()), errc::invalid_argument,
            "random_band_limited: kmax beyond the dealiased band");
    gauss_source rng(seed);
    field f = field::zeros(g);
    for (int k = kmin; k <= kmax; ++k) {
        double decay = std::exp(-0.25 * double(k - kmin));
        double a = rng.normal() * decay;
        double b = rng.normal() * decay;
        for (std::size_t j = 0; j < g.size(); ++j) {
            double th = double(k) * g.node(j) / g.scale();
            f.v[j] += a * std::cos(th) + b * std::sin(th);
        }
    }
    return rescale_to_sup(std::move(f), amplitude);
}

field random_wave_packets(const grid& g, std::uint64_t seed, int packets, double amplitude) {
    require(g.kind() == grid_kind::line, errc::invalid_argument,
            "random_wave_packets: line grids only");
    require(packets >= 1 && packets <= 64, errc::invalid_argument,
            "random_wave_packets: packet count out of range");
    gauss_source rng(seed);
    double L = g.half_width();
    field f = field::zeros(g);
    for (int p = 0; p < packets; ++p) {
        double mu = (rng.uniform() - 0.5) * (2.0 / 3.0) * L;
        double sigma = 0.5 + rng.uniform();
        double omega = 0.5 + 2.5 * rng.uniform();
        double theta = 2.0 * std::numbers::pi * rng.uniform();
        double a = (0.3 + 0.7 * rng.uniform()) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        for (std::size_t j = 0; j < g.size(); ++j) {
            double x = g.node(j) - mu;
            f.v[j] += a * std::exp(-x * x / (sigma * sigma)) * std::cos(omega * x + theta);
        }
    }
    return rescale_to_sup(std::move(f), amplitude);
}

field named_profile(const grid& g, const std::string& name, double amplitude, int mode,
                    double width, double center) {
    field f = field::zeros(g);
    if (name == "sine") {
        require(g.kind() == grid_kind::periodic, errc::invalid_argument, "sine: periodic only");
        for (std::size_t j = 0; j < g.size(); ++j)
            f.v[j] = amplitude * std::sin(double(mode) * g.node(j) / g.scale());
        return f;
    }
    if (name == "two_mode") {
        require(g.kind() == grid_kind::periodic, errc::invalid_argument, "two_mode: periodic only");
        for (std::size_t j = 0; j < g.size(); ++j) {
            double th = g.node(j) / g.scale();
            f.v[j] = amplitude * (std::sin(double(mode) * th) +
                                  0.5 * std::cos(double(2 * mode) * th));
        }
        return f;
    }
    if (name == "gaussian") {
        require(width > 0.0, errc::invalid_argument, "gaussian: width must be positive");
        if (g.kind() == grid_kind::line) {
            for (std::size_t j = 0; j < g.size(); ++j) {
                double x = (g.node(j) - center) / width;
                f.v[j] = amplitude * std::exp(-x * x);
            }
        } else {
            // Periodic analogue centered mid-domain, projected mean free.
            double c = center == 0.0 ? 0.5 * g.period() : center;
            for (std::size_t j = 0; j < g.size(); ++j) {
                double x = (g.node(j) - c) / width;
                f.v[j] = amplitude * std::exp(-x * x);
            }
            f = project_mean_zero(f);
        }
        return f;
    }
    if (name == "gaussian_derivative") {
        require(g.kind() == grid_kind::line, errc::invalid_argument,
                "gaussian_derivative: line only");
        require(width > 0.0, errc::invalid_argument, "gaussian_derivative: width must be positive");
        for (std::size_t j = 0; j < g.size(); ++j) {
            double x = (g.node(j) - center) / width;
            f.v[j] = -2.0 * x * std::exp(-x * x);
        }
        return rescale_to_sup(std::move(f), amplitude);
    }
    if (name == "bump") {
        // C-infinity bump supported on |x - center| < width.
        for (std::size_t j = 0; j < g.size(); ++j) {
            double x = (g.node(j) - center) / width;
            f.v[j] = std::abs(x) < 1.0 ? amplitude * std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        }
        return f;
    }
    fail(errc::config, "unknown initial profile: " + name);
}

}  // namespace bhlab
