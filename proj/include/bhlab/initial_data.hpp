#pragma once

#include <cstdint>
#include <string>

#include "bhlab/grid.hpp"

namespace bhlab {

// Deterministic seeded generators used by tests, property campaigns and the
// CLI.  All randomness flows through an explicit Box-Muller transform on
// mt19937_64 so that a (config, seed) pair reproduces fields bit for bit.

// Periodic: random band-limited field with modes kmin..kmax, mildly decaying
// amplitudes, mean free, rescaled to the requested sup-norm.
field random_band_limited(const grid& g, std::uint64_t seed, int kmin, int kmax,
                          double amplitude);

// Line: sum of a few modulated Gaussian wave packets, rescaled to the
// requested sup-norm.  Decays far faster than the grid tails.
field random_wave_packets(const grid& g, std::uint64_t seed, int packets, double amplitude);

// Named deterministic profiles ("sine", "two_mode", "gaussian", "bump", ...).
field named_profile(const grid& g, const std::string& name, double amplitude, int mode,
                    double width, double center);

}  // namespace bhlab
