#pragma once

#include <cstdint>
#include <random>

#include "ipbounds/gram.hpp"

namespace ipbounds {

/// Counter-based seeding: the stream for (seed, index) depends on nothing
/// else, so instances can be generated in any order or in parallel. The
/// variates are derived from raw 64-bit draws with fixed arithmetic, so the
/// sequence is identical on every platform.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }
    double uniform();                             // [0, 1)
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);              // inclusive
    double normal();                              // Box-Muller
    Complex unit_disk();                          // uniform on |z| <= 1
    Complex complex_normal();                     // re, im ~ N(0, 1/2)

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ipbounds
