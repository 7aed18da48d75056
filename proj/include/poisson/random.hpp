#pragma once

#include "poisson/rational_function.hpp"

#include <cstdint>
#include <random>

namespace poisson {

/// Seeded draws built only on the raw mt19937_64 output, which the standard
/// fixes bit-for-bit; std distributions are implementation-defined.
class SeededRandom {
public:
    explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : engine_() % bound; }
    /// Uniform integer in [lo, hi].
    long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    bool coin() { return below(2) == 1; }

    /// p/q with |p| <= max_num, 1 <= q <= max_den.
    Rational rational(long max_num = 5, long max_den = 3);
    Rational nonzero_rational(long max_num = 5, long max_den = 3);

    /// Random polynomial in symbols [first, first + count) with at most
    /// `terms` terms of total degree <= max_degree.
    Polynomial polynomial(std::size_t first, std::size_t count, unsigned max_degree, std::size_t terms);

private:
    std::mt19937_64 engine_;
};

}  // namespace poisson
