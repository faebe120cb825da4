#pragma once

#include <cstdint>
#include <random>

namespace schreier {

/// 64-bit generator with one independent stream per (seed, stream) pair.
///
/// Stream split rule: stream k of seed s is mt19937_64 seeded through
/// std::seed_seq{lo(s), hi(s), lo(k), hi(k)}; trial k of a simulation always
/// uses stream k, so results do not depend on how trials are scheduled.
/// Bounded and real draws are done here rather than through the standard
/// distributions, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n);
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

private:
    std::mt19937_64 engine_;
};

}  // namespace schreier
