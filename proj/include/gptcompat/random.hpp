#ifndef GPTCOMPAT_RANDOM_HPP
#define GPTCOMPAT_RANDOM_HPP

#include "gptcompat/rational.hpp"

#include <cstdint>
#include <random>

namespace gptcompat {

/// splitmix64 finalizer; derives independent sub-seeds from (seed, index).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// mt19937_64 with range reduction done here rather than by the standard
/// distributions, whose output is implementation-defined. Results are
/// identical on every platform.
class SeededRng
{
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    long integer(long lo, long hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(engine_() % span);
    }

    /// k / den for k uniform in [lo*den, hi*den].
    Rational rational(long lo, long hi, long den)
    {
        return make_rational(integer(lo * den, hi * den), den);
    }

    bool coin() { return (engine_() >> 63) != 0; }

  private:
    std::mt19937_64 engine_;
};

} // namespace gptcompat

#endif
