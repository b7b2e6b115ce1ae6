#ifndef GRIDLESS2D_RNG_HPP
#define GRIDLESS2D_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace gridless2d
{

///
/// Seeded random source with distribution code written out by hand, so that
/// sequences are identical across standard library implementations (the
/// std:: distributions are implementation-defined).
///
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    std::uint64_t next() { return m_engine(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

    /// Uniform integer on [0, bound), rejection sampled.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do
        {
            x = m_engine();
        } while (x >= limit);
        return x % bound;
    }

    /// Standard normal via Box-Muller (cosine branch only).
    double normal()
    {
        double u1;
        do
        {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 m_engine;
};

} // namespace gridless2d

#endif
