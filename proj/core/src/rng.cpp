#include "intermit/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace intermit {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    std::uint64_t const p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t replication, std::uint32_t substream)
    : seed_(seed), replication_(replication), substream_(substream)
{
}

void RngStream::refill()
{
    if (block_ == UINT32_MAX)
        throw std::overflow_error("RngStream: counter space exhausted");
    buffer_ = philox4x32({block_, substream_, static_cast<std::uint32_t>(replication_),
                          static_cast<std::uint32_t>(replication_ >> 32)},
                         {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    ++block_;
    used_ = 0;
}

std::uint32_t RngStream::next_u32()
{
    if (used_ == 4)
        refill();
    return buffer_[used_++];
}

std::uint64_t RngStream::next_u64()
{
    std::uint64_t const hi = next_u32();
    return (hi << 32) | next_u32();
}

double RngStream::uniform()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // Marsaglia polar method.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double const f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    has_spare_ = true;
    return u * f;
}

double RngStream::exponential()
{
    return -std::log(uniform());
}

double RngStream::gamma(double shape)
{
    if (!(shape > 0.0))
        throw std::invalid_argument("RngStream::gamma: shape must be positive");
    if (shape < 1.0) {
        // G(a) = G(a+1) U^(1/a), kept in log space so tiny shapes underflow
        // gracefully to 0 instead of producing NaN.
        double const g = gamma(shape + 1.0);
        double const log_u = std::log(uniform());
        return std::exp(std::log(g) + log_u / shape);
    }
    // Marsaglia and Tsang.
    double const d = shape - 1.0 / 3.0;
    double const c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double const u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

std::uint64_t RngStream::poisson(double mean)
{
    if (!(mean >= 0.0) || mean > 500.0)
        throw std::invalid_argument("RngStream::poisson: mean must lie in [0, 500]");
    double const limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = uniform();
    while (p > limit) {
        ++k;
        p *= uniform();
    }
    return k;
}

void RngStream::fill_normal(std::span<double> out)
{
    for (double& x : out)
        x = normal();
}

RngStream spawn_replication_rng(std::uint64_t seed, std::uint64_t replication_index, std::uint32_t substream)
{
    return RngStream(seed, replication_index, substream);
}

}  // namespace intermit
