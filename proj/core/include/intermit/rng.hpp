#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace intermit {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Deterministic random stream identified by (seed, replication, substream).
///
/// The 64-bit seed is the Philox key; the counter holds a block index, the
/// substream and the 64-bit replication index. Two streams with different
/// identities never share a counter value, and a stream's output depends on
/// nothing but its identity, so the order in which replications are
/// processed cannot change any draw.
///
/// Distributions are implemented here rather than taken from <random>: the
/// standard library leaves the algorithms unspecified, which would break
/// bit-reproducibility across toolchains.
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::uint64_t replication, std::uint32_t substream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform();
    double normal();
    double exponential();
    /// Gamma(shape, scale 1); shape > 0.
    double gamma(double shape);
    /// Poisson with small-to-moderate mean (inversion by multiplication).
    std::uint64_t poisson(double mean);

    void fill_normal(std::span<double> out);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t replication() const { return replication_; }
    std::uint32_t substream() const { return substream_; }

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t replication_;
    std::uint32_t substream_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

RngStream spawn_replication_rng(std::uint64_t seed, std::uint64_t replication_index, std::uint32_t substream = 0);

}  // namespace intermit
