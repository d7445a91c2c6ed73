#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "intermit/rng.hpp"

namespace intermit {

/// Covariance of fractional Gaussian noise increments of step delta:
/// (delta^2H / 2)(|k+1|^2H - 2|k|^2H + |k-1|^2H).
double fgn_autocovariance(double hurst, std::int64_t lag, double delta);

enum class GaussianSamplerMethod { CirculantEmbedding, Hosking };

char const* to_string(GaussianSamplerMethod m);

/// Stationary Gaussian sequence of length n with covariance cov(0..n-1).
///
/// Circulant embedding (Davies-Harte / Dietrich-Newsam) when the minimal
/// embedding, possibly enlarged a few times, is nonnegative definite;
/// otherwise the Durbin-Levinson recursion, which is exact but O(n^2) per
/// sample.
class StationaryGaussianSampler
{
  public:
    StationaryGaussianSampler(std::function<double(std::size_t)> const& cov, std::size_t n);
    /// Lag count g of the minimal embedding (circulant size 2g); the
    /// sampler evaluates cov at lags up to 4g.
    static std::size_t half_size(std::size_t n);

    GaussianSamplerMethod method() const { return method_; }
    std::size_t size() const { return n_; }
    std::size_t embedding_size() const { return sqrt_eig_.size(); }

    void sample(RngStream& rng, std::span<double> out) const;
    /// Two independent samples from one transform (real and imaginary parts);
    /// falls back to two Durbin-Levinson draws.
    void sample_pair(RngStream& rng, std::span<double> out_a, std::span<double> out_b) const;

  private:
    void sample_hosking(RngStream& rng, std::span<double> out) const;
    void transform(RngStream& rng, std::span<double> re, std::span<double> im) const;

    std::size_t n_;
    GaussianSamplerMethod method_ = GaussianSamplerMethod::CirculantEmbedding;
    std::vector<double> sqrt_eig_;
    std::vector<double> cov_;
};

/// fBm sampled at delta, 2 delta, ..., n delta.
struct FbmSpec
{
    double hurst;
    std::size_t n;
    double delta = 1.0;
};

class FbmGenerator
{
  public:
    explicit FbmGenerator(FbmSpec spec);

    FbmSpec const& spec() const { return spec_; }
    GaussianSamplerMethod method() const { return sampler_.method(); }

    /// B_H(k delta) for k = 1..n; B_H(0) = 0 is implied.
    void path(RngStream& rng, std::span<double> out) const;
    std::vector<double> path(RngStream& rng) const;

  private:
    FbmSpec spec_;
    StationaryGaussianSampler sampler_;
};

struct FbmPath
{
    std::vector<double> values;
    GaussianSamplerMethod method;
};

FbmPath generate_fbm(FbmSpec const& spec, RngStream& rng);

}  // namespace intermit
