#include "intermit/fgn.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace intermit {
namespace {

struct FftwFree
{
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer make_buffer(std::size_t n)
{
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!p)
        throw std::bad_alloc();
    return Buffer(p);
}

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays is. Plans are made once per size and kept for the process lifetime.
fftw_plan forward_plan(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard lock(mutex);
    auto it = plans.find(n);
    if (it != plans.end())
        return it->second;
    Buffer scratch = make_buffer(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch.get(), scratch.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    if (!p)
        throw std::runtime_error("FFTW planning failed");
    plans.emplace(n, p);
    return p;
}

void fft_inplace(fftw_complex* data, std::size_t n)
{
    fftw_execute_dft(forward_plan(n), data, data);
}

}  // namespace

double fgn_autocovariance(double hurst, std::int64_t lag, double delta)
{
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("fgn_autocovariance: hurst must lie in (0, 1)");
    double const k = std::abs(static_cast<double>(lag));
    double const h2 = 2.0 * hurst;
    double const core = std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2);
    return 0.5 * std::pow(delta, h2) * core;
}

char const* to_string(GaussianSamplerMethod m)
{
    return m == GaussianSamplerMethod::CirculantEmbedding ? "circulant_embedding" : "hosking";
}

std::size_t StationaryGaussianSampler::half_size(std::size_t n)
{
    return std::bit_ceil(std::max<std::size_t>(n, 2) - 1);
}

StationaryGaussianSampler::StationaryGaussianSampler(std::function<double(std::size_t)> const& cov, std::size_t n)
    : n_(n)
{
    if (n == 0)
        throw std::invalid_argument("StationaryGaussianSampler: empty sequence");
    if (!(cov(0) > 0.0))
        throw std::invalid_argument("StationaryGaussianSampler: variance must be positive");

    std::size_t g = half_size(n);
    for (int attempt = 0; attempt < 3; ++attempt, g *= 2) {
        std::size_t const m = 2 * g;
        Buffer row = make_buffer(m);
        for (std::size_t k = 0; k <= g; ++k) {
            row[k][0] = cov(k);
            row[k][1] = 0.0;
        }
        for (std::size_t k = g + 1; k < m; ++k) {
            row[k][0] = row[m - k][0];
            row[k][1] = 0.0;
        }
        fft_inplace(row.get(), m);
        double max_eig = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            max_eig = std::max(max_eig, row[k][0]);
        double const tol = 1e-10 * max_eig;
        bool ok = true;
        for (std::size_t k = 0; k < m && ok; ++k)
            ok = row[k][0] >= -tol;
        if (!ok)
            continue;
        sqrt_eig_.resize(m);
        for (std::size_t k = 0; k < m; ++k)
            sqrt_eig_[k] = std::sqrt(std::max(row[k][0], 0.0) / static_cast<double>(m));
        method_ = GaussianSamplerMethod::CirculantEmbedding;
        return;
    }
    method_ = GaussianSamplerMethod::Hosking;
    cov_.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        cov_[k] = cov(k);
}

void StationaryGaussianSampler::transform(RngStream& rng, std::span<double> re, std::span<double> im) const
{
    std::size_t const m = sqrt_eig_.size();
    Buffer w = make_buffer(m);
    for (std::size_t k = 0; k < m; ++k) {
        w[k][0] = sqrt_eig_[k] * rng.normal();
        w[k][1] = sqrt_eig_[k] * rng.normal();
    }
    fft_inplace(w.get(), m);
    for (std::size_t j = 0; j < re.size(); ++j)
        re[j] = w[j][0];
    for (std::size_t j = 0; j < im.size(); ++j)
        im[j] = w[j][1];
}

void StationaryGaussianSampler::sample_hosking(RngStream& rng, std::span<double> out) const
{
    // Durbin-Levinson: one-step predictor coefficients phi and innovation
    // variance v, updated in place.
    std::vector<double> phi(n_, 0.0);
    std::vector<double> prev(n_, 0.0);
    double v = cov_[0];
    out[0] = std::sqrt(v) * rng.normal();
    for (std::size_t i = 1; i < n_; ++i) {
        double acc = cov_[i];
        for (std::size_t j = 1; j < i; ++j)
            acc -= prev[j] * cov_[i - j];
        double const k = acc / v;
        phi[i] = k;
        for (std::size_t j = 1; j < i; ++j)
            phi[j] = prev[j] - k * prev[i - j];
        v *= (1.0 - k * k);
        double mean = 0.0;
        for (std::size_t j = 1; j <= i; ++j)
            mean += phi[j] * out[i - j];
        out[i] = mean + std::sqrt(std::max(v, 0.0)) * rng.normal();
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(i) + 1, prev.begin());
    }
}

void StationaryGaussianSampler::sample(RngStream& rng, std::span<double> out) const
{
    if (out.size() != n_)
        throw std::invalid_argument("StationaryGaussianSampler: output length mismatch");
    if (method_ == GaussianSamplerMethod::Hosking)
        sample_hosking(rng, out);
    else
        transform(rng, out, {});
}

void StationaryGaussianSampler::sample_pair(RngStream& rng, std::span<double> out_a, std::span<double> out_b) const
{
    if (out_a.size() != n_ || out_b.size() != n_)
        throw std::invalid_argument("StationaryGaussianSampler: output length mismatch");
    if (method_ == GaussianSamplerMethod::Hosking) {
        sample_hosking(rng, out_a);
        sample_hosking(rng, out_b);
    } else {
        transform(rng, out_a, out_b);
    }
}

FbmGenerator::FbmGenerator(FbmSpec spec)
    : spec_(spec),
      sampler_(
          [h = spec.hurst, d = spec.delta](std::size_t k) {
              return fgn_autocovariance(h, static_cast<std::int64_t>(k), d);
          },
          (spec.hurst > 0.0 && spec.hurst < 1.0 && spec.n > 0 && spec.delta > 0.0)
              ? spec.n
              : throw std::invalid_argument("FbmSpec: need 0 < hurst < 1, n >= 1, delta > 0"))
{
}

void FbmGenerator::path(RngStream& rng, std::span<double> out) const
{
    sampler_.sample(rng, out);
    double acc = 0.0;
    for (double& x : out) {
        acc += x;
        x = acc;
    }
}

std::vector<double> FbmGenerator::path(RngStream& rng) const
{
    std::vector<double> out(spec_.n);
    path(rng, out);
    return out;
}

FbmPath generate_fbm(FbmSpec const& spec, RngStream& rng)
{
    FbmGenerator gen(spec);
    return FbmPath{gen.path(rng), gen.method()};
}

}  // namespace intermit
