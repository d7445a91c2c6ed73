#include "intermit/supou.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "intermit/fgn.hpp"

namespace intermit {
namespace {

// Below this magnitude a decaying state is set to zero; keeps subnormals out
// of the inner loops.
constexpr double kFlush = 1e-200;

double stationary_jump_state(JumpLaw const& law, double shape_scale, RngStream& rng)
{
    // Stationary law of the jump part of an OU process with jump rate r and
    // decay xi: Gamma(r p+/xi, mean+) - Gamma(r p-/xi, mean-), centred.
    // `shape_scale` is r / xi.
    double v = 0.0;
    double const s_plus = shape_scale * law.p_plus;
    double const s_minus = shape_scale * (1.0 - law.p_plus);
    if (s_plus > 0.0 && law.mean_plus > 0.0)
        v += law.mean_plus * rng.gamma(s_plus);
    if (s_minus > 0.0 && law.mean_minus > 0.0)
        v -= law.mean_minus * rng.gamma(s_minus);
    return v - shape_scale * law.mean();
}

double draw_jump(JumpLaw const& law, RngStream& rng)
{
    double const u = rng.uniform();
    double const e = rng.exponential();
    return u < law.p_plus ? law.mean_plus * e : -law.mean_minus * e;
}

struct JumpEvent
{
    std::size_t step;       // contributes at the end of this step
    std::uint32_t component;
    double value;           // already decayed to the step end
};

// table[l] = sum_k w0 exp(-xi_k delta l) for l < lags. Terms below 1e-20 w0
// are dropped. Components are visited in increasing xi so the ones still
// alive at lag l form a prefix, which keeps the inner loop vectorisable.
std::vector<double> exponential_sum_table(std::vector<double> const& xi, double delta, double w0, std::size_t lags)
{
    std::vector<double> rate(xi);
    std::sort(rate.begin(), rate.end());
    std::size_t const m = rate.size();
    std::vector<double> phi(m), w(m, w0);
    std::vector<std::size_t> life(m);
    double const horizon = std::log(1e20);
    for (std::size_t k = 0; k < m; ++k) {
        phi[k] = std::exp(-rate[k] * delta);
        double const steps = std::ceil(horizon / (rate[k] * delta));
        life[k] = steps < static_cast<double>(lags) ? static_cast<std::size_t>(steps) : lags;
    }
    std::vector<double> table(lags, 0.0);
    std::size_t alive = m;
    for (std::size_t l = 0; l < lags; ++l) {
        while (alive > 0 && life[alive - 1] <= l)
            --alive;
        if (alive == 0)
            break;
        std::array<double, 8> lane{};
        std::size_t k = 0;
        for (; k + 8 <= alive; k += 8) {
            for (std::size_t j = 0; j < 8; ++j) {
                lane[j] += w[k + j];
                w[k + j] *= phi[k + j];
            }
        }
        for (; k < alive; ++k) {
            lane[k % 8] += w[k];
            w[k] *= phi[k];
        }
        double sum = 0.0;
        for (double x : lane)
            sum += x;
        table[l] = sum;
    }
    return table;
}

}  // namespace

std::vector<double> sample_mixing(MixingSpec const& pi, std::size_t m, RngStream& rng)
{
    if (m == 0)
        throw std::invalid_argument("sample_mixing: m must be >= 1");
    if (!(pi.alpha > 0.0 && pi.rate > 0.0))
        throw std::invalid_argument("sample_mixing: alpha and rate must be positive");
    std::vector<double> xi(m);
    for (double& x : xi)
        x = rng.gamma(pi.alpha) / pi.rate;
    return xi;
}

std::vector<double> simulate_ou_path(double xi, OuDriver const& driver, double delta, std::size_t n_steps,
                                     double burn_in, RngStream& rng)
{
    if (!(xi > 0.0))
        throw std::invalid_argument("simulate_ou_path: xi must be positive");
    if (!(delta > 0.0) || burn_in < 0.0)
        throw std::invalid_argument("simulate_ou_path: delta > 0 and burn_in >= 0 required");
    JumpLaw const& law = driver.jumps;
    double const phi = std::exp(-xi * delta);
    double const gauss_sd = std::sqrt(driver.gauss_var_rate * (-std::expm1(-2.0 * xi * delta)) / (2.0 * xi));
    double const drift_step = -law.intensity * law.mean() * (-std::expm1(-xi * delta)) / xi;

    double v = 0.0;
    if (driver.gauss_var_rate > 0.0)
        v += std::sqrt(driver.gauss_var_rate / (2.0 * xi)) * rng.normal();
    if (law.intensity > 0.0)
        v += stationary_jump_state(law, law.intensity / xi, rng);

    auto const burn_steps = static_cast<std::size_t>(std::ceil(burn_in / delta));
    std::size_t const total = burn_steps + n_steps;
    double next_jump = law.intensity > 0.0 ? rng.exponential() / law.intensity : INFINITY;

    std::vector<double> out;
    out.reserve(n_steps + 1);
    if (burn_steps == 0)
        out.push_back(v);
    for (std::size_t j = 0; j < total; ++j) {
        double const t_end = static_cast<double>(j + 1) * delta;
        v = phi * v + drift_step;
        if (gauss_sd > 0.0)
            v += gauss_sd * rng.normal();
        while (next_jump <= t_end) {
            v += draw_jump(law, rng) * std::exp(-xi * (t_end - next_jump));
            next_jump += rng.exponential() / law.intensity;
        }
        if (j + 1 >= burn_steps)
            out.push_back(v);
    }
    return out;
}

std::vector<double> simulate_supou(model::SupOU const& config, std::size_t n_steps, std::uint64_t seed,
                                   std::uint64_t replication)
{
    validate(ProcessModel(config));
    auto const& quad = config.quadruple;
    std::size_t const m = config.m_components;
    double const inv_m = 1.0 / static_cast<double>(m);
    double const delta = config.delta;
    JumpLaw const law = jump_law(quad.levy);
    bool const has_jumps = law.intensity > 0.0 && law.second_moment() > 0.0;
    bool const has_gauss = quad.b_gauss > 0.0;
    bool const spectral = has_gauss && config.gaussian_method == GaussianMethod::Spectral;

    auto const burn_steps = static_cast<std::size_t>(std::ceil(config.burn_in / delta));
    std::size_t const total = burn_steps + n_steps;

    // Component k: decay rate, stationary start, then its jump times.
    std::vector<RngStream> streams;
    streams.reserve(m);
    std::vector<double> xi(m), phi(m), v(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        streams.emplace_back(seed, replication, kComponentStreamBase + static_cast<std::uint32_t>(k));
        xi[k] = streams[k].gamma(quad.pi.alpha) / quad.pi.rate;
        phi[k] = std::exp(-xi[k] * delta);
    }

    // On the clock xi t, a driver with cumulant kappa/m is a Levy process
    // with Gaussian variance rate xi b / m and jump rate xi lambda / m.
    std::vector<double> gauss_sd(m, 0.0);
    std::vector<double> drift(m, 0.0);
    std::vector<JumpEvent> events;
    for (std::size_t k = 0; k < m; ++k) {
        RngStream& rng = streams[k];
        if (has_gauss && !spectral) {
            v[k] += std::sqrt(quad.b_gauss * inv_m / 2.0) * rng.normal();
            gauss_sd[k] = std::sqrt(quad.b_gauss * inv_m * (-std::expm1(-2.0 * xi[k] * delta)) / 2.0);
        }
        if (has_jumps) {
            double const rate = xi[k] * law.intensity * inv_m;
            v[k] += stationary_jump_state(law, law.intensity * inv_m, rng);
            drift[k] = -law.intensity * inv_m * law.mean() * (-std::expm1(-xi[k] * delta));
            double const horizon = static_cast<double>(total) * delta;
            double s = rng.exponential() / rate;
            while (s <= horizon) {
                auto const step = std::min(total - 1, static_cast<std::size_t>(std::floor(s / delta)));
                double const t_end = static_cast<double>(step + 1) * delta;
                events.push_back({step, static_cast<std::uint32_t>(k), draw_jump(law, rng) * std::exp(-xi[k] * (t_end - s))});
                s += rng.exponential() / rate;
            }
        }
    }
    std::stable_sort(events.begin(), events.end(), [](JumpEvent const& a, JumpEvent const& b) { return a.step < b.step; });

    std::vector<double> y;
    y.reserve(n_steps + 1);
    auto record = [&](std::size_t done) {
        if (done < burn_steps)
            return;
        // Eight fixed lanes: vectorisable, and the summation order does not
        // depend on the build.
        std::array<double, 8> lane{};
        std::size_t k = 0;
        for (; k + 8 <= m; k += 8) {
            for (std::size_t l = 0; l < 8; ++l)
                lane[l] += v[k + l];
        }
        for (; k < m; ++k)
            lane[k % 8] += v[k];
        double sum = 0.0;
        for (double x : lane)
            sum += x;
        y.push_back(sum);
    };
    record(0);
    bool const stepping = has_jumps || (has_gauss && !spectral);
    std::size_t e = 0;
    for (std::size_t j = 0; j < total && stepping; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            double const next = phi[k] * v[k] + drift[k];
            v[k] = std::abs(next) < kFlush ? 0.0 : next;
        }
        if (has_gauss && !spectral) {
            for (std::size_t k = 0; k < m; ++k)
                v[k] += gauss_sd[k] * streams[k].normal();
        }
        for (; e < events.size() && events[e].step == j; ++e)
            v[events[e].component] += events[e].value;
        record(j + 1);
    }
    if (!stepping)
        y.assign(n_steps + 1, 0.0);

    if (spectral) {
        // Given the xi_k the Gaussian part is a stationary Gaussian sequence
        // with covariance sum_k (b / 2m) exp(-xi_k u).
        std::size_t const n_points = n_steps + 1;
        std::size_t const lags = StationaryGaussianSampler::half_size(n_points) + 1;
        double const w0 = quad.b_gauss * inv_m / 2.0;
        std::vector<double> table = exponential_sum_table(xi, delta, w0, lags);
        // Lags past the table are needed only if the minimal embedding is
        // rejected, which a completely monotone covariance never causes.
        auto cov = [&](std::size_t l) {
            if (l < lags)
                return table[l];
            double c = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                c += w0 * std::exp(-xi[k] * delta * static_cast<double>(l));
            return c;
        };
        StationaryGaussianSampler sampler(cov, n_points);
        RngStream rng(seed, replication, kGaussianStream);
        std::vector<double> g(n_points);
        sampler.sample(rng, g);
        for (std::size_t i = 0; i < n_points; ++i)
            y[i] += g[i];
    }
    return y;
}

std::vector<double> integrate_path(std::span<double const> y, double delta)
{
    std::vector<double> x(y.size(), 0.0);
    for (std::size_t i = 1; i < y.size(); ++i)
        x[i] = x[i - 1] + 0.5 * delta * (y[i - 1] + y[i]);
    return x;
}

std::string to_string(SupOUCase c)
{
    switch (c) {
    case SupOUCase::Gaussian:
        return "gaussian";
    case SupOUCase::StableLevy:
        return "stable_levy";
    case SupOUCase::StableDependent:
        return "stable_dependent";
    case SupOUCase::Brownian:
        return "brownian";
    }
    return "unknown";
}

TheoreticalH theoretical_H(double b_gauss, double alpha, std::optional<double> beta_bg)
{
    if (!(alpha > 0.0) || b_gauss < 0.0)
        throw std::invalid_argument("theoretical_H: alpha > 0 and b >= 0 required");
    if (alpha == 1.0)
        throw std::domain_error("theoretical_H: uncovered boundary alpha = 1");
    if (alpha > 1.0)
        return {0.5, SupOUCase::Brownian};
    if (b_gauss > 0.0)
        return {1.0 - alpha / 2.0, SupOUCase::Gaussian};
    if (!beta_bg)
        throw std::invalid_argument("theoretical_H: b = 0 needs the Blumenthal-Getoor index");
    double const beta = *beta_bg;
    if (beta < 0.0 || beta >= 2.0)
        throw std::invalid_argument("theoretical_H: Blumenthal-Getoor index must lie in [0, 2)");
    if (beta == 1.0 + alpha)
        throw std::domain_error("theoretical_H: uncovered boundary beta = 1 + alpha");
    if (beta < 1.0 + alpha)
        return {1.0 / (1.0 + alpha), SupOUCase::StableLevy};
    return {1.0 - alpha / beta, SupOUCase::StableDependent};
}

std::optional<double> blumenthal_getoor(LevyDriverSpec const& spec)
{
    JumpLaw const law = jump_law(spec);
    if (law.intensity > 0.0 && law.second_moment() > 0.0)
        return 0.0;
    return std::nullopt;
}

double supou_integrated_variance(double variance_rate, MixingSpec const& pi, double t)
{
    if (t <= 0.0)
        return 0.0;
    double const r = pi.rate;
    double const a = pi.alpha;
    double const V = 1.0 + t / r;
    // int_1^V v^p dv
    auto power_integral = [V](double p) {
        return std::abs(p + 1.0) < 1e-14 ? std::log(V) : (std::pow(V, p + 1.0) - 1.0) / (p + 1.0);
    };
    // u = r (v - 1): int_0^t (t - u)(1 + u/r)^-a du
    double const integral = r * (t + r) * power_integral(-a) - r * r * power_integral(1.0 - a);
    return variance_rate * integral;
}

}  // namespace intermit
