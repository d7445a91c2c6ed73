#include "intermit/estimator.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "intermit/extended.hpp"

namespace intermit {
namespace {

struct Ols
{
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double se_residual = 0.0;
    double sxx = 0.0;
    double x_mean = 0.0;
};

Ols ols(std::span<double const> x, std::span<double const> y)
{
    std::size_t const n = x.size();
    Ols r;
    double ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.x_mean += x[i];
        ym += y[i];
    }
    r.x_mean /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.sxx += (x[i] - r.x_mean) * (x[i] - r.x_mean);
        sxy += (x[i] - r.x_mean) * (y[i] - ym);
        syy += (y[i] - ym) * (y[i] - ym);
    }
    r.slope = sxy / r.sxx;
    r.intercept = ym - r.slope * r.x_mean;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double const e = y[i] - r.intercept - r.slope * x[i];
        ssr += e * e;
    }
    r.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ssr / syy) : 1.0;
    r.se_residual = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / r.sxx) : 0.0;
    return r;
}

// Replication r belongs to group r * groups / n.
std::size_t group_size(std::size_t n, std::size_t groups, std::size_t g)
{
    auto first = [&](std::size_t k) { return (k * n + groups - 1) / groups; };
    return first(g + 1) - first(g);
}

}  // namespace

MomentEstimate empirical_moment(std::span<double const> values, double q, double t)
{
    std::size_t const n = values.size();
    if (n == 0)
        throw std::invalid_argument("empirical_moment: no replications");
    if (q == 0.0)
        return MomentEstimate{q, t, 1.0, 0.0, n, 1.0};

    std::vector<double> p(n);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double const a = std::abs(values[i]);
        if (q < 0.0 && a == 0.0)
            throw std::domain_error("empirical_moment: negative-order moment undefined at zero");
        max_abs = std::max(max_abs, a);
        p[i] = std::pow(a, q);
    }
    double sum = 0.0;
    for (double v : p)
        sum += v;
    if (!std::isfinite(sum)) {
        double const max_q = max_abs > 1.0 ? std::log(DBL_MAX / static_cast<double>(n)) / std::log(max_abs) : q;
        throw MomentOverflow("empirical_moment: |X|^q overflows; largest finite order is about " +
                                 std::to_string(max_q),
                             max_q);
    }
    double const mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : p)
        ss += (v - mean) * (v - mean);
    double const var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;

    std::sort(p.begin(), p.end(), std::greater<>());
    double acc = 0.0;
    std::size_t k = 0;
    while (k < n && acc < 0.99 * sum)
        acc += p[k++];
    double const frac = sum > 0.0 ? static_cast<double>(std::max<std::size_t>(k, 1)) / static_cast<double>(n) : 1.0;

    return MomentEstimate{q, t, mean, std::sqrt(var / static_cast<double>(n)), n, frac};
}

MomentEstimate empirical_moment(PathEnsemble const& e, double q, std::size_t t_index)
{
    return empirical_moment(e.column(t_index), q, e.grid()[t_index]);
}

std::vector<double> default_q_grid(double q_lo, double q_hi)
{
    std::vector<double> out;
    for (int i = 0; i <= 16; ++i) {
        double const q = 0.25 * i;
        if (q >= q_lo && q <= q_hi)
            out.push_back(q);
    }
    return out;
}

ScalingEstimate estimate_scaling_function(PathEnsemble const& e, std::span<double const> q_grid,
                                          std::span<std::size_t const> t_indices)
{
    if (t_indices.size() < 3)
        throw std::invalid_argument("estimate_scaling_function: need at least 3 time points");
    std::vector<double> x;
    for (std::size_t j : t_indices) {
        double const t = e.grid()[j];
        if (!(t > 1.0))
            throw std::invalid_argument("estimate_scaling_function: times must exceed 1");
        x.push_back(std::log(t));
    }
    auto const [lo, hi] = std::minmax_element(x.begin(), x.end());
    if ((*hi - *lo) / std::log(10.0) < 1.5 - 1e-9)
        throw std::invalid_argument("estimate_scaling_function: times must span at least 1.5 decades");

    ScalingEstimate est;
    est.t_lo = e.grid()[t_indices[static_cast<std::size_t>(lo - x.begin())]];
    est.t_hi = e.grid()[t_indices[static_cast<std::size_t>(hi - x.begin())]];
    std::size_t const last = static_cast<std::size_t>(hi - x.begin());
    std::size_t const n_reps = e.n_reps();
    std::size_t const groups = n_reps >= 2 * kJackknifeGroups ? kJackknifeGroups : 0;
    std::vector<std::vector<double>> jack(groups);
    for (double q : q_grid) {
        est.q_grid.push_back(q);
        if (q == 0.0) {
            est.tau_hat.push_back(0.0);
            est.stderr_.push_back(0.0);
            est.r_squared.push_back(1.0);
            est.effective_fraction.push_back(1.0);
            for (auto& row : jack)
                row.push_back(0.0);
            continue;
        }
        std::vector<double> y, var;
        double eff = 1.0;
        for (std::size_t i = 0; i < t_indices.size(); ++i) {
            MomentEstimate const m = empirical_moment(e, q, t_indices[i]);
            if (!(m.value > 0.0))
                throw std::domain_error("estimate_scaling_function: zero moment, log undefined");
            y.push_back(std::log(m.value));
            var.push_back((m.stderr_ / m.value) * (m.stderr_ / m.value));
            if (i == last)
                eff = m.effective_fraction;
        }
        Ols const fit = ols(x, y);
        double mc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double const w = (x[i] - fit.x_mean) / fit.sxx;
            mc += w * w * var[i];
        }
        if (groups > 0) {
            std::vector<std::vector<double>> yg(groups, std::vector<double>(t_indices.size()));
            for (std::size_t i = 0; i < t_indices.size(); ++i) {
                auto const col = e.column(t_indices[i]);
                double total = 0.0;
                std::vector<double> part(groups, 0.0);
                for (std::size_t r = 0; r < n_reps; ++r) {
                    double const v = std::pow(std::abs(col[r]), q);
                    part[r * groups / n_reps] += v;
                    total += v;
                }
                for (std::size_t g = 0; g < groups; ++g) {
                    double const kept = static_cast<double>(n_reps - group_size(n_reps, groups, g));
                    yg[g][i] = std::log((total - part[g]) / kept);
                }
            }
            for (std::size_t g = 0; g < groups; ++g)
                jack[g].push_back(ols(x, yg[g]).slope);
        }
        est.tau_hat.push_back(fit.slope);
        est.stderr_.push_back(std::max(fit.se_residual, std::sqrt(mc)));
        est.r_squared.push_back(fit.r_squared);
        est.effective_fraction.push_back(eff);
        if (fit.r_squared < 0.95)
            est.warnings.push_back("q = " + to_token(q) + ": r_squared " + to_token(fit.r_squared) +
                                   " < 0.95, moments are not in a power-law regime");
    }
    est.tau_jackknife = std::move(jack);
    return est;
}

void write_csv(std::ostream& os, ScalingEstimate const& est)
{
    os << "q,tau_hat,stderr,r_squared\n";
    for (std::size_t i = 0; i < est.q_grid.size(); ++i) {
        os << to_token(est.q_grid[i]) << ',' << to_token(est.tau_hat[i]) << ',' << to_token(est.stderr_[i]) << ','
           << to_token(est.r_squared[i]) << '\n';
    }
}

IntermittencyVerdict detect_intermittency(ScalingEstimate const& est, DetectOptions const& opts)
{
    std::size_t const total = est.q_grid.size();
    if (total < 5)
        throw std::invalid_argument("detect_intermittency: need at least 5 orders");
    if (!(opts.systematic_se >= 0.0) || !(opts.threshold > 0.0))
        throw std::invalid_argument("detect_intermittency: systematic_se must be >= 0 and threshold > 0");
    for (std::size_t i = 1; i < total; ++i) {
        if (!(est.q_grid[i] > est.q_grid[i - 1]))
            throw std::invalid_argument("detect_intermittency: q grid must be increasing");
    }

    IntermittencyVerdict v;

    // Structural diagnostics on the raw estimate.
    for (std::size_t i = 1; i + 1 < total; ++i) {
        double const h1 = est.q_grid[i] - est.q_grid[i - 1];
        double const h2 = est.q_grid[i + 1] - est.q_grid[i];
        double const s1 = (est.tau_hat[i] - est.tau_hat[i - 1]) / h1;
        double const s2 = (est.tau_hat[i + 1] - est.tau_hat[i]) / h2;
        double const d2 = (s2 - s1) * 0.5 * (h1 + h2);
        if (d2 < -2.0 * est.stderr_[i])
            v.diagnostics.push_back("estimation inconsistent: tau_hat not convex at q = " + to_token(est.q_grid[i]));
    }
    for (std::size_t i = 1; i < total; ++i) {
        double const p = est.q_grid[i - 1];
        double const r = est.q_grid[i];
        if (p <= 0.0)
            continue;
        double const tol = 2.0 * std::max(est.stderr_[i - 1] / p, est.stderr_[i] / r);
        if (est.tau_hat[i] / r < est.tau_hat[i - 1] / p - tol)
            v.diagnostics.push_back("tau_hat(q)/q decreases between q = " + to_token(p) + " and " + to_token(r));
    }

    // Fit through the origin on the nonzero orders.
    std::vector<std::size_t> used;
    std::vector<double> q, y, w;
    double se_floor = 0.0;
    for (double s : est.stderr_)
        se_floor = std::max(se_floor, s);
    se_floor = std::max(1e-3 * se_floor, 1e-9);
    for (std::size_t i = 0; i < total; ++i) {
        if (est.q_grid[i] == 0.0 || !std::isfinite(est.tau_hat[i]))
            continue;
        used.push_back(i);
        q.push_back(est.q_grid[i]);
        y.push_back(est.tau_hat[i]);
        double const s = std::max(est.stderr_[i], se_floor);
        w.push_back(1.0 / (s * s));
    }
    std::size_t const n = q.size();
    if (n < 4)
        throw std::invalid_argument("detect_intermittency: need at least 4 nonzero orders");

    struct Fit
    {
        double H, g, wss, c11, c12, c22;
        bool ok;
    };
    auto fit_at = [&](double c) {
        double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double const z = std::max(0.0, q[i] - c);
            a11 += w[i] * q[i] * q[i];
            a12 += w[i] * q[i] * z;
            a22 += w[i] * z * z;
            b1 += w[i] * q[i] * y[i];
            b2 += w[i] * z * y[i];
        }
        double const det = a11 * a22 - a12 * a12;
        Fit f{};
        if (!(det > 1e-12 * a11 * a22))
            return f;
        f.ok = true;
        f.H = (a22 * b1 - a12 * b2) / det;
        f.g = (a11 * b2 - a12 * b1) / det;
        f.c11 = a22 / det;
        f.c12 = -a12 / det;
        f.c22 = a11 / det;
        for (std::size_t i = 0; i < n; ++i) {
            double const e = y[i] - f.H * q[i] - f.g * std::max(0.0, q[i] - c);
            f.wss += w[i] * e * e;
        }
        return f;
    };

    // Candidates leave at least one order at or below and two above.
    double const c_lo = q[0];
    double const c_hi = q[n - 3];
    double const step = std::max((q[n - 1] - q[0]) / 2000.0, 1e-4);
    std::vector<std::pair<double, Fit>> profile;
    for (double c = c_lo; c <= c_hi + 1e-12; c += step) {
        Fit f = fit_at(c);
        if (f.ok)
            profile.emplace_back(c, f);
    }
    auto best = std::min_element(profile.begin(), profile.end(),
                                 [](auto const& a, auto const& b) { return a.second.wss < b.second.wss; });

    // Single line for comparison.
    double sw = 0, swy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += w[i] * q[i] * q[i];
        swy += w[i] * q[i] * y[i];
    }
    double const line_slope = swy / sw;
    v.H_hat = v.b_hat = line_slope;

    if (best == profile.end())
        return v;
    Fit const& f = best->second;
    double const dof = static_cast<double>(n) - 3.0;
    double const scale = dof > 0.0 ? std::max(1.0, f.wss / dof) : 1.0;
    v.slope_gap = f.g;
    v.slope_gap_se = std::sqrt(f.c22 * scale);
    if (std::size_t const groups = est.tau_jackknife.size(); groups > 1) {
        // The whole fit, breakpoint search included, is repeated on each
        // jackknife row so the error reflects where the hinge lands too.
        std::vector<double> gaps;
        for (auto const& row : est.tau_jackknife) {
            for (std::size_t i = 0; i < n; ++i)
                y[i] = row[used[i]];
            double best_wss = std::numeric_limits<double>::infinity();
            double best_gap = 0.0;
            for (auto const& [c, pf] : profile) {
                Fit const jf = fit_at(c);
                if (jf.ok && jf.wss < best_wss) {
                    best_wss = jf.wss;
                    best_gap = jf.g;
                }
            }
            gaps.push_back(best_gap);
        }
        for (std::size_t i = 0; i < n; ++i)
            y[i] = est.tau_hat[used[i]];
        double mean = 0.0;
        for (double g : gaps)
            mean += g;
        mean /= static_cast<double>(groups);
        double ss = 0.0;
        for (double g : gaps)
            ss += (g - mean) * (g - mean);
        double const gn = static_cast<double>(groups);
        v.slope_gap_se = std::max(v.slope_gap_se, std::sqrt((gn - 1.0) / gn * ss));
    }
    v.slope_gap_se = std::hypot(v.slope_gap_se, opts.systematic_se);
    v.intermittent = f.g > opts.threshold * v.slope_gap_se;
    if (!v.intermittent)
        return v;

    v.q_star = best->first;
    v.H_hat = f.H;
    v.b_hat = f.H + f.g;
    v.a_hat = f.g * best->first;
    double const cut = f.wss + 3.84 * scale;
    double band_lo = best->first, band_hi = best->first;
    for (auto const& [c, pf] : profile) {
        if (pf.wss <= cut && pf.g > 0.0) {
            band_lo = std::min(band_lo, c);
            band_hi = std::max(band_hi, c);
        }
    }
    v.q_star_band = std::pair{band_lo, band_hi};
    return v;
}

std::vector<double> convex_repair(std::span<double const> q, std::span<double const> tau)
{
    std::size_t const n = q.size();
    if (n != tau.size() || n < 2)
        throw std::invalid_argument("convex_repair: need matching q and tau with >= 2 points");
    struct Block
    {
        double slope, weight;
        std::size_t count;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 1; i < n; ++i) {
        double const h = q[i] - q[i - 1];
        if (!(h > 0.0))
            throw std::invalid_argument("convex_repair: q must be increasing");
        blocks.push_back({(tau[i] - tau[i - 1]) / h, h, 1});
        while (blocks.size() > 1 && blocks[blocks.size() - 2].slope > blocks.back().slope) {
            Block const b = blocks.back();
            blocks.pop_back();
            Block& a = blocks.back();
            a.slope = (a.slope * a.weight + b.slope * b.weight) / (a.weight + b.weight);
            a.weight += b.weight;
            a.count += b.count;
        }
    }
    std::vector<double> slopes;
    for (auto const& b : blocks)
        slopes.insert(slopes.end(), b.count, b.slope);

    std::size_t anchor = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i] == 0.0)
            anchor = i;
    }
    std::vector<double> out(n);
    out[anchor] = q[anchor] == 0.0 ? 0.0 : tau[anchor];
    for (std::size_t i = anchor + 1; i < n; ++i)
        out[i] = out[i - 1] + slopes[i - 1] * (q[i] - q[i - 1]);
    for (std::size_t i = anchor; i-- > 0;)
        out[i] = out[i + 1] - slopes[i] * (q[i + 1] - q[i]);
    return out;
}

}  // namespace intermit
