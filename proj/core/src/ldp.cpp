#include "intermit/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace intermit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::ordered_json number(double v)
{
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return nullptr;
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

RateSample rate_of_growth(PathEnsemble const& e, std::size_t t_index)
{
    double const t = e.grid()[t_index];
    if (!(t > 1.0))
        throw std::invalid_argument("rate_of_growth: t must exceed 1");
    double const lt = std::log(t);
    RateSample s{t, {}, 0, e.n_reps()};
    s.values.reserve(e.n_reps());
    for (double x : e.column(t_index)) {
        if (x == 0.0)
            ++s.zero_count;
        else
            s.values.push_back(std::log(std::abs(x)) / lt);
    }
    return s;
}

DecayRate empirical_decay_rate(PathEnsemble const& e, Interval const& A, std::span<std::size_t const> t_indices,
                               double window_decades)
{
    if (t_indices.size() < 2)
        throw std::invalid_argument("empirical_decay_rate: need at least 2 time points");
    if (!(A.lo < A.hi))
        throw std::invalid_argument("empirical_decay_rate: set A must have lo < hi");

    DecayRate out;
    for (std::size_t j : t_indices) {
        RateSample const r = rate_of_growth(e, j);
        std::size_t count = 0;
        for (double v : r.values)
            count += A.contains(v) ? 1 : 0;
        if (A.lo == -kInf)
            count += r.zero_count;
        double const n = static_cast<double>(r.n_reps);
        double const lt = std::log(r.t);
        DecayPoint p{r.t, count, r.n_reps, static_cast<double>(count) / n, 0.0, 0.0, count == 0};
        if (count > 0) {
            p.rho_hat = std::log(p.p_hat) / lt;
            p.log_p_se = std::sqrt((1.0 - p.p_hat + 1.0 / n) / (n * p.p_hat));
        } else {
            p.rho_hat = std::log(3.0 / n) / lt;
        }
        out.per_t.push_back(p);
    }
    std::sort(out.per_t.begin(), out.per_t.end(), [](auto const& a, auto const& b) { return a.t < b.t; });

    double const t_max = out.per_t.back().t;
    out.window_hi = t_max;
    out.window_lo = t_max / std::pow(10.0, window_decades);

    std::vector<DecayPoint const*> used;
    for (auto const& p : out.per_t) {
        if (p.count > 0 && p.t >= out.window_lo * (1.0 - 1e-12))
            used.push_back(&p);
    }
    if (used.size() < 2) {
        used.clear();
        for (auto const& p : out.per_t) {
            if (p.count > 0)
                used.push_back(&p);
        }
    }
    if (used.empty()) {
        out.one_sided = true;
        out.rho = out.per_t.front().rho_hat;
        for (auto const& p : out.per_t)
            out.rho = std::min(out.rho, p.rho_hat);
        return out;
    }
    if (used.size() == 1) {
        out.rho = used[0]->rho_hat;
        out.rho_se = used[0]->log_p_se / std::log(used[0]->t);
        return out;
    }

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto const* p : used) {
        double const w = 1.0 / std::max(p->log_p_se * p->log_p_se, 1e-12);
        double const x = std::log(p->t);
        double const y = std::log(p->p_hat);
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    double const det = sw * sxx - sx * sx;
    out.rho = (sw * sxy - sx * sy) / det;
    out.intercept = (sy - out.rho * sx) / sw;
    double chi2 = 0.0;
    for (auto const* p : used) {
        double const w = 1.0 / std::max(p->log_p_se * p->log_p_se, 1e-12);
        double const r = std::log(p->p_hat) - out.intercept - out.rho * std::log(p->t);
        chi2 += w * r * r;
    }
    double const dof = static_cast<double>(used.size()) - 2.0;
    double const scale = dof > 0.0 ? std::max(1.0, chi2 / dof) : 1.0;
    out.rho_se = std::sqrt(sw / det * scale);
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::Indeterminate:
        return "indeterminate";
    }
    return "unknown";
}

Extended infimum_over(ConjugateResult const& cr, Interval const& A)
{
    auto const& f = cr.pieces;
    double const lo = std::max(A.lo, f.lower());
    double const hi = std::min(A.hi, f.upper());
    if (lo > hi)
        return Extended::infinity();
    if (lo == -kInf && f.left_slope() && *f.left_slope() > 0.0)
        throw std::domain_error("infimum_over: conjugate unbounded below");
    if (hi == kInf && f.right_slope() && *f.right_slope() < 0.0)
        throw std::domain_error("infimum_over: conjugate unbounded below");
    Extended best = Extended::infinity();
    if (std::isfinite(lo))
        best = std::min(best, f(lo));
    if (std::isfinite(hi))
        best = std::min(best, f(hi));
    for (auto const& v : f.vertices()) {
        if (v.x >= lo && v.x <= hi)
            best = std::min(best, Extended(v.y));
    }
    return best;
}

LdpReport verify_sandwich(PathEnsemble const& e, ScenarioSpec const& scenario, Interval const& A,
                          std::span<std::size_t const> t_indices, std::optional<double> slack,
                          double window_decades)
{
    if (!(A.lo < A.hi))
        throw std::invalid_argument("verify_sandwich: set A must have lo < hi");
    ConjugateResult const cr = tau_star(scenario);

    LdpReport r;
    r.scenario = scenario_name(scenario);
    r.A = A;
    r.decay = empirical_decay_rate(e, A, t_indices, window_decades);
    r.slack = slack.value_or(3.0 * r.decay.rho_se + 0.02);

    Interval const closure{A.lo, A.hi, true, true};
    if (cr.lower_envelope_only) {
        Interval const& env = *cr.lower_envelope_only;
        if (env.contains(closure.lo) && env.contains(closure.hi)) {
            r.verdict = Verdict::Indeterminate;
            r.reason = "A lies where only a lower envelope of tau* is known";
            r.upper_bound = kInf;
            return r;
        }
        r.one_sided_check = closure.lo < env.hi;
    }

    Extended const inf_closure = infimum_over(cr, closure);
    r.upper_bound = inf_closure.is_infinite() ? -kInf : -inf_closure.value();

    std::optional<double> lower;
    for (double x : cr.exposed_points) {
        if (x > A.lo && x < A.hi) {
            double const v = cr(x).value();
            lower = lower ? std::max(*lower, -v) : -v;
        }
    }
    r.lower_bound = lower;

    double const rho = r.decay.rho;
    bool const lower_ok = !lower || rho >= *lower - r.slack;
    if (r.decay.one_sided) {
        // Zero counts everywhere: rho is only an upper limit.
        r.verdict = lower_ok ? Verdict::Pass : Verdict::Fail;
        r.reason = lower_ok ? "no hits; rule-of-three limit compatible with the bounds"
                            : "no hits, yet the lower bound predicts observable frequencies";
        return r;
    }
    bool const upper_ok = r.one_sided_check || rho <= r.upper_bound + r.slack;
    r.verdict = lower_ok && upper_ok ? Verdict::Pass : Verdict::Fail;
    if (!lower_ok)
        r.reason = "empirical exponent below the exposed-point lower bound";
    else if (!upper_ok)
        r.reason = "empirical exponent above the upper bound";
    else
        r.reason = r.one_sided_check ? "within the lower bound (upper side not checked)" : "within the sandwich";
    return r;
}

void write_json(std::ostream& os, LdpReport const& r)
{
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (auto const& p : r.decay.per_t) {
        table.push_back({{"t", p.t},
                         {"count", p.count},
                         {"n_reps", p.n_reps},
                         {"p_hat", p.p_hat},
                         {"rho_hat", number(p.rho_hat)},
                         {"log_p_se", number(p.log_p_se)},
                         {"one_sided", p.one_sided}});
    }
    nlohmann::ordered_json j{
        {"schema_version", 1},
        {"scenario", r.scenario},
        {"set_A",
         {{"lo", number(r.A.lo)}, {"hi", number(r.A.hi)}, {"lo_closed", r.A.lo_closed}, {"hi_closed", r.A.hi_closed}}},
        {"lower_bound", r.lower_bound ? number(*r.lower_bound) : nlohmann::ordered_json("-inf")},
        {"upper_bound", number(r.upper_bound)},
        {"rho_extrapolated", number(r.decay.rho)},
        {"rho_se", number(r.decay.rho_se)},
        {"one_sided_rate", r.decay.one_sided},
        {"one_sided_check", r.one_sided_check},
        {"window", {{"t_lo", r.decay.window_lo}, {"t_hi", r.decay.window_hi}}},
        {"slack", r.slack},
        {"verdict", to_string(r.verdict)},
        {"reason", r.reason},
        {"per_t", table}};
    os << j.dump(2) << '\n';
}

void write_csv(std::ostream& os, LdpReport const& r)
{
    os << "t,count,n_reps,p_hat,rho_hat,log_p_se,one_sided\n";
    for (auto const& p : r.decay.per_t) {
        os << to_token(p.t) << ',' << p.count << ',' << p.n_reps << ',' << to_token(p.p_hat) << ','
           << to_token(p.rho_hat) << ',' << to_token(p.log_p_se) << ',' << (p.one_sided ? 1 : 0) << '\n';
    }
}

}  // namespace intermit
