#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "intermit/ensemble_io.hpp"
#include "intermit/estimator.hpp"
#include "intermit/ldp.hpp"
#include "intermit/simulate.hpp"

namespace intermit::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(std::filesystem::path const& p)
{
    std::filesystem::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write " + p.string());
    return os;
}

ordered_json number_or_null(std::optional<double> v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

PathEnsemble load_checked(RunConfig const& c)
{
    auto const path = ensemble_path(c);
    try {
        return load_ensemble(path);
    } catch (ChecksumError const& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (std::runtime_error const& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

struct Row
{
    double q;
    std::optional<double> tau_hat, stderr_, r_squared;
};

}  // namespace

std::filesystem::path ensemble_path(RunConfig const& c)
{
    return c.ensemble.value_or(c.out / "ensemble.bin");
}

int cmd_simulate(RunConfig const& c, std::ostream& log)
{
    require_simulation_fields(c);
    auto const start = std::chrono::steady_clock::now();
    PathEnsemble const e = simulate_ensemble(*c.model, *c.grid, *c.seed, *c.n_reps, c.workers);
    double const wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto const path = c.out / "ensemble.bin";
    std::filesystem::create_directories(c.out);
    save_ensemble(path, e);
    ordered_json meta{{"schema_version", 1},
                      {"ensemble", path.filename().string()},
                      {"header", ordered_json::parse(ensemble_header_json(e))},
                      {"wall_time_s", wall}};
    open_out(c.out / "ensemble.json") << meta.dump(2) << '\n';

    log << "model " << model_name(*c.model) << ", " << c.grid->size() << " times in [" << to_token(c.grid->front())
        << ", " << to_token(c.grid->back()) << "], seed " << *c.seed << ", n_reps " << *c.n_reps << ", wall "
        << wall << " s\n"
        << "wrote " << path.string() << '\n';
    return kExitPass;
}

namespace {

struct TauTable
{
    std::optional<ScalingFunction> theory;
    std::vector<Row> rows;
};

TauTable tau_table(RunConfig const& c, PathEnsemble const& e, std::ostream& log)
{
    auto const idx = fit_indices(c, e.grid());
    std::optional<ScalingFunction> theory;
    if (c.scenario)
        theory = scaling_function(*c.scenario);

    std::vector<Row> rows;
    for (double q : c.q_grid) {
        Row r{q, {}, {}, {}};
        if (theory && (*theory)(q).is_infinite()) {
            log << "warning: q = " << to_token(q) << " lies outside the moment window of the scenario\n";
            rows.push_back(r);
            continue;
        }
        try {
            double const one[] = {q};
            ScalingEstimate const s = estimate_scaling_function(e, one, idx);
            r.tau_hat = s.tau_hat[0];
            r.stderr_ = s.stderr_[0];
            r.r_squared = s.r_squared[0];
            for (auto const& w : s.warnings)
                log << "warning: " << w << '\n';
        } catch (std::domain_error const& ex) {
            log << "warning: q = " << to_token(q) << ": " << ex.what() << '\n';
        } catch (std::overflow_error const& ex) {
            log << "warning: q = " << to_token(q) << ": " << ex.what() << '\n';
        }
        rows.push_back(r);
    }
    return {std::move(theory), std::move(rows)};
}

std::string format_tau(TauTable const& t)
{
    auto const& theory = t.theory;
    std::ostringstream os;
    auto cell = [](std::optional<double> v) { return v ? to_token(*v) : std::string("NA"); };
    os << "q,tau_hat,stderr,r_squared" << (theory ? ",tau_theory" : "") << '\n';
    for (auto const& r : t.rows) {
        os << to_token(r.q) << ',' << cell(r.tau_hat) << ',' << cell(r.stderr_) << ',' << cell(r.r_squared);
        if (theory) {
            Extended const t = (*theory)(r.q);
            os << ',' << (t.is_infinite() ? std::string("NA") : to_token(t.value()));
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

std::string tau_csv(RunConfig const& c, PathEnsemble const& e, std::ostream& log)
{
    return format_tau(tau_table(c, e, log));
}

int cmd_tau(RunConfig const& c, std::ostream& log)
{
    PathEnsemble const e = load_checked(c);
    TauTable const table = tau_table(c, e, log);
    open_out(c.out / "tau.csv") << format_tau(table);

    // Breakpoint test on the orders that produced an estimate.
    std::vector<double> good;
    for (auto const& r : table.rows) {
        if (r.tau_hat)
            good.push_back(r.q);
    }
    ordered_json j{{"schema_version", 1}, {"ensemble", ensemble_path(c).string()}};
    if (good.size() >= 5) {
        auto const idx = fit_indices(c, e.grid());
        ScalingEstimate const est = estimate_scaling_function(e, good, idx);
        IntermittencyVerdict const v = detect_intermittency(est, c.detect);
        j["t_lo"] = est.t_lo;
        j["t_hi"] = est.t_hi;
        j["intermittent"] = v.intermittent;
        j["q_star"] = number_or_null(v.q_star);
        j["q_star_band"] = v.q_star_band ? ordered_json::array({v.q_star_band->first, v.q_star_band->second})
                                         : ordered_json(nullptr);
        j["H_hat"] = v.H_hat;
        j["b_hat"] = v.b_hat;
        j["a_hat"] = v.a_hat;
        j["slope_gap"] = v.slope_gap;
        j["slope_gap_se"] = v.slope_gap_se;
        j["diagnostics"] = v.diagnostics;
        if (v.intermittent) {
            log << "breakpoint: detected at q* = " << std::setprecision(4) << *v.q_star << ", slopes " << v.H_hat
                << " and " << v.b_hat << std::setprecision(6) << '\n';
        } else {
            log << "breakpoint: none (slope gap " << std::setprecision(3) << v.slope_gap << ", se " << v.slope_gap_se
                << std::setprecision(6) << ")\n";
        }
    } else {
        j["intermittent"] = nullptr;
        log << "breakpoint test skipped: fewer than 5 usable orders\n";
    }
    open_out(c.out / "tau.json") << j.dump(2) << '\n';
    log << "wrote " << (c.out / "tau.csv").string() << '\n';
    return kExitPass;
}

int cmd_ldp(RunConfig const& c, std::ostream& log)
{
    if (!c.scenario)
        throw ConfigError("[scenario]: required for ldp");
    if (!c.ldp_set)
        throw ConfigError("[ldp] a_lo, a_hi: required for ldp");
    PathEnsemble const e = load_checked(c);
    auto const idx = fit_indices(c, e.grid());
    LdpReport const r = verify_sandwich(e, *c.scenario, *c.ldp_set, idx, c.slack, c.window_decades);
    auto json_out = open_out(c.out / "ldp.json");
    write_json(json_out, r);
    auto csv_out = open_out(c.out / "ldp.csv");
    write_csv(csv_out, r);
    log << "rho = " << r.decay.rho << " (se " << r.decay.rho_se << "), bounds [" << to_token(r.lower_bound.value_or(-HUGE_VAL))
        << ", " << to_token(r.upper_bound) << "], slack " << r.slack << ": " << to_string(r.verdict);
    if (!r.reason.empty())
        log << " (" << r.reason << ")";
    log << '\n';
    switch (r.verdict) {
    case Verdict::Pass:
        return kExitPass;
    case Verdict::Fail:
        return kExitFail;
    case Verdict::Indeterminate:
        return kExitIndeterminate;
    }
    return kExitIndeterminate;
}

}  // namespace intermit::cli
