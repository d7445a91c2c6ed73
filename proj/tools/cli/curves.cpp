#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cli/commands.hpp"
#include "intermit/multiscale.hpp"

namespace intermit::cli {
namespace {

std::ofstream open_file(std::filesystem::path const& p)
{
    std::filesystem::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write " + p.string());
    return os;
}

// Regular points of [lo, hi] plus the given breakpoints. Steps that are
// reciprocals of integers are produced as k / n to keep the decimals short.
std::vector<double> sample_points(double lo, double hi, double step, std::span<Vertex const> extra)
{
    std::vector<double> out;
    double const inv = 1.0 / step;
    bool const exact = std::abs(inv - std::round(inv)) < 1e-9;
    auto const k0 = static_cast<long long>(std::ceil(lo / step - 1e-9));
    auto const k1 = static_cast<long long>(std::floor(hi / step + 1e-9));
    for (long long k = k0; k <= k1; ++k)
        out.push_back(exact ? static_cast<double>(k) / std::round(inv) : static_cast<double>(k) * step);
    for (auto const& v : extra) {
        if (v.x >= lo && v.x <= hi)
            out.push_back(v.x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void write_tau_curve(std::ostream& os, PiecewiseLinear const& f, double lo, double hi, double step)
{
    os << "q,tau,is_infinite\n";
    for (double q : sample_points(lo, hi, step, f.vertices())) {
        Extended const v = f(q);
        os << to_token(q) << ',' << to_token(v) << ',' << (v.is_infinite() ? 1 : 0) << '\n';
    }
}

void write_conjugate_curve(std::ostream& os, ConjugateResult const& cr, double lo, double hi, double step)
{
    os << "x,tau_star,is_infinite,is_exposed,lower_envelope_only\n";
    for (double x : sample_points(lo, hi, step, cr.pieces.vertices())) {
        Extended const v = cr(x);
        bool const exposed = std::find(cr.exposed_points.begin(), cr.exposed_points.end(), x) != cr.exposed_points.end();
        os << to_token(x) << ',' << to_token(v) << ',' << (v.is_infinite() ? 1 : 0) << ',' << (exposed ? 1 : 0) << ','
           << (cr.is_lower_envelope(x) ? 1 : 0) << '\n';
    }
}

std::pair<double, double> vertex_span(PiecewiseLinear const& f)
{
    auto const v = f.vertices();
    return {v.front().x, v.back().x};
}

struct TauPoints
{
    std::vector<double> q;
    std::vector<double> tau;
};

TauPoints read_tau_csv(std::filesystem::path const& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open " + path.string());
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError(path.string() + ": empty file");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string h;
        while (std::getline(ss, h, ','))
            header.push_back(h);
    }
    auto column = [&](std::initializer_list<char const*> names) -> std::size_t {
        for (char const* n : names) {
            auto const it = std::find(header.begin(), header.end(), n);
            if (it != header.end())
                return static_cast<std::size_t>(it - header.begin());
        }
        throw ConfigError(path.string() + ": missing column " + *names.begin());
    };
    std::size_t const qc = column({"q"});
    std::size_t const tc = column({"tau_hat", "tau"});
    TauPoints out;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (cells.size() <= std::max(qc, tc))
            throw ConfigError(path.string() + ": short row '" + line + "'");
        if (cells[tc] == "NA")
            continue;
        try {
            out.q.push_back(std::stod(cells[qc]));
            out.tau.push_back(std::stod(cells[tc]));
        } catch (std::exception const&) {
            throw ConfigError(path.string() + ": bad number in row '" + line + "'");
        }
    }
    if (out.q.size() < 2)
        throw ConfigError(path.string() + ": need at least 2 finite rows");
    for (std::size_t i = 1; i < out.q.size(); ++i) {
        if (!(out.q[i] > out.q[i - 1]))
            throw ConfigError(path.string() + ": q must be increasing");
    }
    return out;
}

// First q at which the chord slopes decrease, if any.
std::optional<double> convexity_violation(TauPoints const& p)
{
    for (std::size_t i = 1; i + 1 < p.q.size(); ++i) {
        double const s1 = (p.tau[i] - p.tau[i - 1]) / (p.q[i] - p.q[i - 1]);
        double const s2 = (p.tau[i + 1] - p.tau[i]) / (p.q[i + 1] - p.q[i]);
        if (s2 < s1 - 1e-12 * std::max({1.0, std::abs(s1), std::abs(s2)}))
            return p.q[i];
    }
    return std::nullopt;
}

template <class S>
S scenario_or(RunConfig const& c, S fallback)
{
    if (c.scenario) {
        if (auto const* s = std::get_if<S>(&*c.scenario))
            return *s;
    }
    return fallback;
}

void write_scenario_figure(RunConfig const& c, std::string const& id, ScenarioSpec const& spec,
                           std::pair<double, double> q_range, std::pair<double, double> x_range, std::ostream& log)
{
    validate(spec);
    auto tau_out = open_file(c.out / (id + "_tau.csv"));
    write_tau_curve(tau_out, scaling_function(spec).function(), q_range.first, q_range.second, c.q_step);
    auto star_out = open_file(c.out / (id + "_tau_star.csv"));
    write_conjugate_curve(star_out, tau_star(spec), x_range.first, x_range.second, c.x_step);
    log << "wrote " << (c.out / (id + "_tau.csv")).string() << " and " << (c.out / (id + "_tau_star.csv")).string()
        << " (" << scenario_name(spec) << ")\n";
}

void write_path_figure(RunConfig const& c, bool rates, std::ostream& log)
{
    std::uint64_t const seed = c.seed.value_or(1);
    std::string const id = rates ? "fig7" : "fig6";
    auto const path = c.out / (id + (rates ? "_rate_of_growth.csv" : "_paths.csv"));
    auto os = open_file(path);
    os << "a,rep,t," << (rates ? "rate" : "x") << '\n';
    for (double a : c.fig_a) {
        FbmMixtureSimulator const sim(model::FbmMixture{c.fig_H, c.fig_b, a, 1.0}, c.fig_steps);
        for (std::size_t rep = 0; rep < c.fig_paths; ++rep) {
            MixturePath const p = sim.run(seed, rep);
            for (std::size_t n = 1; n <= c.fig_steps; ++n) {
                if (n % c.fig_stride != 0 && n != 1)
                    continue;
                double const t = static_cast<double>(n);
                double const x = p.x[n - 1];
                if (rates) {
                    if (t <= 1.0 || x == 0.0)
                        continue;
                    os << to_token(a) << ',' << rep << ',' << to_token(t) << ',' << to_token(std::log(std::abs(x)) / std::log(t))
                       << '\n';
                } else {
                    os << to_token(a) << ',' << rep << ',' << to_token(t) << ',' << to_token(x) << '\n';
                }
            }
        }
    }
    log << "wrote " << path.string() << " (H = " << c.fig_H << ", b = " << c.fig_b << ", T = " << c.fig_steps
        << ", seed " << seed << ")\n";
}

}  // namespace

int cmd_conjugate(RunConfig const& c, std::optional<std::filesystem::path> const& tau_path, bool repair,
                  std::ostream& log)
{
    ConjugateResult cr{PiecewiseLinear::point(0.0, 0.0), {}, std::nullopt};
    if (tau_path) {
        TauPoints p = read_tau_csv(*tau_path);
        if (auto const bad = convexity_violation(p)) {
            if (!repair)
                throw ConfigError(tau_path->string() + ": tau is not convex at q = " + to_token(*bad) +
                                  "; pass --repair to project it onto convex functions");
            p.tau = convex_repair(p.q, p.tau);
            log << "convex repair applied\n";
        }
        std::vector<Vertex> v;
        for (std::size_t i = 0; i < p.q.size(); ++i)
            v.push_back({p.q[i], p.tau[i]});
        PiecewiseLinear const f = PiecewiseLinear::from_vertices(std::move(v), std::nullopt, std::nullopt);
        PiecewiseLinear conj = conjugate(f);
        auto e = exposed_points(conj, {f.lower(), f.upper()});
        cr = ConjugateResult{std::move(conj), std::move(e), std::nullopt};
    } else if (c.scenario) {
        cr = tau_star(*c.scenario);
    } else {
        throw ConfigError("conjugate needs [scenario] in the config or --tau CSV");
    }

    auto const [lo, hi] = vertex_span(cr.pieces);
    auto const path = c.out / "conjugate.csv";
    auto os = open_file(path);
    write_conjugate_curve(os, cr, lo - 0.5, hi + 0.5, c.x_step);
    log << "exposed points:";
    for (double x : cr.exposed_points)
        log << ' ' << to_token(x);
    log << "\nwrote " << path.string() << '\n';
    return kExitPass;
}

int cmd_reproduce(RunConfig const& c, std::string const& id, std::ostream& log)
{
    if (id == "fig2") {
        write_scenario_figure(c, id, scenario_or(c, scenario::AllMomentsConverge{0.625}), {-2.0, 4.0}, {-0.5, 1.5},
                              log);
    } else if (id == "fig3") {
        write_scenario_figure(c, id, scenario_or(c, scenario::FiniteWindow{0.625, -1.0, 3.0}), {-2.0, 4.0},
                              {-2.0, 4.0}, log);
    } else if (id == "fig4") {
        write_scenario_figure(c, id, scenario_or(c, scenario::Biscale{0.6, 1.0, 0.5}), {-2.0, 4.0}, {-0.5, 1.5},
                              log);
    } else if (id == "fig5") {
        write_scenario_figure(c, id, scenario_or(c, scenario::SupOUFiniteVar{0.7, 0.5}), {0.0, 4.0}, {0.0, 1.5},
                              log);
    } else if (id == "fig6") {
        write_path_figure(c, false, log);
    } else if (id == "fig7") {
        write_path_figure(c, true, log);
    } else {
        throw ConfigError("reproduce: unknown figure id '" + id + "' (fig2, fig3, fig4, fig5, fig6, fig7)");
    }
    return kExitPass;
}

}  // namespace intermit::cli
