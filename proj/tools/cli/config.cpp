#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace intermit::cli {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Section
{
  public:
    Section(std::string name, pt::ptree const* tree) : name_(std::move(name)), tree_(tree) {}

    bool present() const { return tree_ != nullptr; }

    std::optional<std::string> str(std::string const& key)
    {
        seen_.insert(key);
        if (!tree_)
            return std::nullopt;
        auto const v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v)
            return std::nullopt;
        return trim(*v);
    }

    std::optional<double> num(std::string const& key)
    {
        auto const s = str(key);
        if (!s)
            return std::nullopt;
        return to_double(key, *s);
    }

    double num_or(std::string const& key, double fallback) { return num(key).value_or(fallback); }

    double need(std::string const& key)
    {
        auto const v = num(key);
        if (!v)
            throw ConfigError("[" + name_ + "] " + key + ": required");
        return *v;
    }

    std::optional<std::uint64_t> count(std::string const& key)
    {
        auto const s = str(key);
        if (!s)
            return std::nullopt;
        std::uint64_t v = 0;
        auto const [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
        if (ec != std::errc() || p != s->data() + s->size())
            throw ConfigError("[" + name_ + "] " + key + ": expected a nonnegative integer, got '" + *s + "'");
        return v;
    }

    std::optional<bool> flag(std::string const& key)
    {
        auto const s = str(key);
        if (!s)
            return std::nullopt;
        if (*s == "true" || *s == "1" || *s == "yes")
            return true;
        if (*s == "false" || *s == "0" || *s == "no")
            return false;
        throw ConfigError("[" + name_ + "] " + key + ": expected true or false, got '" + *s + "'");
    }

    std::optional<std::vector<double>> list(std::string const& key)
    {
        auto const s = str(key);
        if (!s)
            return std::nullopt;
        std::vector<double> out;
        std::stringstream ss(*s);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(to_double(key, trim(item)));
        if (out.empty())
            throw ConfigError("[" + name_ + "] " + key + ": empty list");
        return out;
    }

    /// Rejects keys that were never asked for.
    void finish() const
    {
        if (!tree_)
            return;
        for (auto const& [key, child] : *tree_) {
            if (!seen_.count(key))
                throw ConfigError("[" + name_ + "] " + key + ": unknown key");
        }
    }

    std::string const& name() const { return name_; }

  private:
    double to_double(std::string const& key, std::string const& s) const
    {
        if (s == "inf" || s == "+inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        double v = 0.0;
        auto const [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw ConfigError("[" + name_ + "] " + key + ": expected a number, got '" + s + "'");
        return v;
    }

    std::string name_;
    pt::ptree const* tree_;
    std::set<std::string> seen_;
};

Section section(pt::ptree const& root, std::string const& name)
{
    auto const it = root.find(name);
    return Section(name, it == root.not_found() ? nullptr : &it->second);
}

LevyDriverSpec parse_driver(Section& s)
{
    std::string const kind = s.str("driver").value_or("none");
    if (kind == "none")
        return driver::None{};
    if (kind == "cp_exp")
        return driver::CompoundPoissonExp{s.need("intensity"), s.need("jump_mean"), s.num_or("p_plus", 0.5)};
    if (kind == "cp_two_sided") {
        return driver::CompoundPoissonTwoSided{s.need("intensity"), s.need("mean_plus"), s.need("mean_minus"),
                                               s.num_or("p_plus", 0.5)};
    }
    throw ConfigError("[model] driver: unknown value '" + kind + "' (none, cp_exp, cp_two_sided)");
}

ProcessModel parse_model(Section& s)
{
    auto const type = s.str("type");
    if (!type)
        throw ConfigError("[model] type: required");
    if (*type == "biscale")
        return model::BiscaleDet{s.need("H"), s.need("b"), s.need("a")};
    if (*type == "triscale")
        return model::TriscaleDet{s.need("H"), s.need("b"), s.need("a")};
    if (*type == "fbm_mixture")
        return model::FbmMixture{s.need("H"), s.need("b"), s.need("a"), s.num_or("delta", 1.0)};
    if (*type == "fbm")
        return model::Fbm{s.need("hurst"), s.num_or("delta", 1.0)};
    if (*type == "power")
        return model::Power{s.need("exponent")};
    if (*type == "supou") {
        model::SupOU m;
        m.quadruple.b_gauss = s.num_or("b_gauss", 0.0);
        m.quadruple.levy = parse_driver(s);
        m.quadruple.pi = MixingSpec{s.need("alpha"), s.num_or("mixing_rate", 1.0)};
        if (auto v = s.count("m_components"))
            m.m_components = static_cast<std::uint32_t>(*v);
        m.delta = s.num_or("delta", 1.0);
        m.burn_in = s.num_or("burn_in", 0.0);
        std::string const method = s.str("gaussian_method").value_or("spectral");
        if (method == "spectral")
            m.gaussian_method = GaussianMethod::Spectral;
        else if (method == "recursion")
            m.gaussian_method = GaussianMethod::Recursion;
        else
            throw ConfigError("[model] gaussian_method: unknown value '" + method + "' (spectral, recursion)");
        return m;
    }
    throw ConfigError("[model] type: unknown value '" + *type +
                      "' (biscale, triscale, fbm_mixture, fbm, power, supou)");
}

TimeGrid parse_grid(Section& s, std::optional<double> lattice)
{
    std::string const kind = s.str("kind").value_or("decade");
    auto snap = [&](TimeGrid g) { return lattice ? snap_to_lattice(g, *lattice) : g; };
    if (kind == "decade") {
        auto const per = s.count("per_decade").value_or(4);
        return snap(make_decade_grid(s.need("lo_decade"), s.need("hi_decade"), per));
    }
    if (kind == "geometric") {
        auto const n = s.count("count");
        if (!n)
            throw ConfigError("[grid] count: required");
        return snap(make_geometric_grid(s.need("t0"), s.need("ratio"), *n));
    }
    if (kind == "arithmetic") {
        auto const n = s.count("count");
        if (!n)
            throw ConfigError("[grid] count: required");
        double const delta = s.num("delta").value_or(lattice.value_or(1.0));
        if (lattice && delta != *lattice)
            throw ConfigError("[grid] delta: must equal the model delta " + to_token(*lattice));
        return make_arithmetic_grid(delta, *n);
    }
    if (kind == "explicit") {
        auto const values = s.list("values");
        if (!values)
            throw ConfigError("[grid] values: required");
        auto const delta = s.num("delta");
        return TimeGrid::from_values(*values, delta ? delta : lattice);
    }
    throw ConfigError("[grid] kind: unknown value '" + kind + "' (decade, geometric, arithmetic, explicit)");
}

ScenarioSpec parse_scenario(Section& s)
{
    auto const type = s.str("type");
    if (!type)
        throw ConfigError("[scenario] type: required");
    if (*type == "all_moments")
        return scenario::AllMomentsConverge{s.need("H")};
    if (*type == "finite_window") {
        return scenario::FiniteWindow{s.need("H"), s.num_or("q_lo", -std::numeric_limits<double>::infinity()),
                                      s.num_or("q_hi", std::numeric_limits<double>::infinity())};
    }
    if (*type == "biscale")
        return scenario::Biscale{s.need("H"), s.need("b"), s.need("a")};
    if (*type == "triscale")
        return scenario::Triscale{s.need("H"), s.need("b"), s.need("a")};
    if (*type == "supou_finite_var")
        return scenario::SupOUFiniteVar{s.need("H"), s.need("alpha")};
    if (*type == "supou_inf_var_1")
        return scenario::SupOUInfVarCaseI{s.need("alpha"), s.need("beta"), s.need("gamma")};
    if (*type == "supou_inf_var_2")
        return scenario::SupOUInfVarCaseII{s.need("alpha"), s.need("beta"), s.need("gamma")};
    if (*type == "gaussian_supou")
        return scenario::GaussianSupOU{s.need("b_gauss"), s.need("alpha")};
    throw ConfigError("[scenario] type: unknown value '" + *type +
                      "' (all_moments, finite_window, biscale, triscale, supou_finite_var, supou_inf_var_1, "
                      "supou_inf_var_2, gaussian_supou)");
}

// Rewraps precondition failures from the library with the section name.
template <class F>
auto in_section(std::string const& name, F&& f)
{
    try {
        return f();
    } catch (ConfigError const&) {
        throw;
    } catch (std::invalid_argument const& e) {
        throw ConfigError("[" + name + "] " + e.what());
    }
}

}  // namespace

RunConfig parse_config(std::string const& ini_text)
{
    pt::ptree root;
    try {
        std::istringstream is(ini_text);
        pt::read_ini(is, root);
    } catch (pt::ini_parser_error const& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    static std::set<std::string> const known{"run", "model", "grid", "scenario", "estimator", "ldp", "curves",
                                             "reproduce"};
    for (auto const& [name, child] : root) {
        if (!known.count(name))
            throw ConfigError("[" + name + "]: unknown section");
        if (child.empty() && !child.data().empty())
            throw ConfigError(name + ": key outside any section");
    }

    RunConfig c;
    Section run = section(root, "run");
    c.seed = run.count("seed");
    if (auto n = run.count("n_reps")) {
        if (*n == 0)
            throw ConfigError("[run] n_reps: must be positive");
        c.n_reps = *n;
    }
    if (auto w = run.count("workers"))
        c.workers = static_cast<unsigned>(*w);
    if (auto o = run.str("out"))
        c.out = *o;
    if (auto e = run.str("ensemble"))
        c.ensemble = *e;
    run.finish();

    Section m = section(root, "model");
    if (m.present()) {
        c.model = in_section("model", [&] {
            ProcessModel pm = parse_model(m);
            validate(pm);
            return pm;
        });
    }
    m.finish();

    Section g = section(root, "grid");
    if (g.present()) {
        std::optional<double> const lattice = c.model ? model_delta(*c.model) : std::nullopt;
        c.grid = in_section("grid", [&] { return parse_grid(g, lattice); });
    }
    g.finish();

    Section sc = section(root, "scenario");
    if (sc.present()) {
        c.scenario = in_section("scenario", [&] {
            ScenarioSpec s = parse_scenario(sc);
            validate(s);
            return s;
        });
    }
    sc.finish();

    Section est = section(root, "estimator");
    if (auto q = est.list("q")) {
        if (!std::is_sorted(q->begin(), q->end()) || std::adjacent_find(q->begin(), q->end()) != q->end())
            throw ConfigError("[estimator] q: orders must be strictly increasing");
        c.q_grid = *q;
    }
    c.fit_t_min = est.num("t_min");
    c.fit_t_max = est.num("t_max");
    c.detect.systematic_se = est.num_or("systematic_se", c.detect.systematic_se);
    c.detect.threshold = est.num_or("threshold", c.detect.threshold);
    if (c.detect.systematic_se < 0.0 || !(c.detect.threshold > 0.0))
        throw ConfigError("[estimator] systematic_se must be >= 0 and threshold > 0");
    est.finish();

    Section ldp = section(root, "ldp");
    auto const a_lo = ldp.num("a_lo");
    auto const a_hi = ldp.num("a_hi");
    if (a_lo || a_hi) {
        if (!a_lo || !a_hi)
            throw ConfigError("[ldp] a_lo and a_hi must be given together");
        if (!(*a_lo < *a_hi))
            throw ConfigError("[ldp] set A is empty: a_lo = " + to_token(*a_lo) + " must be below a_hi = " +
                              to_token(*a_hi));
        c.ldp_set = Interval{*a_lo, *a_hi, ldp.flag("lo_closed").value_or(false), ldp.flag("hi_closed").value_or(false)};
    }
    c.window_decades = ldp.num_or("window_decades", c.window_decades);
    if (!(c.window_decades > 0.0))
        throw ConfigError("[ldp] window_decades: must be positive");
    c.slack = ldp.num("slack");
    if (c.slack && !(*c.slack >= 0.0))
        throw ConfigError("[ldp] slack: must be nonnegative");
    ldp.finish();

    Section curves = section(root, "curves");
    c.x_step = curves.num_or("x_step", c.x_step);
    c.q_step = curves.num_or("q_step", c.q_step);
    if (!(c.x_step > 0.0) || !(c.q_step > 0.0))
        throw ConfigError("[curves] x_step and q_step must be positive");
    curves.finish();

    Section rep = section(root, "reproduce");
    c.fig_H = rep.num_or("H", c.fig_H);
    c.fig_b = rep.num_or("b", c.fig_b);
    if (auto a = rep.list("a"))
        c.fig_a = *a;
    if (auto v = rep.count("steps"))
        c.fig_steps = *v;
    if (auto v = rep.count("paths"))
        c.fig_paths = *v;
    if (auto v = rep.count("stride"))
        c.fig_stride = *v;
    if (c.fig_steps < 2 || c.fig_paths == 0 || c.fig_stride == 0)
        throw ConfigError("[reproduce] steps >= 2, paths >= 1 and stride >= 1 required");
    rep.finish();
    return c;
}

RunConfig load_config(Overrides const& o)
{
    RunConfig c;
    if (o.config) {
        std::ifstream is(*o.config);
        if (!is)
            throw ConfigError("cannot open config file " + o.config->string());
        std::stringstream ss;
        ss << is.rdbuf();
        c = parse_config(ss.str());
    }
    if (o.seed)
        c.seed = o.seed;
    if (o.workers)
        c.workers = *o.workers;
    if (o.out)
        c.out = *o.out;
    if (o.ensemble)
        c.ensemble = o.ensemble;
    return c;
}

std::vector<std::size_t> fit_indices(RunConfig const& c, TimeGrid const& grid)
{
    double const lo = std::max(c.fit_t_min.value_or(grid.front()), std::nextafter(1.0, 2.0));
    double const hi = c.fit_t_max.value_or(grid.back());
    auto idx = grid.indices_in(lo, hi);
    if (idx.empty())
        throw ConfigError("[estimator] t_min/t_max: no grid time > 1 inside the window");
    return idx;
}

void require_simulation_fields(RunConfig const& c)
{
    std::vector<std::string> missing;
    if (!c.seed)
        missing.push_back("[run] seed (or --seed)");
    if (!c.n_reps)
        missing.push_back("[run] n_reps");
    if (!c.model)
        missing.push_back("[model] type and parameters");
    if (!c.grid)
        missing.push_back("[grid] kind and parameters");
    if (missing.empty())
        return;
    std::string msg = "missing required fields:";
    for (auto const& f : missing)
        msg += "\n  " + f;
    msg += "\nsimulate needs: [run] seed, [run] n_reps, [model], [grid]";
    throw ConfigError(msg);
}

}  // namespace intermit::cli
