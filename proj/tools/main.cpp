#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"

using namespace intermit::cli;

int main(int argc, char** argv)
{
    CLI::App app{"intermit: intermittency and multiscaling of stochastic processes"};
    app.require_subcommand(1);

    Overrides o;
    std::string config, out, ensemble;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "INI run configuration")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--workers", workers, "worker threads, 0 = all cores");
        sub->add_option("--out", out, "output directory");
    };

    auto* sim = app.add_subcommand("simulate", "simulate an ensemble and persist it");
    add_common(sim);

    auto* tau = app.add_subcommand("tau", "estimate the scaling function of an ensemble");
    add_common(tau);
    tau->add_option("--ensemble", ensemble, "ensemble file (default <out>/ensemble.bin)");

    std::string tau_in;
    bool repair = false;
    auto* conj = app.add_subcommand("conjugate", "Legendre-Fenchel conjugate of a scenario or an estimated tau");
    add_common(conj);
    conj->add_option("--tau", tau_in, "tau CSV with columns q and tau_hat")->check(CLI::ExistingFile);
    conj->add_flag("--repair", repair, "project a non-convex tau onto convex functions first");

    auto* ldp = app.add_subcommand("ldp", "check decay of P(R(t) in A) against the conjugate bounds");
    add_common(ldp);
    ldp->add_option("--ensemble", ensemble, "ensemble file (default <out>/ensemble.bin)");

    std::string figure;
    auto* rep = app.add_subcommand("reproduce", "write the data series of a figure");
    add_common(rep);
    rep->add_option("figure", figure, "fig2 .. fig7")->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    CLI::App* active = app.get_subcommands().front();
    if (!config.empty())
        o.config = config;
    if (active->count("--seed"))
        o.seed = seed;
    if (active->count("--workers"))
        o.workers = workers;
    if (!out.empty())
        o.out = out;
    if (!ensemble.empty())
        o.ensemble = ensemble;

    try {
        RunConfig const c = load_config(o);
        if (active == sim)
            return cmd_simulate(c, std::cout);
        if (active == tau)
            return cmd_tau(c, std::cout);
        if (active == conj)
            return cmd_conjugate(c, tau_in.empty() ? std::nullopt : std::optional<std::filesystem::path>(tau_in),
                                 repair, std::cout);
        if (active == ldp)
            return cmd_ldp(c, std::cout);
        return cmd_reproduce(c, figure, std::cout);
    } catch (ConfigError const& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (std::invalid_argument const& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
