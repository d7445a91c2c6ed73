#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "doctest.h"
#include "intermit/ensemble_io.hpp"
#include "intermit/simulate.hpp"

using namespace intermit;
using namespace intermit::cli;

namespace {

std::string const kBiscale = R"(
[run]
seed = 7
n_reps = 400

[model]
type = biscale
H = 0.6
b = 1.0
a = 0.5

[grid]
kind = decade
lo_decade = 1
hi_decade = 3
per_decade = 2

[scenario]
type = biscale
H = 0.6
b = 1.0
a = 0.5

[estimator]
q = -1, 0, 1, 2, 3, 9

[ldp]
a_lo = 0.9
a_hi = 1.1
)";

std::string slurp(std::filesystem::path const& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(std::string const& ini)
{
    try {
        parse_config(ini);
    } catch (ConfigError const& e) {
        return e.what();
    }
    return "";
}

struct TempDir
{
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("intermit-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("config parsing")
    {
        auto const c = parse_config(kBiscale);
        CHECK(c.seed == 7u);
        CHECK(c.n_reps == 400u);
        REQUIRE(c.grid);
        CHECK(c.grid->size() == 5);
        CHECK(c.q_grid.size() == 6);
        REQUIRE(c.ldp_set);
        CHECK(c.ldp_set->lo == 0.9);
    }

    TEST_CASE("config errors name what is wrong")
    {
        CHECK(error_of("[bogus]\nx = 1\n").find("bogus") != std::string::npos);
        CHECK(error_of("[run]\nseeds = 1\n").find("seeds") != std::string::npos);
        CHECK(error_of("[model]\ntype = biscale\nH = 0.6\nb = 1\n").find("a") != std::string::npos);
        CHECK(error_of("[ldp]\na_lo = 1.1\na_hi = 0.9\n").find("empty") != std::string::npos);
        CHECK(error_of("[model]\ntype = biscale\nH = 1.2\nb = 1\na = 0.5\n").find("model") != std::string::npos);
        CHECK(error_of("[estimator]\nq = 1, 0.5\n") != "");
        CHECK(error_of("[run]\nn_reps = many\n") != "");

        auto c = parse_config("[model]\ntype = power\nexponent = 0.5\n");
        try {
            require_simulation_fields(c);
            FAIL("expected a ConfigError");
        } catch (ConfigError const& e) {
            std::string const msg = e.what();
            CHECK(msg.find("[run] seed") != std::string::npos);
            CHECK(msg.find("[grid]") != std::string::npos);
        }
    }

    TEST_CASE("persisted ensemble gives the same tau table as the in-memory one")
    {
        TempDir dir;
        auto c = parse_config(kBiscale);
        c.out = dir.path;
        std::ostringstream log;
        CHECK(cmd_simulate(c, log) == kExitPass);
        REQUIRE(std::filesystem::exists(dir.path / "ensemble.bin"));
        REQUIRE(std::filesystem::exists(dir.path / "ensemble.json"));

        auto const e = simulate_ensemble(*c.model, *c.grid, *c.seed, *c.n_reps, 1);
        std::string const mem = tau_csv(c, e, log);
        CHECK(cmd_tau(c, log) == kExitPass);
        CHECK(slurp(dir.path / "tau.csv") == mem);

        CHECK(mem.find("\n0,0,0,1,0\n") != std::string::npos);
        CHECK(mem.rfind("q,tau_hat,stderr,r_squared,tau_theory", 0) == 0);

        // Orders beyond the scenario's moment window are not estimated.
        c.scenario = scenario::FiniteWindow{0.6, -2.0, 3.0};
        auto const windowed = tau_csv(c, e, log);
        CHECK(windowed.find("\n9,NA,NA,NA,NA\n") != std::string::npos);
        CHECK(windowed.find("\n-1,NA") == std::string::npos);
    }

    TEST_CASE("ldp, conjugate and reproduce write their outputs")
    {
        TempDir dir;
        auto c = parse_config(kBiscale);
        c.out = dir.path;
        std::ostringstream log;
        REQUIRE(cmd_simulate(c, log) == kExitPass);
        int const code = cmd_ldp(c, log);
        CHECK((code == kExitPass || code == kExitFail || code == kExitIndeterminate));
        CHECK(std::filesystem::exists(dir.path / "ldp.json"));
        CHECK(std::filesystem::exists(dir.path / "ldp.csv"));

        CHECK(cmd_conjugate(c, std::nullopt, false, log) == kExitPass);
        auto const conj = slurp(dir.path / "conjugate.csv");
        CHECK(conj.rfind("x,tau_star,is_infinite,is_exposed,lower_envelope_only", 0) == 0);

        CHECK(cmd_reproduce(c, "fig4", log) == kExitPass);
        CHECK(std::filesystem::exists(dir.path / "fig4_tau.csv"));
        CHECK(std::filesystem::exists(dir.path / "fig4_tau_star.csv"));
        CHECK_THROWS_AS(cmd_reproduce(c, "fig99", log), ConfigError);
    }

    TEST_CASE("non-convex tau CSV needs --repair")
    {
        TempDir dir;
        auto c = parse_config("[run]\nout = " + dir.path.string() + "\n");
        auto const csv = dir.path / "tau.csv";
        std::ofstream(csv) << "q,tau_hat\n0,0\n1,0.6\n2,1.0\n3,1.8\n";
        std::ostringstream log;
        CHECK_THROWS_AS(cmd_conjugate(c, csv, false, log), ConfigError);
        CHECK(cmd_conjugate(c, csv, true, log) == kExitPass);
    }

    TEST_CASE("corrupted ensembles are rejected")
    {
        TempDir dir;
        auto c = parse_config(kBiscale);
        c.out = dir.path;
        std::ostringstream log;
        REQUIRE(cmd_simulate(c, log) == kExitPass);
        auto const bin = dir.path / "ensemble.bin";
        std::string bytes = slurp(bin);
        bytes[bytes.size() - 3] ^= 0x10;
        std::ofstream(bin, std::ios::binary) << bytes;
        CHECK_THROWS_AS(cmd_tau(c, log), ConfigError);
    }
}
