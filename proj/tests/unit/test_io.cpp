#include <cstring>
#include <sstream>

#include "doctest.h"
#include "intermit/ensemble_io.hpp"
#include "intermit/simulate.hpp"
#include "intermit/time_grid.hpp"

using namespace intermit;

namespace {

PathEnsemble small_ensemble()
{
    return simulate_ensemble(model::BiscaleDet{0.6, 1.0, 0.5}, make_decade_grid(1, 3, 2), 42, 64, 1);
}

}  // namespace

TEST_SUITE("grid")
{
    TEST_CASE("decade grid hits exact powers of ten")
    {
        auto const g = make_decade_grid(1, 5, 4);
        CHECK(g.size() == 17);
        CHECK(g.front() == 10.0);
        CHECK(g[4] == 100.0);
        CHECK(g.back() == 100000.0);
        CHECK(g.kind() == TimeGrid::Kind::Geometric);
    }

    TEST_CASE("grid constructors reject bad input")
    {
        CHECK_THROWS(make_geometric_grid(1.0, 2.0, 5));
        CHECK_THROWS(make_geometric_grid(2.0, 1.0, 5));
        CHECK_THROWS(make_geometric_grid(2.0, 2.0, 1));
        CHECK_THROWS(TimeGrid::from_values({1.0, 1.0}));
        CHECK_THROWS(TimeGrid::from_values({-1.0, 1.0}));
        CHECK_THROWS(TimeGrid::from_values({1.0, 2.5}, 1.0));
    }

    TEST_CASE("lattice snapping and step indices")
    {
        auto const g = snap_to_lattice(make_decade_grid(0, 2, 4), 1.0);
        CHECK(g.delta() == 1.0);
        CHECK(g.values().front() == 1.0);
        CHECK(g.back() == 100.0);
        auto const steps = g.steps();
        CHECK(steps.back() == 100);
        auto const a = make_arithmetic_grid(0.5, 4);
        CHECK(a.values()[3] == 2.0);
        CHECK(a.indices_in(0.9, 1.6) == std::vector<std::size_t>{1, 2});
    }
}

TEST_SUITE("io")
{
    TEST_CASE("fnv1a64 reference values")
    {
        CHECK(fnv1a64({}) == 0xcbf29ce484222325ull);
        unsigned char const a[] = {'a'};
        CHECK(fnv1a64(a) == 0xaf63dc4c8601ec8cull);
        unsigned char const foobar[] = {'f', 'o', 'o', 'b', 'a', 'r'};
        CHECK(fnv1a64(foobar) == 0x85944171f73967e8ull);
    }

    TEST_CASE("ensemble round trip is exact")
    {
        auto const e = small_ensemble();
        std::stringstream ss;
        write_ensemble(ss, e);
        auto const back = read_ensemble(ss);
        CHECK(back.n_reps() == e.n_reps());
        CHECK(back.seed() == e.seed());
        CHECK(back.grid() == e.grid());
        CHECK(to_json(back.model()) == to_json(e.model()));
        CHECK(std::memcmp(back.raw().data(), e.raw().data(), e.raw().size_bytes()) == 0);
    }

    TEST_CASE("corruption, truncation and trailing bytes are detected")
    {
        auto const e = small_ensemble();
        std::stringstream ss;
        write_ensemble(ss, e);
        std::string const good = ss.str();

        std::string flipped = good;
        flipped[flipped.size() - 20] ^= 0x01;
        std::stringstream f(flipped);
        CHECK_THROWS_AS(read_ensemble(f), ChecksumError);

        std::stringstream t(good.substr(0, good.size() - 8));
        CHECK_THROWS_AS(read_ensemble(t), ChecksumError);

        std::stringstream x(good + "x");
        CHECK_THROWS_AS(read_ensemble(x), ChecksumError);

        std::stringstream m("NOT-AN-ENSEMBLE\n{}\n");
        CHECK_THROWS(read_ensemble(m));
    }

    TEST_CASE("model descriptors round trip through JSON")
    {
        model::SupOU s;
        s.quadruple.b_gauss = 0.5;
        s.quadruple.levy = driver::CompoundPoissonTwoSided{2.0, 1.0, 0.5, 0.25};
        s.quadruple.pi = MixingSpec{0.4, 2.0};
        s.m_components = 123;
        s.gaussian_method = GaussianMethod::Recursion;
        for (ProcessModel const& m : {ProcessModel{model::BiscaleDet{0.6, 1.0, 0.5}},
                                      ProcessModel{model::TriscaleDet{0.6, 1.0, 0.5}},
                                      ProcessModel{model::FbmMixture{0.6, 0.8, 0.6, 1.0}},
                                      ProcessModel{model::Fbm{0.7, 0.5}}, ProcessModel{s},
                                      ProcessModel{model::Power{0.3}}}) {
            CHECK(to_json(model_from_json(to_json(m))) == to_json(m));
        }
    }
}
