#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "intermit/conjugate.hpp"
#include "intermit/estimator.hpp"
#include "intermit/scaling_function.hpp"

using namespace intermit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PiecewiseLinear random_convex(std::mt19937_64& gen)
{
    std::uniform_int_distribution<int> nv(1, 6);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> inc(0.05, 1.5);
    std::bernoulli_distribution coin(0.5);

    int const k = nv(gen);
    std::vector<double> xs;
    while (static_cast<int>(xs.size()) < k) {
        double const x = std::round(u(gen) * 100.0) / 100.0;
        if (std::find(xs.begin(), xs.end(), x) == xs.end())
            xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    double slope = u(gen);
    std::optional<double> left;
    if (coin(gen))
        left = slope - inc(gen);
    std::vector<Vertex> v{{xs[0], u(gen)}};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        v.push_back({xs[i], v.back().y + slope * (xs[i] - xs[i - 1])});
        slope += inc(gen);
    }
    std::optional<double> right;
    if (coin(gen))
        right = slope;
    return PiecewiseLinear::from_vertices(std::move(v), left, right);
}

// Isotonic regression by the max-min formula, independent of pooling.
std::vector<double> isotonic_oracle(std::vector<double> const& y, std::vector<double> const& w)
{
    std::size_t const n = y.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = -kInf;
        for (std::size_t j = 0; j <= i; ++j) {
            double worst = kInf;
            for (std::size_t k = i; k < n; ++k) {
                double sw = 0, swy = 0;
                for (std::size_t l = j; l <= k; ++l) {
                    sw += w[l];
                    swy += w[l] * y[l];
                }
                worst = std::min(worst, swy / sw);
            }
            best = std::max(best, worst);
        }
        out[i] = best;
    }
    return out;
}

}  // namespace

TEST_SUITE("convex")
{
    TEST_CASE("extended reals")
    {
        Extended const inf = Extended::infinity();
        CHECK((inf + 1.0).is_infinite());
        CHECK(Extended(2.0) < inf);
        CHECK_THROWS(inf.value());
        CHECK_THROWS(0.0 * inf);
        CHECK(to_token(inf) == "inf");
        CHECK(to_token(0.25) == "0.25");
        CHECK(parse_extended("inf").is_infinite());
        CHECK(parse_extended("-1.5").value() == -1.5);
    }

    TEST_CASE("piecewise linear evaluation and validation")
    {
        auto const f = PiecewiseLinear::from_vertices({{0, 0}, {1.25, 0.75}}, 0.6, 1.0);
        CHECK(f(1.25).value() == 0.75);
        CHECK(f(3.0).value() == doctest::Approx(2.5));
        CHECK(f(-1.0).value() == doctest::Approx(-0.6));
        CHECK_THROWS_AS(PiecewiseLinear::from_vertices({{0, 0}, {1, 1}, {2, 1.5}}, std::nullopt, std::nullopt),
                        std::invalid_argument);
        auto const closed = PiecewiseLinear::from_vertices({{-1, 1}, {3, 2}}, std::nullopt, std::nullopt);
        CHECK(closed(3.5).is_infinite());
        CHECK(closed(-1.0).value() == 1.0);
        // Collinear vertices are dropped.
        auto const line = PiecewiseLinear::from_vertices({{0, 0}, {1, 1}, {2, 2}}, 1.0, 1.0);
        CHECK(line.vertices().size() == 1);
    }

    TEST_CASE("conjugate of known shapes")
    {
        // Hq on R conjugates to the single point {H}.
        auto const star = conjugate(PiecewiseLinear::linear(0.625, 0.0));
        CHECK(star(0.625).value() == doctest::Approx(0.0));
        CHECK(star(0.6).is_infinite());
        // Two-scale tau: segment from (H, 0) to (b, a).
        auto const tau = PiecewiseLinear::from_vertices({{0.0, 0.0}, {1.25, 0.75}}, 0.6, 1.0);
        auto const cs = conjugate(tau);
        CHECK(cs.lower() == 0.6);
        CHECK(cs.upper() == 1.0);
        CHECK(cs(1.0).value() == doctest::Approx(0.5));
        CHECK(cs(0.8).value() == doctest::Approx(0.25));
    }

    TEST_CASE("biconjugate returns the function on random inputs")
    {
        std::mt19937_64 gen(20240601);
        for (int i = 0; i < 20; ++i) {
            auto const f = random_convex(gen);
            auto const g = conjugate(conjugate(f));
            CAPTURE(i);
            CHECK(approx_equal(f, g, 1e-9));
        }
    }

    TEST_CASE("numeric conjugate agrees with the exact one")
    {
        std::mt19937_64 gen(99);
        for (int i = 0; i < 20; ++i) {
            auto const f = random_convex(gen);
            if (f.lower() == f.upper())
                continue;
            // Grid with every vertex, one point past each end of the
            // domain, and continuing ends where tails exist.
            std::vector<double> grid;
            for (int k = -500; k <= 500; ++k)
                grid.push_back(k / 100.0);
            for (auto const& v : f.vertices())
                grid.push_back(v.x);
            std::sort(grid.begin(), grid.end());
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
            auto const sampled = sample(f, grid);
            auto const fs = conjugate(f);
            std::vector<double> xs;
            for (int k = -60; k <= 60; ++k)
                xs.push_back(k / 10.0);
            auto const num = conjugate_numeric(sampled, xs);
            for (std::size_t j = 0; j < xs.size(); ++j) {
                CAPTURE(i);
                CAPTURE(xs[j]);
                Extended const exact = fs(xs[j]);
                REQUIRE(num.values[j].is_infinite() == exact.is_infinite());
                if (exact.is_finite())
                    CHECK(std::abs(num.values[j].value() - exact.value()) < 1e-9);
            }
        }
    }

    TEST_CASE("exposed points")
    {
        auto const tau = PiecewiseLinear::from_vertices({{0.0, 0.0}, {1.25, 0.75}}, 0.6, 1.0);
        auto const e = exposed_points(conjugate(tau), {-kInf, kInf});
        CHECK(e == std::vector<double>{0.6, 1.0});
        // A closed domain end removes the exposing slopes beyond it.
        auto const half = PiecewiseLinear::from_vertices({{0.0, 0.0}, {1.25, 0.75}}, std::nullopt, 1.0);
        CHECK(exposed_points(conjugate(half), {0.0, kInf}) == std::vector<double>{0.6, 1.0});
    }

    TEST_CASE("intermittency of scaling functions")
    {
        ScalingFunction const lin(PiecewiseLinear::linear(0.5, 0.0));
        CHECK_FALSE(intermittency_of(lin));
        ScalingFunction const two(PiecewiseLinear::from_vertices({{0.0, 0.0}, {1.25, 0.75}}, 0.6, 1.0));
        auto const w = intermittency_of(two);
        REQUIRE(w);
        CHECK(two(w->p).value() / w->p < two(w->r).value() / w->r);
        CHECK(two.breakpoints() == std::vector<double>{1.25});
        CHECK_THROWS(ScalingFunction(PiecewiseLinear::linear(0.5, 0.1)));
    }

    TEST_CASE("grid function CSV round trip")
    {
        GridFunction g{{0.0, 0.5, 1.0}, {1.0, Extended::infinity(), 2.5}};
        std::stringstream ss;
        write_csv(ss, g);
        auto const back = read_grid_function_csv(ss);
        CHECK(back.grid == g.grid);
        CHECK(back.values[1].is_infinite());
        CHECK(back.values[2].value() == 2.5);
    }

    TEST_CASE("convex repair equals isotonic regression of slopes")
    {
        std::mt19937_64 gen(5);
        std::normal_distribution<double> noise(0.0, 0.05);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> q, tau;
            for (int i = 0; i <= 12; ++i) {
                double const x = 0.25 * i + (i > 6 ? 0.1 : 0.0);
                q.push_back(x);
                tau.push_back(0.6 * x + 0.4 * std::max(0.0, x - 1.25) + noise(gen));
            }
            tau[0] = 0.0;
            auto const fixed = convex_repair(q, tau);
            std::vector<double> s, w;
            for (std::size_t i = 1; i < q.size(); ++i) {
                s.push_back((tau[i] - tau[i - 1]) / (q[i] - q[i - 1]));
                w.push_back(q[i] - q[i - 1]);
            }
            auto const iso = isotonic_oracle(s, w);
            CHECK(fixed[0] == 0.0);
            for (std::size_t i = 1; i < q.size(); ++i) {
                double const slope = (fixed[i] - fixed[i - 1]) / (q[i] - q[i - 1]);
                CHECK(slope == doctest::Approx(iso[i - 1]).epsilon(1e-9));
            }
        }
    }
}
