#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "intermit/parallel.hpp"
#include "intermit/rng.hpp"

using namespace intermit;

TEST_SUITE("rng")
{
    // Known-answer vectors published with the Random123 reference code.
    TEST_CASE("philox4x32-10 known answers")
    {
        auto r = philox4x32({0, 0, 0, 0}, {0, 0});
        CHECK(r == std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});

        r = philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
        CHECK(r == std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});

        r = philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
        CHECK(r == std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
    }

    TEST_CASE("streams depend only on their identity")
    {
        RngStream a(7, 3, 1), b(7, 3, 1);
        for (int i = 0; i < 1000; ++i)
            REQUIRE(a.next_u64() == b.next_u64());

        std::set<std::uint64_t> firsts;
        for (std::uint64_t rep = 0; rep < 50; ++rep) {
            for (std::uint32_t sub = 0; sub < 4; ++sub)
                firsts.insert(RngStream(7, rep, sub).next_u64());
        }
        CHECK(firsts.size() == 200);
        CHECK(RngStream(8, 0, 0).next_u64() != RngStream(7, 0, 0).next_u64());
    }

    TEST_CASE("uniform stays inside the open unit interval")
    {
        RngStream r(1, 0);
        double sum = 0.0;
        int const n = 200000;
        for (int i = 0; i < n; ++i) {
            double const u = r.uniform();
            REQUIRE(u > 0.0);
            REQUIRE(u < 1.0);
            sum += u;
        }
        CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
    }

    TEST_CASE("normal and exponential moments")
    {
        RngStream r(2, 0);
        int const n = 400000;
        double m1 = 0, m2 = 0, m4 = 0, e1 = 0, e2 = 0;
        for (int i = 0; i < n; ++i) {
            double const z = r.normal();
            m1 += z;
            m2 += z * z;
            m4 += z * z * z * z;
            double const x = r.exponential();
            e1 += x;
            e2 += x * x;
        }
        CHECK(std::abs(m1 / n) < 4.0 / std::sqrt(n));
        CHECK(std::abs(m2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
        CHECK(std::abs(m4 / n - 3.0) < 4.0 * std::sqrt(96.0 / n));
        CHECK(std::abs(e1 / n - 1.0) < 4.0 / std::sqrt(n));
        CHECK(std::abs(e2 / n - 2.0) < 4.0 * std::sqrt(20.0 / n));
    }

    TEST_CASE("gamma mean and variance across shapes")
    {
        for (double shape : {0.1, 0.5, 1.0, 2.5, 10.0}) {
            RngStream r(3, 0, static_cast<std::uint32_t>(shape * 10));
            int const n = 200000;
            double s1 = 0, s2 = 0;
            for (int i = 0; i < n; ++i) {
                double const g = r.gamma(shape);
                REQUIRE(g >= 0.0);
                s1 += g;
                s2 += g * g;
            }
            double const mean = s1 / n;
            double const var = s2 / n - mean * mean;
            CAPTURE(shape);
            // sd of the sample mean is sqrt(shape / n)
            CHECK(std::abs(mean - shape) < 4.0 * std::sqrt(shape / n));
            CHECK(var == doctest::Approx(shape).epsilon(0.05));
        }
    }

    TEST_CASE("poisson mean and variance")
    {
        for (double mean : {0.3, 4.0, 60.0}) {
            RngStream r(4, 0);
            int const n = 100000;
            double s1 = 0, s2 = 0;
            for (int i = 0; i < n; ++i) {
                double const k = static_cast<double>(r.poisson(mean));
                s1 += k;
                s2 += k * k;
            }
            double const m = s1 / n;
            CAPTURE(mean);
            CHECK(std::abs(m - mean) < 4.0 * std::sqrt(mean / n));
            CHECK((s2 / n - m * m) == doctest::Approx(mean).epsilon(0.05));
        }
    }

    TEST_CASE("parallel_for visits every index once and rethrows")
    {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits)
            REQUIRE(h == 1);
        CHECK_THROWS_AS(parallel_for(100, 4,
                                     [](std::size_t i) {
                                         if (i == 57)
                                             throw std::runtime_error("boom");
                                     }),
                        std::runtime_error);
    }
}
