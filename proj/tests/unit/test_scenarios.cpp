#include <cmath>
#include <limits>

#include "doctest.h"
#include "intermit/scenarios.hpp"

using namespace intermit;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("scenarios")
{
    TEST_CASE("biscale tau and conjugate")
    {
        auto const tau = tau_biscale(0.6, 1.0, 0.5);
        CHECK(tau(1.25).value() == doctest::Approx(0.75));
        CHECK(tau(2.0).value() == doctest::Approx(1.5));
        CHECK(tau(-1.0).value() == doctest::Approx(-0.6));
        auto const star = tau_star_biscale(0.6, 1.0, 0.5);
        CHECK(star(0.6).value() == 0.0);
        CHECK(star(1.0).value() == 0.5);
        CHECK(star(0.8).value() == doctest::Approx(0.25));
        CHECK(star(0.59).is_infinite());
        CHECK(star.exposed_points == std::vector<double>{0.6, 1.0});
    }

    TEST_CASE("finite window conjugate has slopes q_lo and q_hi")
    {
        auto const star = tau_star_finite_window(0.625, -1.0, 3.0);
        CHECK(star(0.625).value() == doctest::Approx(0.0));
        CHECK(star(1.625).value() == doctest::Approx(3.0));
        CHECK(star(-0.375).value() == doctest::Approx(1.0));
        CHECK(star.exposed_points == std::vector<double>{0.625});
        auto const tau = tau_finite_window(0.625, -1.0, 3.0);
        CHECK(tau(3.5).is_infinite());
        CHECK(tau(-1.0).value() == doctest::Approx(-0.625));
    }

    TEST_CASE("all moments: conjugate is a single point")
    {
        auto const star = tau_star_all_moments(0.5);
        CHECK(star(0.5).value() == doctest::Approx(0.0));
        CHECK(star(0.49).is_infinite());
        CHECK(star(0.51).is_infinite());
        CHECK(star.exposed_points == std::vector<double>{0.5});
    }

    TEST_CASE("supOU finite variance matches biscale with b = 1 on q >= 0")
    {
        auto const s = tau_supou_finite_var(0.7, 0.5);
        auto const b = tau_biscale(0.7, 1.0, 0.5);
        for (double q = 0.0; q <= 5.0; q += 0.125)
            CHECK(s(q).value() == doctest::Approx(b(q).value()).epsilon(1e-14));
        CHECK(s(-0.5).is_infinite());
        auto const star = tau_star_supou_finite_var(0.7, 0.5);
        CHECK(star.is_lower_envelope(0.5));
        CHECK_FALSE(star.is_lower_envelope(0.8));
        CHECK(star.exposed_points == std::vector<double>{0.7, 1.0});
    }

    TEST_CASE("scenario validation")
    {
        CHECK_NOTHROW(validate(ScenarioSpec{scenario::SupOUFiniteVar{0.7, 0.5}}));
        // H must lie in [1/(1+alpha), 1 - alpha/2] for alpha < 1.
        CHECK_THROWS_AS(validate(ScenarioSpec{scenario::SupOUFiniteVar{0.6, 0.5}}), std::invalid_argument);
        CHECK_THROWS_AS(validate(ScenarioSpec{scenario::SupOUFiniteVar{0.8, 0.5}}), std::invalid_argument);
        CHECK_NOTHROW(validate(ScenarioSpec{scenario::SupOUFiniteVar{0.5, 1.5}}));
        CHECK_THROWS(validate(ScenarioSpec{scenario::Biscale{1.0, 0.6, 0.5}}));
        CHECK_NOTHROW(validate(ScenarioSpec{scenario::SupOUInfVarCaseI{0.5, 1.2, 1.8}}));
        CHECK_THROWS(validate(ScenarioSpec{scenario::SupOUInfVarCaseI{0.5, 1.6, 1.8}}));
        CHECK_NOTHROW(validate(ScenarioSpec{scenario::SupOUInfVarCaseII{0.3, 1.5, 1.8}}));
        CHECK_THROWS(validate(ScenarioSpec{scenario::SupOUInfVarCaseII{0.3, 1.2, 1.8}}));
    }

    TEST_CASE("infinite variance cases")
    {
        ScenarioSpec const c1 = scenario::SupOUInfVarCaseI{0.5, 1.2, 1.8};
        auto const t1 = tau_supou_inf_var(c1);
        CHECK(t1(1.5).value() == doctest::Approx(1.0));
        CHECK(t1(1.8).value() == doctest::Approx(1.3));
        CHECK(t1(1.9).is_infinite());
        auto const s1 = tau_star(c1);
        CHECK(s1(1.0 / 1.5).value() == doctest::Approx(0.0));
        CHECK(s1(1.0).value() == doctest::Approx(0.5));

        ScenarioSpec const c2 = scenario::SupOUInfVarCaseII{0.3, 1.5, 1.5};
        auto const s2 = tau_star(c2);
        CHECK(s2.exposed_points == std::vector<double>{0.8});
        ScenarioSpec const c3 = scenario::SupOUInfVarCaseII{0.3, 1.5, 1.8};
        CHECK(tau_star(c3).exposed_points == std::vector<double>{0.8, 1.0});
    }

    TEST_CASE("negative-order bound tau(q) >= q inf tau(q')/q'")
    {
        for (ScenarioSpec const& s : {ScenarioSpec{scenario::Biscale{0.6, 1.0, 0.5}},
                                      ScenarioSpec{scenario::FiniteWindow{0.625, -1.0, 3.0}},
                                      ScenarioSpec{scenario::AllMomentsConverge{0.4}}}) {
            auto const tau = scaling_function(s);
            double inf_ratio = kInf;
            for (double q = 0.01; q < 3.0; q += 0.01) {
                if (tau(q).is_finite())
                    inf_ratio = std::min(inf_ratio, tau(q).value() / q);
            }
            for (double q = -2.0; q < 0.0; q += 0.05) {
                if (tau(q).is_finite())
                    CHECK(tau(q).value() >= q * inf_ratio - 1e-12);
            }
        }
    }

    TEST_CASE("gaussian rate function")
    {
        auto const g = gaussian_rate_function(1.0, 0.5);
        // sigma~^2 = b Gamma(1+alpha) / ((2-alpha)(1-alpha))
        CHECK(g.sigma_tilde_sq == doctest::Approx(std::tgamma(1.5) / 0.75));
        CHECK(g(1.0) == doctest::Approx(1.0 / (2.0 * g.sigma_tilde_sq)));
        CHECK_THROWS(gaussian_rate_function(1.0, 1.5));
    }
}
