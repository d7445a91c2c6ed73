#include <cmath>
#include <limits>

#include "doctest.h"
#include "intermit/estimator.hpp"
#include "intermit/ldp.hpp"
#include "intermit/simulate.hpp"

using namespace intermit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PathEnsemble from_columns(TimeGrid grid, std::vector<std::vector<double>> const& rows)
{
    PathEnsemble e(model::Power{1.0}, std::move(grid), 0, rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        e.set_row(r, rows[r]);
    return e;
}

std::vector<std::size_t> all_indices(TimeGrid const& g)
{
    std::vector<std::size_t> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = i;
    return out;
}

}  // namespace

TEST_SUITE("estimator")
{
    TEST_CASE("empirical moment")
    {
        std::vector<double> const v{1.0, -2.0, 3.0, -4.0};
        auto const m = empirical_moment(v, 2.0, 10.0);
        CHECK(m.value == doctest::Approx(7.5));
        // sample sd of {1, 4, 9, 16} over sqrt(4)
        CHECK(m.stderr_ == doctest::Approx(std::sqrt(129.0 / 3.0) / 2.0));
        CHECK(empirical_moment(v, 0.0, 10.0).value == 1.0);
        CHECK_THROWS_AS(empirical_moment(std::vector<double>{0.0, 1.0}, -1.0, 10.0), std::domain_error);
        CHECK(empirical_moment(std::vector<double>{0.0, 1.0}, 0.0, 10.0).value == 1.0);
        CHECK_THROWS_AS(empirical_moment(std::vector<double>{1e300, 1e300}, 4.0, 10.0), MomentOverflow);
        CHECK_THROWS(empirical_moment(std::vector<double>{}, 1.0, 10.0));
    }

    TEST_CASE("power model recovers its exponent exactly")
    {
        auto const grid = make_decade_grid(1, 4, 4);
        auto const e = simulate_ensemble(model::Power{0.4}, grid, 1, 50, 1);
        std::vector<double> const q{0.0, 0.5, 1.0, 2.0, 3.0};
        auto const est = estimate_scaling_function(e, q, all_indices(grid));
        for (std::size_t i = 0; i < q.size(); ++i) {
            CHECK(est.tau_hat[i] == doctest::Approx(0.4 * q[i]).epsilon(1e-10));
            CHECK(est.r_squared[i] == doctest::Approx(1.0));
        }
        CHECK(est.t_lo == 10.0);
        CHECK(est.t_hi == 10000.0);
        CHECK(est.tau_jackknife.size() == kJackknifeGroups);
    }

    TEST_CASE("fit window requirements")
    {
        auto const grid = make_decade_grid(0, 1, 4);
        auto const e = simulate_ensemble(model::Power{0.4}, grid, 1, 10, 1);
        std::vector<double> const q{1.0};
        std::vector<std::size_t> const idx{1, 2, 3, 4};
        CHECK_THROWS(estimate_scaling_function(e, q, idx));
        std::vector<std::size_t> const with_one{0, 1, 2, 3, 4};
        CHECK_THROWS(estimate_scaling_function(e, q, with_one));
    }

    TEST_CASE("hinge detection on exact biscale moments")
    {
        // Exact two-point law: |X(t)| = t^H with weight 1 - t^-a, t^b with t^-a.
        double const H = 0.6, b = 1.0, a = 0.5;
        auto const grid = make_decade_grid(2, 6, 4);
        std::size_t const n = 100000;
        std::vector<std::vector<double>> rows(n, std::vector<double>(grid.size()));
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double const t = grid[j];
            auto const k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * std::pow(t, -a)));
            // k large values spread evenly over the replications
            for (std::size_t r = 0; r < n; ++r)
                rows[r][j] = (r + 1) * k / n > r * k / n ? std::pow(t, b) : std::pow(t, H);
        }
        auto const e = from_columns(grid, rows);
        auto const q = default_q_grid(0.0, 4.0);
        auto const est = estimate_scaling_function(e, q, all_indices(grid));
        auto const v = detect_intermittency(est);
        CHECK(v.intermittent);
        REQUIRE(v.q_star);
        CHECK(*v.q_star == doctest::Approx(a / (b - H)).epsilon(0.1));
        CHECK(v.H_hat == doctest::Approx(H).epsilon(0.05));
    }

    TEST_CASE("linear tau is not intermittent")
    {
        auto const grid = make_decade_grid(1, 4, 4);
        auto const e = simulate_ensemble(model::Power{0.5}, grid, 1, 50, 1);
        auto const q = default_q_grid();
        auto const v = detect_intermittency(estimate_scaling_function(e, q, all_indices(grid)));
        CHECK_FALSE(v.intermittent);
        CHECK(v.H_hat == doctest::Approx(0.5));
    }

    TEST_CASE("detection argument checks")
    {
        auto const grid = make_decade_grid(1, 4, 4);
        auto const e = simulate_ensemble(model::Power{0.5}, grid, 1, 50, 1);
        std::vector<double> const few{0.0, 1.0, 2.0};
        CHECK_THROWS(detect_intermittency(estimate_scaling_function(e, few, all_indices(grid))));
        auto const est = estimate_scaling_function(e, default_q_grid(), all_indices(grid));
        CHECK_THROWS(detect_intermittency(est, DetectOptions{-1.0, 3.0}));
        CHECK_THROWS(detect_intermittency(est, DetectOptions{0.01, 0.0}));
    }
}

TEST_SUITE("ldp")
{
    TEST_CASE("rate of growth and zero counts")
    {
        auto const grid = TimeGrid::from_values({100.0, 10000.0});
        auto const e = from_columns(grid, {{10.0, 100.0}, {0.0, -1.0}, {1000.0, 1e6}});
        auto const r = rate_of_growth(e, 0);
        CHECK(r.zero_count == 1);
        REQUIRE(r.values.size() == 2);
        CHECK(r.values[0] == doctest::Approx(0.5));
        CHECK(r.values[1] == doctest::Approx(1.5));
        auto const s = rate_of_growth(e, 1);
        CHECK(s.values[1] == 0.0);
        CHECK_THROWS(rate_of_growth(from_columns(TimeGrid::from_values({1.0, 2.0}), {{1.0, 1.0}}), 0));
    }

    TEST_CASE("infimum of the conjugate over a set")
    {
        auto const cr = tau_star_biscale(0.6, 1.0, 0.5);
        CHECK(infimum_over(cr, Interval{0.9, 1.1, true, true}).value() == doctest::Approx(0.375));
        CHECK(infimum_over(cr, Interval{0.5, 0.7, true, true}).value() == 0.0);
        CHECK(infimum_over(cr, Interval{1.2, 1.4, true, true}).is_infinite());
        CHECK(infimum_over(cr, Interval{-kInf, 0.5}).is_infinite());
    }

    TEST_CASE("sandwich verdicts on constructed frequencies")
    {
        // P(R in (0.9, 1.1)) = t^-0.5 exactly.
        auto const grid = make_decade_grid(2, 4, 2);
        std::size_t const n = 100000;
        std::vector<std::vector<double>> rows(n, std::vector<double>(grid.size()));
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double const t = grid[j];
            auto const k = static_cast<std::size_t>(std::llround(static_cast<double>(n) / std::sqrt(t)));
            for (std::size_t r = 0; r < n; ++r)
                rows[r][j] = r < k ? t : std::pow(t, 0.6);
        }
        auto const e = from_columns(grid, rows);
        auto const idx = all_indices(grid);
        ScenarioSpec const s = scenario::Biscale{0.6, 1.0, 0.5};

        auto const pass = verify_sandwich(e, s, Interval{0.9, 1.1}, idx);
        CHECK(pass.decay.rho == doctest::Approx(-0.5).epsilon(1e-3));
        CHECK(pass.lower_bound == doctest::Approx(-0.5));
        CHECK(pass.upper_bound == doctest::Approx(-0.375));
        CHECK(pass.verdict == Verdict::Pass);

        // No hits: rule-of-three limit only.
        auto const none = verify_sandwich(e, s, Interval{1.2, 1.4}, idx);
        CHECK(none.decay.one_sided);
        CHECK(none.verdict == Verdict::Pass);

        // Frequencies of order one where tau* says the set is rare.
        ScenarioSpec const wrong = scenario::Biscale{0.6, 1.0, 0.9};
        auto const fail = verify_sandwich(e, wrong, Interval{0.95, 1.05}, idx, 0.02);
        CHECK(fail.verdict == Verdict::Fail);

        ScenarioSpec const supou = scenario::SupOUFiniteVar{0.7, 0.5};
        auto const env = verify_sandwich(e, supou, Interval{0.2, 0.4}, idx);
        CHECK(env.verdict == Verdict::Indeterminate);

        CHECK_THROWS(verify_sandwich(e, s, Interval{1.1, 0.9}, idx));
    }
}
