#include "intermit/scenarios.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace intermit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, char const* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

void check_two_scale(double H, double b, double a)
{
    require(H > 0.0, "scenario: H must be positive");
    require(H < b, "scenario: requires H < b");
    require(a > 0.0, "scenario: requires a > 0");
}

void check_supou_finite_var(double H, double alpha)
{
    require(H > 0.0 && H < 1.0, "tau_supou_finite_var: requires 0 < H < 1");
    require(alpha > 0.0, "tau_supou_finite_var: requires alpha > 0");
}

}  // namespace

void validate(ScenarioSpec const& spec)
{
    std::visit(overloaded{
                   [](scenario::AllMomentsConverge const& s) { require(s.H > 0.0, "AllMomentsConverge: H > 0"); },
                   [](scenario::FiniteWindow const& s) {
                       require(s.H > 0.0, "FiniteWindow: H > 0");
                       require(s.q_lo < 0.0 && s.q_hi > 0.0, "FiniteWindow: requires q_lo < 0 < q_hi");
                   },
                   [](scenario::Biscale const& s) { check_two_scale(s.H, s.b, s.a); },
                   [](scenario::Triscale const& s) { check_two_scale(s.H, s.b, s.a); },
                   [](scenario::SupOUFiniteVar const& s) {
                       check_supou_finite_var(s.H, s.alpha);
                       double const tol = 1e-9;
                       bool ok = false;
                       if (s.alpha < 1.0) {
                           // 1/(1+alpha) (stable Levy), 1 - alpha/beta for beta in
                           // (1+alpha, 2), and 1 - alpha/2 (Gaussian component).
                           ok = s.H >= 1.0 / (1.0 + s.alpha) - tol && s.H <= 1.0 - s.alpha / 2.0 + tol;
                       } else if (s.alpha > 1.0) {
                           ok = std::abs(s.H - 0.5) <= tol;
                       }
                       require(ok, "SupOUFiniteVar: H is not attainable for this alpha");
                   },
                   [](scenario::SupOUInfVarCaseI const& s) {
                       require(s.alpha > 0.0 && s.beta >= 0.0, "SupOUInfVarCaseI: alpha > 0, beta >= 0");
                       require(s.beta < 1.0 + s.alpha && 1.0 + s.alpha < s.gamma && s.gamma < 2.0,
                               "SupOUInfVarCaseI: requires beta < 1+alpha < gamma < 2");
                   },
                   [](scenario::SupOUInfVarCaseII const& s) {
                       require(s.alpha > 0.0, "SupOUInfVarCaseII: alpha > 0");
                       require(1.0 + s.alpha < s.beta && s.beta <= s.gamma && s.gamma < 2.0,
                               "SupOUInfVarCaseII: requires 1+alpha < beta <= gamma < 2");
                   },
                   [](scenario::GaussianSupOU const& s) {
                       require(s.b_gauss > 0.0, "GaussianSupOU: b_gauss > 0");
                       require(s.alpha > 0.0, "GaussianSupOU: alpha > 0");
                   },
               },
               spec);
}

std::string scenario_name(ScenarioSpec const& spec)
{
    return std::visit(overloaded{
                          [](scenario::AllMomentsConverge const&) { return std::string("all_moments"); },
                          [](scenario::FiniteWindow const&) { return std::string("finite_window"); },
                          [](scenario::Biscale const&) { return std::string("biscale"); },
                          [](scenario::Triscale const&) { return std::string("triscale"); },
                          [](scenario::SupOUFiniteVar const&) { return std::string("supou_finite_var"); },
                          [](scenario::SupOUInfVarCaseI const&) { return std::string("supou_inf_var_1"); },
                          [](scenario::SupOUInfVarCaseII const&) { return std::string("supou_inf_var_2"); },
                          [](scenario::GaussianSupOU const&) { return std::string("gaussian_supou"); },
                      },
                      spec);
}

ScalingFunction tau_all_moments(double H)
{
    require(H > 0.0, "tau_all_moments: H > 0");
    return ScalingFunction(PiecewiseLinear::linear(H, 0.0));
}

ScalingFunction tau_finite_window(double H, double q_lo, double q_hi)
{
    require(q_lo < 0.0 && q_hi > 0.0, "tau_finite_window: requires q_lo < 0 < q_hi");
    std::vector<Vertex> v;
    std::optional<double> left;
    std::optional<double> right;
    if (std::isinf(q_lo))
        left = H;
    else
        v.push_back({q_lo, H * q_lo});
    v.push_back({0.0, 0.0});
    if (std::isinf(q_hi))
        right = H;
    else
        v.push_back({q_hi, H * q_hi});
    return ScalingFunction(PiecewiseLinear::from_vertices(std::move(v), left, right));
}

ScalingFunction tau_biscale(double H, double b, double a)
{
    check_two_scale(H, b, a);
    double const q_star = a / (b - H);
    // Hq up to the breakpoint, bq - a past it; equal at q_star.
    return ScalingFunction(PiecewiseLinear::from_vertices({{0.0, 0.0}, {q_star, H * q_star}}, H, b));
}

ScalingFunction tau_supou_finite_var(double H, double alpha)
{
    check_supou_finite_var(H, alpha);
    double const q_star = alpha / (1.0 - H);
    return ScalingFunction(PiecewiseLinear::from_vertices({{0.0, 0.0}, {q_star, H * q_star}}, std::nullopt, 1.0));
}

ScalingFunction tau_supou_inf_var(ScenarioSpec const& inf_var_case)
{
    validate(inf_var_case);
    if (auto const* c1 = std::get_if<scenario::SupOUInfVarCaseI>(&inf_var_case)) {
        double const k = 1.0 + c1->alpha;
        return ScalingFunction(PiecewiseLinear::from_vertices(
            {{0.0, 0.0}, {k, 1.0}, {c1->gamma, c1->gamma - c1->alpha}}, std::nullopt, std::nullopt));
    }
    if (auto const* c2 = std::get_if<scenario::SupOUInfVarCaseII>(&inf_var_case)) {
        double const H = 1.0 - c2->alpha / c2->beta;
        std::vector<Vertex> v{{0.0, 0.0}, {c2->beta, H * c2->beta}};
        if (c2->gamma > c2->beta)
            v.push_back({c2->gamma, c2->gamma - c2->alpha});
        return ScalingFunction(PiecewiseLinear::from_vertices(std::move(v), std::nullopt, std::nullopt));
    }
    throw std::invalid_argument("tau_supou_inf_var: expects an infinite-variance case");
}

ConjugateResult tau_star_all_moments(double H)
{
    require(H > 0.0, "tau_star_all_moments: H > 0");
    // 0 at x = H, +inf elsewhere.
    return ConjugateResult{PiecewiseLinear::point(H, 0.0), {H}, std::nullopt};
}

ConjugateResult tau_star_finite_window(double H, double q_lo, double q_hi)
{
    require(q_lo < 0.0 && q_hi > 0.0, "tau_star_finite_window: requires q_lo < 0 < q_hi");
    // q_lo (x - H) left of H, q_hi (x - H) right of H; an infinite window end
    // makes that side +inf.
    std::optional<double> left = std::isinf(q_lo) ? std::nullopt : std::optional<double>(q_lo);
    std::optional<double> right = std::isinf(q_hi) ? std::nullopt : std::optional<double>(q_hi);
    return ConjugateResult{PiecewiseLinear::from_vertices({{H, 0.0}}, left, right), {H}, std::nullopt};
}

ConjugateResult tau_star_biscale(double H, double b, double a)
{
    check_two_scale(H, b, a);
    // a/(b-H) x - aH/(b-H) on [H, b]; stored through its end values.
    return ConjugateResult{PiecewiseLinear::from_vertices({{H, 0.0}, {b, a}}, std::nullopt, std::nullopt),
                           {H, b},
                           std::nullopt};
}

ConjugateResult tau_star_supou_finite_var(double H, double alpha)
{
    check_supou_finite_var(H, alpha);
    // alpha/(1-H) x - alpha H/(1-H) on [H, 1]. Left of H only the bound
    // max{sup_{q<0}(qx - tau(q)), 0} >= 0 is known.
    return ConjugateResult{PiecewiseLinear::from_vertices({{H, 0.0}, {1.0, alpha}}, 0.0, std::nullopt),
                           {H, 1.0},
                           Interval{-kInf, H, false, false}};
}

ConjugateResult tau_star_supou_inf_var(ScenarioSpec const& inf_var_case)
{
    validate(inf_var_case);
    if (auto const* c1 = std::get_if<scenario::SupOUInfVarCaseI>(&inf_var_case)) {
        double const H = 1.0 / (1.0 + c1->alpha);
        // (1+alpha)x - 1 on [1/(1+alpha), 1], gamma(x-1) + alpha past 1.
        return ConjugateResult{
            PiecewiseLinear::from_vertices({{H, 0.0}, {1.0, c1->alpha}}, 0.0, c1->gamma),
            {H, 1.0},
            Interval{-kInf, H, false, false}};
    }
    if (auto const* c2 = std::get_if<scenario::SupOUInfVarCaseII>(&inf_var_case)) {
        double const H = 1.0 - c2->alpha / c2->beta;
        // beta x - beta + alpha on [H, 1], gamma(x-1) + alpha past 1. With
        // beta = gamma the kink at 1 disappears and only H is exposed.
        std::vector<double> exposed{H};
        if (c2->gamma > c2->beta)
            exposed.push_back(1.0);
        return ConjugateResult{PiecewiseLinear::from_vertices({{H, c2->beta * H - c2->beta + c2->alpha},
                                                               {1.0, c2->alpha}},
                                                              0.0, c2->gamma),
                               std::move(exposed),
                               Interval{-kInf, H, false, false}};
    }
    throw std::invalid_argument("tau_star_supou_inf_var: expects an infinite-variance case");
}

GaussianRateFunction gaussian_rate_function(double b_gauss, double alpha)
{
    require(b_gauss > 0.0, "gaussian_rate_function: b_gauss > 0");
    require(alpha > 0.0 && alpha < 1.0, "gaussian_rate_function: alpha must lie in (0, 1)");
    double const shape = (2.0 - alpha) * (1.0 - alpha) / std::tgamma(1.0 + alpha);
    return GaussianRateFunction{b_gauss, alpha, shape / (2.0 * b_gauss), b_gauss / shape};
}

ScalingFunction scaling_function(ScenarioSpec const& spec)
{
    validate(spec);
    return std::visit(
        overloaded{
            [](scenario::AllMomentsConverge const& s) { return tau_all_moments(s.H); },
            [](scenario::FiniteWindow const& s) { return tau_finite_window(s.H, s.q_lo, s.q_hi); },
            [](scenario::Biscale const& s) { return tau_biscale(s.H, s.b, s.a); },
            [](scenario::Triscale const& s) { return tau_biscale(s.H, s.b, s.a); },
            [](scenario::SupOUFiniteVar const& s) { return tau_supou_finite_var(s.H, s.alpha); },
            [&](scenario::SupOUInfVarCaseI const&) { return tau_supou_inf_var(spec); },
            [&](scenario::SupOUInfVarCaseII const&) { return tau_supou_inf_var(spec); },
            [](scenario::GaussianSupOU const& s) {
                // X(t) is Gaussian: moments of order q > -1 are finite.
                return tau_finite_window(1.0 - std::min(1.0, s.alpha) / 2.0, -1.0, kInf);
            },
        },
        spec);
}

ConjugateResult tau_star(ScenarioSpec const& spec)
{
    validate(spec);
    return std::visit(
        overloaded{
            [](scenario::AllMomentsConverge const& s) { return tau_star_all_moments(s.H); },
            [](scenario::FiniteWindow const& s) { return tau_star_finite_window(s.H, s.q_lo, s.q_hi); },
            [](scenario::Biscale const& s) { return tau_star_biscale(s.H, s.b, s.a); },
            [](scenario::Triscale const& s) { return tau_star_biscale(s.H, s.b, s.a); },
            [](scenario::SupOUFiniteVar const& s) { return tau_star_supou_finite_var(s.H, s.alpha); },
            [&](scenario::SupOUInfVarCaseI const&) { return tau_star_supou_inf_var(spec); },
            [&](scenario::SupOUInfVarCaseII const&) { return tau_star_supou_inf_var(spec); },
            [](scenario::GaussianSupOU const& s) {
                return tau_star_finite_window(1.0 - std::min(1.0, s.alpha) / 2.0, -1.0, kInf);
            },
        },
        spec);
}

std::pair<double, double> tau_domain_interior(ScenarioSpec const& spec)
{
    return std::visit(overloaded{
                          [](scenario::AllMomentsConverge const&) { return std::pair{-kInf, kInf}; },
                          [](scenario::FiniteWindow const& s) { return std::pair{s.q_lo, s.q_hi}; },
                          [](scenario::Biscale const&) { return std::pair{-kInf, kInf}; },
                          [](scenario::Triscale const&) { return std::pair{-kInf, kInf}; },
                          // Negative orders are unknown; only q > 0 is asserted.
                          [](scenario::SupOUFiniteVar const&) { return std::pair{0.0, kInf}; },
                          [](scenario::SupOUInfVarCaseI const& s) { return std::pair{0.0, s.gamma}; },
                          [](scenario::SupOUInfVarCaseII const& s) { return std::pair{0.0, s.gamma}; },
                          [](scenario::GaussianSupOU const&) { return std::pair{-1.0, kInf}; },
                      },
                      spec);
}

}  // namespace intermit
