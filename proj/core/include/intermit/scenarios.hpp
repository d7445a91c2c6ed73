#pragma once

#include <string>
#include <utility>
#include <variant>

#include "intermit/conjugate.hpp"
#include "intermit/scaling_function.hpp"

namespace intermit {

// Closed-form scaling functions and their conjugates. These are the
// reference values against which estimated tau and empirical decay rates
// are checked, so they are written out from the formulas and never routed
// through the generic conjugation code.

namespace scenario {

/// All moments converge: tau(q) = Hq on R.
struct AllMomentsConverge
{
    double H;
};

/// Finite moments in (q_lo, q_hi) converge; either end may be infinite.
struct FiniteWindow
{
    double H;
    double q_lo;
    double q_hi;
};

/// Independent two-point sequence t^H / t^b with P(t^b) = t^-a.
struct Biscale
{
    double H;
    double b;
    double a;
};

/// Three-point sequence with an extra middle scale t^{(H+b)/2}.
struct Triscale
{
    double H;
    double b;
    double a;
};

/// Integrated finite-variance, non-Gaussian supOU.
struct SupOUFiniteVar
{
    double H;
    double alpha;
};

/// Infinite variance, b = 0 and beta < 1 + alpha < gamma < 2.
struct SupOUInfVarCaseI
{
    double alpha;
    double beta;
    double gamma;
};

/// Infinite variance, b = 0 and 1 + alpha < beta <= gamma < 2.
struct SupOUInfVarCaseII
{
    double alpha;
    double beta;
    double gamma;
};

/// Purely Gaussian supOU with Gaussian variance b_gauss.
struct GaussianSupOU
{
    double b_gauss;
    double alpha;
};

}  // namespace scenario

using ScenarioSpec = std::variant<scenario::AllMomentsConverge,
                                  scenario::FiniteWindow,
                                  scenario::Biscale,
                                  scenario::Triscale,
                                  scenario::SupOUFiniteVar,
                                  scenario::SupOUInfVarCaseI,
                                  scenario::SupOUInfVarCaseII,
                                  scenario::GaussianSupOU>;

/// Throws std::invalid_argument when parameters violate the scenario's
/// constraints.
void validate(ScenarioSpec const& spec);
std::string scenario_name(ScenarioSpec const& spec);

ScalingFunction tau_all_moments(double H);
ScalingFunction tau_finite_window(double H, double q_lo, double q_hi);
ScalingFunction tau_biscale(double H, double b, double a);
ScalingFunction tau_supou_finite_var(double H, double alpha);
/// tau on q >= 0 for the infinite-variance cases, +inf past gamma.
ScalingFunction tau_supou_inf_var(ScenarioSpec const& inf_var_case);

ConjugateResult tau_star_all_moments(double H);
ConjugateResult tau_star_finite_window(double H, double q_lo, double q_hi);
ConjugateResult tau_star_biscale(double H, double b, double a);
ConjugateResult tau_star_supou_finite_var(double H, double alpha);
ConjugateResult tau_star_supou_inf_var(ScenarioSpec const& inf_var_case);

/// Quadratic rate function of the Gaussian supOU case together with the
/// variance of the limiting fractional Brownian motion.
struct GaussianRateFunction
{
    double b_gauss;
    double alpha;
    /// Lambda*(x) = coefficient * x^2
    double coefficient;
    /// b Gamma(1+alpha) / ((2-alpha)(1-alpha))
    double sigma_tilde_sq;

    double operator()(double x) const { return coefficient * x * x; }
};

GaussianRateFunction gaussian_rate_function(double b_gauss, double alpha);

/// Scaling function of the scenario. Gaussian supOU yields
/// (1 - min(1, alpha)/2) q on q >= 0; supOU cases are restricted to q >= 0.
ScalingFunction scaling_function(ScenarioSpec const& spec);
ConjugateResult tau_star(ScenarioSpec const& spec);

/// Open interval assumed for Int(D_tau) when locating exposed points.
std::pair<double, double> tau_domain_interior(ScenarioSpec const& spec);

}  // namespace intermit
