#pragma once

#include <variant>

namespace intermit {

namespace driver {

struct None
{
};

/// Jumps arrive at rate `intensity`; each is +Exp(mean jump_mean) with
/// probability p_plus and -Exp(mean jump_mean) otherwise.
struct CompoundPoissonExp
{
    double intensity;
    double jump_mean;
    double p_plus = 0.5;
};

/// As CompoundPoissonExp with separate means for the two signs.
struct CompoundPoissonTwoSided
{
    double intensity;
    double mean_plus;
    double mean_minus;
    double p_plus = 0.5;
};

}  // namespace driver

/// Jump part of the Levy basis. Exponentially tailed jumps keep an
/// exponential moment finite; drivers are always centred so that E Y = 0.
using LevyDriverSpec = std::variant<driver::None, driver::CompoundPoissonExp, driver::CompoundPoissonTwoSided>;

/// Gamma(alpha, rate) law of the decay rate xi. Its density behaves like
/// rate^alpha x^(alpha-1) / Gamma(alpha) at the origin, giving correlation
/// (1 + u/rate)^(-alpha) for the superposition.
struct MixingSpec
{
    double alpha;
    double rate = 1.0;
};

/// (a, b, mu, pi) of the supOU process.
struct CharacteristicQuadruple
{
    double a_drift = 0.0;
    double b_gauss = 0.0;
    LevyDriverSpec levy = driver::None{};
    MixingSpec pi{0.5, 1.0};
};

/// Two-sided exponential jump law in a common form.
struct JumpLaw
{
    double intensity = 0.0;
    double mean_plus = 0.0;
    double mean_minus = 0.0;
    double p_plus = 0.5;

    double mean() const { return p_plus * mean_plus - (1.0 - p_plus) * mean_minus; }
    double second_moment() const
    {
        return 2.0 * (p_plus * mean_plus * mean_plus + (1.0 - p_plus) * mean_minus * mean_minus);
    }
};

/// Throws on negative rates or means, p_plus outside [0, 1].
JumpLaw jump_law(LevyDriverSpec const& spec);

void validate(CharacteristicQuadruple const& q);

}  // namespace intermit
