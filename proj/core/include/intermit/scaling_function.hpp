#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "intermit/piecewise_linear.hpp"

namespace intermit {

/// Moment scaling function q -> tau(q).
///
/// A convex piecewise-linear function whose finite domain contains q = 0
/// with tau(0) = 0. Convexity plus the zero anchor makes q -> tau(q)/q
/// nondecreasing on the domain, so that property needs no separate check.
class ScalingFunction
{
  public:
    explicit ScalingFunction(PiecewiseLinear f);

    Extended operator()(double q) const { return f_(q); }
    PiecewiseLinear const& function() const { return f_; }

    /// Interior of D_tau = {q : tau(q) < inf}, as an open interval.
    std::pair<double, double> domain_interior() const { return {f_.lower(), f_.upper()}; }

    /// Breakpoints (kinks) of tau, in increasing order.
    std::vector<double> breakpoints() const;

  private:
    PiecewiseLinear f_;
};

/// Witness pair (p, r), p < r, with tau(p)/p < tau(r)/r.
struct IntermittencyWitness
{
    double p;
    double r;
};

/// Positive when tau(q)/q strictly increases somewhere on the finite domain.
std::optional<IntermittencyWitness> intermittency_of(ScalingFunction const& sf);

}  // namespace intermit
