#include "intermit/scaling_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace intermit {

ScalingFunction::ScalingFunction(PiecewiseLinear f) : f_(std::move(f))
{
    Extended const at_zero = f_(0.0);
    if (at_zero.is_infinite())
        throw std::invalid_argument("ScalingFunction: q = 0 must lie in the finite domain");
    if (std::abs(at_zero.value()) > 1e-12)
        throw std::invalid_argument("ScalingFunction: tau(0) must be 0");
}

std::vector<double> ScalingFunction::breakpoints() const
{
    std::vector<double> out;
    for (auto const& v : f_.vertices()) {
        auto const l = f_.left_derivative(v.x);
        auto const r = f_.right_derivative(v.x);
        if (l && r && *l != *r)
            out.push_back(v.x);
    }
    return out;
}

std::optional<IntermittencyWitness> intermittency_of(ScalingFunction const& sf)
{
    auto const& f = sf.function();

    // tau(q)/q is monotone between consecutive candidates, so checking the
    // vertices, the domain ends, and one point inside each tail suffices.
    std::vector<double> candidates;
    for (auto const& v : f.vertices()) {
        if (v.x != 0.0)
            candidates.push_back(v.x);
    }
    double const lo = f.vertices().front().x;
    double const hi = f.vertices().back().x;
    if (f.left_slope())
        candidates.insert(candidates.begin(), std::min(lo, 0.0) - 1.0);
    if (f.right_slope())
        candidates.push_back(std::max(hi, 0.0) + 1.0);
    // Points adjacent to zero catch a kink at the origin.
    double const eps_left = f.lower() < 0.0 ? std::max(f.lower(), -1.0) * 0.5 : 0.0;
    double const eps_right = f.upper() > 0.0 ? std::min(f.upper(), 1.0) * 0.5 : 0.0;
    if (eps_left < 0.0)
        candidates.push_back(eps_left);
    if (eps_right > 0.0)
        candidates.push_back(eps_right);
    std::sort(candidates.begin(), candidates.end());

    double best_ratio = 0.0;
    double best_q = 0.0;
    bool have = false;
    for (double q : candidates) {
        double const ratio = f(q).value() / q;
        double const tol = 1e-12 * std::max(1.0, std::abs(ratio));
        if (have && ratio > best_ratio + tol)
            return IntermittencyWitness{best_q, q};
        // Ties move p rightwards so the witness brackets the kink tightly.
        if (!have || ratio <= best_ratio + tol) {
            best_ratio = ratio;
            best_q = q;
            have = true;
        }
    }
    return std::nullopt;
}

}  // namespace intermit
