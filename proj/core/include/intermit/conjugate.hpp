#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "intermit/extended.hpp"
#include "intermit/piecewise_linear.hpp"
#include "intermit/scaling_function.hpp"

namespace intermit {

struct Interval
{
    double lo;
    double hi;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(double x) const
    {
        bool const above = lo_closed ? x >= lo : x > lo;
        bool const below = hi_closed ? x <= hi : x < hi;
        return above && below;
    }
};

/// Legendre-Fenchel conjugate tau* together with the exposed points used by
/// the large-deviation lower bound.
struct ConjugateResult
{
    PiecewiseLinear pieces;
    std::vector<double> exposed_points;
    /// Region where `pieces` is only a lower bound on tau*, not its value.
    std::optional<Interval> lower_envelope_only;

    Extended operator()(double x) const { return pieces(x); }
    bool is_lower_envelope(double x) const
    {
        return lower_envelope_only && lower_envelope_only->contains(x);
    }
    /// Open x-intervals on which tau* = +inf.
    std::vector<Interval> infinite_regions() const;
};

/// Exact conjugate of a convex piecewise-linear function.
///
/// Segments of f map to vertices of f* (at the segment slope) and vertices
/// of f map to segments of f* (with slope equal to the vertex abscissa).
PiecewiseLinear conjugate(PiecewiseLinear const& f);

/// Exact conjugate of a scaling function, exposed points relative to the
/// interior of its finite domain.
ConjugateResult conjugate_piecewise_linear(ScalingFunction const& sf);

/// Vertices of a piecewise-linear conjugate admitting an exposing
/// hyperplane inside the open interval `d_tau_interior`.
std::vector<double> exposed_points(PiecewiseLinear const& conj, std::pair<double, double> d_tau_interior);

/// Conjugate applied twice; equals sf for closed convex input.
ScalingFunction biconjugate(ScalingFunction const& sf);

/// Function sampled on an increasing grid, +inf marking points outside the
/// finite domain.
///
/// A finite value at either end of the grid means the function continues
/// past the grid with the slope of the outermost secant; a +inf neighbour
/// means the finite domain ends there.
struct GridFunction
{
    std::vector<double> grid;
    std::vector<Extended> values;

    void validate() const;
};

GridFunction sample(PiecewiseLinear const& f, std::span<double const> grid);

/// sup over grid points q of (q x - f(q)) for each x. Directions in which
/// a continuing end makes the supremum unbounded are reported as +inf.
GridFunction conjugate_numeric(GridFunction const& f, std::span<double const> x_grid);

/// CSV with header "x,value,is_infinite"; +inf is written as "inf".
void write_csv(std::ostream& os, GridFunction const& f);
GridFunction read_grid_function_csv(std::istream& is);

}  // namespace intermit
