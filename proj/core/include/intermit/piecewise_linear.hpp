#pragma once

#include <optional>
#include <span>
#include <vector>

#include "intermit/extended.hpp"

namespace intermit {

struct Vertex
{
    double x;
    double y;
};

/// Convex piecewise-linear extended-real function on the real line.
///
/// The function is described by its vertices (x_0 < ... < x_k) joined by
/// straight segments, plus optional linear tails. A missing tail means the
/// domain is closed at the corresponding end vertex and the function is
/// +inf beyond it. At least one vertex is always stored, even for a
/// globally linear function, so the representation has an anchor.
///
/// Construction rejects nonconvex input (segment slopes must not decrease)
/// and drops vertices at which the slope does not change.
class PiecewiseLinear
{
  public:
    static PiecewiseLinear from_vertices(std::vector<Vertex> vertices,
                                         std::optional<double> left_slope,
                                         std::optional<double> right_slope);

    /// Linear function slope*x + intercept on all of R.
    static PiecewiseLinear linear(double slope, double intercept);

    /// Single finite point {x}, +inf elsewhere.
    static PiecewiseLinear point(double x, double y);

    Extended operator()(double x) const;

    std::span<Vertex const> vertices() const { return vertices_; }
    std::optional<double> left_slope() const { return left_slope_; }
    std::optional<double> right_slope() const { return right_slope_; }

    /// Left end of the finite domain (-inf when a left tail exists).
    double lower() const;
    /// Right end of the finite domain (+inf when a right tail exists).
    double upper() const;
    bool contains(double x) const { return x >= lower() && x <= upper(); }

    /// Slopes of all pieces in order: left tail, interior segments, right tail.
    std::vector<double> piece_slopes() const;

    /// One-sided derivatives at a domain point; nullopt past a closed end
    /// (the subdifferential extends to -inf / +inf there).
    std::optional<double> left_derivative(double x) const;
    std::optional<double> right_derivative(double x) const;

  private:
    PiecewiseLinear() = default;

    std::vector<Vertex> vertices_;
    std::optional<double> left_slope_;
    std::optional<double> right_slope_;
};

/// Compares domains, tail slopes, and values at every vertex of either
/// function and one point inside each tail.
bool approx_equal(PiecewiseLinear const& f, PiecewiseLinear const& g, double tol);

}  // namespace intermit
