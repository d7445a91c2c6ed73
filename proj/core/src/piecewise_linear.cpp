#include "intermit/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace intermit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double slope_tol(double a, double b)
{
    return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

PiecewiseLinear PiecewiseLinear::from_vertices(std::vector<Vertex> vertices,
                                               std::optional<double> left_slope,
                                               std::optional<double> right_slope)
{
    if (vertices.empty())
        throw std::invalid_argument("PiecewiseLinear: at least one vertex required");
    for (auto const& v : vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw std::invalid_argument("PiecewiseLinear: vertices must be finite");
    }
    if ((left_slope && !std::isfinite(*left_slope)) || (right_slope && !std::isfinite(*right_slope)))
        throw std::invalid_argument("PiecewiseLinear: tail slopes must be finite");
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (!(vertices[i].x > vertices[i - 1].x))
            throw std::invalid_argument("PiecewiseLinear: vertex abscissae must be strictly increasing");
    }

    // Slopes of every piece, tails included, must be nondecreasing.
    std::vector<double> slopes;
    if (left_slope)
        slopes.push_back(*left_slope);
    for (std::size_t i = 1; i < vertices.size(); ++i)
        slopes.push_back((vertices[i].y - vertices[i - 1].y) / (vertices[i].x - vertices[i - 1].x));
    if (right_slope)
        slopes.push_back(*right_slope);
    for (std::size_t i = 1; i < slopes.size(); ++i) {
        if (slopes[i] < slopes[i - 1] - slope_tol(slopes[i], slopes[i - 1]))
            throw std::invalid_argument("PiecewiseLinear: input is not convex (slopes decrease)");
    }

    // Drop interior (and tail-adjacent) vertices without a slope change.
    std::vector<Vertex> kept;
    kept.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::optional<double> before = i > 0 ? std::optional<double>((vertices[i].y - vertices[i - 1].y)
                                                                     / (vertices[i].x - vertices[i - 1].x))
                                             : left_slope;
        std::optional<double> after = i + 1 < vertices.size()
                                          ? std::optional<double>((vertices[i + 1].y - vertices[i].y)
                                                                  / (vertices[i + 1].x - vertices[i].x))
                                          : right_slope;
        bool const redundant = before && after && std::abs(*after - *before) <= slope_tol(*after, *before);
        if (!redundant)
            kept.push_back(vertices[i]);
    }
    if (kept.empty())
        kept.push_back(vertices.front());

    PiecewiseLinear f;
    f.vertices_ = std::move(kept);
    f.left_slope_ = left_slope;
    f.right_slope_ = right_slope;
    return f;
}

PiecewiseLinear PiecewiseLinear::linear(double slope, double intercept)
{
    return from_vertices({{0.0, intercept}}, slope, slope);
}

PiecewiseLinear PiecewiseLinear::point(double x, double y)
{
    return from_vertices({{x, y}}, std::nullopt, std::nullopt);
}

double PiecewiseLinear::lower() const
{
    return left_slope_ ? -kInf : vertices_.front().x;
}

double PiecewiseLinear::upper() const
{
    return right_slope_ ? kInf : vertices_.back().x;
}

Extended PiecewiseLinear::operator()(double x) const
{
    if (std::isnan(x))
        throw std::invalid_argument("PiecewiseLinear: NaN argument");
    if (!contains(x))
        return Extended::infinity();
    auto const& first = vertices_.front();
    auto const& last = vertices_.back();
    if (x <= first.x)
        return x == first.x ? first.y : first.y + *left_slope_ * (x - first.x);
    if (x >= last.x)
        return x == last.x ? last.y : last.y + *right_slope_ * (x - last.x);
    // Interior: locate the segment. At a vertex the left piece is used,
    // which gives the vertex value exactly.
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x,
                               [](Vertex const& v, double value) { return v.x < value; });
    if (it->x == x)
        return it->y;
    auto const& hi = *it;
    auto const& lo = *(it - 1);
    double const w = (x - lo.x) / (hi.x - lo.x);
    return lo.y + w * (hi.y - lo.y);
}

std::vector<double> PiecewiseLinear::piece_slopes() const
{
    std::vector<double> s;
    if (left_slope_)
        s.push_back(*left_slope_);
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        s.push_back((vertices_[i].y - vertices_[i - 1].y) / (vertices_[i].x - vertices_[i - 1].x));
    if (right_slope_)
        s.push_back(*right_slope_);
    return s;
}

std::optional<double> PiecewiseLinear::left_derivative(double x) const
{
    if (!contains(x))
        throw std::domain_error("left_derivative: point outside the finite domain");
    if (x == lower())
        return std::nullopt;
    if (x <= vertices_.front().x)
        return left_slope_;
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (x <= vertices_[i].x)
            return (vertices_[i].y - vertices_[i - 1].y) / (vertices_[i].x - vertices_[i - 1].x);
    }
    return right_slope_;
}

std::optional<double> PiecewiseLinear::right_derivative(double x) const
{
    if (!contains(x))
        throw std::domain_error("right_derivative: point outside the finite domain");
    if (x == upper())
        return std::nullopt;
    if (x < vertices_.front().x)
        return left_slope_;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
        if (x < vertices_[i + 1].x)
            return (vertices_[i + 1].y - vertices_[i].y) / (vertices_[i + 1].x - vertices_[i].x);
    }
    return right_slope_;
}

bool approx_equal(PiecewiseLinear const& f, PiecewiseLinear const& g, double tol)
{
    auto same_end = [tol](double a, double b) {
        if (std::isinf(a) || std::isinf(b))
            return a == b;
        return std::abs(a - b) <= tol;
    };
    if (!same_end(f.lower(), g.lower()) || !same_end(f.upper(), g.upper()))
        return false;
    auto same_slope = [tol](std::optional<double> a, std::optional<double> b) {
        if (a.has_value() != b.has_value())
            return false;
        return !a || std::abs(*a - *b) <= tol;
    };
    if (!same_slope(f.left_slope(), g.left_slope()) || !same_slope(f.right_slope(), g.right_slope()))
        return false;

    std::vector<double> probes;
    for (auto const& v : f.vertices())
        probes.push_back(v.x);
    for (auto const& v : g.vertices())
        probes.push_back(v.x);
    double const lo = *std::min_element(probes.begin(), probes.end());
    double const hi = *std::max_element(probes.begin(), probes.end());
    if (f.left_slope())
        probes.push_back(lo - 1.0);
    if (f.right_slope())
        probes.push_back(hi + 1.0);
    for (double x : probes) {
        // Probes may sit a rounding error outside a closed end.
        double const xf = std::clamp(x, f.lower(), f.upper());
        double const xg = std::clamp(x, g.lower(), g.upper());
        Extended const a = f(xf);
        Extended const b = g(xg);
        if (a.is_infinite() != b.is_infinite())
            return false;
        if (a.is_finite() && std::abs(a.value() - b.value()) > tol)
            return false;
    }
    return true;
}

}  // namespace intermit
