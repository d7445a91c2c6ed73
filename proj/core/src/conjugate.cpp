#include "intermit/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace intermit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<Interval> ConjugateResult::infinite_regions() const
{
    std::vector<Interval> out;
    if (!pieces.left_slope())
        out.push_back({-kInf, pieces.lower(), false, false});
    if (!pieces.right_slope())
        out.push_back({pieces.upper(), kInf, false, false});
    return out;
}

PiecewiseLinear conjugate(PiecewiseLinear const& f)
{
    auto const verts = f.vertices();
    auto const& first = verts.front();
    auto const& last = verts.back();

    // A single finite point conjugates to a line on all of R.
    if (verts.size() == 1 && !f.left_slope() && !f.right_slope())
        return PiecewiseLinear::linear(first.x, -first.y);

    std::vector<Vertex> out;
    auto push = [&out](double s, double value) {
        if (!out.empty() && out.back().x == s)
            return;
        out.push_back({s, value});
    };
    if (auto l = f.left_slope())
        push(*l, *l * first.x - first.y);
    for (std::size_t i = 1; i < verts.size(); ++i) {
        double const s = (verts[i].y - verts[i - 1].y) / (verts[i].x - verts[i - 1].x);
        push(s, s * verts[i - 1].x - verts[i - 1].y);
    }
    if (auto r = f.right_slope())
        push(*r, *r * last.x - last.y);

    std::optional<double> left;
    std::optional<double> right;
    if (!f.left_slope())
        left = first.x;
    if (!f.right_slope())
        right = last.x;
    return PiecewiseLinear::from_vertices(std::move(out), left, right);
}

std::vector<double> exposed_points(PiecewiseLinear const& conj, std::pair<double, double> d_tau_interior)
{
    std::vector<double> out;
    for (auto const& v : conj.vertices()) {
        double const l = conj.left_derivative(v.x).value_or(-kInf);
        double const r = conj.right_derivative(v.x).value_or(kInf);
        double const lo = std::max(l, d_tau_interior.first);
        double const hi = std::min(r, d_tau_interior.second);
        if (lo < hi)
            out.push_back(v.x);
    }
    return out;
}

ConjugateResult conjugate_piecewise_linear(ScalingFunction const& sf)
{
    PiecewiseLinear conj = conjugate(sf.function());
    auto e = exposed_points(conj, sf.domain_interior());
    return ConjugateResult{std::move(conj), std::move(e), std::nullopt};
}

ScalingFunction biconjugate(ScalingFunction const& sf)
{
    return ScalingFunction(conjugate(conjugate(sf.function())));
}

void GridFunction::validate() const
{
    if (grid.size() != values.size())
        throw std::invalid_argument("GridFunction: grid and values differ in length");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("GridFunction: grid must be strictly increasing");
    }
    auto const finite = std::count_if(values.begin(), values.end(), [](Extended e) { return e.is_finite(); });
    if (finite < 2)
        throw std::invalid_argument("GridFunction: at least 2 finite points required");
}

GridFunction sample(PiecewiseLinear const& f, std::span<double const> grid)
{
    GridFunction g;
    g.grid.assign(grid.begin(), grid.end());
    g.values.reserve(grid.size());
    for (double q : grid)
        g.values.push_back(f(q));
    return g;
}

GridFunction conjugate_numeric(GridFunction const& f, std::span<double const> x_grid)
{
    f.validate();
    std::size_t const n = f.grid.size();

    // Finite runs adjacent to the grid ends continue beyond the grid.
    std::size_t first = 0;
    while (f.values[first].is_infinite())
        ++first;
    std::size_t last = n - 1;
    while (f.values[last].is_infinite())
        --last;
    bool const open_left = first == 0 && f.values[1].is_finite();
    bool const open_right = last == n - 1 && f.values[n - 2].is_finite();
    double const left_secant = open_left ? (f.values[1].value() - f.values[0].value()) / (f.grid[1] - f.grid[0])
                                         : 0.0;
    double const right_secant = open_right ? (f.values[n - 1].value() - f.values[n - 2].value())
                                                 / (f.grid[n - 1] - f.grid[n - 2])
                                           : 0.0;

    GridFunction out;
    out.grid.assign(x_grid.begin(), x_grid.end());
    out.values.reserve(x_grid.size());
    for (double x : x_grid) {
        double const tol = 1e-12 * std::max(1.0, std::abs(x));
        if ((open_right && x > right_secant + tol) || (open_left && x < left_secant - tol)) {
            out.values.push_back(Extended::infinity());
            continue;
        }
        double best = -kInf;
        for (std::size_t j = 0; j < n; ++j) {
            if (f.values[j].is_infinite())
                continue;
            best = std::max(best, f.grid[j] * x - f.values[j].value());
        }
        out.values.push_back(best);
    }
    return out;
}

void write_csv(std::ostream& os, GridFunction const& f)
{
    os << "x,value,is_infinite\n";
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        os << to_token(f.grid[i]) << ',' << to_token(f.values[i]) << ','
           << (f.values[i].is_infinite() ? 1 : 0) << '\n';
    }
}

GridFunction read_grid_function_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("grid function CSV: empty input");
    GridFunction g;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string x, v;
        std::getline(ss, x, ',');
        std::getline(ss, v, ',');
        g.grid.push_back(std::stod(x));
        g.values.push_back(parse_extended(v));
    }
    return g;
}

}  // namespace intermit
