#include "intermit/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace intermit {

TimeGrid TimeGrid::from_values(std::vector<double> t, std::optional<double> delta)
{
    if (t.empty())
        throw std::invalid_argument("TimeGrid: empty");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || t[i] <= 0.0)
            throw std::invalid_argument("TimeGrid: times must be positive and finite");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw std::invalid_argument("TimeGrid: times must be strictly increasing");
    }
    if (delta) {
        if (!(*delta > 0.0))
            throw std::invalid_argument("TimeGrid: delta must be positive");
        for (double v : t) {
            double const k = v / *delta;
            if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k))
                throw std::invalid_argument("TimeGrid: time is not a multiple of delta");
        }
    }
    TimeGrid g;
    g.t_ = std::move(t);
    g.delta_ = delta;
    return g;
}

std::vector<std::size_t> TimeGrid::steps() const
{
    if (!delta_)
        throw std::logic_error("TimeGrid: no lattice step");
    std::vector<std::size_t> out;
    out.reserve(t_.size());
    for (double v : t_)
        out.push_back(static_cast<std::size_t>(std::llround(v / *delta_)));
    return out;
}

void TimeGrid::require_rate_grid() const
{
    if (!(t_.front() > 1.0))
        throw std::invalid_argument("TimeGrid: rate-of-growth statistics need all t > 1");
}

std::vector<std::size_t> TimeGrid::indices_in(double lo, double hi) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i] >= lo && t_[i] <= hi)
            out.push_back(i);
    }
    return out;
}

TimeGrid make_geometric_grid(double t0, double ratio, std::size_t n)
{
    if (!(t0 > 1.0))
        throw std::invalid_argument("make_geometric_grid: t0 must exceed 1");
    if (!(ratio > 1.0))
        throw std::invalid_argument("make_geometric_grid: ratio must exceed 1");
    if (n < 2)
        throw std::invalid_argument("make_geometric_grid: need at least 2 points");
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = t0 * std::pow(ratio, static_cast<double>(k));
    TimeGrid g = TimeGrid::from_values(std::move(t));
    g.kind_ = TimeGrid::Kind::Geometric;
    return g;
}

TimeGrid make_arithmetic_grid(double delta, std::size_t count)
{
    if (!(delta > 0.0))
        throw std::invalid_argument("make_arithmetic_grid: delta must be positive");
    if (count < 1)
        throw std::invalid_argument("make_arithmetic_grid: empty grid");
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k)
        t[k] = static_cast<double>(k + 1) * delta;
    TimeGrid g = TimeGrid::from_values(std::move(t), delta);
    g.kind_ = TimeGrid::Kind::Arithmetic;
    return g;
}

TimeGrid make_decade_grid(double lo_decade, double hi_decade, std::size_t per_decade)
{
    if (per_decade < 1 || !(hi_decade > lo_decade))
        throw std::invalid_argument("make_decade_grid: bad range");
    auto const n = static_cast<std::size_t>(std::llround((hi_decade - lo_decade) * per_decade)) + 1;
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = std::pow(10.0, lo_decade + static_cast<double>(k) / static_cast<double>(per_decade));
    // Exact decades where they fall on the grid.
    for (double& v : t) {
        double const r = std::round(std::log10(v));
        if (std::abs(std::log10(v) - r) < 1e-12)
            v = std::pow(10.0, r);
    }
    TimeGrid g = TimeGrid::from_values(std::move(t));
    g.kind_ = TimeGrid::Kind::Geometric;
    return g;
}

TimeGrid snap_to_lattice(TimeGrid const& target, double delta)
{
    std::vector<double> t;
    for (double v : target.values()) {
        double const k = std::max(1.0, std::round(v / delta));
        double const s = k * delta;
        if (t.empty() || s > t.back())
            t.push_back(s);
    }
    return TimeGrid::from_values(std::move(t), delta);
}

}  // namespace intermit
