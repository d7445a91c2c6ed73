#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace intermit {

/// Strictly increasing positive sample times.
///
/// `delta` is set when every time is an integer multiple of a common step,
/// which path simulators driven by a uniform lattice (fBm, supOU) need.
class TimeGrid
{
  public:
    enum class Kind { Geometric, Arithmetic, Explicit };

    static TimeGrid from_values(std::vector<double> t, std::optional<double> delta = std::nullopt);

    std::span<double const> values() const { return t_; }
    std::size_t size() const { return t_.size(); }
    double operator[](std::size_t i) const { return t_[i]; }
    double front() const { return t_.front(); }
    double back() const { return t_.back(); }
    Kind kind() const { return kind_; }
    std::optional<double> delta() const { return delta_; }

    /// Lattice step index of each time (t / delta), requires delta.
    std::vector<std::size_t> steps() const;
    /// Throws unless every t > 1 (log t appears in denominators).
    void require_rate_grid() const;

    /// Indices of the times lying in [lo, hi].
    std::vector<std::size_t> indices_in(double lo, double hi) const;

    /// Same times and lattice; how the grid was built does not matter.
    friend bool operator==(TimeGrid const& a, TimeGrid const& b) { return a.t_ == b.t_ && a.delta_ == b.delta_; }

  private:
    std::vector<double> t_;
    Kind kind_ = Kind::Explicit;
    std::optional<double> delta_;

    friend TimeGrid make_geometric_grid(double, double, std::size_t);
    friend TimeGrid make_arithmetic_grid(double, std::size_t);
    friend TimeGrid make_decade_grid(double, double, std::size_t);
};

/// t_k = t0 * ratio^k for k = 0..n-1; rejects t0 <= 1, ratio <= 1, n < 2.
TimeGrid make_geometric_grid(double t0, double ratio, std::size_t n);

/// t_n = n * delta for n = 1..count.
TimeGrid make_arithmetic_grid(double delta, std::size_t count);

/// Geometric grid from 10^lo_decade to 10^hi_decade with `per_decade`
/// points per decade, both ends included.
TimeGrid make_decade_grid(double lo_decade, double hi_decade, std::size_t per_decade);

/// Geometric-looking grid on the lattice delta*N: each time of `target` is
/// rounded to the nearest multiple of delta, duplicates are dropped.
TimeGrid snap_to_lattice(TimeGrid const& target, double delta);

}  // namespace intermit
