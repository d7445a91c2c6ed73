#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace intermit {

/// Real number or +infinity. Infinity is a tag, never a large float.
///
/// Only +inf is representable: every function handled here (scaling
/// functions, their conjugates, rate functions) is bounded below.
class Extended
{
  public:
    constexpr Extended() = default;
    constexpr Extended(double value) : value_(value) {}  // NOLINT: implicit on purpose

    static constexpr Extended infinity()
    {
        Extended e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; throws when called on +inf.
    double value() const
    {
        if (infinite_)
            throw std::domain_error("Extended::value() called on +inf");
        return value_;
    }

    friend constexpr Extended operator+(Extended a, Extended b)
    {
        if (a.infinite_ || b.infinite_)
            return infinity();
        return Extended(a.value_ + b.value_);
    }

    friend constexpr Extended operator-(Extended a, double b)
    {
        if (a.infinite_)
            return infinity();
        return Extended(a.value_ - b);
    }

    /// Scaling by a nonnegative factor; 0 * inf is rejected.
    friend Extended operator*(double c, Extended a)
    {
        if (c < 0.0)
            throw std::domain_error("Extended: negative scaling of +inf is not representable");
        if (a.infinite_) {
            if (c == 0.0)
                throw std::domain_error("Extended: 0 * inf is undefined");
            return infinity();
        }
        return Extended(c * a.value_);
    }

    friend constexpr bool operator==(Extended a, Extended b)
    {
        if (a.infinite_ || b.infinite_)
            return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    friend constexpr std::partial_ordering operator<=>(Extended a, Extended b)
    {
        if (a.infinite_ && b.infinite_)
            return std::partial_ordering::equivalent;
        if (a.infinite_)
            return std::partial_ordering::greater;
        if (b.infinite_)
            return std::partial_ordering::less;
        return a.value_ <=> b.value_;
    }

  private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// CSV token: "inf" for +inf, shortest round-trip decimal otherwise.
std::string to_token(Extended e);
std::string to_token(double v);

/// Parses "inf"/"+inf"/"Inf" or a decimal number.
Extended parse_extended(std::string const& token);

}  // namespace intermit
