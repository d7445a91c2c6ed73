#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intermit/conjugate.hpp"
#include "intermit/ensemble.hpp"
#include "intermit/scenarios.hpp"

namespace intermit {

/// R(t) = log|X(t)| / log t per replication; zeros are counted, not mapped.
struct RateSample
{
    double t;
    std::vector<double> values;
    std::size_t zero_count = 0;
    std::size_t n_reps = 0;
};

RateSample rate_of_growth(PathEnsemble const& e, std::size_t t_index);

/// Fraction of replications with R(t) in A at one time.
struct DecayPoint
{
    double t;
    std::size_t count;
    std::size_t n_reps;
    double p_hat;
    /// log(p_hat) / log t, or log(3 / n) / log t when count = 0.
    double rho_hat;
    /// Delta-method standard error of log p_hat; 0 when count = 0.
    double log_p_se;
    bool one_sided;
};

struct DecayRate
{
    std::vector<DecayPoint> per_t;
    /// Slope of log p_hat on log t over the extrapolation window.
    double rho = 0.0;
    double rho_se = 0.0;
    double intercept = 0.0;
    /// All counts zero: `rho` is the tightest rule-of-three upper limit.
    bool one_sided = false;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

/// Per-t decay of P(R(t) in A) and its extrapolated exponent, using
/// inverse-variance weighted regression of log p_hat = c + rho log t over
/// the last `window_decades` decades. Cells with zero counts carry only the
/// rule-of-three bound 3/n and are left out of the regression.
DecayRate empirical_decay_rate(PathEnsemble const& e, Interval const& A, std::span<std::size_t const> t_indices,
                               double window_decades = 2.0);

enum class Verdict { Pass, Fail, Indeterminate };

std::string to_string(Verdict v);

struct LdpReport
{
    std::string scenario;
    Interval A;
    DecayRate decay;
    /// -inf over Int(A) intersected with E of tau*; nullopt when empty
    /// (no finite lower bound).
    std::optional<double> lower_bound;
    /// -inf over cl(A) of tau*; -inf when tau* is +inf on cl(A).
    double upper_bound;
    double slack;
    /// Only the lower side is checked because cl(A) meets a region where
    /// tau* is known only through a lower envelope.
    bool one_sided_check = false;
    Verdict verdict = Verdict::Indeterminate;
    std::string reason;
};

/// Smallest value of tau* over an interval (open ends are treated through
/// the closure, which leaves the infimum unchanged for a convex lsc
/// function that is finite around the end). Returns +inf when the interval
/// misses the finite domain.
Extended infimum_over(ConjugateResult const& cr, Interval const& A);

/// Empirical exponent checked against the exposed-point sandwich.
/// slack defaults to 3 * regression standard error + 0.02.
LdpReport verify_sandwich(PathEnsemble const& e, ScenarioSpec const& scenario, Interval const& A,
                          std::span<std::size_t const> t_indices, std::optional<double> slack = std::nullopt,
                          double window_decades = 2.0);

void write_json(std::ostream& os, LdpReport const& r);
void write_csv(std::ostream& os, LdpReport const& r);

}  // namespace intermit
