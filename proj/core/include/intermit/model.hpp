#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "intermit/levy.hpp"

namespace intermit {

enum class GaussianMethod {
    /// Sum of per-component exact OU recursions.
    Recursion,
    /// Circulant embedding of the superposed covariance given the sampled
    /// decay rates; same law, cost independent of the component count.
    Spectral,
};

namespace model {

/// X(t) = t^H w.p. 1 - t^-a, t^b w.p. t^-a, independently for every t.
struct BiscaleDet
{
    double H;
    double b;
    double a;
};

/// Adds the middle scale t^((H+b)/2) with probability t^(-a/2).
struct TriscaleDet
{
    double H;
    double b;
    double a;
};

/// X(t_n) = B_H(t_n) or B_b(t_n) according to independent switches with
/// P(U_n = 1) = t_n^-a, on the lattice t_n = n delta.
struct FbmMixture
{
    double H;
    double b;
    double a;
    double delta = 1.0;
};

struct Fbm
{
    double hurst;
    double delta = 1.0;
};

/// Integrated supOU process simulated as a finite superposition.
struct SupOU
{
    CharacteristicQuadruple quadruple;
    std::uint32_t m_components = 1000;
    double delta = 1.0;
    /// Extra simulated time discarded before t = 0; components already
    /// start in their stationary law, so 0 is exact.
    double burn_in = 0.0;
    GaussianMethod gaussian_method = GaussianMethod::Spectral;
};

/// Deterministic X(t) = t^exponent; a calibration model.
struct Power
{
    double exponent;
};

}  // namespace model

using ProcessModel =
    std::variant<model::BiscaleDet, model::TriscaleDet, model::FbmMixture, model::Fbm, model::SupOU, model::Power>;

std::string model_name(ProcessModel const& m);

/// Lattice step required by path models; nullopt for pointwise models.
std::optional<double> model_delta(ProcessModel const& m);

/// Throws std::invalid_argument on parameters outside the model's domain.
void validate(ProcessModel const& m);

/// Compact JSON descriptor, stable field order.
std::string to_json(ProcessModel const& m);
ProcessModel model_from_json(std::string const& json);

}  // namespace intermit
