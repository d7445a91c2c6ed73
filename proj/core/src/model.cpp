#include "intermit/model.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace intermit {
namespace {

using nlohmann::ordered_json;

template<class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, std::string const& what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

void check_scales(char const* name, double H, double b, double a)
{
    require(H > 0.0 && H < b, std::string(name) + ": requires 0 < H < b");
    require(a > 0.0, std::string(name) + ": requires a > 0");
}

ordered_json driver_json(LevyDriverSpec const& d)
{
    return std::visit(overloaded{
                          [](driver::None const&) { return ordered_json{{"type", "none"}}; },
                          [](driver::CompoundPoissonExp const& c) {
                              return ordered_json{{"type", "cp_exp"},
                                                  {"intensity", c.intensity},
                                                  {"jump_mean", c.jump_mean},
                                                  {"p_plus", c.p_plus}};
                          },
                          [](driver::CompoundPoissonTwoSided const& c) {
                              return ordered_json{{"type", "cp_two_sided"},
                                                  {"intensity", c.intensity},
                                                  {"mean_plus", c.mean_plus},
                                                  {"mean_minus", c.mean_minus},
                                                  {"p_plus", c.p_plus}};
                          },
                      },
                      d);
}

LevyDriverSpec driver_from(ordered_json const& j)
{
    auto const type = j.at("type").get<std::string>();
    if (type == "none")
        return driver::None{};
    if (type == "cp_exp")
        return driver::CompoundPoissonExp{j.at("intensity"), j.at("jump_mean"), j.at("p_plus")};
    if (type == "cp_two_sided")
        return driver::CompoundPoissonTwoSided{j.at("intensity"), j.at("mean_plus"), j.at("mean_minus"),
                                               j.at("p_plus")};
    throw std::invalid_argument("unknown driver type: " + type);
}

}  // namespace

JumpLaw jump_law(LevyDriverSpec const& spec)
{
    JumpLaw law = std::visit(overloaded{
                                 [](driver::None const&) { return JumpLaw{}; },
                                 [](driver::CompoundPoissonExp const& c) {
                                     return JumpLaw{c.intensity, c.jump_mean, c.jump_mean, c.p_plus};
                                 },
                                 [](driver::CompoundPoissonTwoSided const& c) {
                                     return JumpLaw{c.intensity, c.mean_plus, c.mean_minus, c.p_plus};
                                 },
                             },
                             spec);
    require(law.intensity >= 0.0 && std::isfinite(law.intensity), "driver: intensity must be >= 0");
    require(law.mean_plus >= 0.0 && law.mean_minus >= 0.0, "driver: jump means must be >= 0");
    require(law.p_plus >= 0.0 && law.p_plus <= 1.0, "driver: p_plus must lie in [0, 1]");
    return law;
}

void validate(CharacteristicQuadruple const& q)
{
    require(q.b_gauss >= 0.0, "quadruple: b_gauss must be >= 0");
    // A nonzero drift gives E Y = a E[1/xi], infinite for alpha <= 1.
    require(q.a_drift == 0.0, "quadruple: only centred bases are simulated (a_drift = 0)");
    JumpLaw const law = jump_law(q.levy);
    require(q.b_gauss > 0.0 || (law.intensity > 0.0 && law.second_moment() > 0.0),
            "quadruple: need a Gaussian part or a nontrivial jump part");
    require(q.pi.alpha > 0.0 && q.pi.rate > 0.0, "quadruple: mixing alpha and rate must be positive");
}

std::string model_name(ProcessModel const& m)
{
    return std::visit(overloaded{
                          [](model::BiscaleDet const&) { return std::string("biscale_det"); },
                          [](model::TriscaleDet const&) { return std::string("triscale_det"); },
                          [](model::FbmMixture const&) { return std::string("fbm_mixture"); },
                          [](model::Fbm const&) { return std::string("fbm"); },
                          [](model::SupOU const&) { return std::string("supou"); },
                          [](model::Power const&) { return std::string("power"); },
                      },
                      m);
}

std::optional<double> model_delta(ProcessModel const& m)
{
    return std::visit(overloaded{
                          [](model::FbmMixture const& x) { return std::optional<double>(x.delta); },
                          [](model::Fbm const& x) { return std::optional<double>(x.delta); },
                          [](model::SupOU const& x) { return std::optional<double>(x.delta); },
                          [](auto const&) { return std::optional<double>(); },
                      },
                      m);
}

void validate(ProcessModel const& m)
{
    std::visit(overloaded{
                   [](model::BiscaleDet const& x) { check_scales("biscale_det", x.H, x.b, x.a); },
                   [](model::TriscaleDet const& x) { check_scales("triscale_det", x.H, x.b, x.a); },
                   [](model::FbmMixture const& x) {
                       check_scales("fbm_mixture", x.H, x.b, x.a);
                       require(x.b < 1.0, "fbm_mixture: Hurst parameters must lie in (0, 1)");
                       require(x.delta > 0.0, "fbm_mixture: delta must be positive");
                   },
                   [](model::Fbm const& x) {
                       require(x.hurst > 0.0 && x.hurst < 1.0, "fbm: hurst must lie in (0, 1)");
                       require(x.delta > 0.0, "fbm: delta must be positive");
                   },
                   [](model::SupOU const& x) {
                       validate(x.quadruple);
                       require(x.m_components >= 1, "supou: m_components must be >= 1");
                       require(x.delta > 0.0, "supou: delta must be positive");
                       require(x.burn_in >= 0.0, "supou: burn_in must be >= 0");
                   },
                   [](model::Power const& x) { require(std::isfinite(x.exponent), "power: exponent must be finite"); },
               },
               m);
}

std::string to_json(ProcessModel const& m)
{
    ordered_json j = std::visit(
        overloaded{
            [](model::BiscaleDet const& x) {
                return ordered_json{{"type", "biscale_det"}, {"H", x.H}, {"b", x.b}, {"a", x.a}};
            },
            [](model::TriscaleDet const& x) {
                return ordered_json{{"type", "triscale_det"}, {"H", x.H}, {"b", x.b}, {"a", x.a}};
            },
            [](model::FbmMixture const& x) {
                return ordered_json{{"type", "fbm_mixture"}, {"H", x.H}, {"b", x.b}, {"a", x.a}, {"delta", x.delta}};
            },
            [](model::Fbm const& x) { return ordered_json{{"type", "fbm"}, {"hurst", x.hurst}, {"delta", x.delta}}; },
            [](model::SupOU const& x) {
                return ordered_json{
                    {"type", "supou"},
                    {"a_drift", x.quadruple.a_drift},
                    {"b_gauss", x.quadruple.b_gauss},
                    {"levy", driver_json(x.quadruple.levy)},
                    {"mixing", {{"family", "gamma"}, {"alpha", x.quadruple.pi.alpha}, {"rate", x.quadruple.pi.rate}}},
                    {"m_components", x.m_components},
                    {"delta", x.delta},
                    {"burn_in", x.burn_in},
                    {"gaussian_method", x.gaussian_method == GaussianMethod::Spectral ? "spectral" : "recursion"}};
            },
            [](model::Power const& x) { return ordered_json{{"type", "power"}, {"exponent", x.exponent}}; },
        },
        m);
    return j.dump();
}

ProcessModel model_from_json(std::string const& text)
{
    auto const j = ordered_json::parse(text);
    auto const type = j.at("type").get<std::string>();
    ProcessModel m;
    if (type == "biscale_det") {
        m = model::BiscaleDet{j.at("H"), j.at("b"), j.at("a")};
    } else if (type == "triscale_det") {
        m = model::TriscaleDet{j.at("H"), j.at("b"), j.at("a")};
    } else if (type == "fbm_mixture") {
        m = model::FbmMixture{j.at("H"), j.at("b"), j.at("a"), j.at("delta")};
    } else if (type == "fbm") {
        m = model::Fbm{j.at("hurst"), j.at("delta")};
    } else if (type == "supou") {
        model::SupOU s;
        s.quadruple.a_drift = j.at("a_drift");
        s.quadruple.b_gauss = j.at("b_gauss");
        s.quadruple.levy = driver_from(j.at("levy"));
        s.quadruple.pi = MixingSpec{j.at("mixing").at("alpha"), j.at("mixing").at("rate")};
        s.m_components = j.at("m_components");
        s.delta = j.at("delta");
        s.burn_in = j.at("burn_in");
        s.gaussian_method = j.at("gaussian_method") == "spectral" ? GaussianMethod::Spectral : GaussianMethod::Recursion;
        m = s;
    } else if (type == "power") {
        m = model::Power{j.at("exponent")};
    } else {
        throw std::invalid_argument("unknown model type: " + type);
    }
    validate(m);
    return m;
}

}  // namespace intermit
