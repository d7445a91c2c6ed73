#include "intermit/extended.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace intermit {

std::string to_token(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "NA";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw std::runtime_error("to_token: formatting failed");
    return std::string(buf, end);
}

std::string to_token(Extended e)
{
    return e.is_infinite() ? std::string("inf") : to_token(e.value());
}

Extended parse_extended(std::string const& token)
{
    if (token == "inf" || token == "+inf" || token == "Inf" || token == "INF")
        return Extended::infinity();
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    if (pos != token.size())
        throw std::invalid_argument("parse_extended: trailing characters in '" + token + "'");
    if (std::isinf(v)) {
        if (v < 0)
            throw std::invalid_argument("parse_extended: -inf is not representable");
        return Extended::infinity();
    }
    return Extended(v);
}

}  // namespace intermit
