#include "intermit/ensemble_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "intermit/extended.hpp"
#include "json.hpp"

namespace intermit {
namespace {

constexpr char kMagic[] = "INTERMIT-ENSEMBLE";

std::vector<unsigned char> payload_bytes(std::span<double const> values)
{
    std::vector<unsigned char> out(values.size() * 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto bits = std::bit_cast<std::uint64_t>(values[i]);
        for (int b = 0; b < 8; ++b)
            out[i * 8 + b] = static_cast<unsigned char>(bits >> (8 * b));
    }
    return out;
}

nlohmann::ordered_json header(PathEnsemble const& e, std::uint64_t checksum)
{
    nlohmann::ordered_json grid;
    grid["t"] = std::vector<double>(e.grid().values().begin(), e.grid().values().end());
    if (e.grid().delta())
        grid["delta"] = *e.grid().delta();
    else
        grid["delta"] = nullptr;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(checksum));
    return nlohmann::ordered_json{{"format_version", kEnsembleFormatVersion},
                                  {"model", nlohmann::ordered_json::parse(to_json(e.model()))},
                                  {"grid", grid},
                                  {"seed", e.seed()},
                                  {"n_reps", e.n_reps()},
                                  {"layout", "column_major_f64_le"},
                                  {"checksum", std::string("fnv1a64:") + hex}};
}

}  // namespace

std::uint64_t fnv1a64(std::span<unsigned char const> bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string ensemble_header_json(PathEnsemble const& e)
{
    auto const bytes = payload_bytes(e.raw());
    return header(e, fnv1a64(bytes)).dump();
}

void write_ensemble(std::ostream& os, PathEnsemble const& e)
{
    auto const bytes = payload_bytes(e.raw());
    os << kMagic << '\n' << header(e, fnv1a64(bytes)).dump() << '\n';
    os.write(reinterpret_cast<char const*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os)
        throw std::runtime_error("write_ensemble: stream error");
}

PathEnsemble read_ensemble(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kMagic)
        throw std::runtime_error("read_ensemble: not an ensemble file");
    if (!std::getline(is, line))
        throw std::runtime_error("read_ensemble: missing header");
    auto const h = nlohmann::ordered_json::parse(line);
    if (h.at("format_version").get<int>() != kEnsembleFormatVersion)
        throw std::runtime_error("read_ensemble: unsupported format_version");

    auto t = h.at("grid").at("t").get<std::vector<double>>();
    std::optional<double> delta;
    if (!h.at("grid").at("delta").is_null())
        delta = h.at("grid").at("delta").get<double>();
    PathEnsemble e(model_from_json(h.at("model").dump()), TimeGrid::from_values(std::move(t), delta),
                   h.at("seed").get<std::uint64_t>(), h.at("n_reps").get<std::size_t>());

    std::vector<unsigned char> bytes(e.raw().size() * 8);
    is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(is.gcount()) != bytes.size())
        throw ChecksumError("read_ensemble: truncated payload");
    if (is.peek() != std::char_traits<char>::eof())
        throw ChecksumError("read_ensemble: trailing bytes after payload");

    auto const expected = h.at("checksum").get<std::string>();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    if (expected != std::string("fnv1a64:") + hex)
        throw ChecksumError("read_ensemble: checksum mismatch (file corrupted)");

    auto raw = e.raw();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
        raw[i] = std::bit_cast<double>(bits);
    }
    return e;
}

void save_ensemble(std::filesystem::path const& path, PathEnsemble const& e)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_ensemble(os, e);
}

PathEnsemble load_ensemble(std::filesystem::path const& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open " + path.string());
    return read_ensemble(is);
}

void write_ensemble_csv(std::ostream& os, PathEnsemble const& e)
{
    os << "replication";
    for (double t : e.grid().values())
        os << ',' << to_token(t);
    os << '\n';
    for (std::size_t r = 0; r < e.n_reps(); ++r) {
        os << r;
        for (std::size_t j = 0; j < e.grid().size(); ++j)
            os << ',' << to_token(e.at(r, j));
        os << '\n';
    }
}

}  // namespace intermit
