// Channel files (format_version 1) and CLI reports.
//
//   {
//     "format_version": 1,
//     "dims": {"dA": 2, "dB": 2}            or {"din": 2, "dout": 4},
//     "repr": "choi" | "kraus",
//     "data": <matrix> | [<matrix>, ...],   matrix = rows of [re, im] pairs
//     "metadata": {"name": "...", "seed": 7, "picture": "heisenberg"}
//   }
//
// Bipartite dims mean din = dout = dA·dB. Choi and Kraus data follow the
// library conventions (qmap.hpp). With picture "schrodinger" the data
// describe the trace dual, i.e. the loader returns dual() of the stored map.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "semiloc/causality.hpp"
#include "semiloc/factorize.hpp"

namespace semiloc {

/// Parse or validation failure; the message names the line or field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Repr { kChoi, kKraus };
enum class Picture { kHeisenberg, kSchrodinger };

struct ChannelMetadata {
  std::string name;
  std::optional<std::uint64_t> seed;
  Picture picture = Picture::kHeisenberg;
};

struct ChannelFile {
  std::optional<BipartiteDims> bipartite;
  CpMap map;  // Heisenberg-picture operation
  Repr repr = Repr::kChoi;
  ChannelMetadata metadata;

  BipartiteMap as_bipartite() const;
};

ChannelFile parse_channel(std::string_view text, double tol = kRankTol);
ChannelFile read_channel_file(const std::filesystem::path& path, double tol = kRankTol);

/// Serialized text, one matrix row per line, trailing newline. Metadata
/// picture is always written as "heisenberg".
std::string format_channel(const CpMap& map, const std::optional<BipartiteDims>& bipartite,
                           Repr repr, const ChannelMetadata& metadata);

void write_text_file(const std::filesystem::path& path, const std::string& text);

nlohmann::json verdict_to_json(const CausalityVerdict& v);
nlohmann::json verification_to_json(const VerificationReport& r);

}  // namespace semiloc
