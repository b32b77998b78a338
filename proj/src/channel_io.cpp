#include "semiloc/channel_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace semiloc {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw SchemaError(field + ": " + what);
}

Index positive_int(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) fail(path + "/" + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    fail(path + "/" + key, "expected a positive integer, got " + v.dump());
  }
  return static_cast<Index>(v.get<long long>());
}

Matrix parse_matrix(const json& j, Index rows, Index cols, const std::string& path) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    fail(path, "expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rpath = path + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      fail(rpath, "expected " + std::to_string(cols) + " entries");
    }
    for (Index c = 0; c < cols; ++c) {
      const json& entry = row[static_cast<std::size_t>(c)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        fail(rpath + "/" + std::to_string(c), "expected [re, im] pair, got " + entry.dump());
      }
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  if (!m.allFinite()) fail(path, "non-finite entry");
  return m;
}

std::string number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  return json(x).dump();
}

void append_matrix(std::ostringstream& os, const Matrix& m, const std::string& indent) {
  os << "[\n";
  for (Index r = 0; r < m.rows(); ++r) {
    os << indent << "  [";
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ", ";
      os << '[' << number(m(r, c).real()) << ", " << number(m(r, c).imag()) << ']';
    }
    os << ']' << (r + 1 < m.rows() ? ",\n" : "\n");
  }
  os << indent << ']';
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

BipartiteMap ChannelFile::as_bipartite() const {
  if (!bipartite) throw SchemaError("/dims: bipartite dims {dA, dB} required");
  return {*bipartite, map};
}

ChannelFile parse_channel(std::string_view text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) fail("/", "expected a JSON object");

  if (!doc.contains("format_version") || doc["format_version"] != 1) {
    fail("/format_version", "expected 1");
  }

  if (!doc.contains("dims") || !doc["dims"].is_object()) fail("/dims", "missing or not an object");
  const json& dims = doc["dims"];
  std::optional<BipartiteDims> bipartite;
  Index din = 0;
  Index dout = 0;
  if (dims.contains("dA") || dims.contains("dB")) {
    bipartite = BipartiteDims{positive_int(dims, "dA", "/dims"), positive_int(dims, "dB", "/dims")};
    din = dout = bipartite->total();
  } else {
    din = positive_int(dims, "din", "/dims");
    dout = positive_int(dims, "dout", "/dims");
  }

  ChannelMetadata meta;
  if (doc.contains("metadata")) {
    const json& md = doc["metadata"];
    if (!md.is_object()) fail("/metadata", "expected an object");
    if (md.contains("name")) {
      if (!md["name"].is_string()) fail("/metadata/name", "expected a string");
      meta.name = md["name"].get<std::string>();
    }
    if (md.contains("seed")) {
      if (!md["seed"].is_number_unsigned()) fail("/metadata/seed", "expected an unsigned integer");
      meta.seed = md["seed"].get<std::uint64_t>();
    }
    if (md.contains("picture")) {
      const json& p = md["picture"];
      if (p == "heisenberg") {
        meta.picture = Picture::kHeisenberg;
      } else if (p == "schrodinger") {
        meta.picture = Picture::kSchrodinger;
      } else {
        fail("/metadata/picture", "expected \"heisenberg\" or \"schrodinger\", got " + p.dump());
      }
    }
  }

  if (!doc.contains("repr") || !doc["repr"].is_string()) fail("/repr", "missing or not a string");
  const std::string repr = doc["repr"].get<std::string>();
  if (!doc.contains("data")) fail("/data", "missing");
  const json& data = doc["data"];

  // For Schrödinger-picture files dims describe the stored (dual) map.
  Repr kind;
  std::optional<CpMap> stored;
  if (repr == "choi") {
    kind = Repr::kChoi;
    const Matrix choi = parse_matrix(data, din * dout, din * dout, "/data");
    try {
      stored = CpMap::from_choi(din, dout, choi, tol);
    } catch (const std::logic_error& e) {
      fail("/data", e.what());
    }
  } else if (repr == "kraus") {
    kind = Repr::kKraus;
    if (!data.is_array() || data.empty()) fail("/data", "expected a non-empty list of Kraus operators");
    KrausSet k{din, dout, {}};
    for (std::size_t a = 0; a < data.size(); ++a) {
      k.operators.push_back(parse_matrix(data[a], dout, din, "/data/" + std::to_string(a)));
    }
    stored = choi_from_kraus(k);
  } else {
    fail("/repr", "expected \"choi\" or \"kraus\", got \"" + repr + "\"");
  }

  CpMap op = meta.picture == Picture::kSchrodinger ? dual(*stored) : *stored;
  if (!is_subunital(op, std::max(tol, 1e-8))) fail("/data", "operation violates E(1) <= 1");
  return {bipartite, std::move(op), kind, std::move(meta)};
}

ChannelFile read_channel_file(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_channel(buf.str(), tol);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string format_channel(const CpMap& map, const std::optional<BipartiteDims>& bipartite,
                           Repr repr, const ChannelMetadata& metadata) {
  std::ostringstream os;
  os << "{\n  \"format_version\": 1,\n";
  if (bipartite) {
    if (bipartite->total() != map.din() || bipartite->total() != map.dout()) {
      throw DimensionError("format_channel: bipartite dims do not match the map");
    }
    os << "  \"dims\": {\"dA\": " << bipartite->dA << ", \"dB\": " << bipartite->dB << "},\n";
  } else {
    os << "  \"dims\": {\"din\": " << map.din() << ", \"dout\": " << map.dout() << "},\n";
  }
  if (repr == Repr::kChoi) {
    os << "  \"repr\": \"choi\",\n  \"data\": ";
    append_matrix(os, map.choi(), "  ");
  } else {
    os << "  \"repr\": \"kraus\",\n  \"data\": [\n";
    const KrausSet k = kraus_from_choi(map);
    for (std::size_t a = 0; a < k.operators.size(); ++a) {
      os << "    ";
      append_matrix(os, k.operators[a], "    ");
      os << (a + 1 < k.operators.size() ? ",\n" : "\n");
    }
    os << "  ]";
  }
  os << ",\n  \"metadata\": {";
  if (!metadata.name.empty()) os << "\"name\": " << json(metadata.name).dump() << ", ";
  if (metadata.seed) os << "\"seed\": " << *metadata.seed << ", ";
  os << "\"picture\": \"heisenberg\"}\n}\n";
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw SchemaError(path.string() + ": write failed");
}

nlohmann::json verdict_to_json(const CausalityVerdict& v) {
  return {{"semicausal_BtoA_blocked", v.semicausal_BtoA_blocked},
          {"semicausal_AtoB_blocked", v.semicausal_AtoB_blocked},
          {"causal", v.causal},
          {"product_localizable", v.product_localizable},
          {"residual_A", v.residual_A},
          {"residual_B", v.residual_B}};
}

nlohmann::json verification_to_json(const VerificationReport& r) {
  return {{"choi_distance", r.choi_distance},
          {"f_unitality_defect", r.f_unitality_defect},
          {"g_cp_margin", r.g_cp_margin},
          {"dC", r.dC},
          {"dD", r.dD},
          {"passed", r.passed}};
}

}  // namespace semiloc
