#include "semiloc/channel_io.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "semiloc/corpus.hpp"
#include "test_support.hpp"

namespace semiloc {
namespace {

using namespace semiloc::testing;
using nlohmann::json;

std::string error_of(const std::string& text) {
  try {
    parse_channel(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(pair(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json identity_doc() {
  return {{"format_version", 1},
          {"dims", {{"din", 1}, {"dout", 1}}},
          {"repr", "choi"},
          {"data", matrix_json(identity(1))}};
}

// ---- parsing ---------------------------------------------------------------

TEST(ParseChannel, ReadsHandWrittenKrausFile) {
  const std::string text = R"({
    "format_version": 1,
    "dims": {"din": 2, "dout": 2},
    "repr": "kraus",
    "data": [
      [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
    ],
    "metadata": {"name": "flip", "seed": 3}
  })";
  const ChannelFile f = parse_channel(text);
  EXPECT_FALSE(f.bipartite.has_value());
  EXPECT_EQ(f.repr, Repr::kKraus);
  EXPECT_EQ(f.metadata.name, "flip");
  EXPECT_EQ(f.metadata.seed, 3u);
  EXPECT_LT(frobenius_distance(f.map.choi(), choi_by_definition({pauli_x()})), 1e-15);
  EXPECT_THROW(f.as_bipartite(), SchemaError);
}

TEST(ParseChannel, SyntaxErrorReportsLine) {
  const std::string msg = error_of("{\n  \"format_version\": 1,\n  \"dims\": {\"dA\": 2,,\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(ParseChannel, FieldErrorsNameTheField) {
  json doc = identity_doc();
  doc["format_version"] = 2;
  EXPECT_NE(error_of(doc.dump()).find("/format_version"), std::string::npos);

  doc = identity_doc();
  doc["dims"] = {{"dA", 0}, {"dB", 2}};
  EXPECT_NE(error_of(doc.dump()).find("/dims/dA"), std::string::npos);

  doc = identity_doc();
  doc["dims"] = {{"dA", 2}};
  EXPECT_NE(error_of(doc.dump()).find("/dims/dB"), std::string::npos);

  doc = identity_doc();
  doc["repr"] = "ptm";
  EXPECT_NE(error_of(doc.dump()).find("/repr"), std::string::npos);

  doc = identity_doc();
  doc["data"][0][0] = json::array({1.0});
  EXPECT_NE(error_of(doc.dump()).find("/data/0/0"), std::string::npos);

  doc = identity_doc();
  doc["dims"] = {{"din", 2}, {"dout", 1}};
  EXPECT_NE(error_of(doc.dump()).find("/data"), std::string::npos);

  doc = identity_doc();
  doc["metadata"] = {{"picture", "interaction"}};
  EXPECT_NE(error_of(doc.dump()).find("/metadata/picture"), std::string::npos);
}

TEST(ParseChannel, RejectsNonPositiveAndSuperunitalData) {
  json doc = identity_doc();
  doc["dims"] = {{"din", 2}, {"dout", 1}};
  Matrix transpose_like = Matrix::Zero(2, 2);  // eigenvalues ±1
  transpose_like(0, 1) = 1.0;
  transpose_like(1, 0) = 1.0;
  doc["data"] = matrix_json(transpose_like);
  EXPECT_NE(error_of(doc.dump()).find("/data"), std::string::npos);

  doc = identity_doc();
  doc["data"] = matrix_json(2.0 * identity(1));
  EXPECT_NE(error_of(doc.dump()).find("E(1) <= 1"), std::string::npos);
}

TEST(ParseChannel, SchrodingerPictureStoresTheDual) {
  const CpMap e = random_channel(2, 3, 2, 17);
  std::string text = format_channel(dual(e), std::nullopt, Repr::kChoi, {"dual", {}});
  const auto at = text.find("\"heisenberg\"");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 12, "\"schrodinger\"");
  const ChannelFile f = parse_channel(text);
  EXPECT_EQ(f.metadata.picture, Picture::kSchrodinger);
  EXPECT_EQ(f.map.din(), 2);
  EXPECT_EQ(f.map.dout(), 3);
  EXPECT_LT(frobenius_distance(f.map.choi(), e.choi()), 1e-14);
}

// ---- writing ---------------------------------------------------------------

// Loading re-hermitizes, which may move the last bit once; after that the
// text is a fixed point.
TEST(FormatChannel, ChoiRoundTrip) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const BipartiteMap m = random_semicausal(2, 2, 2, rng(), trial % 2 == 0);
    const ChannelMetadata meta{"rt", static_cast<std::uint64_t>(trial), Picture::kHeisenberg};
    const ChannelFile f = parse_channel(format_channel(m.map(), m.dims(), Repr::kChoi, meta));
    ASSERT_TRUE(f.bipartite.has_value());
    EXPECT_EQ(*f.bipartite, m.dims());
    EXPECT_LT(frobenius_distance(f.map.choi(), m.map().choi()), 1e-15);
    EXPECT_EQ(f.metadata.seed, static_cast<std::uint64_t>(trial));
    const std::string once = format_channel(f.map, f.bipartite, Repr::kChoi, meta);
    const ChannelFile g = parse_channel(once);
    EXPECT_TRUE(g.map.choi() == f.map.choi());
    EXPECT_EQ(format_channel(g.map, g.bipartite, Repr::kChoi, meta), once);
  }
}

TEST(FormatChannel, KrausRoundTripPreservesMap) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const CpMap e = random_channel(3, 2, 3, rng());
    const ChannelFile f = parse_channel(format_channel(e, std::nullopt, Repr::kKraus, {"k", {}}));
    EXPECT_EQ(f.repr, Repr::kKraus);
    EXPECT_LT(frobenius_distance(f.map.choi(), e.choi()), 1e-13);
  }
}

TEST(FormatChannel, OneRowPerLineAndStable) {
  const NamedExample ex = named_example("measure_and_correct");
  const std::string a = format_channel(ex.map.map(), ex.map.dims(), Repr::kChoi, {ex.name, {}});
  EXPECT_EQ(a, format_channel(ex.map.map(), ex.map.dims(), Repr::kChoi, {ex.name, {}}));
  EXPECT_EQ(a.back(), '\n');
  EXPECT_EQ(a.find("-0,"), std::string::npos);
  EXPECT_GE(std::count(a.begin(), a.end(), '\n'), 16);
}

TEST(FileIo, WriteThenRead) {
  const auto path = std::filesystem::temp_directory_path() / "semiloc_io_test.json";
  const CpMap e = random_channel(2, 2, 2, 20);
  write_text_file(path, format_channel(e, std::nullopt, Repr::kChoi, {"file", 20}));
  EXPECT_LT(frobenius_distance(read_channel_file(path).map.choi(), e.choi()), 1e-15);
  std::filesystem::remove(path);
  EXPECT_THROW(read_channel_file(path), SchemaError);
}

// ---- reports ---------------------------------------------------------------

TEST(Reports, VerdictJsonCarriesResiduals) {
  const CausalityVerdict v = is_causal(named_example("swap").map);
  const json j = verdict_to_json(v);
  EXPECT_EQ(j.at("causal"), false);
  EXPECT_EQ(j.at("residual_A").get<double>(), v.residual_A);
  EXPECT_EQ(json::parse(j.dump()).at("residual_B").get<double>(), v.residual_B);
}

}  // namespace
}  // namespace semiloc
