#include <cstring>
#include <filesystem>

#include "doctest.h"

#include "hubpath/generators.hpp"
#include "hubpath/hub2_index.hpp"

using namespace hubpath;

namespace {

template <typename T>
T read_le(const std::string& b, std::size_t at) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<T>(static_cast<std::uint8_t>(b[at + i])) << (8 * i);
  return v;
}

IndexFormatError::Kind failure_kind(const std::string& bytes) {
  try {
    deserialize(bytes);
  } catch (const IndexFormatError& e) {
    return e.kind();
  }
  FAIL("deserialize accepted a bad index");
  return IndexFormatError::Kind::Malformed;
}

Hub2Index chain_index() {
  Graph g = generate_graph(GraphKind::Chain, 4, 0, 1);
  return build_index(g, HubSet::from_ids(4, {1, 2}), 4);
}

}  // namespace

TEST_CASE("header layout") {
  Graph g = generate_graph(GraphKind::Chain, 4, 0, 1);
  Hub2Index idx = build_index(g, HubSet::from_ids(4, {1, 2}), 4);
  std::string b = serialize(idx);
  CHECK(b.substr(0, 4) == "HUB2");
  CHECK(read_le<std::uint16_t>(b, 4) == 1);
  CHECK(read_le<std::uint16_t>(b, 6) == 0);
  CHECK(read_le<std::uint8_t>(b, 8) == 4);
  CHECK(read_le<std::uint64_t>(b, 12) == 4);
  CHECK(read_le<std::uint64_t>(b, 20) == 6);
  CHECK(read_le<std::uint64_t>(b, 28) == g.checksum());
  CHECK(read_le<std::uint32_t>(b, 36) == 2);
  CHECK(read_le<std::uint32_t>(b, 40) == 1);
  CHECK(read_le<std::uint32_t>(b, 44) == 2);
  // matrix row-major
  CHECK(b.substr(48, 4) == std::string("\x00\x01\x01\x00", 4));
  // first witness: inline, length 1, [1, 2]
  CHECK(read_le<std::uint8_t>(b, 52) == 0);
  CHECK(read_le<std::uint8_t>(b, 53) == 1);
  CHECK(read_le<std::uint32_t>(b, 54) == 1);
  CHECK(read_le<std::uint32_t>(b, 58) == 2);
}

TEST_CASE("round trip is the identity and bytes are stable") {
  Hub2Index idx = chain_index();
  std::string a = serialize(idx);
  CHECK(deserialize(a) == idx);
  CHECK(serialize(idx) == a);
  CHECK(serialize(deserialize(a)) == a);
  CHECK(serialize(chain_index()) == a);
}

TEST_CASE("round trip with via witnesses and directed tables") {
  Graph g = generate_graph(GraphKind::Chain, 5, 0, 1);
  Hub2Index via = build_index(g, HubSet::from_ids(5, {0, 2, 4}), 4);
  REQUIRE(via.matrix.is_via(0, 2));
  CHECK(deserialize(serialize(via)) == via);

  Graph d = generate_graph(GraphKind::ErdosRenyi, 600, 4, 3, true);
  Hub2Index dir = build_index(d, HubSet::select(d, 15), 5);
  REQUIRE(dir.out_labels.total() > 0);
  std::string b = serialize(dir);
  CHECK(read_le<std::uint16_t>(b, 6) == 1);
  Hub2Index back = deserialize(b);
  CHECK(back == dir);
  CHECK(back.config.directed);

  Graph ba = generate_graph(GraphKind::BarabasiAlbert, 3000, 4, 8);
  Hub2Index big = build_index(ba, HubSet::select(ba, 30), 6);
  CHECK(deserialize(serialize(big)) == big);
}

TEST_CASE("every truncation is rejected") {
  std::string b = serialize(chain_index());
  for (std::size_t len = 0; len < b.size(); ++len) {
    CAPTURE(len);
    CHECK_THROWS_AS(deserialize(b.substr(0, len)), IndexFormatError);
  }
  CHECK(failure_kind(b.substr(0, 40)) == IndexFormatError::Kind::Truncated);
}

TEST_CASE("bad magic, version and flipped bytes") {
  const std::string good = serialize(chain_index());

  std::string magic = good;
  magic[0] = 'X';
  CHECK(failure_kind(magic) == IndexFormatError::Kind::BadMagic);

  std::string version = good;
  version[4] = 2;
  CHECK(failure_kind(version) == IndexFormatError::Kind::BadVersion);

  for (std::size_t at = 6; at < good.size(); ++at) {
    std::string flipped = good;
    flipped[at] = static_cast<char>(flipped[at] ^ 0x10);
    CAPTURE(at);
    CHECK(failure_kind(flipped) == IndexFormatError::Kind::ChecksumMismatch);
  }
  CHECK_THROWS_AS(deserialize(good + "x"), IndexFormatError);
}

TEST_CASE("file round trip") {
  auto path = std::filesystem::temp_directory_path() / "hubpath_io_test.hub2";
  Hub2Index idx = chain_index();
  write_index_file(idx, path.string());
  CHECK(read_index_file(path.string()) == idx);
  std::filesystem::remove(path);
  CHECK_THROWS(read_index_file(path.string()));
}

TEST_CASE("index_stats counts bytes and finite entries") {
  Hub2Index idx = chain_index();
  IndexStats st = index_stats(idx);
  CHECK(st.bytes == serialize(idx).size());
  CHECK(st.matrix_entries == 4);
  CHECK(st.matrix_finite_fraction == doctest::Approx(1.0));
  CHECK(st.avg_label_count == doctest::Approx(1.0));
  CHECK(st.max_label_count == 1);
}
