#include <cstring>
#include <fstream>
#include <sstream>

#include "hubpath/hub2_index.hpp"

namespace hubpath {

namespace {

constexpr char kMagic[4] = {'H', 'U', 'B', '2'};
constexpr std::uint16_t kFlagDirected = 1;
// magic, version, flags, k, pad, n, m, checksum, |H|
constexpr std::size_t kHeaderSize = 4 + 2 + 2 + 1 + 3 + 8 + 8 + 8 + 4;
constexpr std::size_t kTrailerSize = 8;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void put(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
      buf_.push_back(static_cast<char>(static_cast<std::uint64_t>(value) >> (8 * i)));
  }
  void raw(const void* data, std::size_t size) {
    buf_.append(static_cast<const char*>(data), size);
  }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::string_view take(std::size_t size) {
    need(size);
    auto out = data_.substr(pos_, size);
    pos_ += size;
    return out;
  }
  void need(std::size_t size) const {
    if (size > data_.size() - pos_)
      throw IndexFormatError(IndexFormatError::Kind::Truncated, "index file is truncated");
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

[[noreturn]] void malformed(const std::string& what) {
  throw IndexFormatError(IndexFormatError::Kind::Malformed, "malformed index: " + what);
}

void write_labels(Writer& w, const LabelTable& table) {
  for (VertexId v = 0; v < table.vertex_count(); ++v) {
    auto entries = table.of(v);
    if (entries.size() > 0xffff) throw std::length_error("label list exceeds 65535 entries");
    w.put<std::uint16_t>(static_cast<std::uint16_t>(entries.size()));
    for (const LabelEntry& e : entries) {
      w.put<std::uint32_t>(e.hub_rank);
      w.put<std::uint8_t>(e.dist);
      w.put<std::uint32_t>(e.port);
    }
  }
}

LabelTable read_labels(Reader& r, std::size_t n, std::size_t dim, std::uint32_t k) {
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(n + 1);
  std::vector<LabelEntry> entries;
  for (std::size_t v = 0; v < n; ++v) {
    auto count = r.get<std::uint16_t>();
    r.need(std::size_t{count} * 9);
    for (std::uint16_t i = 0; i < count; ++i) {
      LabelEntry e;
      e.hub_rank = r.get<std::uint32_t>();
      e.dist = r.get<std::uint8_t>();
      e.port = r.get<std::uint32_t>();
      if (e.hub_rank >= dim || e.dist == 0 || e.dist > k) malformed("label entry out of range");
      if (i > 0) {
        const LabelEntry& prev = entries.back();
        if (std::pair(prev.dist, prev.hub_rank) >= std::pair(e.dist, e.hub_rank))
          malformed("label entries not sorted");
      }
      entries.push_back(e);
    }
    offsets.push_back(entries.size());
  }
  return LabelTable(std::move(offsets), std::move(entries));
}

}  // namespace

std::string serialize(const Hub2Index& idx) {
  Writer w;
  const std::size_t dim = idx.hubs.size();
  w.raw(kMagic, 4);
  w.put<std::uint16_t>(kIndexVersion);
  w.put<std::uint16_t>(idx.config.directed ? kFlagDirected : 0);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(idx.config.k));
  w.raw("\0\0\0", 3);
  w.put<std::uint64_t>(idx.config.n);
  w.put<std::uint64_t>(idx.config.m);
  w.put<std::uint64_t>(idx.config.graph_checksum);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(dim));
  for (VertexId h : idx.hubs.ids()) w.put<std::uint32_t>(h);

  auto dist = idx.matrix.raw_distances();
  w.raw(dist.data(), dist.size());

  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (i == j || !idx.matrix.finite(i, j)) continue;
      if (idx.matrix.is_via(i, j)) {
        w.put<std::uint8_t>(1);
        w.put<std::uint32_t>(idx.matrix.via(i, j));
      } else {
        auto path = idx.matrix.inline_path(i, j);
        w.put<std::uint8_t>(0);
        w.put<std::uint8_t>(static_cast<std::uint8_t>(path.size() - 1));
        for (VertexId v : path) w.put<std::uint32_t>(v);
      }
    }
  }

  write_labels(w, idx.in_labels);
  if (idx.config.directed) write_labels(w, idx.out_labels);

  w.put<std::uint64_t>(fnv1a(w.buffer()));
  return std::move(w.buffer());
}

Hub2Index deserialize(std::string_view bytes) {
  using Kind = IndexFormatError::Kind;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw IndexFormatError(Kind::BadMagic, "not a HUB2 index (bad magic)");
  if (bytes.size() < kHeaderSize + kTrailerSize)
    throw IndexFormatError(Kind::Truncated, "index file is truncated");

  Reader trailer(bytes.substr(bytes.size() - kTrailerSize));
  const std::string_view body = bytes.substr(0, bytes.size() - kTrailerSize);
  Reader r(body);
  r.take(4);
  if (auto version = r.get<std::uint16_t>(); version != kIndexVersion)
    throw IndexFormatError(Kind::BadVersion,
                           "unsupported index version " + std::to_string(version));
  if (trailer.get<std::uint64_t>() != fnv1a(body))
    throw IndexFormatError(Kind::ChecksumMismatch, "index checksum mismatch (corrupt or truncated)");

  Hub2Index idx;
  const auto flags = r.get<std::uint16_t>();
  idx.config.directed = (flags & kFlagDirected) != 0;
  idx.config.k = r.get<std::uint8_t>();
  r.take(3);
  idx.config.n = r.get<std::uint64_t>();
  idx.config.m = r.get<std::uint64_t>();
  idx.config.graph_checksum = r.get<std::uint64_t>();
  const std::size_t dim = r.get<std::uint32_t>();
  if (idx.config.k == 0 || idx.config.k > kMaxK) malformed("k out of range");
  if (dim == 0 || dim > idx.config.n) malformed("hub count out of range");
  const std::size_t n = idx.config.n;

  r.need(dim * 4);
  std::vector<VertexId> ids(dim);
  for (auto& id : ids) {
    id = r.get<std::uint32_t>();
    if (id >= n) malformed("hub id out of range");
  }
  if (!std::is_sorted(ids.begin(), ids.end())) malformed("hub ids not ascending");
  idx.hubs = HubSet::from_ids(n, std::move(ids));

  std::string_view dist = r.take(dim * dim);
  idx.matrix = Hub2Matrix(dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t j = 0; j < dim; ++j) {
      const auto d = static_cast<std::uint8_t>(dist[std::size_t{i} * dim + j]);
      if (i == j) {
        if (d != 0) malformed("nonzero diagonal");
        continue;
      }
      if (d == kInfDistance) continue;
      if (d == 0 || d > idx.config.k) malformed("matrix distance out of range");
      const auto tag = r.get<std::uint8_t>();
      if (tag == 1) {
        const auto via = r.get<std::uint32_t>();
        if (via >= dim || via == i || via == j) malformed("bad via witness");
        idx.matrix.set_via(i, j, d, via);
      } else if (tag == 0) {
        const auto len = r.get<std::uint8_t>();
        if (len != d) malformed("inline witness length mismatch");
        Path path(std::size_t{len} + 1);
        for (auto& v : path) {
          v = r.get<std::uint32_t>();
          if (v >= n) malformed("witness vertex out of range");
        }
        if (path.front() != idx.hubs.id(i) || path.back() != idx.hubs.id(j))
          malformed("witness endpoints mismatch");
        idx.matrix.set_inline(i, j, path);
      } else {
        malformed("unknown witness tag");
      }
    }
  }

  idx.in_labels = read_labels(r, n, dim, idx.config.k);
  if (idx.config.directed) idx.out_labels = read_labels(r, n, dim, idx.config.k);
  if (!r.done()) malformed("trailing bytes");
  return idx;
}

void write_index_file(const Hub2Index& idx, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open index file for writing: " + path);
  const std::string bytes = serialize(idx);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing index file: " + path);
}

Hub2Index read_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

IndexStats index_stats(const Hub2Index& idx) {
  IndexStats stats;
  const std::size_t n = idx.config.n;
  const std::size_t dim = idx.hubs.size();
  const std::size_t tables = idx.config.directed ? 2 : 1;
  const std::size_t non_hubs = n - dim;
  const std::size_t total = idx.in_labels.total() + idx.out_labels.total();
  stats.avg_label_count =
      non_hubs == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(non_hubs * tables);
  for (VertexId v = 0; v < n; ++v) {
    stats.max_label_count = std::max(stats.max_label_count, idx.in_labels.of(v).size());
    if (idx.config.directed)
      stats.max_label_count = std::max(stats.max_label_count, idx.out_labels.of(v).size());
  }
  stats.matrix_entries = Hub2Matrix::entry_count(dim);
  std::size_t finite = 0;
  for (std::uint8_t d : idx.matrix.raw_distances()) finite += d != kInfDistance;
  stats.matrix_finite_fraction =
      dim == 0 ? 0.0 : static_cast<double>(finite) / static_cast<double>(stats.matrix_entries);
  stats.bytes = serialize(idx).size();
  return stats;
}

}  // namespace hubpath
