#include "psel/index.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include <zlib.h>

#include "psel/error.hpp"

namespace psel {
namespace {

static_assert(std::numeric_limits<double>::is_iec559, "index format requires IEEE-754 doubles");

constexpr std::size_t kHeaderSize = 4 + 2 + 4 + 4 + 8;

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in chunks.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), static_cast<uInt>(len));
  }
  return static_cast<std::uint32_t>(crc);
}

class Writer {
 public:
  template <typename T>
  void uint(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
    }
  }
  void f64(double value) { uint(std::bit_cast<std::uint64_t>(value)); }
  void f64s(const std::vector<double>& values) {
    for (double v : values) f64(v);
  }
  void str(const std::string& s) {
    if (s.size() > std::numeric_limits<std::uint32_t>::max()) throw Error("string too long for index");
    uint(static_cast<std::uint32_t>(s.size()));
    out_ += s;
  }
  void raw(std::string_view s) { out_ += s; }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : in_(bytes) {}

  template <typename T>
  T uint() {
    need(sizeof(T));
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return value;
  }
  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }
  std::vector<double> f64s(std::size_t n) {
    need(n * 8);
    std::vector<double> out(n);
    for (auto& v : out) v = f64();
    return out;
  }
  std::string str() {
    const auto n = uint<std::uint32_t>();
    need(n);
    std::string out(in_.substr(pos_, n));
    pos_ += n;
    return out;
  }
  bool at_end() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (n > in_.size() - pos_) throw FormatError("index payload ends early");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_index(const Corpus& corpus, const std::optional<Projector>& projector) {
  if (projector && projector->dim() != corpus.acoustic_dim()) {
    throw DimensionError("projector dimension does not match corpus acoustic dimension");
  }
  Writer w;
  w.raw(std::string_view(kIndexMagic, 4));
  w.uint(kIndexVersion);
  w.uint(static_cast<std::uint32_t>(corpus.cwe_dim()));
  w.uint(static_cast<std::uint32_t>(corpus.acoustic_dim()));
  w.uint(static_cast<std::uint64_t>(corpus.size()));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusRecord& r = corpus.record(i);
    w.str(r.id);
    w.str(r.text);
    w.str(serialize_tree(r.tree));
    w.f64s(r.cwe);
    w.f64s(r.acoustic);
    const auto& dist = corpus.distances(i).values;
    w.uint(static_cast<std::uint32_t>(dist.size()));
    for (auto v : dist) w.uint(v);
  }
  w.uint(static_cast<std::uint8_t>(projector ? 1 : 0));
  if (projector) {
    w.f64s(projector->mean());
    w.f64s(projector->components()[0]);
    w.f64s(projector->components()[1]);
    w.f64(projector->explained_variance()[0]);
    w.f64(projector->explained_variance()[1]);
    w.f64(projector->diameter());
  }
  const std::uint32_t crc = crc32_of(w.bytes());
  w.uint(crc);
  return std::move(w.bytes());
}

Index decode_index(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kIndexMagic, 4) != 0) {
    throw FormatError("not a selection index (bad magic)");
  }
  if (bytes.size() < kHeaderSize + 4) throw ChecksumError("index truncated");
  {
    Reader header(bytes.substr(4, 2));
    const auto version = header.uint<std::uint16_t>();
    if (version != kIndexVersion) {
      throw FormatError("unsupported index version " + std::to_string(version) + " (expected " +
                        std::to_string(kIndexVersion) + ")");
    }
  }
  const std::string_view payload = bytes.substr(0, bytes.size() - 4);
  Reader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.uint<std::uint32_t>() != crc32_of(payload)) {
    throw ChecksumError("index checksum mismatch (corrupted or truncated file)");
  }

  Reader r(payload.substr(6));
  const std::size_t cwe_dim = r.uint<std::uint32_t>();
  const std::size_t ac_dim = r.uint<std::uint32_t>();
  const auto count = r.uint<std::uint64_t>();

  std::vector<CorpusRecord> records;
  std::vector<DistanceVector> distances;
  for (std::uint64_t i = 0; i < count; ++i) {
    CorpusRecord rec;
    rec.id = r.str();
    rec.text = r.str();
    rec.tree = parse_tree(r.str());
    rec.cwe = r.f64s(cwe_dim);
    rec.acoustic = r.f64s(ac_dim);
    DistanceVector dv;
    dv.values.resize(r.uint<std::uint32_t>());
    for (auto& v : dv.values) v = r.uint<std::uint32_t>();
    records.push_back(std::move(rec));
    distances.push_back(std::move(dv));
  }

  Index index;
  index.corpus = Corpus::from_parts(std::move(records), std::move(distances), cwe_dim, ac_dim);
  if (r.uint<std::uint8_t>() == 1) {
    auto mean = r.f64s(ac_dim);
    std::array<std::vector<double>, 2> comps{r.f64s(ac_dim), r.f64s(ac_dim)};
    const double v0 = r.f64();
    const double v1 = r.f64();
    const double diameter = r.f64();
    index.projector = Projector::from_parts(std::move(mean), std::move(comps), {v0, v1}, diameter);
  }
  if (!r.at_end()) throw FormatError("unexpected bytes after index payload");
  return index;
}

void save_index(const std::filesystem::path& path, const Corpus& corpus,
                const std::optional<Projector>& projector) {
  const std::string bytes = encode_index(corpus, projector);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

Index load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open index '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_index(bytes);
}

}  // namespace psel
