#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "psel/corpus.hpp"
#include "psel/projector.hpp"

namespace psel {

inline constexpr char kIndexMagic[4] = {'P', 'S', 'E', 'L'};
inline constexpr std::uint16_t kIndexVersion = 1;

// A corpus and, optionally, the projector fitted on it.
struct Index {
  Corpus corpus;
  std::optional<Projector> projector;

  friend bool operator==(const Index&, const Index&) = default;
};

// Binary layout, all integers and doubles little-endian:
//
//   "PSEL" | version u16 | d_cwe u32 | d_ac u32 | record count u64
//   per record:
//     id, text, tree (u32 byte length + UTF-8 bytes; tree in bracketed form)
//     cwe f64[d_cwe] | acoustic f64[d_ac]
//     distance count u32 | distances u32[count]
//   projector flag u8; when 1:
//     mean f64[d_ac] | component 1 f64[d_ac] | component 2 f64[d_ac]
//     explained variance f64[2] | diameter f64
//   CRC-32 (u32) of every preceding byte
std::string encode_index(const Corpus& corpus, const std::optional<Projector>& projector);

// Throws FormatError (magic/version) or ChecksumError (corruption, truncation).
Index decode_index(std::string_view bytes);

void save_index(const std::filesystem::path& path, const Corpus& corpus,
                const std::optional<Projector>& projector = std::nullopt);
Index load_index(const std::filesystem::path& path);

}  // namespace psel
