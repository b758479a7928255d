#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psel/selection.hpp"

namespace psel {

// 1.00, 0.95, ..., 0.70
std::vector<double> default_lsw_grid();

// "a:b:step" (inclusive, either direction) or a comma-separated list.
// Values are rounded to 1e-9 so decimal steps print cleanly. Throws Error.
std::vector<double> parse_grid(std::string_view spec);

struct SweepPoint {
  double lsw = 0.0;
  // Means over every non-first sentence of every paragraph.
  double mean_linguistic_distance = 0.0;  // 1 - LS
  double mean_acoustic_distance = 0.0;    // D
  std::size_t transitions = 0;
};

// Consecutive grid pair with the largest fall in mean acoustic distance.
struct MaxDrop {
  double from_lsw = 0.0;
  double to_lsw = 0.0;
  double drop = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // descending lsw
  std::optional<MaxDrop> max_drop;
};

using Paragraph = std::vector<SentenceRepr>;

// Runs paragraph selection for every (paragraph, lsw) pair. `base` supplies
// mode and normalization; its lsw is ignored.
SweepResult sweep(const Selector& selector, std::span<const Paragraph> paragraphs,
                  const SelectionConfig& base, std::span<const double> grid);

SweepResult sweep(const Corpus& corpus, const Projector& projector,
                  std::span<const Paragraph> paragraphs, const SelectionConfig& base,
                  std::span<const double> grid);

// "lsw,mean_linguistic_distance,mean_acoustic_distance" header plus one row
// per point, shortest round-trip decimal formatting.
std::string to_csv(const SweepResult& result);

}  // namespace psel
