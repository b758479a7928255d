#include "psel/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <string>

#include "psel/error.hpp"

namespace psel {
namespace {

// Neumaier summation; the result depends only on the order of additions.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double round_grid(double x) { return std::round(x * 1e9) / 1e9; }

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error("invalid number '" + std::string(text) + "' in grid");
  }
  return value;
}

void append_double(std::string& out, double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

}  // namespace

std::vector<double> default_lsw_grid() { return parse_grid("1.0:0.7:0.05"); }

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
      throw Error("grid range must have the form start:stop:step");
    }
    const double start = parse_number(spec.substr(0, first));
    const double stop = parse_number(spec.substr(first + 1, second - first - 1));
    const double step = parse_number(spec.substr(second + 1));
    if (!(step > 0.0)) throw Error("grid step must be positive");
    const double span = std::abs(stop - start);
    const auto count = static_cast<long long>(std::floor(span / step + 1e-9));
    if (count > 100000) throw Error("grid has too many points");
    const double dir = stop < start ? -1.0 : 1.0;
    for (long long i = 0; i <= count; ++i) grid.push_back(round_grid(start + dir * step * static_cast<double>(i)));
  } else {
    std::size_t begin = 0;
    while (begin <= spec.size()) {
      const auto comma = spec.find(',', begin);
      const auto end = comma == std::string_view::npos ? spec.size() : comma;
      grid.push_back(parse_number(spec.substr(begin, end - begin)));
      if (comma == std::string_view::npos) break;
      begin = comma + 1;
    }
  }
  for (double v : grid) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error("grid value " + std::to_string(v) + " outside [0, 1]");
    }
  }
  return grid;
}

SweepResult sweep(const Selector& selector, std::span<const Paragraph> paragraphs,
                  const SelectionConfig& base, std::span<const double> grid) {
  if (grid.empty()) throw Error("sweep grid is empty");
  if (paragraphs.empty()) throw Error("sweep needs at least one paragraph");

  std::vector<double> ordered(grid.begin(), grid.end());
  std::sort(ordered.begin(), ordered.end(), std::greater<>());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  SweepResult result;
  for (double lsw : ordered) {
    SelectionConfig cfg = base;
    cfg.lsw = lsw;
    cfg.top_k = 0;
    validate(cfg);
    CompensatedSum linguistic, acoustic;
    std::size_t transitions = 0;
    for (const auto& paragraph : paragraphs) {
      const auto picks = selector.select_paragraph(paragraph, cfg);
      for (std::size_t k = 1; k < picks.size(); ++k) {
        linguistic.add(1.0 - picks[k].ls);
        acoustic.add(picks[k].d);
        ++transitions;
      }
    }
    SweepPoint point;
    point.lsw = lsw;
    point.transitions = transitions;
    if (transitions > 0) {
      point.mean_linguistic_distance = linguistic.value() / static_cast<double>(transitions);
      point.mean_acoustic_distance = acoustic.value() / static_cast<double>(transitions);
    }
    result.points.push_back(point);
  }

  for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
    const double drop =
        result.points[i].mean_acoustic_distance - result.points[i + 1].mean_acoustic_distance;
    if (!result.max_drop || drop > result.max_drop->drop) {
      result.max_drop = MaxDrop{result.points[i].lsw, result.points[i + 1].lsw, drop};
    }
  }
  return result;
}

SweepResult sweep(const Corpus& corpus, const Projector& projector,
                  std::span<const Paragraph> paragraphs, const SelectionConfig& base,
                  std::span<const double> grid) {
  return sweep(Selector(corpus, projector), paragraphs, base, grid);
}

std::string to_csv(const SweepResult& result) {
  std::string out = "lsw,mean_linguistic_distance,mean_acoustic_distance\n";
  for (const auto& p : result.points) {
    append_double(out, p.lsw);
    out += ',';
    append_double(out, p.mean_linguistic_distance);
    out += ',';
    append_double(out, p.mean_acoustic_distance);
    out += '\n';
  }
  return out;
}

}  // namespace psel
