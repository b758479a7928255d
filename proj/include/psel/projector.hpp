#pragma once

#include <array>
#include <span>
#include <vector>

#include "psel/corpus.hpp"

namespace psel {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Two-component principal-component projection of acoustic embeddings.
//
// Components are the top-2 eigenvectors of the sample covariance (n - 1
// denominator), each oriented so that its largest-magnitude coordinate is
// positive (lowest index wins a magnitude tie). `diameter` is the largest
// pairwise distance between projected fitting points; acoustic_distance
// divides by it when normalization is requested.
class Projector {
 public:
  Projector() = default;

  // Throws Error for fewer than 3 rows, dimension < 2, ragged rows, or
  // all-zero variance.
  static Projector fit(std::span<const std::vector<double>> rows);
  static Projector fit(const Corpus& corpus);

  // Reassembles a persisted projector. Checks shapes only.
  static Projector from_parts(std::vector<double> mean, std::array<std::vector<double>, 2> components,
                              std::array<double, 2> explained_variance, double diameter);

  Point2 project(std::span<const double> embedding) const;

  // Euclidean distance between the projections of a and b, divided by the
  // fitted diameter when `normalize` is true.
  double acoustic_distance(std::span<const double> a, std::span<const double> b,
                           bool normalize = true) const;

  double distance(Point2 a, Point2 b, bool normalize = true) const;

  std::size_t dim() const noexcept { return mean_.size(); }
  const std::vector<double>& mean() const noexcept { return mean_; }
  const std::array<std::vector<double>, 2>& components() const noexcept { return components_; }
  const std::array<double, 2>& explained_variance() const noexcept { return variance_; }
  double diameter() const noexcept { return diameter_; }

  friend bool operator==(const Projector&, const Projector&) = default;

 private:
  std::vector<double> mean_;
  std::array<std::vector<double>, 2> components_;
  std::array<double, 2> variance_{0.0, 0.0};
  double diameter_ = 0.0;
};

}  // namespace psel
