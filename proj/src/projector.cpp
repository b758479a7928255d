#include "psel/projector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "psel/error.hpp"

namespace psel {
namespace {

void orient(Eigen::VectorXd& v) {
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  }
  if (v[pivot] < 0.0) v = -v;
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Largest pairwise distance. The farthest pair always lies on the convex
// hull, so only hull vertices are compared.
double diameter_of(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Point2> hull;
  if (points.size() <= 2) {
    hull = points;
  } else {
    // Andrew's monotone chain.
    hull.resize(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
      hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
      while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
      hull[k++] = points[i];
    }
    hull.resize(k - 1);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      best = std::max(best, std::hypot(hull[i].x - hull[j].x, hull[i].y - hull[j].y));
    }
  }
  return best;
}

}  // namespace

Projector Projector::fit(std::span<const std::vector<double>> rows) {
  if (rows.size() < 3) {
    throw Error("projector fit needs at least 3 embeddings, got " + std::to_string(rows.size()));
  }
  const std::size_t dim = rows.front().size();
  if (dim < 2) throw Error("projector fit needs embedding dimension >= 2");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd data(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (row.size() != dim) {
      throw DimensionError("projector fit: row " + std::to_string(i) + " has dimension " +
                           std::to_string(row.size()) + ", expected " + std::to_string(dim));
    }
    data.row(i) = Eigen::Map<const Eigen::RowVectorXd>(row.data(), d);
  }

  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);

  // Eigenvalues come back ascending.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw Error("projector fit: eigen-decomposition failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double top = std::max(values[d - 1], 0.0);
  const double second = std::max(values[d - 2], 0.0);
  // Relative floor: eigenvalues below it are rounding noise from exact zeros.
  const double noise = 1e-12 * std::max(1.0, cov.diagonal().cwiseAbs().maxCoeff());
  if (top <= noise) throw Error("projector fit: embeddings have zero variance");

  Projector p;
  p.mean_.assign(mean.data(), mean.data() + d);
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXd c = solver.eigenvectors().col(d - 1 - k);
    c.normalize();
    orient(c);
    p.components_[static_cast<std::size_t>(k)].assign(c.data(), c.data() + d);
  }
  p.variance_ = {top, second <= noise ? 0.0 : second};

  std::vector<Point2> points;
  points.reserve(rows.size());
  for (const auto& row : rows) points.push_back(p.project(row));
  p.diameter_ = diameter_of(std::move(points));
  return p;
}

Projector Projector::fit(const Corpus& corpus) {
  std::vector<std::vector<double>> rows;
  rows.reserve(corpus.size());
  for (const auto& r : corpus.records()) rows.push_back(r.acoustic);
  return fit(rows);
}

Projector Projector::from_parts(std::vector<double> mean,
                                std::array<std::vector<double>, 2> components,
                                std::array<double, 2> explained_variance, double diameter) {
  if (mean.size() < 2 || components[0].size() != mean.size() ||
      components[1].size() != mean.size()) {
    throw DimensionError("projector: inconsistent component dimensions");
  }
  Projector p;
  p.mean_ = std::move(mean);
  p.components_ = std::move(components);
  p.variance_ = explained_variance;
  p.diameter_ = diameter;
  return p;
}

Point2 Projector::project(std::span<const double> embedding) const {
  if (embedding.size() != mean_.size()) {
    throw DimensionError("project: embedding dimension " + std::to_string(embedding.size()) +
                         " does not match projector dimension " + std::to_string(mean_.size()));
  }
  Point2 out;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double centered = embedding[i] - mean_[i];
    out.x += centered * components_[0][i];
    out.y += centered * components_[1][i];
  }
  return out;
}

double Projector::distance(Point2 a, Point2 b, bool normalize) const {
  const double raw = std::hypot(a.x - b.x, a.y - b.y);
  if (!normalize || diameter_ == 0.0) return raw;
  return raw / diameter_;
}

double Projector::acoustic_distance(std::span<const double> a, std::span<const double> b,
                                    bool normalize) const {
  return distance(project(a), project(b), normalize);
}

}  // namespace psel
