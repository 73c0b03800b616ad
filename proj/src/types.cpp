#include "vcdim/types.hpp"

namespace vcdim {

PointSet::PointSet(int dim, const std::vector<std::vector<real>>& rows)
    : coords_(dim, static_cast<Eigen::Index>(rows.size())) {
  for (std::size_t j = 0; j < rows.size(); ++j) {
    require_dim(static_cast<int>(rows[j].size()), dim, "PointSet");
    for (int i = 0; i < dim; ++i) coords_(i, static_cast<Eigen::Index>(j)) = rows[j][static_cast<std::size_t>(i)];
  }
  if (!coords_.allFinite()) throw InvalidInput("PointSet: non-finite coordinate");
}

void PointSet::push_back(const Vector& x) {
  require_dim(static_cast<int>(x.size()), dim(), "PointSet::push_back");
  coords_.conservativeResize(Eigen::NoChange, coords_.cols() + 1);
  coords_.col(coords_.cols() - 1) = x;
}

PointSet PointSet::select(Subset s) const {
  PointSet out(dim());
  for (int j = 0; j < size(); ++j)
    if (contains(s, j)) out.push_back(point(j));
  return out;
}

Vector PointSet::centroid() const {
  if (empty()) return Vector::Zero(dim());
  return coords_.rowwise().mean();
}

real PointSet::diameter() const {
  real best = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) best = std::max(best, (point(i) - point(j)).norm());
  return best;
}

bool PointSet::has_duplicates() const {
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (point(i) == point(j)) return true;
  return false;
}

}  // namespace vcdim
