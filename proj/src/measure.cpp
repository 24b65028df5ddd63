#include "ruelle/measure.hpp"

#include <numeric>

namespace ruelle {

namespace {

constexpr double kMassTolerance = 1e-12;

}  // namespace

CylinderMeasure::CylinderMeasure(ShiftSpace space, int depth, std::vector<double> masses)
    : space_(space), depth_(depth), masses_(std::move(masses)) {
  if (masses_.size() != space_.cylinder_count(depth_)) {
    throw DomainError("measure of depth " + std::to_string(depth_) + " needs " +
                      std::to_string(space_.cylinder_count(depth_)) + " masses");
  }
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("negative or non-finite cylinder mass");
  }
  const double total = total_mass();
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw DomainError("cylinder masses sum to " + std::to_string(total) + ", not 1");
  }
}

CylinderMeasure CylinderMeasure::from_weights(ShiftSpace space, int depth,
                                              std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("negative measure weight");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("measure weights have zero total");
  for (double& w : weights) w /= total;
  return CylinderMeasure(space, depth, std::move(weights));
}

CylinderMeasure CylinderMeasure::uniform(ShiftSpace space, int depth) {
  const std::size_t n = space.cylinder_count(depth);
  return CylinderMeasure(space, depth, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

CylinderMeasure CylinderMeasure::bernoulli(ShiftSpace space, int depth,
                                           const std::vector<double>& probs) {
  if (probs.size() != static_cast<std::size_t>(space.symbols())) {
    throw DomainError("Bernoulli measure needs one probability per symbol");
  }
  const std::size_t n = space.cylinder_count(depth);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Word word = word_at(space, depth, i);
    double m = 1.0;
    for (int s : word.symbols) m *= probs[static_cast<std::size_t>(s - 1)];
    w[i] = m;
  }
  return from_weights(space, depth, std::move(w));
}

double CylinderMeasure::mass(const Word& w) const {
  if (w.depth() > depth_) throw DepthError("cylinder deeper than the measure");
  const std::size_t stride = detail::ipow(symbols(), depth_ - w.depth());
  const std::size_t first = word_index(space_, w) * stride;
  double m = 0.0;
  for (std::size_t i = first; i < first + stride; ++i) m += masses_[i];
  return m;
}

CylinderMeasure CylinderMeasure::marginal(int depth) const {
  if (depth > depth_) throw DepthError("marginal deeper than the measure");
  if (depth == depth_) return *this;
  const std::size_t stride = detail::ipow(symbols(), depth_ - depth);
  std::vector<double> m(space_.cylinder_count(depth), 0.0);
  for (std::size_t i = 0; i < masses_.size(); ++i) m[i / stride] += masses_[i];
  return CylinderMeasure(space_, depth, std::move(m));
}

double CylinderMeasure::total_mass() const {
  return std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

double total_variation(const CylinderMeasure& a, const CylinderMeasure& b) {
  detail::require_same_space(a.space(), b.space());
  const int depth = std::min(a.depth(), b.depth());
  const CylinderMeasure ma = a.marginal(depth);
  const CylinderMeasure mb = b.marginal(depth);
  double d = 0.0;
  for (std::size_t i = 0; i < ma.masses().size(); ++i) d += std::abs(ma[i] - mb[i]);
  return 0.5 * d;
}

}  // namespace ruelle
