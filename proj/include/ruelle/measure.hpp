#pragma once

#include <vector>

#include "ruelle/shift_space.hpp"

namespace ruelle {

/// A probability on the depth-D cylinder algebra.
class CylinderMeasure {
 public:
  /// Masses must be nonnegative and sum to 1 within 1e-12.
  CylinderMeasure(ShiftSpace space, int depth, std::vector<double> masses);

  /// Normalizes nonnegative weights to total mass 1.
  static CylinderMeasure from_weights(ShiftSpace space, int depth, std::vector<double> weights);
  static CylinderMeasure uniform(ShiftSpace space, int depth);
  /// Product measure with the given one-symbol probabilities.
  static CylinderMeasure bernoulli(ShiftSpace space, int depth, const std::vector<double>& probs);

  const ShiftSpace& space() const noexcept { return space_; }
  int symbols() const noexcept { return space_.symbols(); }
  int depth() const noexcept { return depth_; }
  std::span<const double> masses() const noexcept { return masses_; }
  double operator[](std::size_t i) const { return masses_[i]; }

  /// Mass of [w]; |w| may be at most depth().
  double mass(const Word& w) const;
  /// Masses summed down to a shallower depth.
  CylinderMeasure marginal(int depth) const;
  double total_mass() const;

 private:
  ShiftSpace space_;
  int depth_;
  std::vector<double> masses_;
};

template <typename T>
T integrate(const CylinderMeasure& m, const BasicCylinderFunction<T>& f) {
  if (f.depth() > m.depth()) {
    throw DepthError("cannot integrate a depth-" + std::to_string(f.depth()) +
                     " function against a depth-" + std::to_string(m.depth()) + " measure");
  }
  detail::require_same_space(m.space(), f.space());
  const std::size_t stride = detail::ipow(m.symbols(), m.depth() - f.depth());
  T acc(0);
  for (std::size_t i = 0; i < m.masses().size(); ++i) acc += f[i / stride] * m[i];
  return acc;
}

/// Half the l1 distance between the two measures, compared at the shallower depth.
double total_variation(const CylinderMeasure& a, const CylinderMeasure& b);

}  // namespace ruelle
