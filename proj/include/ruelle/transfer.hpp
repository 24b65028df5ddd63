#pragma once

// Ruelle-Perron-Frobenius operators on full-shift cylinder functions.
//
// Every operator here is described by its weight W = e^A > 0 (or any real W
// for plain application):  (L_W f)(x) = sum_{i=1..k} W(i x) f(i x).
// The operator of -beta log H has weight H^{-beta}; see gibbs_weight().

#include <Eigen/Dense>
#include <vector>

#include "ruelle/measure.hpp"
#include "ruelle/shift_space.hpp"

namespace ruelle {

/// Exact branch sum.  The result has depth max(depth W, depth f) - 1
/// (0 when both are constant).
template <typename T>
BasicCylinderFunction<T> ruelle_apply(const Potential& weight, const BasicCylinderFunction<T>& f) {
  detail::require_same_space(weight.space(), f.space());
  const int depth = std::max(weight.depth(), f.depth());
  const auto k = static_cast<std::size_t>(f.symbols());
  if (depth == 0) {
    return BasicCylinderFunction<T>::constant(f.space(),
                                              static_cast<double>(k) * weight.function()[0] * f[0]);
  }
  const RealFunction w = lift_depth(weight.function(), depth);
  const BasicCylinderFunction<T> g = lift_depth(f, depth);
  const std::size_t n = f.space().cylinder_count(depth - 1);
  std::vector<T> out(n, T(0));
  for (std::size_t x = 0; x < n; ++x) {
    T acc(0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t z = i * n + x;  // the word (i+1) x
      acc += w[z] * g[z];
    }
    out[x] = acc;
  }
  return BasicCylinderFunction<T>(f.space(), depth - 1, std::move(out));
}

/// L_W^n f.
template <typename T>
BasicCylinderFunction<T> ruelle_apply(const Potential& weight, BasicCylinderFunction<T> f, int n) {
  if (n < 0) throw DomainError("negative operator power");
  for (int j = 0; j < n; ++j) f = ruelle_apply(weight, f);
  return f;
}

/// The matrix of L_W on depth-D cylinder functions, results lifted back to
/// depth D.  Row x has exactly k nonzero candidates, at the columns of the
/// depth-D prefixes of the words i x; they are stored in that compact form and
/// expanded by dense().
class TransferMatrix {
 public:
  /// Requires D >= 1 and D >= depth(W) - 1.
  TransferMatrix(Potential weight, int depth);

  const Potential& weight() const noexcept { return weight_; }
  const ShiftSpace& space() const noexcept { return weight_.space(); }
  int depth() const noexcept { return depth_; }
  std::size_t dimension() const noexcept { return dim_; }

  /// (row x, branch i) -> column and entry.
  std::size_t column(std::size_t row, std::size_t branch) const { return cols_[row * k_ + branch]; }
  double entry(std::size_t row, std::size_t branch) const { return entries_[row * k_ + branch]; }

  template <typename T>
  std::vector<T> apply(std::span<const T> v) const {
    std::vector<T> out(dim_, T(0));
    for (std::size_t x = 0; x < dim_; ++x) {
      T acc(0);
      for (std::size_t i = 0; i < k_; ++i) acc += entries_[x * k_ + i] * v[cols_[x * k_ + i]];
      out[x] = acc;
    }
    return out;
  }

  /// v^T M, accumulated in ascending row order.
  template <typename T>
  std::vector<T> apply_transpose(std::span<const T> v) const {
    std::vector<T> out(dim_, T(0));
    for (std::size_t x = 0; x < dim_; ++x) {
      for (std::size_t i = 0; i < k_; ++i) out[cols_[x * k_ + i]] += entries_[x * k_ + i] * v[x];
    }
    return out;
  }

  template <typename T>
  BasicCylinderFunction<T> apply(const BasicCylinderFunction<T>& f) const {
    const auto lifted = lift_depth(f, depth_);
    return BasicCylinderFunction<T>(space(), depth_, apply<T>(lifted.values()));
  }

  Eigen::MatrixXd dense() const;

 private:
  Potential weight_;
  int depth_;
  std::size_t k_;
  std::size_t dim_;
  std::vector<std::size_t> cols_;
  std::vector<double> entries_;
};

struct SpectralOptions {
  double tol = 1e-12;
  int max_iter = 100'000;
};

/// Leading eigenvalue, eigenfunction and eigenmeasure of a transfer operator.
struct SpectralTriple {
  double eigenvalue;
  RealFunction eigenfunction;     // h > 0, normalized by integral h d(nu) = 1
  CylinderMeasure eigenmeasure;   // nu, total mass 1
  int iterations;
  double right_residual;          // sup |L h - lambda h|
  double left_residual;           // l1 |L* nu - lambda nu|
};

/// Power iteration on the depth-D matrix and its transpose.  Throws
/// PositivityError for a non-positive weight and ConvergenceError after
/// max_iter iterations.
SpectralTriple leading_triple(const Potential& weight, int depth, const SpectralOptions& opts = {});

/// The weight H^{-beta} of the operator for -beta log H.
Potential gibbs_weight(const Potential& H, double beta);

/// The normalized Jacobian p = W h / (lambda h o T); L_p 1 = 1.
Potential normalize_potential(const Potential& weight, int depth, const SpectralOptions& opts = {});

/// P_H(beta) = log lambda_{H,beta}.
double pressure(const Potential& H, double beta, int depth, const SpectralOptions& opts = {});

struct PressurePoint {
  double beta;
  double pressure;
  double lambda;
};

std::vector<PressurePoint> pressure_curve(const Potential& H, const std::vector<double>& betas,
                                          int depth, const SpectralOptions& opts = {});

struct ConvergencePoint {
  int n;
  double sup_error;
};

/// sup |L^n f / lambda^n - h * integral f d(nu)| for n = 0..n_max.
std::vector<ConvergencePoint> convergence_profile(const Potential& H, double beta,
                                                  const CylinderFunction& f, int depth, int n_max,
                                                  const SpectralOptions& opts = {});

/// Geometric decay rate fitted to the tail of a convergence profile
/// (median of successive error ratios over points above `floor` times the
/// initial error, which keeps the eigenvector round-off plateau out of the fit).
double fitted_decay_rate(const std::vector<ConvergencePoint>& profile, double floor = 1e-8);

}  // namespace ruelle
