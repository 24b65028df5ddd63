#include "ruelle/transfer.hpp"

#include <algorithm>
#include <numeric>

namespace ruelle {

TransferMatrix::TransferMatrix(Potential weight, int depth)
    : weight_(std::move(weight)),
      depth_(depth),
      k_(static_cast<std::size_t>(weight_.symbols())) {
  if (depth_ < 1) throw DepthError("transfer matrix depth must be >= 1");
  if (depth_ < weight_.depth() - 1) {
    throw DepthError("transfer matrix depth " + std::to_string(depth_) +
                     " too small for a depth-" + std::to_string(weight_.depth()) + " weight");
  }
  dim_ = space().cylinder_count(depth_);
  // The weight is read on the depth-(D+1) words i x.
  const RealFunction w = lift_depth(weight_.function(), depth_ + 1);
  cols_.resize(dim_ * k_);
  entries_.resize(dim_ * k_);
  for (std::size_t x = 0; x < dim_; ++x) {
    for (std::size_t i = 0; i < k_; ++i) {
      const std::size_t z = i * dim_ + x;  // index of (i+1) x at depth D+1
      cols_[x * k_ + i] = z / k_;          // its depth-D prefix
      entries_[x * k_ + i] = w[z];
    }
  }
}

Eigen::MatrixXd TransferMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_),
                                            static_cast<Eigen::Index>(dim_));
  for (std::size_t x = 0; x < dim_; ++x) {
    for (std::size_t i = 0; i < k_; ++i) {
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(cols_[x * k_ + i])) +=
          entries_[x * k_ + i];
    }
  }
  return m;
}

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SpectralTriple leading_triple(const Potential& weight, int depth, const SpectralOptions& opts) {
  weight.require_positive("transfer weight");
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw DomainError("invalid spectral options");
  const TransferMatrix m(weight, depth);
  const std::size_t n = m.dimension();

  std::vector<double> right(n, 1.0);
  std::vector<double> left(n, 1.0 / static_cast<double>(n));
  double res_right = 0.0;
  double res_left = 0.0;
  int it = 0;
  bool converged = false;
  while (it < opts.max_iter) {
    ++it;
    std::vector<double> mr = m.apply<double>(right);
    std::vector<double> ml = m.apply_transpose<double>(left);
    const double lam_r = sum(mr) / sum(right);
    const double lam_l = sum(ml) / sum(left);
    res_right = 0.0;
    for (std::size_t i = 0; i < n; ++i) res_right = std::max(res_right, std::abs(mr[i] - lam_r * right[i]));
    res_right /= max_abs(right);
    res_left = 0.0;
    for (std::size_t i = 0; i < n; ++i) res_left = std::max(res_left, std::abs(ml[i] - lam_l * left[i]));
    res_left /= max_abs(left);

    const double scale_r = max_abs(mr);
    for (std::size_t i = 0; i < n; ++i) right[i] = mr[i] / scale_r;
    const double scale_l = sum(ml);
    for (std::size_t i = 0; i < n; ++i) left[i] = ml[i] / scale_l;

    if (res_right <= opts.tol * std::max(1.0, lam_r) && res_left <= opts.tol * std::max(1.0, lam_l)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                               " iterations",
                           std::max(res_right, res_left));
  }

  const std::vector<double> mr = m.apply<double>(right);
  const double lambda = dot(left, mr) / dot(left, right);
  const double nu_total = sum(left);
  for (double& x : left) x /= nu_total;
  const double h_scale = dot(left, right);
  for (double& x : right) x /= h_scale;

  const std::vector<double> mh = m.apply<double>(right);
  const std::vector<double> mnu = m.apply_transpose<double>(left);
  double final_right = 0.0;
  double final_left = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    final_right = std::max(final_right, std::abs(mh[i] - lambda * right[i]));
    final_left += std::abs(mnu[i] - lambda * left[i]);
  }

  const ShiftSpace& space = weight.space();
  return SpectralTriple{lambda,
                        RealFunction(space, depth, std::move(right)),
                        CylinderMeasure(space, depth, std::move(left)),
                        it,
                        final_right,
                        final_left};
}

Potential gibbs_weight(const Potential& H, double beta) {
  H.require_positive("H");
  return Potential::positive(pow(H.function(), -beta));
}

Potential normalize_potential(const Potential& weight, int depth, const SpectralOptions& opts) {
  const SpectralTriple t = leading_triple(weight, depth, opts);
  const RealFunction& h = t.eigenfunction;
  const RealFunction numerator = weight.function() * h;
  const RealFunction denominator = t.eigenvalue * shift_compose(h);
  return Potential::positive(compact(numerator / denominator));
}

double pressure(const Potential& H, double beta, int depth, const SpectralOptions& opts) {
  return std::log(leading_triple(gibbs_weight(H, beta), depth, opts).eigenvalue);
}

std::vector<PressurePoint> pressure_curve(const Potential& H, const std::vector<double>& betas,
                                          int depth, const SpectralOptions& opts) {
  std::vector<PressurePoint> rows;
  rows.reserve(betas.size());
  for (double beta : betas) {
    const double lambda = leading_triple(gibbs_weight(H, beta), depth, opts).eigenvalue;
    rows.push_back({beta, std::log(lambda), lambda});
  }
  return rows;
}

std::vector<ConvergencePoint> convergence_profile(const Potential& H, double beta,
                                                  const CylinderFunction& f, int depth, int n_max,
                                                  const SpectralOptions& opts) {
  if (f.depth() > depth) throw DepthError("test function deeper than the working depth");
  if (n_max < 0) throw DomainError("negative n_max");
  const Potential w = gibbs_weight(H, beta);
  const SpectralTriple t = leading_triple(w, depth, opts);
  const TransferMatrix m(w, depth);
  const Complex integral = integrate(t.eigenmeasure, f);

  const CylinderFunction lifted = lift_depth(f, depth);
  std::vector<Complex> v(lifted.values().begin(), lifted.values().end());
  std::vector<ConvergencePoint> out;
  for (int n = 0; n <= n_max; ++n) {
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      err = std::max(err, std::abs(v[i] - integral * t.eigenfunction[i]));
    }
    out.push_back({n, err});
    v = m.apply<Complex>(v);
    for (auto& z : v) z /= t.eigenvalue;
  }
  return out;
}

double fitted_decay_rate(const std::vector<ConvergencePoint>& profile, double floor) {
  if (profile.empty()) return 0.0;
  const double cut = floor * profile.front().sup_error;
  std::vector<double> ratios;
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile[i - 1].sup_error > cut && profile[i].sup_error > cut) {
      ratios.push_back(profile[i].sup_error / profile[i - 1].sup_error);
    }
  }
  if (ratios.empty()) return 0.0;
  // later ratios are closer to the asymptotic rate
  std::vector<double> tail(ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2), ratios.end());
  std::nth_element(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(tail.size() / 2), tail.end());
  return tail[tail.size() / 2];
}

}  // namespace ruelle
