#pragma once

// A renewal-type potential on the two-symbol shift.
//
// In the model's own alphabet {0, 1}, M_0 = [0] and M_k = [1^k 0].  The
// potential is g = a_k on M_k with
//   a_0 = -log zeta(gamma),   a_k = -gamma log((k+1)/k),
// so that e^{s_k} = (k+1)^{-gamma} / zeta(gamma) where s_k = a_0 + ... + a_k.
// H = e^{-g}, which equals 1 only at the fixed point 111....
//
// When a model word is mapped to the library's shift space, model symbol 0 is
// library symbol 1 and model symbol 1 is library symbol 2.

#include <cstddef>
#include <vector>

#include "ruelle/shift_space.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle {

/// Hurwitz zeta sum_{n>=0} (n + a)^{-s} for s > 1, a > 0.
double hurwitz_zeta(double s, double a);

/// Riemann zeta for s > 1, accurate to ~1e-15 relative.  DomainError if s <= 1.
double zeta(double s);

struct FFParams {
  double gamma = 3.0;
  std::size_t k_max = 10'000;
  double tol = 1e-10;

  /// gamma > 2, k_max >= 8, tol > 0; DomainError otherwise.
  void validate() const;
};

/// Upper bound (k_max+1)^{1-gamma}/(gamma-1) for sum_{k>k_max} (k+1)^{-gamma}.
double ff_tail_bound(const FFParams& params);

class FFModel {
 public:
  explicit FFModel(FFParams params);

  const FFParams& params() const noexcept { return params_; }
  std::size_t k_max() const noexcept { return params_.k_max; }
  double gamma() const noexcept { return params_.gamma; }
  double zeta_gamma() const noexcept { return zeta_gamma_; }
  double zeta_gamma_minus_1() const noexcept { return zeta_gamma_minus_1_; }

  // These accept any k >= 0; past k_max they use the closed forms.
  double a(std::size_t k) const;
  double s(std::size_t k) const;
  /// H on M_k.
  double H(std::size_t k) const { return std::exp(-a(k)); }
  /// nu(M_k) = e^{s_k}.
  double mass(std::size_t k) const;
  /// nu(union_{i>=k} M_i) = nu([1^k]).
  double tail_mass(std::size_t k) const;

  const std::vector<double>& masses() const noexcept { return masses_; }

  /// sum_{k<=k_max} e^{s_k} and 1 minus it.
  double mass_sum() const noexcept { return mass_sum_; }
  double mass_deficit() const noexcept { return 1.0 - mass_sum_; }

  /// nu of the cylinder given by a word over {0, 1}: the product of e^{s_k}
  /// over its complete blocks 1^k 0, times nu([1^r]) for a trailing 1^r.
  double cylinder_mass(const std::vector<int>& word) const;

  /// h~_t = nu(t)^{-1} sum_{i>=t} nu(i), for t <= k_max.
  double htilde(std::size_t t) const;
  const std::vector<double>& htilde_table() const noexcept { return htilde_; }

  /// zeta(gamma) / zeta(gamma - 1).
  double u() const noexcept { return u_; }
  /// 1 / sum_{t>=1} t nu(t-1), summed directly to k_max+1 plus a closed-form tail.
  double u_series() const;

  /// mu~(M_k) = u h~_k nu(k) = u nu([1^k]).
  double equilibrium_mass(std::size_t k) const { return u_ * tail_mass(k); }

  /// max_{t <= k_max-1} |e^{a_0} h~_0 + e^{a_{t+1}} h~_{t+1} - h~_t|.
  double eigen_identity_residual() const;

  /// max_{1 <= k <= k_max} |nu(M_k) - e^{a_k} nu(M_{k-1})| together with |nu(M_0) - e^{a_0}|.
  double dual_balance_residual() const;

 private:
  FFParams params_;
  double zeta_gamma_;
  double zeta_gamma_minus_1_;
  double u_;
  double mass_sum_ = 0.0;
  std::vector<double> masses_;  // e^{s_k}, k = 0..k_max
  std::vector<double> tails_;   // nu([1^k]), k = 0..k_max
  std::vector<double> htilde_;  // k = 0..k_max
};

/// P(beta g), the root of sum_k e^{beta s_k - (k+1) P} = 1 for beta < 1 and 0
/// for beta >= 1.  ConvergenceError if the root cannot be bracketed.
double ff_pressure(const FFParams& params, double beta);

struct FFPressurePoint {
  double beta;
  double pressure;
};

std::vector<FFPressurePoint> ff_pressure_curve(const FFParams& params, const std::vector<double>& betas);

/// A function constant on M_0, ..., M_{L-2} with its last value used on all
/// M_k, k >= L-1.
using PartitionFunction = std::vector<double>;

/// psi_{nu_1}(M_f e_n M_g) = 2^{-n} integral f g d(nu_1).  DomainError if a
/// table is empty or longer than k_max + 1.
double ff_kms_functional(const FFModel& model, const PartitionFunction& f, int n, const PartitionFunction& g);

struct FFEquilibrium {
  double entropy;
  double energy;  // integral log H
  double variational_value() const { return entropy - energy; }
};

/// mu~ = u h~ nu_1, with entropy from its Jacobian e^g h~ / h~ o T.
FFEquilibrium ff_equilibrium_tilde(const FFModel& model);

/// The point mass at 111...: entropy 0 and energy log H(111...) = 0.
FFEquilibrium ff_equilibrium_fixed_point();

/// H = e^{-g} read at depth d on the two-symbol shift, with M_k for k >= d merged into [1^d].
Potential ff_surrogate(const FFModel& model, int depth);

}  // namespace ruelle
