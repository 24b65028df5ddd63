#pragma once

#include "ruelle/measure.hpp"
#include "ruelle/shift_space.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle {

/// The reference measure mu with L_p* mu = mu, computed as the left Perron
/// vector at depth max(D, depth p) and marginalized to depth D.  Throws
/// DomainError unless L_p 1 = 1 within 1e-9.
CylinderMeasure stationary_measure(const Potential& p, int depth, const SpectralOptions& opts = {});

/// sup |L_p 1 - 1|.
double normalization_defect(const Potential& p);

/// E_mu(f | F_n) = alpha^n(L_p^n f).
template <typename T>
BasicCylinderFunction<T> conditional_expectation(const Potential& p, const BasicCylinderFunction<T>& f,
                                                 int n) {
  if (n < 0) throw DomainError("negative conditioning level");
  return shift_compose(ruelle_apply(p, f, n), n);
}

/// The Birkhoff cocycles at level n:
///   lambda^[n] = (p p o T ... p o T^{n-1})^{-1},
///   H^{beta[n]} = prod_{j<n} (H o T^j)^beta,
///   Lambda_n = H^{-beta[n]} lambda^[n].
struct CocycleBundle {
  Potential p;
  Potential H;
  double beta;
  int n;
  RealFunction lambda_n;
  RealFunction h_beta_n;
  RealFunction Lambda_n;
};

CocycleBundle cocycles(const Potential& p, const Potential& H, double beta, int n);

/// sup |L_beta^n f - L_p^n(Lambda_n f)|.
double cocycle_identity_residual(const CocycleBundle& c, const CylinderFunction& f);

/// |integral f d(nu_beta) - integral Lambda_n^{-1} E_mu(Lambda_n f | F_n) d(nu_beta)|
/// with nu_beta taken from `triple`.  Throws DepthError if an integrand is
/// deeper than the eigenmeasure.
double eigenmeasure_identity_residual(const Potential& p, const Potential& H, double beta,
                                         const CylinderFunction& f, int n, const SpectralTriple& triple);

/// |integral g d(nu_beta) - lambda^n integral Lambda_n^{-1} (g o T^n) d(nu_beta)|.
double eigenmeasure_intermediate_residual(const Potential& p, const Potential& H, double beta,
                                             const CylinderFunction& g, int n, const SpectralTriple& triple);

struct EquilibriumState {
  double beta;
  CylinderMeasure measure;  // mu_beta = h_beta nu_beta
  double entropy;           // from P = h(mu) - beta * energy
  double pressure;
  double energy;            // integral log H d(mu_beta)
};

EquilibriumState equilibrium_state(const Potential& H, double beta, int depth,
                                   const SpectralOptions& opts = {});

/// max over depth-(D-1) cylinders [w] of |mu(T^{-1}[w]) - mu([w])|.
double shift_invariance_defect(const CylinderMeasure& m);

/// Moves `amount` of mass from cylinder `from` to cylinder `to` (clipped so no
/// mass goes negative) and renormalizes.
CylinderMeasure shifted_measure(const CylinderMeasure& m, std::size_t from, std::size_t to,
                                double amount);

}  // namespace ruelle
