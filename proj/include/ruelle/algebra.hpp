#pragma once

// Finite sums of generators M_f e_n M_g, e_n = S^n (S*)^n, acting on
// L^2(mu) through their exact matrices on depth-D cylinder functions.
//
// S is the Koopman operator eta -> eta o T and S* = L_p, so that
//   M_f e_n M_g (eta) = f E_mu(g eta | F_n).
// Products are reduced with
//   (M_f e_n M_g)(M_h e_m M_k) = M_{f E_n(gh)} e_m M_k      if n <= m,
//                              = M_f e_n M_{E_m(gh) k}      if n >  m.

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "ruelle/gibbs.hpp"
#include "ruelle/measure.hpp"
#include "ruelle/shift_space.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle {

struct GeneratorTerm {
  CylinderFunction f;
  int level;
  CylinderFunction g;
};

std::string describe(const GeneratorTerm& t);

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::vector<GeneratorTerm> terms);

  static AlgebraElement identity(const ShiftSpace& space);
  static AlgebraElement term(CylinderFunction f, int level, CylinderFunction g);
  /// M_f, i.e. the term (f, 0, 1).
  static AlgebraElement multiplication(CylinderFunction f);

  const std::vector<GeneratorTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  AlgebraElement operator+(const AlgebraElement& other) const;
  AlgebraElement scaled(Complex c) const;

 private:
  std::vector<GeneratorTerm> terms_;
};

/// The reference data every element is realized against: the normalized
/// Jacobian p, its stationary measure mu and the working depth D.
struct AlgebraContext {
  Potential p;
  CylinderMeasure mu;
  int depth;

  static AlgebraContext make(const Potential& p, int depth, const SpectralOptions& opts = {});
  const ShiftSpace& space() const noexcept { return p.space(); }
};

/// A term fits depth D iff max(depth f, depth g) <= D and depth(p)+n-1 <= D.
bool fits_budget(const GeneratorTerm& t, const AlgebraContext& ctx);
void check_budget(const GeneratorTerm& t, const AlgebraContext& ctx);

Eigen::MatrixXcd to_matrix(const AlgebraElement& a, const AlgebraContext& ctx);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const AlgebraContext& ctx);

/// (f, n, g) -> (conj g, n, conj f).
AlgebraElement adjoint(const AlgebraElement& a);

/// The adjoint of a matrix for <u, v> = sum mu_i u_i conj(v_i).
Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& m, const CylinderMeasure& mu);

/// sigma_t for the flow of H; t may be complex (t = i beta is KMS time).
struct ModularFlow {
  Potential H;
  Complex t;

  static ModularFlow real_time(Potential H, double t) { return {std::move(H), Complex(t, 0.0)}; }
  static ModularFlow imaginary_time(Potential H, double beta) {
    return {std::move(H), Complex(0.0, beta)};
  }
};

/// (f, m, g) -> (f H^{ti[m]}, m, H^{-ti[m]} g).
AlgebraElement sigma(const AlgebraElement& a, const ModularFlow& flow);

/// psi_nu(M_f e_n M_g) = integral f g lambda^{-[n]} d(nu), with lambda^{-[n]} = p^[n].
struct StateFunctional {
  CylinderMeasure nu;
  Potential p;
};

Complex kms_functional(const StateFunctional& psi, const AlgebraElement& a);

/// |psi(a b) - psi(b sigma_{i beta}(a))|.
double kms_residual(const StateFunctional& psi, const Potential& H, double beta,
                    const GeneratorTerm& a, const GeneratorTerm& b, const AlgebraContext& ctx);

/// Constant 1 followed by the indicators of every cylinder of depth 1..max_depth.
std::vector<CylinderFunction> battery_functions(const ShiftSpace& space, int max_depth);

/// All (f, n, g) with f, g from battery_functions and n = 0..max_level.
std::vector<GeneratorTerm> battery_terms(const ShiftSpace& space, int max_function_depth,
                                         int max_level);

struct BatteryFailure {
  GeneratorTerm a;
  GeneratorTerm b;
  double residual;
};

struct KmsBatteryReport {
  double beta;
  std::size_t battery_size;  // number of (a, b) pairs
  double max_residual;
  std::vector<BatteryFailure> failures;  // pairs above the tolerance
};

/// Every ordered pair of `terms`; sigma_{i beta} is applied once per term.
KmsBatteryReport kms_battery(const StateFunctional& psi, const Potential& H, double beta,
                             const std::vector<GeneratorTerm>& terms, const AlgebraContext& ctx,
                             double tol);

struct NamedResidual {
  std::string name;
  double residual;
};

struct RelationReport {
  std::vector<NamedResidual> entries;
  double max_residual() const;
};

/// Matrix identities between S, S*, M_f and the conditional expectations
/// (S* S = 1 and its powers, S M_f = M_{alpha f} S, e_n = E(. | F_n) and its
/// products with multiplications, the two product rules), the partition of unity sum_i M_{u_i} S S* M_{u_i} = 1
/// with u_i = (1_[i] / p)^{1/2}, its n-step expansion, and the
/// L^2(mu)-adjointness of S and L_p.  Levels that do not fit the context
/// depth are skipped.
RelationReport relation_suite(const AlgebraContext& ctx, const std::vector<CylinderFunction>& functions,
                              int max_level);

/// Random complex cylinder function of the given depth, values in the unit square.
CylinderFunction random_function(const ShiftSpace& space, int depth, std::mt19937_64& rng);

/// Random finite sum of generator terms with function depth <= max_function_depth.
AlgebraElement random_element(const ShiftSpace& space, std::mt19937_64& rng, int n_terms,
                              int max_function_depth, int max_level);

struct StateAxiomReport {
  Complex psi_identity;
  double min_positive_real;   // min Re psi(b b*)
  double max_positive_imag;   // max |Im psi(b b*)|
  double max_adjoint_defect;  // max |psi(a*) - conj psi(a)|
  int trials;
  bool passed;
};

StateAxiomReport state_axioms_check(const StateFunctional& psi, const AlgebraContext& ctx, int trials,
                                    std::mt19937_64& rng, int max_level = 2);

struct ProbePoint {
  int n;
  double distance;       // total variation to nu_beta on depth-D cylinders
  double normalization;  // the unnormalized functional at f = 1
};

/// Iterates f -> integral Lambda_n^{-1} alpha^n(L_beta^n f) d(rho0), renormalized
/// at f = 1, for n = 0..n_max, and compares with nu_beta.
std::vector<ProbePoint> uniqueness_probe(const Potential& p, const Potential& H, double beta,
                                         const CylinderMeasure& rho0, int n_max,
                                         const SpectralOptions& opts = {});

}  // namespace ruelle
