#include "ruelle/gibbs.hpp"

namespace ruelle {

namespace {

constexpr double kNormalizationTolerance = 1e-9;

template <typename T>
T integrate_tight(const CylinderMeasure& m, const BasicCylinderFunction<T>& f) {
  return integrate(m, f.depth() > m.depth() ? compact(f) : f);
}

}  // namespace

double normalization_defect(const Potential& p) {
  const RealFunction one = RealFunction::constant(p.space(), 1.0);
  return sup_distance(ruelle_apply(p, one), one);
}

CylinderMeasure stationary_measure(const Potential& p, int depth, const SpectralOptions& opts) {
  if (depth < 0) throw DepthError("negative measure depth");
  const double defect = normalization_defect(p);
  if (defect > kNormalizationTolerance) {
    throw DomainError("potential is not normalized: sup |L_p 1 - 1| = " + std::to_string(defect));
  }
  const int working = std::max({depth, p.depth(), 1});
  return leading_triple(p, working, opts).eigenmeasure.marginal(depth);
}

CocycleBundle cocycles(const Potential& p, const Potential& H, double beta, int n) {
  p.require_positive("p");
  H.require_positive("H");
  if (n < 0) throw DomainError("negative cocycle level");
  RealFunction lambda_n = reciprocal(birkhoff_product(p.function(), n));
  RealFunction h_beta_n = pow(birkhoff_product(H.function(), n), beta);
  RealFunction Lambda_n = reciprocal(h_beta_n) * lambda_n;
  return CocycleBundle{p, H, beta, n, std::move(lambda_n), std::move(h_beta_n), std::move(Lambda_n)};
}

double cocycle_identity_residual(const CocycleBundle& c, const CylinderFunction& f) {
  const Potential weight = gibbs_weight(c.H, c.beta);
  const CylinderFunction lhs = ruelle_apply(weight, f, c.n);
  const CylinderFunction rhs = ruelle_apply(c.p, to_complex(c.Lambda_n) * f, c.n);
  return sup_distance(lhs, rhs);
}

double eigenmeasure_identity_residual(const Potential& p, const Potential& H, double beta,
                                         const CylinderFunction& f, int n, const SpectralTriple& triple) {
  const CocycleBundle c = cocycles(p, H, beta, n);
  const CylinderFunction Lambda = to_complex(c.Lambda_n);
  const CylinderFunction inv = to_complex(reciprocal(c.Lambda_n));
  const CylinderFunction rhs_integrand = inv * conditional_expectation(p, Lambda * f, n);
  const Complex lhs = integrate_tight(triple.eigenmeasure, f);
  const Complex rhs = integrate_tight(triple.eigenmeasure, rhs_integrand);
  return std::abs(lhs - rhs);
}

double eigenmeasure_intermediate_residual(const Potential& p, const Potential& H, double beta,
                                             const CylinderFunction& g, int n, const SpectralTriple& triple) {
  const CocycleBundle c = cocycles(p, H, beta, n);
  const CylinderFunction integrand = to_complex(reciprocal(c.Lambda_n)) * shift_compose(g, n);
  const Complex lhs = integrate_tight(triple.eigenmeasure, g);
  const Complex rhs = std::pow(triple.eigenvalue, n) * integrate_tight(triple.eigenmeasure, integrand);
  return std::abs(lhs - rhs);
}

EquilibriumState equilibrium_state(const Potential& H, double beta, int depth,
                                   const SpectralOptions& opts) {
  const SpectralTriple t = leading_triple(gibbs_weight(H, beta), depth, opts);
  std::vector<double> w(t.eigenmeasure.masses().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.eigenfunction[i] * t.eigenmeasure[i];
  CylinderMeasure mu = CylinderMeasure::from_weights(H.space(), depth, std::move(w));
  const double energy = integrate(mu, log(H.function()));
  const double p = std::log(t.eigenvalue);
  return EquilibriumState{beta, std::move(mu), p + beta * energy, p, energy};
}

double shift_invariance_defect(const CylinderMeasure& m) {
  if (m.depth() < 1) return 0.0;
  const std::size_t n = m.space().cylinder_count(m.depth() - 1);
  const auto k = static_cast<std::size_t>(m.symbols());
  const CylinderMeasure shallow = m.marginal(m.depth() - 1);
  double worst = 0.0;
  for (std::size_t w = 0; w < n; ++w) {
    double preimage = 0.0;
    for (std::size_t i = 0; i < k; ++i) preimage += m[i * n + w];
    worst = std::max(worst, std::abs(preimage - shallow[w]));
  }
  return worst;
}

CylinderMeasure shifted_measure(const CylinderMeasure& m, std::size_t from, std::size_t to,
                                double amount) {
  std::vector<double> w(m.masses().begin(), m.masses().end());
  if (from >= w.size() || to >= w.size()) throw DomainError("cylinder index out of range");
  const double moved = std::min(amount, w[from]);
  w[from] -= moved;
  w[to] += amount;
  return CylinderMeasure::from_weights(m.space(), m.depth(), std::move(w));
}

}  // namespace ruelle
