#include "ruelle/ff_model.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <string>

namespace ruelle {

namespace {

// B_{2j} / (2j)!, j = 1..8
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

}  // namespace

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw DomainError("zeta series diverges for s <= 1 (s = " + std::to_string(s) + ")");
  if (!(a > 0.0)) throw DomainError("Hurwitz zeta needs a > 0");
  // Euler-Maclaurin from N = a + M with N >= 16
  const int m = a >= 16.0 ? 0 : static_cast<int>(std::ceil(16.0 - a));
  double head = 0.0;
  for (int n = m - 1; n >= 0; --n) head += std::pow(n + a, -s);
  const double x = a + m;
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;  // s (s+1) ... (s+2j-2)
  double power = std::pow(x, -s - 1.0);
  for (int j = 0; j < 8; ++j) {
    const double term = kBernoulliOverFactorial[j] * rising * power;
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    power /= x * x;
  }
  return head + tail;
}

double zeta(double s) { return hurwitz_zeta(s, 1.0); }

void FFParams::validate() const {
  if (!(gamma > 2.0)) {
    throw DomainError("gamma must exceed 2 for an integrable eigenfunction (gamma = " + std::to_string(gamma) + ")");
  }
  if (k_max < 8) throw DomainError("k_max must be at least 8");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
}

double ff_tail_bound(const FFParams& params) {
  return std::pow(static_cast<double>(params.k_max) + 1.0, 1.0 - params.gamma) / (params.gamma - 1.0);
}

FFModel::FFModel(FFParams params) : params_(params) {
  params_.validate();
  const double g = params_.gamma;
  const std::size_t kmax = params_.k_max;
  zeta_gamma_ = zeta(g);
  zeta_gamma_minus_1_ = zeta(g - 1.0);
  u_ = zeta_gamma_ / zeta_gamma_minus_1_;

  masses_.resize(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) masses_[k] = std::pow(static_cast<double>(k) + 1.0, -g) / zeta_gamma_;
  mass_sum_ = 0.0;
  for (std::size_t k = kmax + 1; k-- > 0;) mass_sum_ += masses_[k];

  tails_.resize(kmax + 1);
  htilde_.resize(kmax + 1);
  tails_[kmax] = hurwitz_zeta(g, static_cast<double>(kmax) + 1.0) / zeta_gamma_;
  for (std::size_t t = kmax; t-- > 0;) tails_[t] = masses_[t] + tails_[t + 1];
  for (std::size_t t = 0; t <= kmax; ++t) htilde_[t] = tails_[t] / masses_[t];
}

double FFModel::a(std::size_t k) const {
  if (k == 0) return -std::log(zeta_gamma_);
  const double kd = static_cast<double>(k);
  return -params_.gamma * std::log1p(1.0 / kd);
}

double FFModel::s(std::size_t k) const {
  return -std::log(zeta_gamma_) - params_.gamma * std::log(static_cast<double>(k) + 1.0);
}

double FFModel::mass(std::size_t k) const {
  if (k < masses_.size()) return masses_[k];
  return std::pow(static_cast<double>(k) + 1.0, -params_.gamma) / zeta_gamma_;
}

double FFModel::tail_mass(std::size_t k) const {
  if (k < tails_.size()) return tails_[k];
  return hurwitz_zeta(params_.gamma, static_cast<double>(k) + 1.0) / zeta_gamma_;
}

double FFModel::cylinder_mass(const std::vector<int>& word) const {
  double m = 1.0;
  std::size_t run = 0;
  for (int b : word) {
    if (b == 1) {
      ++run;
    } else if (b == 0) {
      m *= mass(run);
      run = 0;
    } else {
      throw DomainError("model words use the symbols 0 and 1");
    }
  }
  return m * tail_mass(run);
}

double FFModel::htilde(std::size_t t) const {
  if (t >= htilde_.size()) throw DomainError("h~ is tabulated up to k_max only");
  return htilde_[t];
}

double FFModel::u_series() const {
  const std::size_t kmax = params_.k_max;
  double sum = 0.0;
  for (std::size_t t = kmax + 1; t >= 1; --t) sum += static_cast<double>(t) * mass(t - 1);
  // sum_{t > k_max+1} t^{1-gamma} / zeta(gamma)
  sum += hurwitz_zeta(params_.gamma - 1.0, static_cast<double>(kmax) + 2.0) / zeta_gamma_;
  return 1.0 / sum;
}

double FFModel::eigen_identity_residual() const {
  const double zero_branch = std::exp(a(0)) * htilde_[0];
  double worst = 0.0;
  for (std::size_t t = 0; t + 1 <= params_.k_max; ++t) {
    const double lh = zero_branch + std::exp(a(t + 1)) * htilde_[t + 1];
    worst = std::max(worst, std::abs(lh - htilde_[t]));
  }
  return worst;
}

double FFModel::dual_balance_residual() const {
  double worst = std::abs(masses_[0] - std::exp(a(0)));
  for (std::size_t k = 1; k <= params_.k_max; ++k) {
    worst = std::max(worst, std::abs(masses_[k] - std::exp(a(k)) * masses_[k - 1]));
  }
  return worst;
}

namespace {

// sum_{n>=1} n^{-s} e^{-nP}, P > 0
double renewal_sum(double s, double P) {
  constexpr int kDirect = 2000;
  double direct = 0.0;
  for (int n = kDirect - 1; n >= 1; --n) direct += std::pow(n, -s) * std::exp(-n * P);
  // Euler-Maclaurin tail from N
  const double N = kDirect;
  const double phi = std::pow(N, -s) * std::exp(-N * P);
  if (phi == 0.0) return direct;
  boost::math::quadrature::exp_sinh<double> integrator;
  const double integral = std::exp(-N * P) * std::pow(N, -s) *
                          integrator.integrate([&](double t) { return std::pow(1.0 + t / N, -s) * std::exp(-P * t); },
                                               1e-14);
  const double q = s / N + P;
  const double d1 = -q * phi;
  const double d3 = -(q * q * q + 3.0 * q * s / (N * N) + 2.0 * s / (N * N * N)) * phi;
  return direct + integral + 0.5 * phi - d1 / 12.0 + d3 / 720.0;
}

}  // namespace

double ff_pressure(const FFParams& params, double beta) {
  params.validate();
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");
  if (beta >= 1.0) return 0.0;
  const double s = beta * params.gamma;
  const double c = std::pow(zeta(params.gamma), -beta);
  const auto F = [&](double P) {
    if (P == 0.0) return s > 1.0 ? c * zeta(s) - 1.0 : std::numeric_limits<double>::infinity();
    return c * renewal_sum(s, P) - 1.0;
  };

  double hi = 1.0;
  while (F(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e4) throw ConvergenceError("could not bracket the pressure root from above", hi);
  }
  double lo = 0.0;
  double f_lo = F(0.0);
  if (s <= 1.0) {
    lo = hi;
    int halvings = 0;
    do {
      lo *= 0.5;
      f_lo = F(lo);
      if (++halvings > 200) throw ConvergenceError("could not bracket the pressure root from below", lo);
    } while (f_lo <= 0.0);
  } else if (f_lo <= 0.0) {
    return 0.0;  // beta so close to 1 that the renewal sum at P = 0 is 1
  }
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(F, lo, hi, f_lo, F(hi),
                                                       boost::math::tools::eps_tolerance<double>(50), iters);
  if (iters >= 200) throw ConvergenceError("pressure root finder did not converge", root.second - root.first);
  return 0.5 * (root.first + root.second);
}

std::vector<FFPressurePoint> ff_pressure_curve(const FFParams& params, const std::vector<double>& betas) {
  std::vector<FFPressurePoint> out;
  out.reserve(betas.size());
  for (double b : betas) out.push_back({b, ff_pressure(params, b)});
  return out;
}

double ff_kms_functional(const FFModel& model, const PartitionFunction& f, int n, const PartitionFunction& g) {
  if (n < 0) throw DomainError("negative generator level");
  const std::size_t limit = model.k_max() + 1;
  for (const PartitionFunction* t : {&f, &g}) {
    if (t->empty() || t->size() > limit) {
      throw DomainError("partition function must have between 1 and k_max + 1 values");
    }
  }
  const std::size_t len = std::max(f.size(), g.size());
  const auto at = [](const PartitionFunction& v, std::size_t k) { return v[std::min(k, v.size() - 1)]; };
  double sum = at(f, len - 1) * at(g, len - 1) * model.tail_mass(len - 1);
  for (std::size_t k = len - 1; k-- > 0;) sum += at(f, k) * at(g, k) * model.mass(k);
  return std::ldexp(sum, -n);
}

FFEquilibrium ff_equilibrium_tilde(const FFModel& model) {
  const std::size_t kmax = model.k_max();
  const double u = model.u();
  const auto& h = model.htilde_table();
  // entropy = -integral log J, J = e^{a_k} h~_k / h~_{k-1} on M_k (k >= 1),
  // and e^{a_0} h~_0 / h~_j on M_0 intersect T^{-1} M_j
  double entropy = 0.0;
  double energy = 0.0;
  for (std::size_t k = kmax; k >= 1; --k) {
    const double w = model.equilibrium_mass(k);
    entropy -= w * (model.a(k) + std::log(h[k] / h[k - 1]));
    energy -= w * model.a(k);
  }
  energy -= model.equilibrium_mass(0) * model.a(0);
  const double log_zero_branch = model.a(0) + std::log(h[0]);
  for (std::size_t j = kmax + 1; j-- > 0;) entropy -= u * model.mass(j) * (log_zero_branch - std::log(h[j]));
  return FFEquilibrium{entropy, energy};
}

FFEquilibrium ff_equilibrium_fixed_point() { return FFEquilibrium{0.0, 0.0}; }

Potential ff_surrogate(const FFModel& model, int depth) {
  if (depth < 1) throw DepthError("surrogate depth must be >= 1");
  const ShiftSpace space(2);
  const std::size_t n = space.cylinder_count(depth);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Word w = word_at(space, depth, i);
    std::size_t k = static_cast<std::size_t>(depth);
    for (std::size_t j = 0; j < w.symbols.size(); ++j) {
      if (w.symbols[j] == 1) {
        k = j;
        break;
      }
    }
    values[i] = model.H(k);
  }
  return Potential::positive(space, depth, std::move(values));
}

}  // namespace ruelle
