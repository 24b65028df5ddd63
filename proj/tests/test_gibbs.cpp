#include <doctest.h>

#include "support.hpp"

using namespace ruelle;

TEST_CASE("cylinder measures") {
  const ShiftSpace s(2);
  CHECK_THROWS_AS(CylinderMeasure(s, 1, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(CylinderMeasure(s, 1, {1.5, -0.5}), DomainError);
  CHECK_THROWS_AS(CylinderMeasure(s, 1, {1.0}), DomainError);

  const auto u = CylinderMeasure::uniform(s, 2);
  CHECK(integrate(u, RealFunction::constant(s, 4.25)) == 4.25);
  CHECK(integrate(u, RealFunction::indicator(s, Word{{1}})) == 0.5);
  const auto b = CylinderMeasure::bernoulli(s, 2, {1.0 / 3.0, 2.0 / 3.0});
  CHECK(integrate(b, RealFunction::indicator(s, Word{{2, 1}})) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(b.mass(Word{{2}}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(integrate(u, RealFunction::indicator(s, Word{{1, 1, 1}})), DepthError);

  // refinement consistency of marginals
  std::mt19937_64 rng(2);
  const auto w = oracle::random_positive(ShiftSpace(3), 3, rng);
  const auto m = CylinderMeasure::from_weights(ShiftSpace(3), 3, {w.values().begin(), w.values().end()});
  const auto m2 = m.marginal(2);
  for (const auto& word : oracle::words(3, 2)) {
    double children = 0.0;
    for (int i = 1; i <= 3; ++i) children += m.mass(oracle::concat(word, Word{{i}}));
    CHECK(std::abs(m2.mass(word) - children) <= 1e-15);
  }
  CHECK(total_variation(m, m) == 0.0);
}

TEST_CASE("stationary measure") {
  const ShiftSpace s(2);
  const auto uniform = stationary_measure(Potential::positive(RealFunction::constant(s, 0.5)), 4);
  for (double x : uniform.masses()) CHECK(x == doctest::Approx(1.0 / 16.0).epsilon(1e-12));

  const auto p = Potential::positive(s, 1, {1.0 / 3.0, 2.0 / 3.0});
  const auto mu = stationary_measure(p, 3);
  for (const auto& w : oracle::words(2, 3)) {
    double prod = 1.0;
    for (int x : w.symbols) prod *= x == 1 ? 1.0 / 3.0 : 2.0 / 3.0;
    CHECK(std::abs(mu.mass(w) - prod) <= 1e-12);
  }

  CHECK_THROWS_AS(stationary_measure(Potential::positive(s, 1, {0.5, 0.6}), 2), DomainError);

  std::mt19937_64 rng(4);
  for (int k : {2, 3}) {
    const ShiftSpace sk(k);
    const auto q = Potential::positive(oracle::random_jacobian(sk, 2, rng));
    const auto m = stationary_measure(q, 3);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = oracle::random_complex(sk, 3, rng);
      CHECK(std::abs(integrate(m, fit_depth(ruelle_apply(q, f), 3)) - integrate(m, f)) <= 1e-10);
    }
    // T-invariance on every basis function of depth D-1
    CHECK(shift_invariance_defect(m) <= 1e-10);
    for (const auto& w : oracle::words(k, 2)) {
      const auto f = RealFunction::indicator(sk, w);
      CHECK(std::abs(integrate(m, shift_compose(f)) - integrate(m, f)) <= 1e-10);
    }
  }
}

TEST_CASE("conditional expectation") {
  const ShiftSpace s(2);
  const auto half = Potential::positive(RealFunction::constant(s, 0.5));
  for (int n = 0; n <= 3; ++n) {
    CHECK(sup_distance(conditional_expectation(half, RealFunction::constant(s, 1.0), n), RealFunction::constant(s, 1.0)) <=
          1e-15);
  }
  const auto e = compact(conditional_expectation(half, RealFunction::indicator(s, Word{{1}}), 1));
  CHECK(e.depth() == 0);
  CHECK(e[0] == 0.5);
  CHECK_THROWS_AS(conditional_expectation(half, RealFunction::constant(s, 1.0), -1), DomainError);

  std::mt19937_64 rng(6);
  for (int k : {2, 3}) {
    const ShiftSpace sk(k);
    for (int dp = 0; dp <= 2; ++dp) {
      const auto pf = oracle::random_jacobian(sk, dp, rng);
      const auto p = Potential::positive(pf);
      const auto mu = stationary_measure(p, 5);
      for (int n = 0; n <= 3; ++n) {
        const auto f = oracle::random_complex(sk, 2, rng);
        const auto en = conditional_expectation(p, f, n);
        CHECK(oracle::sup_diff(en, oracle::cond_exp(pf, f, n)) <= 1e-14);
        // F_n-measurable functions are fixed
        const auto g = shift_compose(oracle::random_complex(sk, 1, rng), n);
        CHECK(sup_distance(conditional_expectation(p, g, n), g) <= 1e-14);
        // tower property
        for (int m = 0; m <= 2; ++m) {
          const auto tower = conditional_expectation(p, conditional_expectation(p, f, m), n);
          CHECK(sup_distance(tower, conditional_expectation(p, f, std::max(n, m))) <= 1e-10);
        }
        // orthogonal projection: integral (f - E_n f) (g o T^n) dmu = 0
        const auto h = shift_compose(oracle::random_complex(sk, 1, rng), n);
        const auto integrand = (f - en) * h;
        if (integrand.depth() <= mu.depth()) CHECK(std::abs(integrate(mu, integrand)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("cocycles") {
  const ShiftSpace s(2);
  const auto half = Potential::positive(RealFunction::constant(s, 0.5));
  const auto H = Potential::positive(s, 1, {1.0, 2.0});
  const auto c0 = cocycles(half, H, 1.3, 0);
  for (const auto* f : {&c0.lambda_n, &c0.h_beta_n, &c0.Lambda_n}) {
    CHECK(f->depth() == 0);
    CHECK((*f)[0] == 1.0);
  }
  const auto c_beta0 = cocycles(half, H, 0.0, 3);
  CHECK(sup_distance(c_beta0.Lambda_n, c_beta0.lambda_n) == 0.0);

  const auto c2 = cocycles(half, H, 1.0, 2);
  REQUIRE(c2.Lambda_n.depth() == 2);
  const std::vector<double> expect{4.0, 2.0, 2.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(c2.Lambda_n[i] - expect[i]) <= 1e-14);

  std::mt19937_64 rng(8);
  for (int k : {2, 3}) {
    const ShiftSpace sk(k);
    const auto pf = oracle::random_jacobian(sk, 2, rng);
    const auto p = Potential::positive(pf);
    const auto Hr = Potential::positive(oracle::random_positive(sk, 1, rng));
    for (double beta : {-1.0, 0.5, 2.0}) {
      for (int n = 0; n <= 3; ++n) {
        const auto c = cocycles(p, Hr, beta, n);
        CHECK(sup_distance(c.lambda_n * oracle::birkhoff(pf, n), RealFunction::constant(sk, 1.0)) <= 1e-13);
        CHECK(sup_distance(c.Lambda_n, reciprocal(c.h_beta_n) * c.lambda_n) == 0.0);
        CHECK(cocycle_identity_residual(c, oracle::random_complex(sk, 2, rng)) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(cocycles(half, Potential::real(RealFunction(s, 1, {1.0, -1.0})), 1.0, 1), PositivityError);
}

TEST_CASE("eigenmeasure identity residual") {
  const ShiftSpace s(2);
  const auto half = Potential::positive(RealFunction::constant(s, 0.5));
  const auto H = Potential::positive(s, 1, {1.0, 2.0});
  std::mt19937_64 rng(10);
  const int D = 6;
  for (double beta : {-1.0, 1.0, 2.5}) {
    const auto triple = leading_triple(gibbs_weight(H, beta), D);
    const auto f = oracle::random_complex(s, 1, rng);
    CHECK(eigenmeasure_identity_residual(half, H, beta, f, 0, triple) == 0.0);
    for (int n = 1; n <= 3; ++n) {
      CHECK(eigenmeasure_identity_residual(half, H, beta, oracle::random_complex(s, 1, rng), n, triple) <= 1e-8);
      CHECK(eigenmeasure_intermediate_residual(half, H, beta, oracle::random_complex(s, 2, rng), n, triple) <= 1e-8);
    }
  }
  // random Jacobian and deeper H
  const auto p = Potential::positive(oracle::random_jacobian(s, 2, rng));
  const auto H2 = Potential::positive(oracle::random_positive(s, 2, rng));
  const auto t2 = leading_triple(gibbs_weight(H2, 0.7), D);
  for (int n = 0; n <= 4; ++n) CHECK(eigenmeasure_identity_residual(p, H2, 0.7, oracle::random_complex(s, 2, rng), n, t2) <= 1e-8);
}

TEST_CASE("equilibrium states") {
  const ShiftSpace s(2);
  const auto flat = Potential::positive(RealFunction::constant(s, 1.0));
  const auto e0 = equilibrium_state(flat, 0.0, 3);
  CHECK(e0.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  for (double m : e0.measure.masses()) CHECK(m == doctest::Approx(0.125).epsilon(1e-12));

  const auto Hc = Potential::positive(RealFunction::constant(ShiftSpace(3), 2.5));
  for (double beta : {-2.0, 0.0, 1.0, 4.0}) {
    CHECK(std::abs(equilibrium_state(Hc, beta, 2).entropy - std::log(3.0)) <= 1e-12);
  }

  std::mt19937_64 rng(12);
  for (int k : {2, 3}) {
    const ShiftSpace sk(k);
    const auto H = Potential::positive(oracle::random_positive(sk, 2, rng));
    for (int i = -6; i <= 6; ++i) {
      const double beta = 0.5 * i;
      const auto eq = equilibrium_state(H, beta, 3);
      CHECK(eq.entropy >= -1e-10);
      CHECK(eq.entropy <= std::log(static_cast<double>(k)) + 1e-10);
      CHECK(std::abs(eq.entropy - (eq.pressure + beta * eq.energy)) <= 1e-8);
      CHECK(shift_invariance_defect(eq.measure) <= 1e-10);
      // thermodynamic identity P'(beta) = -integral log H dmu_beta
      const double step = 1e-3;
      const double dP = (pressure(H, beta + step, 3) - pressure(H, beta - step, 3)) / (2 * step);
      CHECK(std::abs(dP + eq.energy) <= 1e-4);
    }
  }
}

TEST_CASE("shifted measure") {
  const auto u = CylinderMeasure::uniform(ShiftSpace(2), 2);
  const auto m = shifted_measure(u, 0, 3, 0.1);
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m[0] < u[0]);
  CHECK(m[3] > u[3]);
  CHECK_THROWS_AS(shifted_measure(u, 0, 4, 0.1), DomainError);
}
