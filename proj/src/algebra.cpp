#include "ruelle/algebra.hpp"

#include <Eigen/Sparse>
#include <sstream>

namespace ruelle {

namespace {

// Brings a function to depth <= D.  Functions that really depend on deeper
// coordinates do not fit the context.
CylinderFunction within(const CylinderFunction& f, int depth) {
  if (f.depth() <= depth) return f;
  try {
    return restrict_depth(f, depth);
  } catch (const DepthError&) {
    throw DepthBudgetExceeded("function of depth " + std::to_string(f.depth()) +
                              " exceeds the working depth " + std::to_string(depth));
  }
}

std::string describe_function(const CylinderFunction& f) {
  std::ostringstream os;
  os << "d" << f.depth() << "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << ",";
    os << f[i].real();
    if (f[i].imag() != 0.0) os << (f[i].imag() > 0 ? "+" : "") << f[i].imag() << "i";
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string describe(const GeneratorTerm& t) {
  return "M_" + describe_function(t.f) + " e_" + std::to_string(t.level) + " M_" + describe_function(t.g);
}

AlgebraElement::AlgebraElement(std::vector<GeneratorTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.level < 0) throw DomainError("generator level must be >= 0");
    detail::require_same_space(t.f.space(), t.g.space());
  }
}

AlgebraElement AlgebraElement::identity(const ShiftSpace& space) {
  const auto one = CylinderFunction::constant(space, 1.0);
  return AlgebraElement({GeneratorTerm{one, 0, one}});
}

AlgebraElement AlgebraElement::term(CylinderFunction f, int level, CylinderFunction g) {
  return AlgebraElement({GeneratorTerm{std::move(f), level, std::move(g)}});
}

AlgebraElement AlgebraElement::multiplication(CylinderFunction f) {
  auto one = CylinderFunction::constant(f.space(), 1.0);
  return term(std::move(f), 0, std::move(one));
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
  std::vector<GeneratorTerm> t = terms_;
  t.insert(t.end(), other.terms_.begin(), other.terms_.end());
  return AlgebraElement(std::move(t));
}

AlgebraElement AlgebraElement::scaled(Complex c) const {
  std::vector<GeneratorTerm> t = terms_;
  for (auto& term : t) term.f = c * term.f;
  return AlgebraElement(std::move(t));
}

AlgebraContext AlgebraContext::make(const Potential& p, int depth, const SpectralOptions& opts) {
  if (depth < 1) throw DepthError("algebra working depth must be >= 1");
  return AlgebraContext{p, stationary_measure(p, depth, opts), depth};
}

bool fits_budget(const GeneratorTerm& t, const AlgebraContext& ctx) {
  return std::max(t.f.depth(), t.g.depth()) <= ctx.depth && ctx.p.depth() + t.level - 1 <= ctx.depth;
}

void check_budget(const GeneratorTerm& t, const AlgebraContext& ctx) {
  if (!fits_budget(t, ctx)) {
    throw DepthBudgetExceeded("term " + describe(t) + " does not fit working depth " +
                              std::to_string(ctx.depth));
  }
}

Eigen::MatrixXcd to_matrix(const AlgebraElement& a, const AlgebraContext& ctx) {
  const ShiftSpace& space = ctx.space();
  const int d = ctx.depth;
  const auto n = static_cast<Eigen::Index>(space.cylinder_count(d));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : a.terms()) {
    check_budget(t, ctx);
    const CylinderFunction f = lift_depth(t.f, d);
    const CylinderFunction g = lift_depth(t.g, d);
    for (Eigen::Index z = 0; z < n; ++z) {
      std::vector<Complex> eta(static_cast<std::size_t>(n), Complex(0.0));
      eta[static_cast<std::size_t>(z)] = g[static_cast<std::size_t>(z)];  // g * e_z
      const CylinderFunction ce = conditional_expectation(ctx.p, CylinderFunction(space, d, std::move(eta)), t.level);
      const CylinderFunction col = f * fit_depth(within(ce, d), d);
      for (Eigen::Index x = 0; x < n; ++x) m(x, z) += col[static_cast<std::size_t>(x)];
    }
  }
  return m;
}

namespace {

GeneratorTerm multiply_terms(const GeneratorTerm& a, const GeneratorTerm& b, const AlgebraContext& ctx) {
  const CylinderFunction middle = a.g * b.f;
  GeneratorTerm out = a.level <= b.level
      ? GeneratorTerm{within(a.f * within(conditional_expectation(ctx.p, middle, a.level), ctx.depth), ctx.depth),
                      b.level, b.g}
      : GeneratorTerm{a.f, a.level,
                      within(within(conditional_expectation(ctx.p, middle, b.level), ctx.depth) * b.g, ctx.depth)};
  check_budget(out, ctx);
  return out;
}

}  // namespace

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const AlgebraContext& ctx) {
  std::vector<GeneratorTerm> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    check_budget(ta, ctx);
    for (const auto& tb : b.terms()) {
      check_budget(tb, ctx);
      out.push_back(multiply_terms(ta, tb, ctx));
    }
  }
  return AlgebraElement(std::move(out));
}

AlgebraElement adjoint(const AlgebraElement& a) {
  std::vector<GeneratorTerm> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) out.push_back(GeneratorTerm{conj(t.g), t.level, conj(t.f)});
  return AlgebraElement(std::move(out));
}

Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& m, const CylinderMeasure& mu) {
  const auto n = m.rows();
  if (m.cols() != n || static_cast<std::size_t>(n) != mu.masses().size()) {
    throw DomainError("weighted adjoint needs a square matrix on the measure's basis");
  }
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = mu[static_cast<std::size_t>(i)];
    if (!(w(i) > 0.0)) throw DomainError("weighted adjoint needs a measure with full support");
  }
  return w.cwiseInverse().asDiagonal() * m.adjoint() * w.asDiagonal();
}

AlgebraElement sigma(const AlgebraElement& a, const ModularFlow& flow) {
  flow.H.require_positive("flow potential H");
  const Complex s = Complex(0.0, 1.0) * flow.t;
  std::vector<GeneratorTerm> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    const RealFunction hm = birkhoff_product(flow.H.function(), t.level);
    out.push_back(GeneratorTerm{t.f * complex_power(hm, s), t.level, complex_power(hm, -s) * t.g});
  }
  return AlgebraElement(std::move(out));
}

Complex kms_functional(const StateFunctional& psi, const AlgebraElement& a) {
  Complex total(0.0);
  for (const auto& t : a.terms()) {
    const CylinderFunction jacobian = to_complex(birkhoff_product(psi.p.function(), t.level));
    total += integrate(psi.nu, within(t.f * t.g * jacobian, psi.nu.depth()));
  }
  return total;
}

double kms_residual(const StateFunctional& psi, const Potential& H, double beta,
                    const GeneratorTerm& a, const GeneratorTerm& b, const AlgebraContext& ctx) {
  const AlgebraElement ea({a});
  const AlgebraElement eb({b});
  const AlgebraElement rotated = sigma(ea, ModularFlow::imaginary_time(H, beta));
  return std::abs(kms_functional(psi, multiply(ea, eb, ctx)) -
                  kms_functional(psi, multiply(eb, rotated, ctx)));
}

std::vector<CylinderFunction> battery_functions(const ShiftSpace& space, int max_depth) {
  std::vector<CylinderFunction> out{CylinderFunction::constant(space, 1.0)};
  for (int d = 1; d <= max_depth; ++d) {
    for (const Word& w : enumerate_cylinders(space, d)) out.push_back(CylinderFunction::indicator(space, w));
  }
  return out;
}

std::vector<GeneratorTerm> battery_terms(const ShiftSpace& space, int max_function_depth, int max_level) {
  const auto fs = battery_functions(space, max_function_depth);
  std::vector<GeneratorTerm> out;
  out.reserve(fs.size() * fs.size() * static_cast<std::size_t>(max_level + 1));
  for (int n = 0; n <= max_level; ++n) {
    for (const auto& f : fs) {
      for (const auto& g : fs) out.push_back(GeneratorTerm{f, n, g});
    }
  }
  return out;
}

KmsBatteryReport kms_battery(const StateFunctional& psi, const Potential& H, double beta,
                             const std::vector<GeneratorTerm>& terms, const AlgebraContext& ctx,
                             double tol) {
  const ModularFlow flow = ModularFlow::imaginary_time(H, beta);
  std::vector<GeneratorTerm> rotated;
  rotated.reserve(terms.size());
  for (const auto& t : terms) {
    check_budget(t, ctx);
    rotated.push_back(sigma(AlgebraElement({t}), flow).terms().front());
  }
  KmsBatteryReport report{beta, terms.size() * terms.size(), 0.0, {}};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const AlgebraElement a({terms[i]});
    const AlgebraElement sa({rotated[i]});
    for (const auto& tb : terms) {
      const AlgebraElement b({tb});
      const double r = std::abs(kms_functional(psi, multiply(a, b, ctx)) -
                                kms_functional(psi, multiply(b, sa, ctx)));
      report.max_residual = std::max(report.max_residual, r);
      if (r > tol) report.failures.push_back({terms[i], tb, r});
    }
  }
  return report;
}

double RelationReport::max_residual() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.residual);
  return m;
}

namespace {

using Sparse = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

// Operators between cylinder-function spaces V_d of different depths.
class Operators {
 public:
  explicit Operators(const AlgebraContext& ctx) : ctx_(ctx), space_(ctx.space()) {}

  std::size_t dim(int d) const { return space_.cylinder_count(d); }

  Sparse identity(int d) const {
    Sparse m(static_cast<Eigen::Index>(dim(d)), static_cast<Eigen::Index>(dim(d)));
    m.setIdentity();
    return m;
  }

  // S : V_d -> V_{d+1}, eta -> eta o T.
  Sparse koopman(int d) const {
    const std::size_t rows = dim(d + 1);
    const std::size_t cols = dim(d);
    std::vector<Triplet> t;
    t.reserve(rows);
    for (std::size_t y = 0; y < rows; ++y) {
      t.emplace_back(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y % cols), 1.0);
    }
    Sparse m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  // S* = L_p : V_d -> V_{d-1}; needs depth(p) <= d.
  Sparse dual(int d) const {
    if (d < 1 || ctx_.p.depth() > d) throw DepthError("L_p does not map V_d into V_{d-1} here");
    const RealFunction p = lift_depth(ctx_.p.function(), d);
    const std::size_t rows = dim(d - 1);
    const auto k = static_cast<std::size_t>(space_.symbols());
    std::vector<Triplet> t;
    t.reserve(rows * k);
    for (std::size_t x = 0; x < rows; ++x) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t z = i * rows + x;
        t.emplace_back(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(z), p[z]);
      }
    }
    Sparse m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim(d)));
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  // S^n : V_d -> V_{d+n}
  Sparse koopman_power(int d, int n) const {
    Sparse m = identity(d);
    for (int j = 0; j < n; ++j) m = Sparse(koopman(d + j) * m);
    return m;
  }

  // (S*)^n : V_d -> V_{d-n}
  Sparse dual_power(int d, int n) const {
    Sparse m = identity(d);
    for (int j = 0; j < n; ++j) m = Sparse(dual(d - j) * m);
    return m;
  }

  // e_n = S^n (S*)^n on V_D
  Sparse projection(int n) const {
    const int d = ctx_.depth;
    return Sparse(koopman_power(d - n, n) * dual_power(d, n));
  }

  bool projection_fits(int n) const { return n <= ctx_.depth && ctx_.p.depth() <= ctx_.depth - n + 1; }

  Sparse mult(const CylinderFunction& f, int d) const {
    const CylinderFunction g = lift_depth(f, d);
    Sparse m(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
    std::vector<Triplet> t;
    t.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), g[i]);
    }
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  // Matrix of a map V_D -> V_D given on functions.
  template <typename Fn>
  Eigen::MatrixXcd columnwise(Fn fn) const {
    const int d = ctx_.depth;
    const auto n = static_cast<Eigen::Index>(dim(d));
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index z = 0; z < n; ++z) {
      std::vector<Complex> e(static_cast<std::size_t>(n), Complex(0.0));
      e[static_cast<std::size_t>(z)] = 1.0;
      const CylinderFunction col = fit_depth(within(fn(CylinderFunction(space_, d, std::move(e))), d), d);
      for (Eigen::Index x = 0; x < n; ++x) m(x, z) = col[static_cast<std::size_t>(x)];
    }
    return m;
  }

 private:
  const AlgebraContext& ctx_;
  ShiftSpace space_;
};

double sup_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("shape mismatch in relation check");
  return (a - b).cwiseAbs().maxCoeff();
}

class Recorder {
 public:
  void record(const std::string& name, double r) {
    for (auto& e : report_.entries) {
      if (e.name == name) {
        e.residual = std::max(e.residual, r);
        return;
      }
    }
    report_.entries.push_back({name, r});
  }
  RelationReport take() { return std::move(report_); }

 private:
  RelationReport report_;
};

// Upward relations build V_{D+n}; beyond this size they are skipped.
constexpr std::size_t kUpwardDimensionCap = 20'000;

}  // namespace

RelationReport relation_suite(const AlgebraContext& ctx, const std::vector<CylinderFunction>& functions,
                              int max_level) {
  const Operators op(ctx);
  const int d = ctx.depth;
  const ShiftSpace& space = ctx.space();
  const Potential& p = ctx.p;
  const auto dense = [](const Sparse& s) { return Eigen::MatrixXcd(s); };
  Recorder rec;

  std::vector<CylinderFunction> fs;
  for (const auto& f : functions) {
    if (f.depth() <= d) fs.push_back(f);
  }
  if (fs.empty()) fs.push_back(CylinderFunction::constant(space, 1.0));
  const auto pick = [&](std::size_t i) -> const CylinderFunction& { return fs[i % fs.size()]; };
  const auto tag = [](const char* name, int n) { return std::string(name) + "[n=" + std::to_string(n) + "]"; };

  // S M_f = M_{alpha f} S
  for (const auto& f : fs) {
    rec.record("koopman_mult", sup_diff(dense(op.koopman(d) * op.mult(f, d)), dense(op.mult(shift_compose(f), d + 1) * op.koopman(d))));
  }

  for (int n = 0; n <= max_level; ++n) {
    if (p.depth() <= d + 1 && op.dim(d + n) <= kUpwardDimensionCap) {
      const Sparse up = op.koopman_power(d, n);
      const Sparse down = op.dual_power(d + n, n);
      // (S*)^n S^n = 1
      rec.record(tag("dual_koopman", n), sup_diff(dense(down * up), dense(op.identity(d))));
      // (S*)^n M_f S^n = M_{L_p^n f}
      for (const auto& f : fs) {
        const CylinderFunction lf = ruelle_apply(p, f, n);
        rec.record(tag("dual_mult_koopman", n), sup_diff(dense(down * op.mult(f, d + n) * up), dense(op.mult(within(lf, d), d))));
      }
    }
    if (!op.projection_fits(n)) continue;
    const Eigen::MatrixXcd e_n = dense(op.projection(n));
    // e_n = E(. | F_n)
    rec.record(tag("projection_cond_exp", n), sup_diff(e_n, op.columnwise([&](const CylinderFunction& eta) {
      return conditional_expectation(p, eta, n);
    })));
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const CylinderFunction& f = pick(i);
      const CylinderFunction& g = pick(i + 1);
      const CylinderFunction& h = pick(i + 2);
      const Eigen::MatrixXcd mf = dense(op.mult(f, d));
      const Eigen::MatrixXcd mg = dense(op.mult(g, d));
      const Eigen::MatrixXcd mh = dense(op.mult(h, d));
      // e_n M_f = E(f . | F_n)
      rec.record(tag("projection_mult", n), sup_diff(e_n * mf, op.columnwise([&](const CylinderFunction& eta) {
        return conditional_expectation(p, f * eta, n);
      })));
      // M_f e_n = f E(. | F_n)
      rec.record(tag("mult_projection", n), sup_diff(mf * e_n, op.columnwise([&](const CylinderFunction& eta) {
        return f * within(conditional_expectation(p, eta, n), d);
      })));
      // M_f e_n M_g = f E(g . | F_n), also against the algebra representation
      const Eigen::MatrixXcd fng = mf * e_n * mg;
      rec.record(tag("generator", n), sup_diff(fng, op.columnwise([&](const CylinderFunction& eta) {
        return f * within(conditional_expectation(p, g * eta, n), d);
      })));
      rec.record(tag("generator_to_matrix", n), sup_diff(fng, to_matrix(AlgebraElement::term(f, n, g), ctx)));
      // e_n M_g e_n = M_{E_n g} e_n
      const CylinderFunction eg = within(conditional_expectation(p, g, n), d);
      rec.record(tag("projection_sandwich", n), sup_diff(e_n * mg * e_n, dense(op.mult(eg, d)) * e_n));
      // product rules on M_f e_n M_g e_m M_h
      for (int m = 0; m <= max_level; ++m) {
        if (!op.projection_fits(m)) continue;
        const Eigen::MatrixXcd e_m = dense(op.projection(m));
        const Eigen::MatrixXcd lhs = mf * e_n * mg * e_m * mh;
        const std::string nm = "[n=" + std::to_string(n) + ",m=" + std::to_string(m) + "]";
        if (n <= m) {
          const CylinderFunction fe = f * within(conditional_expectation(p, g, n), d);
          rec.record("product_n_le_m" + nm, sup_diff(lhs, dense(op.mult(fe, d)) * e_m * mh));
        }
        if (n >= m) {
          const CylinderFunction eh = within(conditional_expectation(p, g, m), d) * h;
          rec.record("product_n_ge_m" + nm, sup_diff(lhs, mf * e_n * dense(op.mult(eh, d))));
        }
      }
    }
  }

  // partition of unity: sum_i M_{u_i} S S* M_{u_i} = 1, u_i = (1_[i] / p)^{1/2}
  const int k = space.symbols();
  std::vector<CylinderFunction> u;
  for (int i = 1; i <= k; ++i) {
    const RealFunction v = RealFunction::indicator(space, Word{{i}});
    u.push_back(to_complex(transform(v / p.function(), [](double x) { return std::sqrt(x); })));
  }
  if (p.depth() <= d && std::max(1, p.depth()) <= d) {
    const Sparse ss = op.koopman(d - 1) * op.dual(d);
    Sparse sum(static_cast<Eigen::Index>(op.dim(d)), static_cast<Eigen::Index>(op.dim(d)));
    for (const auto& ui : u) sum += op.mult(ui, d) * ss * op.mult(ui, d);
    rec.record("partition_of_unity", sup_diff(dense(sum), dense(op.identity(d))));
  }
  // S^n (S*)^n = sum_i M_{alpha^n u_i} S^{n+1} (S*)^{n+1} M_{alpha^n u_i}
  for (int n = 1; n <= max_level; ++n) {
    if (!op.projection_fits(n + 1) || std::max(1, p.depth()) + n > d) continue;
    const Sparse next = op.projection(n + 1);
    Sparse sum(static_cast<Eigen::Index>(op.dim(d)), static_cast<Eigen::Index>(op.dim(d)));
    for (const auto& ui : u) {
      const Sparse mu_i = op.mult(shift_compose(ui, n), d);
      sum += mu_i * next * mu_i;
    }
    rec.record(tag("partition_expansion", n), sup_diff(dense(sum), dense(op.projection(n))));
  }
  // L_p is the L^2(mu) adjoint of S : V_D -> V_{D+1}
  if (p.depth() <= d + 1) {
    const CylinderMeasure mu_next = stationary_measure(p, d + 1);
    const CylinderMeasure mu_here = mu_next.marginal(d);
    Eigen::VectorXd w_here(static_cast<Eigen::Index>(op.dim(d)));
    Eigen::VectorXd w_next(static_cast<Eigen::Index>(op.dim(d + 1)));
    for (Eigen::Index i = 0; i < w_here.size(); ++i) w_here(i) = mu_here[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < w_next.size(); ++i) w_next(i) = mu_next[static_cast<std::size_t>(i)];
    const Eigen::MatrixXcd s = dense(op.koopman(d));
    const Eigen::MatrixXcd s_star = w_here.cwiseInverse().asDiagonal() * s.adjoint() * w_next.asDiagonal();
    rec.record("koopman_adjoint", sup_diff(s_star, dense(op.dual(d + 1))));
  }
  return rec.take();
}

CylinderFunction random_function(const ShiftSpace& space, int depth, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(space.cylinder_count(depth));
  for (auto& z : v) {
    const double re = u(rng);
    const double im = u(rng);
    z = Complex(re, im);
  }
  return CylinderFunction(space, depth, std::move(v));
}

AlgebraElement random_element(const ShiftSpace& space, std::mt19937_64& rng, int n_terms,
                              int max_function_depth, int max_level) {
  std::uniform_int_distribution<int> depth(0, max_function_depth);
  std::uniform_int_distribution<int> level(0, max_level);
  std::vector<GeneratorTerm> terms;
  for (int i = 0; i < n_terms; ++i) {
    const int df = depth(rng);
    const int n = level(rng);
    const int dg = depth(rng);
    CylinderFunction f = random_function(space, df, rng);
    CylinderFunction g = random_function(space, dg, rng);
    terms.push_back(GeneratorTerm{std::move(f), n, std::move(g)});
  }
  return AlgebraElement(std::move(terms));
}

StateAxiomReport state_axioms_check(const StateFunctional& psi, const AlgebraContext& ctx, int trials,
                                    std::mt19937_64& rng, int max_level) {
  StateAxiomReport r{kms_functional(psi, AlgebraElement::identity(ctx.space())), 0.0, 0.0, 0.0, trials, false};
  r.min_positive_real = std::numeric_limits<double>::infinity();
  std::uniform_int_distribution<int> count(1, 3);
  const int fdepth = std::min(2, ctx.depth);
  for (int i = 0; i < trials; ++i) {
    const AlgebraElement b = random_element(ctx.space(), rng, count(rng), fdepth, max_level);
    const Complex v = kms_functional(psi, multiply(b, adjoint(b), ctx));
    r.min_positive_real = std::min(r.min_positive_real, v.real());
    r.max_positive_imag = std::max(r.max_positive_imag, std::abs(v.imag()));
    r.max_adjoint_defect = std::max(
        r.max_adjoint_defect, std::abs(kms_functional(psi, adjoint(b)) - std::conj(kms_functional(psi, b))));
  }
  if (trials == 0) r.min_positive_real = 0.0;
  r.passed = std::abs(r.psi_identity - 1.0) <= 1e-12 && r.min_positive_real >= -1e-10 &&
             r.max_positive_imag <= 1e-10 && r.max_adjoint_defect <= 1e-10;
  return r;
}

std::vector<ProbePoint> uniqueness_probe(const Potential& p, const Potential& H, double beta,
                                         const CylinderMeasure& rho0, int n_max,
                                         const SpectralOptions& opts) {
  const int d = rho0.depth();
  const ShiftSpace& space = rho0.space();
  const Potential weight = gibbs_weight(H, beta);
  const SpectralTriple t = leading_triple(weight, std::max(d, 1), opts);
  const CylinderMeasure nu = t.eigenmeasure.marginal(d);
  const std::size_t dim = space.cylinder_count(d);

  std::vector<ProbePoint> out;
  for (int n = 0; n <= n_max; ++n) {
    const CocycleBundle c = cocycles(p, H, beta, n);
    const CylinderFunction inv = to_complex(reciprocal(c.Lambda_n));
    std::vector<double> values(dim);
    for (std::size_t z = 0; z < dim; ++z) {
      const auto e = RealFunction::indicator(space, word_at(space, d, z));
      const RealFunction moved = shift_compose(ruelle_apply(weight, e, n), n);
      const CylinderFunction integrand = within(inv * to_complex(moved), d);
      values[z] = integrate(rho0, integrand).real();
    }
    double total = 0.0;
    for (double v : values) total += v;
    const CylinderMeasure rho = CylinderMeasure::from_weights(space, d, values);
    out.push_back({n, total_variation(rho, nu), total});
  }
  return out;
}

}  // namespace ruelle
