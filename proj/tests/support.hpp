#pragma once

// Brute-force reference implementations and random inputs for the tests.
// Everything here evaluates functions on explicit words and never touches the
// library's index arithmetic, so it can serve as an oracle for it.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ruelle/ruelle.hpp"

namespace oracle {

using ruelle::Complex;
using ruelle::CylinderFunction;
using ruelle::RealFunction;
using ruelle::ShiftSpace;
using ruelle::Word;

/// All words of length d, lexicographic, built recursively.
inline std::vector<Word> words(int k, int d) {
  std::vector<Word> out{Word{}};
  for (int level = 0; level < d; ++level) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (int s = 1; s <= k; ++s) {
        Word x = w;
        x.symbols.push_back(s);
        next.push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline Word prepend(int s, const Word& w) {
  Word out{{s}};
  out.symbols.insert(out.symbols.end(), w.symbols.begin(), w.symbols.end());
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.symbols.insert(out.symbols.end(), b.symbols.begin(), b.symbols.end());
  return out;
}

inline Word drop(const Word& w, int n) { return Word{std::vector<int>(w.symbols.begin() + n, w.symbols.end())}; }

/// Value of f on any word at least depth(f) long, by scanning the word list.
template <typename T>
T eval(const ruelle::BasicCylinderFunction<T>& f, const Word& w) {
  const auto ws = words(f.symbols(), f.depth());
  const Word prefix{std::vector<int>(w.symbols.begin(), w.symbols.begin() + f.depth())};
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i] == prefix) return f[i];
  }
  throw std::logic_error("word not found");
}

/// Tabulates fn over all words of length d.
template <typename T, typename Fn>
ruelle::BasicCylinderFunction<T> tabulate(const ShiftSpace& s, int d, Fn fn) {
  std::vector<T> v;
  for (const auto& w : words(s.symbols(), d)) v.push_back(fn(w));
  return ruelle::BasicCylinderFunction<T>(s, d, std::move(v));
}

/// sum_i W(i x) f(i x)
template <typename T>
ruelle::BasicCylinderFunction<T> ruelle_op(const RealFunction& W, const ruelle::BasicCylinderFunction<T>& f) {
  const int d = std::max(std::max(W.depth(), f.depth()) - 1, 0);
  return tabulate<T>(f.space(), d, [&](const Word& x) {
    T acc(0);
    for (int i = 1; i <= f.symbols(); ++i) {
      Word z = prepend(i, x);
      while (z.depth() < std::max(W.depth(), f.depth())) z.symbols.push_back(1);  // padding is irrelevant
      acc += eval(W, z) * eval(f, z);
    }
    return acc;
  });
}

/// f o T^n
template <typename T>
ruelle::BasicCylinderFunction<T> shift(const ruelle::BasicCylinderFunction<T>& f, int n) {
  return tabulate<T>(f.space(), f.depth() + n, [&](const Word& w) { return eval(f, drop(w, n)); });
}

/// prod_{j<n} f o T^j
inline RealFunction birkhoff(const RealFunction& f, int n) {
  if (n == 0) return RealFunction::constant(f.space(), 1.0);
  return tabulate<double>(f.space(), f.depth() + n - 1, [&](const Word& w) {
    double acc = 1.0;
    for (int j = 0; j < n; ++j) acc *= eval(f, drop(w, j));
    return acc;
  });
}

/// E(f | F_n)(x) = sum over y in {1..k}^n of p^[n](y T^n x) f(y T^n x)
template <typename T>
ruelle::BasicCylinderFunction<T> cond_exp(const RealFunction& p, const ruelle::BasicCylinderFunction<T>& f, int n) {
  const int d = std::max({f.depth(), p.depth() + n - 1, n});
  const auto ys = words(p.symbols(), n);
  return tabulate<T>(f.space(), d, [&](const Word& x) {
    const Word tail = drop(x, n);
    T acc(0);
    for (const auto& y : ys) {
      const Word z = concat(y, tail);
      double jac = 1.0;
      for (int j = 0; j < n; ++j) jac *= eval(p, drop(z, j));
      acc += jac * eval(f, z);
    }
    return acc;
  });
}

/// Dense matrix of L_W on depth-D functions, column by column from basis vectors.
inline Eigen::MatrixXd transfer_dense(const RealFunction& W, int D) {
  const auto ws = words(W.symbols(), D);
  const auto n = static_cast<Eigen::Index>(ws.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    std::vector<double> e(ws.size(), 0.0);
    e[static_cast<std::size_t>(c)] = 1.0;
    const RealFunction col = ruelle_op(W, RealFunction(W.space(), D, e));
    for (Eigen::Index r = 0; r < n; ++r) m(r, c) = eval(col, ws[static_cast<std::size_t>(r)]);
  }
  return m;
}

struct DensePerron {
  double lambda;
  Eigen::VectorXd right;  // positive, max-normalized
  Eigen::VectorXd left;   // positive, sum-normalized
  double second_modulus;  // largest |eigenvalue| other than lambda
};

inline DensePerron dense_perron(const Eigen::MatrixXd& m) {
  const auto pick = [](const Eigen::MatrixXd& a, double* second) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    const auto vals = es.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < vals.size(); ++i) {
      if (vals[i].real() > vals[best].real()) best = i;
    }
    if (second) {
      *second = 0.0;
      for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (i != best) *second = std::max(*second, std::abs(vals[i]));
      }
    }
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    if (v.sum() < 0) v = -v;
    return std::make_pair(vals[best].real(), v);
  };
  double second = 0.0;
  auto [lambda, right] = pick(m, &second);
  auto [lambda_t, left] = pick(m.transpose(), nullptr);
  (void)lambda_t;
  right /= right.cwiseAbs().maxCoeff();
  left /= left.sum();
  return DensePerron{lambda, right, left, second};
}

/// Angle between two real vectors.
inline double angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  // acos loses precision near 1; use the sine form
  const Eigen::VectorXd r = a / a.norm() - (a.dot(b) >= 0 ? 1.0 : -1.0) * b / b.norm();
  return c >= 0.999 ? 2.0 * std::asin(std::min(1.0, r.norm() / 2.0)) : std::acos(c);
}

inline RealFunction random_positive(const ShiftSpace& s, int depth, std::mt19937_64& rng, double lo = 0.5,
                                    double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(s.cylinder_count(depth));
  for (auto& x : v) x = u(rng);
  return RealFunction(s, depth, std::move(v));
}

/// A random normalized Jacobian: p(i x) = q(i x) / sum_j q(j x).
inline RealFunction random_jacobian(const ShiftSpace& s, int depth, std::mt19937_64& rng) {
  if (depth == 0) return RealFunction::constant(s, 1.0 / s.symbols());
  const RealFunction q = random_positive(s, depth, rng, 0.2, 1.0);
  return tabulate<double>(s, depth, [&](const Word& w) {
    double total = 0.0;
    for (int j = 1; j <= s.symbols(); ++j) {
      Word z = w;
      z.symbols[0] = j;
      total += eval(q, z);
    }
    return eval(q, w) / total;
  });
}

inline CylinderFunction random_complex(const ShiftSpace& s, int depth, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(s.cylinder_count(depth));
  for (auto& x : v) {
    const double re = u(rng);
    const double im = u(rng);
    x = Complex(re, im);
  }
  return CylinderFunction(s, depth, std::move(v));
}

template <typename T>
double sup_diff(const ruelle::BasicCylinderFunction<T>& a, const ruelle::BasicCylinderFunction<T>& b) {
  const int d = std::max(a.depth(), b.depth());
  double m = 0.0;
  for (const auto& w : words(a.symbols(), d)) m = std::max(m, std::abs(eval(a, w) - eval(b, w)));
  return m;
}

}  // namespace oracle
