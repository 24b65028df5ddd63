#pragma once

// Symbols, words, cylinders and locally constant functions on the one-sided
// full shift X = {1,...,k}^N.
//
// A depth-d cylinder function is stored as k^d values, one per cylinder
// [w_0 ... w_{d-1}], in lexicographic order with w_0 most significant.  That
// order is the canonical basis order used by every matrix in the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ruelle/error.hpp"

namespace ruelle {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultBasisCap = 250'000;

class ShiftSpace {
 public:
  explicit ShiftSpace(int symbols, std::size_t basis_cap = kDefaultBasisCap);

  int symbols() const noexcept { return k_; }
  std::size_t basis_cap() const noexcept { return cap_; }

  /// k^depth; throws CapacityError above the basis cap.
  std::size_t cylinder_count(int depth) const;

  double topological_entropy() const { return std::log(static_cast<double>(k_)); }

  bool operator==(const ShiftSpace& other) const noexcept { return k_ == other.k_; }

 private:
  int k_;
  std::size_t cap_;
};

/// A finite word over {1,...,k}.
struct Word {
  std::vector<int> symbols;

  int depth() const noexcept { return static_cast<int>(symbols.size()); }
  std::string to_string() const;
  bool operator==(const Word&) const = default;
};

std::vector<Word> enumerate_cylinders(const ShiftSpace& space, int depth);
std::size_t word_index(const ShiftSpace& space, const Word& word);
Word word_at(const ShiftSpace& space, int depth, std::size_t index);

template <typename T>
class BasicCylinderFunction {
 public:
  using value_type = T;

  BasicCylinderFunction(ShiftSpace space, int depth, std::vector<T> values)
      : space_(space), depth_(depth), values_(std::move(values)) {
    if (depth_ < 0) throw DepthError("cylinder function depth must be >= 0");
    if (values_.size() != space_.cylinder_count(depth_)) {
      throw DomainError("cylinder function of depth " + std::to_string(depth_) +
                        " needs " + std::to_string(space_.cylinder_count(depth_)) +
                        " values, got " + std::to_string(values_.size()));
    }
  }

  static BasicCylinderFunction constant(ShiftSpace space, T value) {
    return BasicCylinderFunction(space, 0, std::vector<T>{value});
  }

  /// Indicator of the cylinder [w]; stored at depth |w|.
  static BasicCylinderFunction indicator(ShiftSpace space, const Word& w) {
    std::vector<T> v(space.cylinder_count(w.depth()), T(0));
    v[word_index(space, w)] = T(1);
    return BasicCylinderFunction(space, w.depth(), std::move(v));
  }

  const ShiftSpace& space() const noexcept { return space_; }
  int symbols() const noexcept { return space_.symbols(); }
  int depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const T> values() const noexcept { return values_; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  /// Value on any word at least as long as the function's depth.
  T operator()(const Word& w) const {
    if (w.depth() < depth_) throw DepthError("word shorter than function depth");
    Word prefix{std::vector<int>(w.symbols.begin(), w.symbols.begin() + depth_)};
    return values_[word_index(space_, prefix)];
  }

 private:
  ShiftSpace space_;
  int depth_;
  std::vector<T> values_;
};

using CylinderFunction = BasicCylinderFunction<Complex>;
using RealFunction = BasicCylinderFunction<double>;

namespace detail {

inline std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline void require_same_space(const ShiftSpace& a, const ShiftSpace& b) {
  if (!(a == b)) throw DomainError("functions live on shifts with different symbol counts");
}

}  // namespace detail

/// The same function viewed at a deeper level.
template <typename T>
BasicCylinderFunction<T> lift_depth(const BasicCylinderFunction<T>& f, int depth) {
  if (depth < f.depth()) {
    throw DepthError("cannot lift a depth-" + std::to_string(f.depth()) +
                     " function to depth " + std::to_string(depth));
  }
  if (depth == f.depth()) return f;
  const std::size_t n = f.space().cylinder_count(depth);
  const std::size_t stride = detail::ipow(f.symbols(), depth - f.depth());
  std::vector<T> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f[i / stride];
  return BasicCylinderFunction<T>(f.space(), depth, std::move(v));
}

/// Whether f is constant along every coordinate at position >= depth.
template <typename T>
bool depends_only_on_prefix(const BasicCylinderFunction<T>& f, int depth) {
  if (depth >= f.depth()) return true;
  const std::size_t stride = detail::ipow(f.symbols(), f.depth() - depth);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != f[(i / stride) * stride]) return false;
  }
  return true;
}

/// Drop trailing coordinates.  Exact: throws DepthError if f actually
/// depends on a dropped coordinate.
template <typename T>
BasicCylinderFunction<T> restrict_depth(const BasicCylinderFunction<T>& f, int depth) {
  if (depth < 0) throw DepthError("negative depth");
  if (depth >= f.depth()) return f;
  if (!depends_only_on_prefix(f, depth)) {
    throw DepthError("function of depth " + std::to_string(f.depth()) +
                     " depends on coordinates beyond depth " + std::to_string(depth));
  }
  const std::size_t stride = detail::ipow(f.symbols(), f.depth() - depth);
  const std::size_t n = f.space().cylinder_count(depth);
  std::vector<T> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f[j * stride];
  return BasicCylinderFunction<T>(f.space(), depth, std::move(v));
}

/// Lift or restrict to exactly `depth`.
template <typename T>
BasicCylinderFunction<T> fit_depth(const BasicCylinderFunction<T>& f, int depth) {
  return depth >= f.depth() ? lift_depth(f, depth) : restrict_depth(f, depth);
}

/// Smallest exact representation of f.
template <typename T>
BasicCylinderFunction<T> compact(const BasicCylinderFunction<T>& f) {
  int d = f.depth();
  while (d > 0 && depends_only_on_prefix(f, d - 1)) --d;
  return restrict_depth(f, d);
}

/// alpha(f) = f o T: g(i w) = f(w), one level deeper.
template <typename T>
BasicCylinderFunction<T> shift_compose(const BasicCylinderFunction<T>& f) {
  const std::size_t n = f.space().cylinder_count(f.depth() + 1);
  std::vector<T> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f[i % f.size()];
  return BasicCylinderFunction<T>(f.space(), f.depth() + 1, std::move(v));
}

/// alpha^n(f) = f o T^n.
template <typename T>
BasicCylinderFunction<T> shift_compose(const BasicCylinderFunction<T>& f, int n) {
  if (n < 0) throw DomainError("negative shift power");
  if (n == 0) return f;
  const int depth = f.depth() + n;
  const std::size_t count = f.space().cylinder_count(depth);
  std::vector<T> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = f[i % f.size()];
  return BasicCylinderFunction<T>(f.space(), depth, std::move(v));
}

/// Elementwise combination at the common (maximum) depth.
template <typename T, typename Op>
BasicCylinderFunction<T> combine(const BasicCylinderFunction<T>& f,
                                 const BasicCylinderFunction<T>& g, Op op) {
  detail::require_same_space(f.space(), g.space());
  const int depth = std::max(f.depth(), g.depth());
  const std::size_t n = f.space().cylinder_count(depth);
  const std::size_t sf = detail::ipow(f.symbols(), depth - f.depth());
  const std::size_t sg = detail::ipow(f.symbols(), depth - g.depth());
  std::vector<T> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = op(f[i / sf], g[i / sg]);
  return BasicCylinderFunction<T>(f.space(), depth, std::move(v));
}

template <typename T, typename Op>
auto transform(const BasicCylinderFunction<T>& f, Op op) {
  using R = std::invoke_result_t<Op, T>;
  std::vector<R> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = op(f[i]);
  return BasicCylinderFunction<R>(f.space(), f.depth(), std::move(v));
}

template <typename T>
BasicCylinderFunction<T> operator+(const BasicCylinderFunction<T>& f,
                                   const BasicCylinderFunction<T>& g) {
  return combine(f, g, std::plus<T>{});
}
template <typename T>
BasicCylinderFunction<T> operator-(const BasicCylinderFunction<T>& f,
                                   const BasicCylinderFunction<T>& g) {
  return combine(f, g, std::minus<T>{});
}
template <typename T>
BasicCylinderFunction<T> operator*(const BasicCylinderFunction<T>& f,
                                   const BasicCylinderFunction<T>& g) {
  return combine(f, g, std::multiplies<T>{});
}
template <typename T>
BasicCylinderFunction<T> operator/(const BasicCylinderFunction<T>& f,
                                   const BasicCylinderFunction<T>& g) {
  return combine(f, g, std::divides<T>{});
}
template <typename T>
BasicCylinderFunction<T> operator*(T c, const BasicCylinderFunction<T>& f) {
  return transform(f, [c](const T& x) { return c * x; });
}

inline CylinderFunction conj(const CylinderFunction& f) {
  return transform(f, [](Complex z) { return std::conj(z); });
}

inline CylinderFunction to_complex(const RealFunction& f) {
  return transform(f, [](double x) { return Complex(x, 0.0); });
}

inline RealFunction real_part(const CylinderFunction& f) {
  return transform(f, [](Complex z) { return z.real(); });
}

double min_value(const RealFunction& f);
double sup_norm(const CylinderFunction& f);
double sup_norm(const RealFunction& f);
/// sup |f - g| after lifting to the common depth.
double sup_distance(const CylinderFunction& f, const CylinderFunction& g);
double sup_distance(const RealFunction& f, const RealFunction& g);

RealFunction exp(const RealFunction& f);
/// Throws DomainError on non-positive input.
RealFunction log(const RealFunction& f);
/// f^s for f > 0; throws DomainError on non-positive input.
RealFunction pow(const RealFunction& f, double s);
/// f^s = exp(s log f) for f > 0 and complex s.
CylinderFunction complex_power(const RealFunction& f, Complex s);
/// 1/f; throws DomainError on zero.
RealFunction reciprocal(const RealFunction& f);

/// prod_{j<n} f o T^j at depth depth(f)+n-1, or depth 0 when f is constant or n = 0.
template <typename T>
BasicCylinderFunction<T> birkhoff_product(const BasicCylinderFunction<T>& f, int n) {
  if (n < 0) throw DomainError("negative Birkhoff length");
  if (n == 0) return BasicCylinderFunction<T>::constant(f.space(), T(1));
  const int depth = f.depth() == 0 ? 0 : f.depth() + n - 1;
  BasicCylinderFunction<T> acc = lift_depth(f, depth);
  for (int j = 1; j < n; ++j) acc = acc * shift_compose(f, j);
  return fit_depth(acc, depth);
}

/// A real potential.  Potentials used as H, p or a transfer weight e^A are
/// constructed with `positive`, which enforces min > 0.
class Potential {
 public:
  static Potential positive(RealFunction f);
  static Potential real(RealFunction f) { return Potential(std::move(f), false); }
  static Potential positive(ShiftSpace space, int depth, std::vector<double> values) {
    return positive(RealFunction(space, depth, std::move(values)));
  }

  const RealFunction& function() const noexcept { return f_; }
  const ShiftSpace& space() const noexcept { return f_.space(); }
  int symbols() const noexcept { return f_.symbols(); }
  int depth() const noexcept { return f_.depth(); }
  bool strictly_positive() const noexcept { return positive_; }

  /// Throws PositivityError unless the potential was built positive.
  void require_positive(const char* role) const;

 private:
  Potential(RealFunction f, bool positive) : f_(std::move(f)), positive_(positive) {}

  RealFunction f_;
  bool positive_;
};

}  // namespace ruelle
