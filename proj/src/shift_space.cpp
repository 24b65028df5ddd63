#include "ruelle/shift_space.hpp"

#include <limits>

namespace ruelle {

ShiftSpace::ShiftSpace(int symbols, std::size_t basis_cap) : k_(symbols), cap_(basis_cap) {
  if (k_ < 2) throw DomainError("a full shift needs at least 2 symbols");
  if (cap_ == 0) throw DomainError("basis cap must be positive");
}

std::size_t ShiftSpace::cylinder_count(int depth) const {
  if (depth < 0) throw DepthError("negative cylinder depth");
  std::size_t n = 1;
  for (int i = 0; i < depth; ++i) {
    if (n > cap_ / static_cast<std::size_t>(k_)) {
      throw CapacityError(std::to_string(k_) + "^" + std::to_string(depth) +
                          " cylinders exceed the basis cap of " + std::to_string(cap_));
    }
    n *= static_cast<std::size_t>(k_);
  }
  return n;
}

std::string Word::to_string() const {
  // "121" for single-digit alphabets, "10.2.11" otherwise
  const bool dotted = std::any_of(symbols.begin(), symbols.end(), [](int s) { return s > 9; });
  std::string s;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (dotted && i > 0) s += '.';
    s += std::to_string(symbols[i]);
  }
  return s;
}

std::vector<Word> enumerate_cylinders(const ShiftSpace& space, int depth) {
  const std::size_t n = space.cylinder_count(depth);
  std::vector<Word> words;
  words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) words.push_back(word_at(space, depth, i));
  return words;
}

std::size_t word_index(const ShiftSpace& space, const Word& word) {
  const auto k = static_cast<std::size_t>(space.symbols());
  space.cylinder_count(word.depth());
  std::size_t idx = 0;
  for (int s : word.symbols) {
    if (s < 1 || s > space.symbols()) {
      throw DomainError("symbol " + std::to_string(s) + " outside [1, " +
                        std::to_string(space.symbols()) + "]");
    }
    idx = idx * k + static_cast<std::size_t>(s - 1);
  }
  return idx;
}

Word word_at(const ShiftSpace& space, int depth, std::size_t index) {
  const std::size_t n = space.cylinder_count(depth);
  if (index >= n) throw DomainError("cylinder index out of range");
  const auto k = static_cast<std::size_t>(space.symbols());
  Word w{std::vector<int>(static_cast<std::size_t>(depth))};
  for (int j = depth - 1; j >= 0; --j) {
    w.symbols[static_cast<std::size_t>(j)] = static_cast<int>(index % k) + 1;
    index /= k;
  }
  return w;
}

double min_value(const RealFunction& f) {
  return *std::min_element(f.values().begin(), f.values().end());
}

double sup_norm(const CylinderFunction& f) {
  double m = 0.0;
  for (const auto& z : f.values()) m = std::max(m, std::abs(z));
  return m;
}

double sup_norm(const RealFunction& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double sup_distance(const CylinderFunction& f, const CylinderFunction& g) {
  return sup_norm(f - g);
}

double sup_distance(const RealFunction& f, const RealFunction& g) {
  return sup_norm(f - g);
}

RealFunction exp(const RealFunction& f) {
  return transform(f, [](double x) { return std::exp(x); });
}

namespace {

void require_positive_values(const RealFunction& f, const char* op) {
  for (double x : f.values()) {
    if (!(x > 0.0)) throw DomainError(std::string(op) + " of a non-positive value");
  }
}

}  // namespace

RealFunction log(const RealFunction& f) {
  require_positive_values(f, "log");
  return transform(f, [](double x) { return std::log(x); });
}

RealFunction pow(const RealFunction& f, double s) {
  require_positive_values(f, "power");
  return transform(f, [s](double x) { return std::pow(x, s); });
}

CylinderFunction complex_power(const RealFunction& f, Complex s) {
  require_positive_values(f, "complex power");
  return transform(f, [s](double x) { return std::exp(s * std::log(x)); });
}

RealFunction reciprocal(const RealFunction& f) {
  for (double x : f.values()) {
    if (x == 0.0) throw DomainError("reciprocal of zero");
  }
  return transform(f, [](double x) { return 1.0 / x; });
}

Potential Potential::positive(RealFunction f) {
  for (double x : f.values()) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw PositivityError("potential must be strictly positive and finite");
    }
  }
  return Potential(std::move(f), true);
}

void Potential::require_positive(const char* role) const {
  if (!positive_) throw PositivityError(std::string(role) + " must be a strictly positive potential");
}

}  // namespace ruelle
