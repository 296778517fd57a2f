#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arrangefree/rational.hpp"

namespace arrangefree {

// Integer polynomial in t, dense ascending coefficients. Characteristic
// polynomials are monic of degree = ambient dimension; intermediate values
// (differences, quotients) reuse the same type.
class CharPoly {
 public:
  CharPoly() : c_{Int(0)} {}
  explicit CharPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0);
    trim();
  }

  static CharPoly constant(Int v) { return CharPoly({std::move(v)}); }

  static CharPoly t_power(int k) {
    std::vector<Int> c(static_cast<size_t>(k) + 1, 0);
    c.back() = 1;
    return CharPoly(std::move(c));
  }

  // (t - r0)(t - r1)...
  static CharPoly from_roots(const std::vector<Int>& roots) {
    CharPoly p = constant(1);
    for (const Int& r : roots) p = p * CharPoly({-r, Int(1)});
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const { return c_.back(); }
  bool is_monic() const { return !is_zero() && c_.back() == 1; }

  Int coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return c_[static_cast<size_t>(i)];
  }

  Int eval(const Int& x) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend CharPoly operator+(const CharPoly& a, const CharPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return CharPoly(std::move(c));
  }

  friend CharPoly operator-(const CharPoly& a, const CharPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return CharPoly(std::move(c));
  }

  friend CharPoly operator*(const CharPoly& a, const CharPoly& b) {
    if (a.is_zero() || b.is_zero()) return CharPoly();
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return CharPoly(std::move(c));
  }

  friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.c_ == b.c_; }

  // Exact quotient by a monic divisor, or nullopt when the remainder is
  // nonzero. Monic divisors keep the whole division inside the integers.
  std::optional<CharPoly> divide_exact(const CharPoly& divisor) const {
    if (!divisor.is_monic()) throw Error("divide_exact expects a monic divisor");
    if (is_zero()) return CharPoly();
    if (degree() < divisor.degree()) return std::nullopt;
    std::vector<Int> rem = c_;
    const int dq = degree() - divisor.degree();
    std::vector<Int> q(static_cast<size_t>(dq) + 1, 0);
    for (int k = dq; k >= 0; --k) {
      Int f = rem[static_cast<size_t>(k + divisor.degree())];
      q[static_cast<size_t>(k)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= divisor.degree(); ++j)
        rem[static_cast<size_t>(k + j)] -= f * divisor.c_[static_cast<size_t>(j)];
    }
    for (const Int& r : rem)
      if (r != 0) return std::nullopt;
    return CharPoly(std::move(q));
  }

  bool divisible_by(const CharPoly& divisor) const { return divide_exact(divisor).has_value(); }

  // All roots with multiplicity when the polynomial splits into integer
  // linear factors; nullopt otherwise. Requires a monic input.
  std::optional<std::vector<Int>> integer_roots() const {
    if (!is_monic()) return std::nullopt;
    std::vector<Int> roots;
    CharPoly p = *this;
    while (p.degree() > 0 && p.c_[0] == 0) {
      roots.push_back(0);
      std::vector<Int> c(p.c_.begin() + 1, p.c_.end());
      p = CharPoly(std::move(c));
    }
    while (p.degree() > 0) {
      Int c0 = p.c_[0];
      if (c0 < 0) c0 = -c0;
      bool found = false;
      for (Int d = 1; d * d <= c0 && !found; ++d) {
        if (c0 % d != 0) continue;
        const Int cands[4] = {d, div_exact(c0, d), Int(-d), Int(-div_exact(c0, d))};
        for (const Int& cand : cands) {
          if (p.eval(cand) == 0) {
            roots.push_back(cand);
            p = *p.divide_exact(CharPoly({Int(-cand), Int(1)}));
            found = true;
            break;
          }
        }
      }
      if (!found) return std::nullopt;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  std::string pretty() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const Int& c = c_[static_cast<size_t>(i)];
      if (c == 0 && !(degree() == 0 && i == 0)) continue;
      Int a = c;
      if (first) {
        if (a < 0) os << '-', a = -a;
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      if (i == 0 || a != 1) os << a.get_str();
      if (i > 0) {
        if (a != 1) os << '*';
        os << 't';
        if (i > 1) os << '^' << i;
      }
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }

 private:
  void trim() {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
  }

  std::vector<Int> c_;
};

// Multiset of nonnegative integer roots, sorted ascending: the exponent
// candidates read off a characteristic polynomial. nullopt when the
// polynomial does not factor over the nonnegative integers, which soundly
// certifies non-freeness.
inline std::optional<std::vector<int>> exponents_from_charpoly(const CharPoly& p) {
  auto roots = p.integer_roots();
  if (!roots) return std::nullopt;
  std::vector<int> out;
  out.reserve(roots->size());
  for (const Int& r : *roots) {
    if (r < 0) return std::nullopt;
    out.push_back(static_cast<int>(r.get_si()));
  }
  return out;
}

}  // namespace arrangefree
