#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "arrangefree/arrangement.hpp"

namespace arrangefree {

// Sparse multivariate polynomial over the rationals, keyed by exponent
// tuples. Zero coefficients are never stored, so is_zero() is emptiness.
class MultiPoly {
 public:
  using Monomial = std::vector<int>;

  MultiPoly() = default;
  explicit MultiPoly(int num_vars) : nvars_(num_vars) {}

  static MultiPoly constant(int num_vars, const Rat& c) {
    MultiPoly p(num_vars);
    p.add_term(Monomial(static_cast<size_t>(num_vars), 0), c);
    return p;
  }

  static MultiPoly variable(int num_vars, int i) {
    MultiPoly p(num_vars);
    Monomial m(static_cast<size_t>(num_vars), 0);
    m[static_cast<size_t>(i)] = 1;
    p.add_term(m, Rat(1));
    return p;
  }

  static MultiPoly linear_form(const std::vector<Int>& coeffs) {
    MultiPoly p(static_cast<int>(coeffs.size()));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      Monomial m(coeffs.size(), 0);
      m[i] = 1;
      p.add_term(m, Rat(coeffs[i]));
    }
    return p;
  }

  int num_vars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  Rat coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int e : m) s += e;
      if (s > d) d = s;
    }
    return d;  // -1 for the zero polynomial
  }

  // Degree when every monomial has the same total degree, else nullopt.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int e : m) s += e;
      if (!d)
        d = s;
      else if (*d != s)
        return std::nullopt;
    }
    return d;  // nullopt only via mixed degrees; zero poly reports engaged? no terms -> returns disengaged? loop skipped -> d stays nullopt
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend MultiPoly operator*(const Rat& c, const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    if (c == 0) return r;
    for (const auto& [m, cc] : a.terms_) r.add_term(m, c * cc);
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(int k) const {
    MultiPoly r = constant(nvars_, Rat(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  // Replace variable `var` by `value` (a polynomial in the same variables).
  MultiPoly substitute(int var, const MultiPoly& value) const {
    std::map<int, MultiPoly> value_pows;
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      int k = m[static_cast<size_t>(var)];
      if (k == 0) {
        r.add_term(m, c);
        continue;
      }
      auto it = value_pows.find(k);
      if (it == value_pows.end()) it = value_pows.emplace(k, value.pow(k)).first;
      Monomial rest = m;
      rest[static_cast<size_t>(var)] = 0;
      for (const auto& [mv, cv] : it->second.terms_) {
        Monomial mm = rest;
        for (size_t i = 0; i < mm.size(); ++i) mm[i] += mv[i];
        r.add_term(mm, c * cv);
      }
    }
    return r;
  }

  std::string str(const std::string& var_prefix = "x") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      os << to_string(c);
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << "*" << var_prefix << i + 1;
        if (m[i] > 1) os << "^" << m[i];
      }
      first = false;
    }
    return os.str();
  }

 private:
  int nvars_ = 0;
  std::map<Monomial, Rat> terms_;
};

// True iff the linear form with the given integer coefficients divides p.
// Tested by substituting the largest-index nonzero coordinate and checking
// that the result vanishes.
inline bool divisible_by_linear(const MultiPoly& p, const std::vector<Int>& normal) {
  if (p.is_zero()) return true;
  int pivot = -1;
  for (int i = static_cast<int>(normal.size()) - 1; i >= 0; --i)
    if (normal[static_cast<size_t>(i)] != 0) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw ZeroNormalError();
  MultiPoly value(p.num_vars());
  for (size_t j = 0; j < normal.size(); ++j) {
    if (static_cast<int>(j) == pivot || normal[j] == 0) continue;
    MultiPoly::Monomial m(normal.size(), 0);
    m[j] = 1;
    value.add_term(m, -Rat(normal[j]) / Rat(normal[static_cast<size_t>(pivot)]));
  }
  return p.substitute(pivot, value).is_zero();
}

// A polynomial vector field theta = sum f_i d/dx_i with homogeneous
// components of one common degree.
struct Derivation {
  std::vector<MultiPoly> components;
  int degree = -1;

  int num_vars() const { return static_cast<int>(components.size()); }

  bool is_zero() const {
    for (const auto& f : components)
      if (!f.is_zero()) return false;
    return true;
  }

  // theta applied to the linear form n.x, i.e. sum n_i f_i.
  MultiPoly apply_linear(const std::vector<Int>& normal) const {
    MultiPoly r(num_vars());
    for (size_t i = 0; i < components.size(); ++i)
      if (normal[i] != 0) r = r + Rat(normal[i]) * components[i];
    return r;
  }
};

inline Derivation euler_derivation(int num_vars) {
  Derivation d;
  d.degree = 1;
  for (int i = 0; i < num_vars; ++i) d.components.push_back(MultiPoly::variable(num_vars, i));
  return d;
}

// theta(alpha_H) in S*alpha_H for every H of the arrangement.
inline bool in_derivation_module(const Derivation& theta, const Arrangement& a) {
  if (theta.num_vars() != a.ambient_dim()) throw DimensionMismatchError();
  for (const auto& h : a.hyperplanes())
    if (!divisible_by_linear(theta.apply_linear(h.normal()), h.normal())) return false;
  return true;
}

// Q = product of the defining linear forms.
inline MultiPoly defining_polynomial(const Arrangement& a) {
  MultiPoly q = MultiPoly::constant(a.ambient_dim(), Rat(1));
  for (const auto& h : a.hyperplanes()) q = q * MultiPoly::linear_form(h.normal());
  return q;
}

// Cofactor expansion; fine at the small matrix sizes used here.
inline MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m, int nvars) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return MultiPoly::constant(nvars, Rat(1));
  if (n == 1) return m[0][0];
  MultiPoly det(nvars);
  std::vector<std::vector<MultiPoly>> minor(static_cast<size_t>(n - 1),
                                            std::vector<MultiPoly>(static_cast<size_t>(n - 1)));
  for (int j = 0; j < n; ++j) {
    if (m[0][static_cast<size_t>(j)].is_zero()) continue;
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[static_cast<size_t>(r - 1)][static_cast<size_t>(cc++)] = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
      }
    }
    MultiPoly term = m[0][static_cast<size_t>(j)] * poly_determinant(minor, nvars);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace arrangefree
