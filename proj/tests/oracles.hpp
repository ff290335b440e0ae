#pragma once

// Brute-force references. Nothing here uses the linear-algebra layer or the
// closed-form expansions; everything is enumeration or the defining law.

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "skewsep/separability.hpp"

namespace oracle {

using namespace skewsep;

// alpha X^j from alpha X = X rho(alpha) + D(alpha), recursively.
inline std::vector<RingElement> pass_left(const SkewRing& s, const RingElement& alpha, std::size_t j) {
  const auto& ring = s.base();
  if (j == 0) return {alpha};
  const auto shifted = pass_left(s, s.rho().apply(ring, alpha), j - 1);
  const auto direct = pass_left(s, s.derivation().apply(ring, alpha), j - 1);
  std::vector<RingElement> out(j + 1, ring.zero());
  for (std::size_t i = 0; i < shifted.size(); ++i) out[i + 1] = ring.add(out[i + 1], shifted[i]);
  for (std::size_t i = 0; i < direct.size(); ++i) out[i] = ring.add(out[i], direct[i]);
  return out;
}

// Right coefficients of alpha X^j with the expansion sum_i C(j,i) X^i rho^e D^{j-i}(alpha),
// where e = exponent(i, j).
inline std::vector<RingElement> expansion(const SkewRing& s, const RingElement& alpha, std::size_t j,
                                          const std::function<int(std::size_t, std::size_t)>& exponent) {
  const auto& ring = s.base();
  std::vector<RingElement> out;
  for (std::size_t i = 0; i <= j; ++i)
    out.push_back(ring.scale(s.binomial(j, i), s.apply_rho(s.apply_d(alpha, j - i), exponent(i, j))));
  return out;
}

inline std::vector<QuotientElement> elements(const QuotientRing& a) {
  std::vector<QuotientElement> out;
  for (const auto& e : a.algebra().elements()) out.push_back(a.element(e.coords));
  return out;
}

inline std::vector<QuotientElement> members(const QuotientRing& a, const Submodule& s) {
  std::vector<QuotientElement> out;
  for (const auto& v : s.elements()) out.push_back(a.element(v));
  return out;
}

inline bool twisted_central(const QuotientRing& a, const QuotientElement& u, int twist) {
  for (const auto& alpha : a.base().elements())
    if (a.mul(a.embed(a.skew().apply_rho(alpha, twist)), u) != a.mul(u, a.embed(alpha))) return false;
  return true;
}

inline std::set<Vec> centralizer(const QuotientRing& a, int twist) {
  std::set<Vec> out;
  for (const auto& u : elements(a))
    if (twisted_central(a, u, twist)) out.insert(u.coords);
  return out;
}

inline std::optional<QuotientElement> separable(const QuotientRing& a) {
  const int twist = static_cast<int>(a.degree()) - 1;
  const auto ys = a.y_elements();
  for (const auto& h : elements(a)) {
    if (!twisted_central(a, h, twist)) continue;
    QuotientElement acc = a.zero();
    for (std::size_t j = 0; j < a.degree(); ++j) acc = a.add(acc, a.mul(a.mul(ys[j], h), a.x_power(j)));
    if (acc == a.one()) return h;
  }
  return std::nullopt;
}

// Additive closure of `values` in (Z/c)^n; true when `target` is reached.
inline bool additive_closure_contains(const ZMod& zm, const std::vector<Vec>& values, const Vec& target) {
  std::set<Vec> reached{Vec(target.size(), 0)};
  for (const auto& v : values) {
    if (reached.count(v)) continue;
    std::set<Vec> next;
    for (const auto& s : reached) {
      Vec cur = s;
      for (Int t = 0; t < zm.modulus(); ++t) {
        next.insert(cur);
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = zm.add(cur[i], v[i]);
      }
    }
    reached = std::move(next);
    if (reached.count(target)) return true;
  }
  return reached.count(target) > 0;
}

// Whether some finite sum of pair values (g x^k h)_k reaches (0, ..., 0, 1).
// Single pairs and sums of two pairs are tried first, then the full closure.
inline bool hirata(const QuotientRing& a) {
  const auto v0 = centralizer(a, 0);
  const auto vm1 = centralizer(a, static_cast<int>(a.degree()) - 1);
  Vec target(a.dim() * a.degree(), 0);
  const auto one = a.one().coords;
  std::copy(one.begin(), one.end(), target.end() - static_cast<std::ptrdiff_t>(one.size()));
  std::set<Vec> values;
  for (const auto& g : v0)
    for (const auto& h : vm1) values.insert(hirata_values(a, a.element(g), a.element(h)));
  if (values.count(target)) return true;
  const auto& zm = a.base().zmod();
  for (auto it = values.begin(); it != values.end(); ++it)
    for (auto jt = it; jt != values.end(); ++jt) {
      Vec sum(target.size());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = zm.add((*it)[i], (*jt)[i]);
      if (sum == target) return true;
    }
  return additive_closure_contains(zm, {values.begin(), values.end()}, target);
}

inline std::vector<TensorElement> tensor_elements(const TensorSquare& t) {
  const std::size_t n = t.dim();
  const Int c = t.quotient().base().characteristic();
  std::vector<TensorElement> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(t.element(v));
    std::size_t i = 0;
    while (i < n && ++v[i] == c) v[i++] = 0;
    if (i == n) return out;
  }
}

// mu with a mu = mu a for every a in A.
inline std::set<Vec> tensor_centralizer(const TensorSquare& t) {
  const auto all = elements(t.quotient());
  std::set<Vec> out;
  for (const auto& mu : tensor_elements(t)) {
    bool ok = true;
    for (const auto& a : all)
      if (t.left_mul(a, mu) != t.right_mul(mu, a)) {
        ok = false;
        break;
      }
    if (ok) out.insert(mu.coords);
  }
  return out;
}

}  // namespace oracle
