#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewsep/skew_poly.hpp"

namespace skewsep {

class NotInvariant : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Element of A = B[X;rho,D]/f B[X;rho,D] in the right-coefficient basis
// {1, x, ..., x^{m-1}}: coords[j*k + d] is coordinate d of the coefficient of x^j.
struct QuotientElement {
  std::uint64_t context = 0;
  Vec coords;
  bool operator==(const QuotientElement&) const = default;
};

class QuotientRing {
 public:
  // f must be monic of degree >= 1 and invariant; throws NotInvariant otherwise.
  static std::shared_ptr<const QuotientRing> create(std::shared_ptr<const SkewRing> skew, SkewPolynomial f);

  const SkewRing& skew() const { return *skew_; }
  const std::shared_ptr<const SkewRing>& skew_ptr() const { return skew_; }
  const FiniteRing& base() const { return skew_->base(); }
  const SkewPolynomial& modulus() const { return f_; }
  std::size_t degree() const { return m_; }
  // k*m, the Z/c-rank of A
  std::size_t dim() const { return algebra_.rank(); }
  // A itself as a finite ring over Z/c, basis x^j e_d in coordinate order.
  const FiniteRing& algebra() const { return algebra_; }
  std::uint64_t id() const { return id_; }

  // a_i for 0 <= i <= m (a_m = 1)
  const RingElement& coefficient_of_f(std::size_t i) const { return skew_->coefficient(f_, i); }

  QuotientElement reduce(const SkewPolynomial& p) const;
  SkewPolynomial lift(const QuotientElement& u) const;

  QuotientElement element(Vec coords) const;
  // sum_j x^j coeffs[j]
  QuotientElement from_coefficients(const std::vector<RingElement>& coeffs) const;
  RingElement coefficient(const QuotientElement& u, std::size_t j) const;

  QuotientElement zero() const { return {id_, Vec(dim(), 0)}; }
  QuotientElement one() const { return embed(base().one()); }
  QuotientElement embed(const RingElement& a) const;
  QuotientElement x() const { return x_power(1); }
  QuotientElement x_power(std::size_t n) const;

  QuotientElement add(const QuotientElement& u, const QuotientElement& v) const;
  QuotientElement sub(const QuotientElement& u, const QuotientElement& v) const;
  QuotientElement neg(const QuotientElement& u) const;
  QuotientElement scale(Int s, const QuotientElement& u) const;
  QuotientElement mul(const QuotientElement& u, const QuotientElement& v) const;
  bool is_zero(const QuotientElement& u) const;

  // y_j = x^{m-j-1} + x^{m-j-2} a_{m-1} + ... + x a_{j+2} + a_{j+1}
  std::vector<QuotientElement> y_elements() const;

  // V_0 = {g : a g = g a for all a in B}
  Submodule centralizer_v0() const;
  // V_{m-1} = {h : rho^{m-1}(a) h = h a for all a in B}
  Submodule centralizer_vm1() const;
  // Rows whose kernel is {u : rho^twist(a) u = u a for every basis a of B}.
  Matrix centralizer_equations(int twist) const;

  // First basis index a violating the defining relation, if any.
  std::optional<std::size_t> v0_violation(const QuotientElement& g) const;
  std::optional<std::size_t> vm1_violation(const QuotientElement& h) const;

  // rho D = D rho and every coefficient of f is fixed by rho.
  bool standard_assumptions() const { return skew_->commuting() && coefficients_fixed_by_rho(*skew_, f_); }

  std::string format(const QuotientElement& u) const;

  void check(const QuotientElement& u) const {
    if (u.context != id_) throw ContextMismatch();
  }

 private:
  QuotientRing(std::shared_ptr<const SkewRing> skew, SkewPolynomial f);
  std::optional<std::size_t> twisted_violation(const QuotientElement& u, int twist) const;

  std::shared_ptr<const SkewRing> skew_;
  SkewPolynomial f_;
  std::size_t m_;
  FiniteRing algebra_;
  std::uint64_t id_;
};

}  // namespace skewsep
