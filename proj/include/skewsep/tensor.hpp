#pragma once

#include <memory>
#include <vector>

#include "skewsep/quotient.hpp"

namespace skewsep {

// sum_j z_j (x) x^j in A (x)_B A. coords holds z_0, ..., z_{m-1} back to back,
// each in the QuotientElement coordinate order.
struct TensorElement {
  std::uint64_t context = 0;
  Vec coords;
  bool operator==(const TensorElement&) const = default;
};

// A (x)_B A in the normal form sum_j z_j (x) x^j. Only available when rho and
// D commute and the coefficients of f are fixed by rho; then every a_j
// commutes with x and x^m = -sum_j a_j x^j can be folded across the tensor.
class TensorSquare {
 public:
  // Throws PreconditionError outside the assumptions above.
  static std::shared_ptr<const TensorSquare> create(std::shared_ptr<const QuotientRing> quotient);

  const QuotientRing& quotient() const { return *a_; }
  std::size_t dim() const { return a_->dim() * a_->degree(); }
  std::uint64_t id() const { return id_; }

  TensorElement zero() const { return {id_, Vec(dim(), 0)}; }
  // 1 (x) 1
  TensorElement one() const;
  TensorElement element(Vec coords) const;
  TensorElement from_components(const std::vector<QuotientElement>& z) const;
  QuotientElement component(const TensorElement& mu, std::size_t j) const;

  TensorElement add(const TensorElement& u, const TensorElement& v) const;
  TensorElement sub(const TensorElement& u, const TensorElement& v) const;

  // a * mu
  TensorElement left_mul(const QuotientElement& a, const TensorElement& mu) const;
  // mu * alpha for alpha in B, moving alpha across each x^j with the
  // left-coefficient expansion of X^j alpha and the middle-B balance.
  TensorElement right_mul_b(const TensorElement& mu, const RingElement& alpha) const;
  // mu * x, folding z_{m-1} (x) x^m
  TensorElement right_mul_x(const TensorElement& mu) const;
  // mu * a for arbitrary a in A
  TensorElement right_mul(const TensorElement& mu, const QuotientElement& a) const;

  // sum_j z_j x^j
  QuotientElement mult_map(const TensorElement& mu) const;

  // (A (x)_B A)^A: mu commuting with x and with every basis element of B.
  const Submodule& centralizer() const { return centralizer_; }
  // Linear equations cutting out centralizer() in tensor coordinates.
  const Matrix& centralizer_equations() const { return equations_; }
  bool in_centralizer(const TensorElement& mu) const { return centralizer_.contains(mu.coords); }

  // sum_j y_j h (x) x^j; throws PreconditionError naming the failing basis
  // element when h is not in V_{m-1}.
  TensorElement canonical_from_h(const QuotientElement& h) const;

  // The image of V_{m-1} under canonical_from_h, as a submodule.
  Submodule canonical_image() const;

  // canonical_image() == centralizer()
  bool verify_centralizer_structure() const { return canonical_image() == centralizer_; }

  void check(const TensorElement& mu) const {
    if (mu.context != id_) throw ContextMismatch();
  }

 private:
  explicit TensorSquare(std::shared_ptr<const QuotientRing> quotient);
  Matrix build_equations() const;

  std::shared_ptr<const QuotientRing> a_;
  std::uint64_t id_;
  Matrix equations_;
  Submodule centralizer_;
};

}  // namespace skewsep
