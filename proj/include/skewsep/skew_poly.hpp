#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewsep/ring.hpp"

namespace skewsep {

inline constexpr std::size_t kMaxArithmeticDegree = 16;
inline constexpr std::size_t kMaxInvarianceDegree = 8;

class DegreeCapExceeded : public std::length_error {
 public:
  DegreeCapExceeded(std::size_t degree, std::size_t cap)
      : std::length_error("degree " + std::to_string(degree) + " exceeds the cap of " + std::to_string(cap)) {}
};

class ValidationFailed : public std::runtime_error {
 public:
  explicit ValidationFailed(ValidationReport report)
      : std::runtime_error(report.failures.empty() ? "validation failed" : report.failures.front()),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// p = sum_i X^i coeffs[i]. Trailing zero coefficients are trimmed, so the
// zero polynomial has no coefficients.
struct SkewPolynomial {
  std::uint64_t context = 0;
  std::vector<RingElement> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const SkewPolynomial&) const = default;
};

// sum_i coeffs[i] X^i, coefficients on the left.
struct LeftForm {
  std::vector<RingElement> coeffs;
  bool operator==(const LeftForm&) const = default;
};

// The skew polynomial ring B[X; rho, D] with multiplication rule
// a X = X rho(a) + D(a). Immutable once created.
class SkewRing {
 public:
  // Validates the ring, rho (automorphism) and D (rho-derivation); throws
  // ValidationFailed with the combined report otherwise.
  static std::shared_ptr<const SkewRing> create(FiniteRing ring, StructureMap rho, StructureMap d);

  const FiniteRing& base() const { return ring_; }
  const StructureMap& rho() const { return rho_; }
  const StructureMap& derivation() const { return d_; }
  const Matrix& rho_inverse() const { return rho_inv_; }
  bool commuting() const { return commuting_; }
  std::uint64_t id() const { return id_; }

  // rho^power(a); negative powers use the inverse.
  RingElement apply_rho(const RingElement& a, int power = 1) const;
  RingElement apply_d(const RingElement& a, std::size_t power = 1) const;
  // Binomial coefficient reduced mod c (Pascal recurrence in Z).
  Int binomial(std::size_t n, std::size_t k) const;

  SkewPolynomial zero() const { return {id_, {}}; }
  SkewPolynomial one() const { return constant(ring_.one()); }
  SkewPolynomial constant(const RingElement& a) const { return monomial(0, a); }
  SkewPolynomial monomial(std::size_t i, const RingElement& a) const;
  SkewPolynomial x_power(std::size_t n) const { return monomial(n, ring_.one()); }
  SkewPolynomial polynomial(std::vector<RingElement> coeffs) const;
  // X^m + sum_{i<m} X^i lower[i], m = lower.size()
  SkewPolynomial monic(std::vector<RingElement> lower) const;

  SkewPolynomial add(const SkewPolynomial& p, const SkewPolynomial& q) const;
  SkewPolynomial sub(const SkewPolynomial& p, const SkewPolynomial& q) const;
  SkewPolynomial neg(const SkewPolynomial& p) const;
  SkewPolynomial mul(const SkewPolynomial& p, const SkewPolynomial& q) const;

  // a * X^j in right-coefficient form. Uses the binomial closed form when
  // rho and D commute, the iterated rule otherwise.
  SkewPolynomial pass_left(const RingElement& a, std::size_t j) const;
  SkewPolynomial pass_left_iterated(const RingElement& a, std::size_t j) const;

  // X^j * a in left-coefficient form, closed form when rho and D commute.
  LeftForm right_commute(std::size_t j, const RingElement& a) const;
  LeftForm right_commute_iterated(std::size_t j, const RingElement& a) const;

  SkewPolynomial from_left_form(const LeftForm& l) const;
  LeftForm to_left_form(const SkewPolynomial& p) const;

  const RingElement& coefficient(const SkewPolynomial& p, std::size_t i) const;
  bool is_monic(const SkewPolynomial& p) const;

  std::string format(const SkewPolynomial& p) const;

  void check(const SkewPolynomial& p) const {
    if (p.context != id_) throw ContextMismatch();
  }

 private:
  SkewRing(FiniteRing ring, StructureMap rho, StructureMap d, Matrix rho_inv);
  SkewPolynomial trimmed(std::vector<RingElement> coeffs) const;

  FiniteRing ring_;
  StructureMap rho_, d_;
  Matrix rho_inv_;
  bool commuting_;
  std::uint64_t id_;
  std::vector<Matrix> rho_pow_, rho_inv_pow_, d_pow_;
  std::vector<Vec> binom_;
  RingElement zero_el_;
};

struct InvarianceResult {
  bool invariant = false;
  // First basis index a with e_a f != f rho^m(e_a), if any.
  std::optional<std::size_t> failing_basis;
  bool x_identity_holds = false;
};

// a f = f rho^m(a) for basis a, and X f = f (X - rho(a_{m-1}) + a_{m-1}).
InvarianceResult is_invariant_direct(const SkewRing& s, const SkewPolynomial& f);

struct CoefficientwiseReport {
  bool invariant = false;
  bool commutation_condition = true;  // a_i rho^m(a) expansion, all i and basis a
  bool derivative_condition = true;   // D(a_i), 1 <= i <= m-1
  bool constant_condition = true;     // D(a_0)
  std::vector<std::string> failures;
};

// Coefficient conditions equivalent to invariance when rho D = D rho; throws
// PreconditionError otherwise.
CoefficientwiseReport is_invariant_coefficientwise(const SkewRing& s, const SkewPolynomial& f);

// All coefficients of f below the leading one lie in B^rho.
bool coefficients_fixed_by_rho(const SkewRing& s, const SkewPolynomial& f);

struct CentralCoefficientReport {
  bool passed = false;
  std::vector<std::string> failures;
};

// For invariant f with rho D = D rho and coefficients in B^rho: each a_i lies
// in the center of B^{rho,D} and
//   a a_i = sum_{j>=i} (-1)^{j-i} C(j,i) a_j rho^{m-j} D^{j-i}(a).
// Throws PreconditionError if the hypotheses fail.
CentralCoefficientReport central_coefficient_check(const SkewRing& s, const SkewPolynomial& f);

}  // namespace skewsep
