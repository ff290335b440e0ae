#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewsep/linalg.hpp"
#include "skewsep/zmod.hpp"

namespace skewsep {

// Raised when a presentation or map has inconsistent dimensions. Distinct from
// an axiom failure, which is reported through ValidationReport.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside the hypotheses it is defined under.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ContextMismatch : public std::invalid_argument {
 public:
  ContextMismatch() : std::invalid_argument("operands belong to different contexts") {}
};

struct RingElement {
  Vec coords;
  bool operator==(const RingElement&) const = default;
  auto operator<=>(const RingElement&) const = default;
};

// A finite ring given as a free Z/c-module of rank k with structure constants
// e_a * e_b = sum_d mul(a, b, d) e_d.
class FiniteRing {
 public:
  FiniteRing(Int characteristic, std::size_t rank, std::vector<Int> table, Vec one,
             std::vector<std::string> labels = {});

  const ZMod& zmod() const { return zm_; }
  Int characteristic() const { return zm_.modulus(); }
  std::size_t rank() const { return k_; }
  Int structure_constant(std::size_t a, std::size_t b, std::size_t d) const {
    return table_[(a * k_ + b) * k_ + d];
  }
  const std::vector<Int>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }

  RingElement zero() const { return {Vec(k_, 0)}; }
  RingElement one() const { return one_; }
  RingElement basis(std::size_t a) const;
  RingElement element(Vec coords) const;

  RingElement add(const RingElement& x, const RingElement& y) const;
  RingElement sub(const RingElement& x, const RingElement& y) const;
  RingElement neg(const RingElement& x) const;
  RingElement scale(Int s, const RingElement& x) const;
  RingElement mul(const RingElement& x, const RingElement& y) const;

  bool is_zero(const RingElement& x) const;

  // Number of elements, c^k; throws std::overflow_error if it does not fit.
  std::uint64_t order() const;
  std::vector<RingElement> elements(std::uint64_t cap = kDefaultEnumerationCap) const;

  // Stable 64-bit content hash of (c, k, table, one).
  std::uint64_t fingerprint() const;

  std::string format(const RingElement& x) const;

  bool operator==(const FiniteRing& o) const {
    return zm_ == o.zm_ && k_ == o.k_ && table_ == o.table_ && one_ == o.one_;
  }

 private:
  ZMod zm_;
  std::size_t k_;
  std::vector<Int> table_;
  RingElement one_;
  std::vector<std::string> labels_;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  explicit operator bool() const { return ok(); }
  void fail(std::string msg) { failures.push_back(std::move(msg)); }
};

enum class MapKind { automorphism, derivation };

// An additive endomorphism of B as a k x k matrix acting on coordinate
// columns; column a is the image of e_a.
struct StructureMap {
  Matrix matrix;
  MapKind kind = MapKind::automorphism;

  RingElement apply(const FiniteRing& ring, const RingElement& x) const {
    return {skewsep::apply(ring.zmod(), matrix, x.coords)};
  }
};

ValidationReport validate_ring(const FiniteRing& ring);
ValidationReport validate_automorphism(const FiniteRing& ring, const StructureMap& rho);
ValidationReport validate_derivation(const FiniteRing& ring, const StructureMap& rho, const StructureMap& d);
bool check_commuting(const FiniteRing& ring, const StructureMap& rho, const StructureMap& d);

// Inverse of an invertible matrix over Z/c, or nullopt.
std::optional<Matrix> invert(const ZMod& zm, const Matrix& m);

// Coordinate submodules of B.
Submodule fixed_subring(const FiniteRing& ring, const StructureMap& rho);
Submodule kernel_submodule(const FiniteRing& ring, const StructureMap& d);
Submodule intersect(const Submodule& a, const Submodule& b);
// Elements of S commuting with every element of S.
Submodule center_of(const FiniteRing& ring, const Submodule& s);

namespace rings {

FiniteRing zmod(Int n);
// F_p[w]/(g) for a monic irreducible g given low-to-high, including the leading 1.
FiniteRing galois_field(Int p, const Vec& modulus);
// F_p[t]/(t^e)
FiniteRing truncated_poly(Int p, std::size_t e);
FiniteRing matrix_ring(const FiniteRing& base, std::size_t n);
FiniteRing product(const std::vector<FiniteRing>& factors);

}  // namespace rings

namespace maps {

StructureMap identity(const FiniteRing& ring);
// x -> x^p with p = characteristic; an automorphism only for suitable rings.
StructureMap frobenius(const FiniteRing& ring);
StructureMap zero_derivation(const FiniteRing& ring);
// d/dt on a ring built by rings::truncated_poly.
StructureMap formal_derivative(const FiniteRing& ring);
// x -> beta*x - rho(x)*beta, always a rho-derivation.
StructureMap inner_derivation(const FiniteRing& ring, const StructureMap& rho, const RingElement& beta);
// Swaps the two factors of rings::product({R, R}).
StructureMap swap_factors(const FiniteRing& ring);

}  // namespace maps

}  // namespace skewsep
