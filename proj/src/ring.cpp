#include "skewsep/ring.hpp"

#include <sstream>

namespace skewsep {

namespace {

std::uint64_t fnv1a(std::uint64_t h, Int value) {
  auto u = static_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) {
    h ^= (u >> (8 * i)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

FiniteRing::FiniteRing(Int characteristic, std::size_t rank, std::vector<Int> table, Vec one,
                       std::vector<std::string> labels)
    : zm_(characteristic), k_(rank), table_(std::move(table)), labels_(std::move(labels)) {
  if (k_ == 0) throw StructureError("rank must be at least 1");
  if (table_.size() != k_ * k_ * k_)
    throw StructureError("multiplication table must have rank^3 = " + std::to_string(k_ * k_ * k_) +
                         " entries, got " + std::to_string(table_.size()));
  if (one.size() != k_) throw StructureError("identity vector must have rank entries");
  if (!labels_.empty() && labels_.size() != k_) throw StructureError("label count must equal rank");
  for (auto& v : table_) v = zm_.reduce(v);
  one_.coords = zm_.reduce(std::move(one));
  if (labels_.empty())
    for (std::size_t a = 0; a < k_; ++a) labels_.push_back("e" + std::to_string(a));
}

RingElement FiniteRing::basis(std::size_t a) const {
  RingElement e = zero();
  e.coords.at(a) = 1;
  return e;
}

RingElement FiniteRing::element(Vec coords) const {
  if (coords.size() != k_) throw StructureError("element has wrong number of coordinates");
  return {zm_.reduce(std::move(coords))};
}

RingElement FiniteRing::add(const RingElement& x, const RingElement& y) const {
  RingElement out = zero();
  for (std::size_t i = 0; i < k_; ++i) out.coords[i] = zm_.add(x.coords[i], y.coords[i]);
  return out;
}

RingElement FiniteRing::sub(const RingElement& x, const RingElement& y) const {
  RingElement out = zero();
  for (std::size_t i = 0; i < k_; ++i) out.coords[i] = zm_.sub(x.coords[i], y.coords[i]);
  return out;
}

RingElement FiniteRing::neg(const RingElement& x) const {
  RingElement out = zero();
  for (std::size_t i = 0; i < k_; ++i) out.coords[i] = zm_.neg(x.coords[i]);
  return out;
}

RingElement FiniteRing::scale(Int s, const RingElement& x) const {
  RingElement out = zero();
  for (std::size_t i = 0; i < k_; ++i) out.coords[i] = zm_.mul(s, x.coords[i]);
  return out;
}

RingElement FiniteRing::mul(const RingElement& x, const RingElement& y) const {
  RingElement out = zero();
  for (std::size_t a = 0; a < k_; ++a) {
    if (x.coords[a] == 0) continue;
    for (std::size_t b = 0; b < k_; ++b) {
      const Int w = zm_.mul(x.coords[a], y.coords[b]);
      if (w == 0) continue;
      const Int* row = &table_[(a * k_ + b) * k_];
      for (std::size_t d = 0; d < k_; ++d)
        if (row[d] != 0) out.coords[d] = zm_.add(out.coords[d], w * row[d]);
    }
  }
  return out;
}

bool FiniteRing::is_zero(const RingElement& x) const {
  for (Int v : x.coords)
    if (v != 0) return false;
  return true;
}

std::uint64_t FiniteRing::order() const { return Submodule::full(zm_, k_).order(); }

std::vector<RingElement> FiniteRing::elements(std::uint64_t cap) const {
  std::vector<RingElement> out;
  Submodule::full(zm_, k_).for_each(cap, [&out](const Vec& v) { out.push_back({v}); });
  return out;
}

std::uint64_t FiniteRing::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, zm_.modulus());
  h = fnv1a(h, static_cast<Int>(k_));
  for (Int v : table_) h = fnv1a(h, v);
  for (Int v : one_.coords) h = fnv1a(h, v);
  return h;
}

std::string FiniteRing::format(const RingElement& x) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t a = 0; a < k_; ++a) {
    const Int v = x.coords[a];
    if (v == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (labels_[a] == "1") {
      os << v;
    } else {
      if (v != 1) os << v << '*';
      os << labels_[a];
    }
  }
  if (first) os << '0';
  return os.str();
}

ValidationReport validate_ring(const FiniteRing& ring) {
  ValidationReport report;
  const std::size_t k = ring.rank();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        const auto ea = ring.basis(a), eb = ring.basis(b), ec = ring.basis(c);
        if (ring.mul(ring.mul(ea, eb), ec) != ring.mul(ea, ring.mul(eb, ec)))
          report.fail("associativity fails on basis triple (" + std::to_string(a) + "," + std::to_string(b) +
                      "," + std::to_string(c) + ")");
      }
  for (std::size_t a = 0; a < k; ++a) {
    const auto ea = ring.basis(a);
    if (ring.mul(ring.one(), ea) != ea) report.fail("left identity fails on e" + std::to_string(a));
    if (ring.mul(ea, ring.one()) != ea) report.fail("right identity fails on e" + std::to_string(a));
  }
  return report;
}

namespace {

void check_shape(const FiniteRing& ring, const StructureMap& map) {
  if (map.matrix.rows() != ring.rank() || map.matrix.cols() != ring.rank())
    throw StructureError("structure map must be a rank x rank matrix");
}

}  // namespace

std::optional<Matrix> invert(const ZMod& zm, const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0);
    e[j] = 1;
    auto sol = solve_linear(zm, m, e);
    if (!sol || !sol->kernel.is_zero()) return std::nullopt;
    inv.set_column(j, sol->particular);
  }
  return inv;
}

ValidationReport validate_automorphism(const FiniteRing& ring, const StructureMap& rho) {
  check_shape(ring, rho);
  ValidationReport report;
  if (rho.kind != MapKind::automorphism) {
    report.fail("map is not declared as an automorphism");
    return report;
  }
  if (!invert(ring.zmod(), rho.matrix)) report.fail("not bijective: matrix is not invertible over Z/c");
  if (rho.apply(ring, ring.one()) != ring.one()) report.fail("does not fix the identity");
  const std::size_t k = ring.rank();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const auto ea = ring.basis(a), eb = ring.basis(b);
      if (rho.apply(ring, ring.mul(ea, eb)) != ring.mul(rho.apply(ring, ea), rho.apply(ring, eb)))
        report.fail("not multiplicative on basis pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  return report;
}

ValidationReport validate_derivation(const FiniteRing& ring, const StructureMap& rho, const StructureMap& d) {
  check_shape(ring, rho);
  check_shape(ring, d);
  ValidationReport report;
  if (d.kind != MapKind::derivation) {
    report.fail("map is not declared as a derivation");
    return report;
  }
  if (!ring.is_zero(d.apply(ring, ring.one()))) report.fail("D(1) != 0");
  const std::size_t k = ring.rank();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const auto ea = ring.basis(a), eb = ring.basis(b);
      const auto lhs = d.apply(ring, ring.mul(ea, eb));
      const auto rhs = ring.add(ring.mul(d.apply(ring, ea), eb), ring.mul(rho.apply(ring, ea), d.apply(ring, eb)));
      if (lhs != rhs)
        report.fail("twisted Leibniz rule fails on basis pair (" + std::to_string(a) + "," + std::to_string(b) +
                    ")");
    }
  return report;
}

bool check_commuting(const FiniteRing& ring, const StructureMap& rho, const StructureMap& d) {
  check_shape(ring, rho);
  check_shape(ring, d);
  return multiply(ring.zmod(), rho.matrix, d.matrix) == multiply(ring.zmod(), d.matrix, rho.matrix);
}

Submodule fixed_subring(const FiniteRing& ring, const StructureMap& rho) {
  check_shape(ring, rho);
  return kernel(ring.zmod(), subtract(ring.zmod(), rho.matrix, Matrix::identity(ring.rank())));
}

Submodule kernel_submodule(const FiniteRing& ring, const StructureMap& d) {
  check_shape(ring, d);
  return kernel(ring.zmod(), d.matrix);
}

Submodule intersect(const Submodule& a, const Submodule& b) { return a.intersect(b); }

Submodule center_of(const FiniteRing& ring, const Submodule& s) {
  const auto& gens = s.rows();
  const std::size_t k = ring.rank();
  if (gens.empty()) return s;
  // Unknown: coefficients l over the generators; s = sum l_i g_i must commute
  // with every generator g_j.
  Matrix system(k * gens.size(), gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const RingElement gi{gens[i]};
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const RingElement gj{gens[j]};
      const auto comm = ring.sub(ring.mul(gi, gj), ring.mul(gj, gi));
      for (std::size_t d = 0; d < k; ++d) system(j * k + d, i) = comm.coords[d];
    }
  }
  std::vector<Vec> image;
  const auto coefficients = kernel(ring.zmod(), system);
  for (const auto& lambda : coefficients.rows()) {
    Vec v(k, 0);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t d = 0; d < k; ++d) v[d] = ring.zmod().add(v[d], lambda[i] * gens[i][d]);
    image.push_back(std::move(v));
  }
  return Submodule::span(ring.zmod(), k, std::move(image));
}

namespace rings {

FiniteRing zmod(Int n) { return FiniteRing(n, 1, {1}, {1}, {"1"}); }

FiniteRing galois_field(Int p, const Vec& modulus) {
  if (modulus.size() < 2 || ZMod(p).reduce(modulus.back()) != 1)
    throw StructureError("field modulus must be monic of degree >= 1");
  const ZMod zm(p);
  const std::size_t r = modulus.size() - 1;
  // reduction of w^n for n < 2r - 1, as coordinate vectors
  std::vector<Vec> powers(2 * r, Vec(r, 0));
  for (std::size_t n = 0; n < r; ++n) powers[n][n] = 1;
  for (std::size_t n = r; n < 2 * r; ++n) {
    // w^n = w * w^{n-1}; shift and fold the overflow using w^r = -sum g_i w^i
    const Vec& prev = powers[n - 1];
    Vec next(r, 0);
    for (std::size_t i = 0; i + 1 < r; ++i) next[i + 1] = prev[i];
    const Int top = prev[r - 1];
    for (std::size_t i = 0; i < r; ++i) next[i] = zm.sub(next[i], zm.mul(top, modulus[i]));
    powers[n] = next;
  }
  std::vector<Int> table(r * r * r, 0);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t d = 0; d < r; ++d) table[(a * r + b) * r + d] = powers[a + b][d];
  Vec one(r, 0);
  one[0] = 1;
  std::vector<std::string> labels{"1"};
  for (std::size_t i = 1; i < r; ++i) labels.push_back(i == 1 ? "w" : "w^" + std::to_string(i));
  return FiniteRing(p, r, std::move(table), std::move(one), std::move(labels));
}

FiniteRing truncated_poly(Int p, std::size_t e) {
  if (e == 0) throw StructureError("truncation degree must be at least 1");
  std::vector<Int> table(e * e * e, 0);
  for (std::size_t a = 0; a < e; ++a)
    for (std::size_t b = 0; a + b < e; ++b) table[(a * e + b) * e + a + b] = 1;
  Vec one(e, 0);
  one[0] = 1;
  std::vector<std::string> labels{"1"};
  for (std::size_t i = 1; i < e; ++i) labels.push_back(i == 1 ? "t" : "t^" + std::to_string(i));
  return FiniteRing(p, e, std::move(table), std::move(one), std::move(labels));
}

FiniteRing matrix_ring(const FiniteRing& base, std::size_t n) {
  if (n == 0) throw StructureError("matrix size must be at least 1");
  const std::size_t kb = base.rank();
  const std::size_t k = n * n * kb;
  auto index = [&](std::size_t i, std::size_t j, std::size_t s) { return (i * n + j) * kb + s; };
  std::vector<Int> table(k * k * k, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < kb; ++s)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t t = 0; t < kb; ++t) {
            // (E_ij b_s)(E_jl b_t) = E_il (b_s b_t)
            const std::size_t left = index(i, j, s), right = index(j, l, t);
            for (std::size_t u = 0; u < kb; ++u)
              table[(left * k + right) * k + index(i, l, u)] = base.structure_constant(s, t, u);
          }
  Vec one(k, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < kb; ++s) one[index(i, i, s)] = base.one().coords[s];
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < kb; ++s) {
        std::string lab = "E" + std::to_string(i + 1) + std::to_string(j + 1);
        if (base.labels()[s] != "1") lab += "*" + base.labels()[s];
        labels.push_back(std::move(lab));
      }
  return FiniteRing(base.characteristic(), k, std::move(table), std::move(one), std::move(labels));
}

FiniteRing product(const std::vector<FiniteRing>& factors) {
  if (factors.empty()) throw StructureError("product needs at least one factor");
  const Int c = factors.front().characteristic();
  std::size_t k = 0;
  for (const auto& f : factors) {
    if (f.characteristic() != c) throw StructureError("product factors must share the characteristic");
    k += f.rank();
  }
  std::vector<Int> table(k * k * k, 0);
  Vec one(k, 0);
  std::vector<std::string> labels;
  std::size_t offset = 0;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    const auto& f = factors[fi];
    const std::size_t kf = f.rank();
    for (std::size_t a = 0; a < kf; ++a)
      for (std::size_t b = 0; b < kf; ++b)
        for (std::size_t d = 0; d < kf; ++d)
          table[((offset + a) * k + offset + b) * k + offset + d] = f.structure_constant(a, b, d);
    for (std::size_t a = 0; a < kf; ++a) {
      one[offset + a] = f.one().coords[a];
      labels.push_back("[" + std::to_string(fi) + "]" + f.labels()[a]);
    }
    offset += kf;
  }
  return FiniteRing(c, k, std::move(table), std::move(one), std::move(labels));
}

}  // namespace rings

namespace maps {

StructureMap identity(const FiniteRing& ring) { return {Matrix::identity(ring.rank()), MapKind::automorphism}; }

StructureMap frobenius(const FiniteRing& ring) {
  const std::size_t k = ring.rank();
  Matrix m(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    RingElement power = ring.one();
    const auto ea = ring.basis(a);
    for (Int i = 0; i < ring.characteristic(); ++i) power = ring.mul(power, ea);
    m.set_column(a, power.coords);
  }
  return {std::move(m), MapKind::automorphism};
}

StructureMap zero_derivation(const FiniteRing& ring) {
  return {Matrix(ring.rank(), ring.rank()), MapKind::derivation};
}

StructureMap formal_derivative(const FiniteRing& ring) {
  const std::size_t e = ring.rank();
  if (!(ring == rings::truncated_poly(ring.characteristic(), e)))
    throw StructureError("formal derivative needs a truncated polynomial ring F_p[t]/(t^e)");
  Matrix m(e, e);
  for (std::size_t a = 1; a < e; ++a) m(a - 1, a) = ring.zmod().reduce(static_cast<Int>(a));
  return {std::move(m), MapKind::derivation};
}

StructureMap inner_derivation(const FiniteRing& ring, const StructureMap& rho, const RingElement& beta) {
  const std::size_t k = ring.rank();
  Matrix m(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const auto ea = ring.basis(a);
    m.set_column(a, ring.sub(ring.mul(beta, ea), ring.mul(rho.apply(ring, ea), beta)).coords);
  }
  return {std::move(m), MapKind::derivation};
}

StructureMap swap_factors(const FiniteRing& ring) {
  const std::size_t k = ring.rank();
  if (k % 2 != 0) throw StructureError("swap needs two factors of equal rank");
  const std::size_t half = k / 2;
  Matrix m(k, k);
  for (std::size_t a = 0; a < half; ++a) {
    m(a + half, a) = 1;
    m(a, a + half) = 1;
  }
  return {std::move(m), MapKind::automorphism};
}

}  // namespace maps

}  // namespace skewsep
