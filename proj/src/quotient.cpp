#include "skewsep/quotient.hpp"

#include <sstream>

namespace skewsep {

namespace {

// Remainder of p modulo the two-sided ideal generated by the monic invariant
// f of degree m. Subtracting X^{n-m} f b removes the top term X^n b; that
// polynomial lies in B[X] f B[X] = f B[X].
std::vector<RingElement> remainder(const SkewRing& s, const SkewPolynomial& f, std::size_t m,
                                   std::vector<RingElement> coeffs) {
  const auto& ring = s.base();
  for (std::size_t n = coeffs.size(); n-- > m;) {
    const RingElement b = coeffs[n];
    if (ring.is_zero(b)) continue;
    for (std::size_t i = 0; i <= m; ++i)
      coeffs[n - m + i] = ring.sub(coeffs[n - m + i], ring.mul(s.coefficient(f, i), b));
  }
  coeffs.resize(m, ring.zero());
  return coeffs;
}

Vec flatten(const std::vector<RingElement>& coeffs) {
  Vec out;
  for (const auto& c : coeffs) out.insert(out.end(), c.coords.begin(), c.coords.end());
  return out;
}

FiniteRing build_algebra(const SkewRing& s, const SkewPolynomial& f, std::size_t m) {
  const auto& ring = s.base();
  const std::size_t k = ring.rank(), n = k * m;
  std::vector<Int> table(n * n * n, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t b = 0; b < k; ++b) {
          const auto prod = s.mul(s.monomial(i, ring.basis(a)), s.monomial(j, ring.basis(b)));
          const Vec r = flatten(remainder(s, f, m, prod.coeffs));
          const std::size_t left = i * k + a, right = j * k + b;
          std::copy(r.begin(), r.end(), table.begin() + static_cast<std::ptrdiff_t>((left * n + right) * n));
        }
  Vec one(n, 0);
  const auto unit = ring.one();
  std::copy(unit.coords.begin(), unit.coords.end(), one.begin());
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t a = 0; a < k; ++a) {
      std::string xl = j == 0 ? "" : (j == 1 ? "x" : "x^" + std::to_string(j));
      const auto& bl = ring.labels()[a];
      labels.push_back(xl.empty() ? bl : (bl == "1" ? xl : xl + "*" + bl));
    }
  return FiniteRing(ring.characteristic(), n, std::move(table), std::move(one), std::move(labels));
}

std::size_t checked_degree(const SkewRing& s, const SkewPolynomial& f) {
  s.check(f);
  if (!s.is_monic(f) || f.degree() < 1) throw std::invalid_argument("quotient needs a monic f of degree >= 1");
  return static_cast<std::size_t>(f.degree());
}

}  // namespace

std::shared_ptr<const QuotientRing> QuotientRing::create(std::shared_ptr<const SkewRing> skew, SkewPolynomial f) {
  checked_degree(*skew, f);
  if (!is_invariant_direct(*skew, f).invariant)
    throw NotInvariant("f = " + skew->format(f) + " does not generate a two-sided ideal");
  return std::shared_ptr<const QuotientRing>(new QuotientRing(std::move(skew), std::move(f)));
}

QuotientRing::QuotientRing(std::shared_ptr<const SkewRing> skew, SkewPolynomial f)
    : skew_(std::move(skew)),
      f_(std::move(f)),
      m_(checked_degree(*skew_, f_)),
      algebra_(build_algebra(*skew_, f_, m_)) {
  std::uint64_t h = skew_->id() ^ 0x51a7e5ULL;
  for (const auto& c : f_.coeffs)
    for (Int v : c.coords) h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ULL + 0x9e37;
  id_ = h;
}

QuotientElement QuotientRing::reduce(const SkewPolynomial& p) const {
  skew_->check(p);
  return {id_, flatten(remainder(*skew_, f_, m_, p.coeffs))};
}

SkewPolynomial QuotientRing::lift(const QuotientElement& u) const {
  check(u);
  std::vector<RingElement> coeffs;
  for (std::size_t j = 0; j < m_; ++j) coeffs.push_back(coefficient(u, j));
  return skew_->polynomial(std::move(coeffs));
}

QuotientElement QuotientRing::element(Vec coords) const {
  if (coords.size() != dim()) throw StructureError("quotient element has wrong number of coordinates");
  return {id_, base().zmod().reduce(std::move(coords))};
}

QuotientElement QuotientRing::from_coefficients(const std::vector<RingElement>& coeffs) const {
  if (coeffs.size() > m_) throw StructureError("too many coefficients for the quotient basis");
  auto padded = coeffs;
  padded.resize(m_, base().zero());
  return element(flatten(padded));
}

RingElement QuotientRing::coefficient(const QuotientElement& u, std::size_t j) const {
  check(u);
  const std::size_t k = base().rank();
  return {Vec(u.coords.begin() + static_cast<std::ptrdiff_t>(j * k),
              u.coords.begin() + static_cast<std::ptrdiff_t>((j + 1) * k))};
}

QuotientElement QuotientRing::embed(const RingElement& a) const { return from_coefficients({a}); }

QuotientElement QuotientRing::x_power(std::size_t n) const {
  QuotientElement out = one();
  const auto xe = reduce(skew_->x_power(1));
  for (std::size_t i = 0; i < n; ++i) out = mul(out, xe);
  return out;
}

QuotientElement QuotientRing::add(const QuotientElement& u, const QuotientElement& v) const {
  check(u);
  check(v);
  return {id_, algebra_.add({u.coords}, {v.coords}).coords};
}

QuotientElement QuotientRing::sub(const QuotientElement& u, const QuotientElement& v) const {
  check(u);
  check(v);
  return {id_, algebra_.sub({u.coords}, {v.coords}).coords};
}

QuotientElement QuotientRing::neg(const QuotientElement& u) const {
  check(u);
  return {id_, algebra_.neg({u.coords}).coords};
}

QuotientElement QuotientRing::scale(Int s, const QuotientElement& u) const {
  check(u);
  return {id_, algebra_.scale(s, {u.coords}).coords};
}

QuotientElement QuotientRing::mul(const QuotientElement& u, const QuotientElement& v) const {
  check(u);
  check(v);
  return {id_, algebra_.mul({u.coords}, {v.coords}).coords};
}

bool QuotientRing::is_zero(const QuotientElement& u) const {
  check(u);
  return algebra_.is_zero({u.coords});
}

std::vector<QuotientElement> QuotientRing::y_elements() const {
  std::vector<QuotientElement> ys;
  for (std::size_t j = 0; j < m_; ++j) {
    // coefficient of x^l in y_j is a_{j+1+l}
    std::vector<RingElement> coeffs;
    for (std::size_t l = 0; j + 1 + l <= m_; ++l) coeffs.push_back(coefficient_of_f(j + 1 + l));
    ys.push_back(from_coefficients(coeffs));
  }
  return ys;
}

Matrix QuotientRing::centralizer_equations(int twist) const {
  const std::size_t n = dim();
  Matrix system(0, n);
  for (std::size_t a = 0; a < base().rank(); ++a) {
    const auto left = embed(skew_->apply_rho(base().basis(a), twist));
    const auto right = embed(base().basis(a));
    system.append_rows(matrix_of_linear_map(n, n, [&](const Vec& v) {
      const QuotientElement u{id_, v};
      return sub(mul(left, u), mul(u, right)).coords;
    }));
  }
  return system;
}

std::optional<std::size_t> QuotientRing::twisted_violation(const QuotientElement& u, int twist) const {
  check(u);
  for (std::size_t a = 0; a < base().rank(); ++a) {
    const auto left = embed(skew_->apply_rho(base().basis(a), twist));
    if (mul(left, u) != mul(u, embed(base().basis(a)))) return a;
  }
  return std::nullopt;
}

Submodule QuotientRing::centralizer_v0() const { return kernel(base().zmod(), centralizer_equations(0)); }

Submodule QuotientRing::centralizer_vm1() const {
  return kernel(base().zmod(), centralizer_equations(static_cast<int>(m_) - 1));
}

std::optional<std::size_t> QuotientRing::v0_violation(const QuotientElement& g) const {
  return twisted_violation(g, 0);
}

std::optional<std::size_t> QuotientRing::vm1_violation(const QuotientElement& h) const {
  return twisted_violation(h, static_cast<int>(m_) - 1);
}

std::string QuotientRing::format(const QuotientElement& u) const {
  check(u);
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = m_; j-- > 0;) {
    const auto c = coefficient(u, j);
    if (base().is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs = base().format(c);
    if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
    if (j == 0) {
      os << cs;
      continue;
    }
    os << 'x';
    if (j > 1) os << '^' << j;
    if (c != base().one()) os << '*' << cs;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace skewsep
