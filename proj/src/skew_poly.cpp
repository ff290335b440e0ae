#include "skewsep/skew_poly.hpp"

#include <sstream>

namespace skewsep {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t matrix_hash(std::uint64_t h, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (Int v : m.row(i)) h = mix(h, static_cast<std::uint64_t>(v));
  return h;
}

}  // namespace

std::shared_ptr<const SkewRing> SkewRing::create(FiniteRing ring, StructureMap rho, StructureMap d) {
  ValidationReport report = validate_ring(ring);
  if (!report) throw ValidationFailed(std::move(report));
  report = validate_automorphism(ring, rho);
  if (!report) throw ValidationFailed(std::move(report));
  report = validate_derivation(ring, rho, d);
  if (!report) throw ValidationFailed(std::move(report));
  auto inv = invert(ring.zmod(), rho.matrix);
  return std::shared_ptr<const SkewRing>(new SkewRing(std::move(ring), std::move(rho), std::move(d), std::move(*inv)));
}

SkewRing::SkewRing(FiniteRing ring, StructureMap rho, StructureMap d, Matrix rho_inv)
    : ring_(std::move(ring)),
      rho_(std::move(rho)),
      d_(std::move(d)),
      rho_inv_(std::move(rho_inv)),
      commuting_(check_commuting(ring_, rho_, d_)),
      zero_el_(ring_.zero()) {
  id_ = matrix_hash(matrix_hash(mix(ring_.fingerprint(), 0x5157), rho_.matrix), d_.matrix);
  const std::size_t n = kMaxArithmeticDegree + 1;
  const auto& zm = ring_.zmod();
  rho_pow_.push_back(Matrix::identity(ring_.rank()));
  rho_inv_pow_.push_back(Matrix::identity(ring_.rank()));
  d_pow_.push_back(Matrix::identity(ring_.rank()));
  for (std::size_t i = 1; i <= n; ++i) {
    rho_pow_.push_back(multiply(zm, rho_.matrix, rho_pow_.back()));
    rho_inv_pow_.push_back(multiply(zm, rho_inv_, rho_inv_pow_.back()));
    d_pow_.push_back(multiply(zm, d_.matrix, d_pow_.back()));
  }
  binom_ = binomial_table(zm, n);
}

RingElement SkewRing::apply_rho(const RingElement& a, int power) const {
  const auto idx = static_cast<std::size_t>(power < 0 ? -power : power);
  if (idx >= rho_pow_.size()) throw DegreeCapExceeded(idx, rho_pow_.size() - 1);
  const Matrix& m = power < 0 ? rho_inv_pow_[idx] : rho_pow_[idx];
  return {apply(ring_.zmod(), m, a.coords)};
}

RingElement SkewRing::apply_d(const RingElement& a, std::size_t power) const {
  if (power >= d_pow_.size()) throw DegreeCapExceeded(power, d_pow_.size() - 1);
  return {apply(ring_.zmod(), d_pow_[power], a.coords)};
}

Int SkewRing::binomial(std::size_t n, std::size_t k) const {
  if (k > n) return 0;
  if (n >= binom_.size()) throw DegreeCapExceeded(n, binom_.size() - 1);
  return binom_[n][k];
}

SkewPolynomial SkewRing::trimmed(std::vector<RingElement> coeffs) const {
  while (!coeffs.empty() && ring_.is_zero(coeffs.back())) coeffs.pop_back();
  if (!coeffs.empty() && coeffs.size() - 1 > kMaxArithmeticDegree)
    throw DegreeCapExceeded(coeffs.size() - 1, kMaxArithmeticDegree);
  return {id_, std::move(coeffs)};
}

SkewPolynomial SkewRing::monomial(std::size_t i, const RingElement& a) const {
  std::vector<RingElement> c(i + 1, zero_el_);
  c[i] = ring_.element(a.coords);
  return trimmed(std::move(c));
}

SkewPolynomial SkewRing::polynomial(std::vector<RingElement> coeffs) const {
  for (auto& c : coeffs) c = ring_.element(std::move(c.coords));
  return trimmed(std::move(coeffs));
}

SkewPolynomial SkewRing::monic(std::vector<RingElement> lower) const {
  lower.push_back(ring_.one());
  return polynomial(std::move(lower));
}

const RingElement& SkewRing::coefficient(const SkewPolynomial& p, std::size_t i) const {
  return i < p.coeffs.size() ? p.coeffs[i] : zero_el_;
}

bool SkewRing::is_monic(const SkewPolynomial& p) const { return !p.is_zero() && p.coeffs.back() == ring_.one(); }

SkewPolynomial SkewRing::add(const SkewPolynomial& p, const SkewPolynomial& q) const {
  check(p);
  check(q);
  std::vector<RingElement> out(std::max(p.coeffs.size(), q.coeffs.size()), zero_el_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ring_.add(coefficient(p, i), coefficient(q, i));
  return trimmed(std::move(out));
}

SkewPolynomial SkewRing::sub(const SkewPolynomial& p, const SkewPolynomial& q) const { return add(p, neg(q)); }

SkewPolynomial SkewRing::neg(const SkewPolynomial& p) const {
  check(p);
  SkewPolynomial out = p;
  for (auto& c : out.coeffs) c = ring_.neg(c);
  return out;
}

SkewPolynomial SkewRing::pass_left_iterated(const RingElement& a, std::size_t j) const {
  if (j > kMaxArithmeticDegree) throw DegreeCapExceeded(j, kMaxArithmeticDegree);
  std::vector<RingElement> cur{a};
  for (std::size_t step = 0; step < j; ++step) {
    // (sum X^i b_i) X = sum X^{i+1} rho(b_i) + X^i D(b_i)
    std::vector<RingElement> next(cur.size() + 1, zero_el_);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] = ring_.add(next[i + 1], rho_.apply(ring_, cur[i]));
      next[i] = ring_.add(next[i], d_.apply(ring_, cur[i]));
    }
    cur = std::move(next);
  }
  return trimmed(std::move(cur));
}

SkewPolynomial SkewRing::pass_left(const RingElement& a, std::size_t j) const {
  if (!commuting_) return pass_left_iterated(a, j);
  if (j > kMaxArithmeticDegree) throw DegreeCapExceeded(j, kMaxArithmeticDegree);
  // a X^j = sum_i C(j,i) X^i rho^i D^{j-i}(a)
  std::vector<RingElement> out(j + 1, zero_el_);
  for (std::size_t i = 0; i <= j; ++i)
    out[i] = ring_.scale(binomial(j, i), apply_rho(apply_d(a, j - i), static_cast<int>(i)));
  return trimmed(std::move(out));
}

LeftForm SkewRing::right_commute_iterated(std::size_t j, const RingElement& a) const {
  if (j > kMaxArithmeticDegree) throw DegreeCapExceeded(j, kMaxArithmeticDegree);
  std::vector<RingElement> cur{a};
  for (std::size_t step = 0; step < j; ++step) {
    // X b = rho^{-1}(b) X - D(rho^{-1}(b))
    std::vector<RingElement> next(cur.size() + 1, zero_el_);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const auto pre = apply_rho(cur[i], -1);
      next[i + 1] = ring_.add(next[i + 1], pre);
      next[i] = ring_.sub(next[i], d_.apply(ring_, pre));
    }
    cur = std::move(next);
  }
  return {std::move(cur)};
}

LeftForm SkewRing::right_commute(std::size_t j, const RingElement& a) const {
  if (!commuting_) return right_commute_iterated(j, a);
  if (j > kMaxArithmeticDegree) throw DegreeCapExceeded(j, kMaxArithmeticDegree);
  // X^j a = sum_i (-1)^{j-i} C(j,i) rho^{-j} D^{j-i}(a) X^i
  const auto& zm = ring_.zmod();
  std::vector<RingElement> out(j + 1, zero_el_);
  for (std::size_t i = 0; i <= j; ++i) {
    Int coeff = binomial(j, i);
    if ((j - i) % 2 == 1) coeff = zm.neg(coeff);
    out[i] = ring_.scale(coeff, apply_rho(apply_d(a, j - i), -static_cast<int>(j)));
  }
  return {std::move(out)};
}

SkewPolynomial SkewRing::from_left_form(const LeftForm& l) const {
  SkewPolynomial out = zero();
  for (std::size_t i = 0; i < l.coeffs.size(); ++i) out = add(out, pass_left(l.coeffs[i], i));
  return out;
}

LeftForm SkewRing::to_left_form(const SkewPolynomial& p) const {
  check(p);
  std::vector<RingElement> out(p.coeffs.size(), zero_el_);
  for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
    const auto l = right_commute(j, p.coeffs[j]);
    for (std::size_t i = 0; i < l.coeffs.size(); ++i) out[i] = ring_.add(out[i], l.coeffs[i]);
  }
  return {std::move(out)};
}

SkewPolynomial SkewRing::mul(const SkewPolynomial& p, const SkewPolynomial& q) const {
  check(p);
  check(q);
  if (p.is_zero() || q.is_zero()) return zero();
  const std::size_t top = p.coeffs.size() + q.coeffs.size() - 2;
  if (top > kMaxArithmeticDegree) throw DegreeCapExceeded(top, kMaxArithmeticDegree);
  std::vector<RingElement> out(top + 1, zero_el_);
  // X^i p_i X^j q_j = X^i (p_i X^j) q_j
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (ring_.is_zero(p.coeffs[i])) continue;
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
      if (ring_.is_zero(q.coeffs[j])) continue;
      const auto moved = pass_left(p.coeffs[i], j);
      for (std::size_t l = 0; l < moved.coeffs.size(); ++l)
        out[i + l] = ring_.add(out[i + l], ring_.mul(moved.coeffs[l], q.coeffs[j]));
    }
  }
  return trimmed(std::move(out));
}

std::string SkewRing::format(const SkewPolynomial& p) const {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.coeffs.size(); i-- > 0;) {
    const auto& c = p.coeffs[i];
    if (ring_.is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs = ring_.format(c);
    if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
    if (i == 0) {
      os << cs;
      continue;
    }
    os << 'X';
    if (i > 1) os << '^' << i;
    if (c != ring_.one()) os << '*' << cs;
  }
  return os.str();
}

namespace {

std::size_t invariance_degree(const SkewRing& s, const SkewPolynomial& f) {
  s.check(f);
  if (!s.is_monic(f) || f.degree() < 1) throw std::invalid_argument("invariance is defined for monic f of degree >= 1");
  const auto m = static_cast<std::size_t>(f.degree());
  if (m > kMaxInvarianceDegree) throw DegreeCapExceeded(m, kMaxInvarianceDegree);
  return m;
}

}  // namespace

InvarianceResult is_invariant_direct(const SkewRing& s, const SkewPolynomial& f) {
  const std::size_t m = invariance_degree(s, f);
  const auto& ring = s.base();
  InvarianceResult r;
  for (std::size_t a = 0; a < ring.rank(); ++a) {
    const auto ea = ring.basis(a);
    const auto lhs = s.mul(s.constant(ea), f);
    const auto rhs = s.mul(f, s.constant(s.apply_rho(ea, static_cast<int>(m))));
    if (lhs != rhs) {
      r.failing_basis = a;
      break;
    }
  }
  const auto& top = s.coefficient(f, m - 1);
  // X - rho(a_{m-1}) + a_{m-1}
  const auto shift = s.add(s.x_power(1), s.constant(ring.sub(top, s.apply_rho(top))));
  r.x_identity_holds = s.mul(s.x_power(1), f) == s.mul(f, shift);
  r.invariant = !r.failing_basis && r.x_identity_holds;
  return r;
}

CoefficientwiseReport is_invariant_coefficientwise(const SkewRing& s, const SkewPolynomial& f) {
  const std::size_t m = invariance_degree(s, f);
  if (!s.commuting()) throw PreconditionError("coefficientwise invariance test requires rho D = D rho");
  const auto& ring = s.base();
  auto a = [&](std::size_t i) -> const RingElement& { return s.coefficient(f, i); };
  CoefficientwiseReport r;

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t b = 0; b < ring.rank(); ++b) {
      const auto alpha = ring.basis(b);
      // a_i rho^m(alpha) = sum_{j=i}^{m} C(j,i) rho^i D^{j-i}(alpha) a_j
      const auto lhs = ring.mul(a(i), s.apply_rho(alpha, static_cast<int>(m)));
      RingElement rhs = ring.zero();
      for (std::size_t j = i; j <= m; ++j) {
        const auto term = s.apply_rho(s.apply_d(alpha, j - i), static_cast<int>(i));
        rhs = ring.add(rhs, ring.scale(s.binomial(j, i), ring.mul(term, a(j))));
      }
      if (lhs != rhs) {
        r.commutation_condition = false;
        r.failures.push_back("commutation condition fails at i=" + std::to_string(i) + ", basis " +
                             std::to_string(b));
      }
    }

  const auto delta = ring.sub(s.apply_rho(a(m - 1)), a(m - 1));
  for (std::size_t i = 1; i < m; ++i) {
    // D(a_i) = a_{i-1} - rho(a_{i-1}) + a_i (rho(a_{m-1}) - a_{m-1})
    const auto rhs = ring.add(ring.sub(a(i - 1), s.apply_rho(a(i - 1))), ring.mul(a(i), delta));
    if (s.apply_d(a(i)) != rhs) {
      r.derivative_condition = false;
      r.failures.push_back("derivative condition fails at i=" + std::to_string(i));
    }
  }
  if (s.apply_d(a(0)) != ring.mul(a(0), delta)) {
    r.constant_condition = false;
    r.failures.push_back("constant-term condition fails");
  }
  r.invariant = r.commutation_condition && r.derivative_condition && r.constant_condition;
  return r;
}

bool coefficients_fixed_by_rho(const SkewRing& s, const SkewPolynomial& f) {
  s.check(f);
  for (const auto& c : f.coeffs)
    if (s.apply_rho(c) != c) return false;
  return true;
}

CentralCoefficientReport central_coefficient_check(const SkewRing& s, const SkewPolynomial& f) {
  const std::size_t m = invariance_degree(s, f);
  if (!s.commuting()) throw PreconditionError("central coefficient check requires rho D = D rho");
  if (!coefficients_fixed_by_rho(s, f)) throw PreconditionError("central coefficient check requires coefficients in B^rho");
  if (!is_invariant_direct(s, f).invariant) throw PreconditionError("central coefficient check requires invariant f");

  const auto& ring = s.base();
  const auto fixed_const = intersect(fixed_subring(ring, s.rho()), kernel_submodule(ring, s.derivation()));
  const auto center = center_of(ring, fixed_const);
  CentralCoefficientReport r;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& ai = s.coefficient(f, i);
    if (!center.contains(ai.coords))
      r.failures.push_back("a_" + std::to_string(i) + " = " + ring.format(ai) + " is not central in B^{rho,D}");
  }
  const auto& zm = ring.zmod();
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t b = 0; b < ring.rank(); ++b) {
      const auto alpha = ring.basis(b);
      RingElement rhs = ring.zero();
      for (std::size_t j = i; j <= m; ++j) {
        Int coeff = s.binomial(j, i);
        if ((j - i) % 2 == 1) coeff = zm.neg(coeff);
        const auto twisted = s.apply_rho(s.apply_d(alpha, j - i), static_cast<int>(m - j));
        rhs = ring.add(rhs, ring.scale(coeff, ring.mul(s.coefficient(f, j), twisted)));
      }
      if (ring.mul(alpha, s.coefficient(f, i)) != rhs)
        r.failures.push_back("commutation identity fails at i=" + std::to_string(i) + ", basis " +
                             std::to_string(b));
    }
  r.passed = r.failures.empty();
  return r;
}

}  // namespace skewsep
