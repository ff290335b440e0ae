#include "skewsep/tensor.hpp"

namespace skewsep {

std::shared_ptr<const TensorSquare> TensorSquare::create(std::shared_ptr<const QuotientRing> quotient) {
  if (!quotient->skew().commuting())
    throw PreconditionError("tensor normal form requires rho D = D rho");
  if (!coefficients_fixed_by_rho(quotient->skew(), quotient->modulus()))
    throw PreconditionError("tensor normal form requires the coefficients of f to be fixed by rho");
  return std::shared_ptr<const TensorSquare>(new TensorSquare(std::move(quotient)));
}

TensorSquare::TensorSquare(std::shared_ptr<const QuotientRing> quotient)
    : a_(std::move(quotient)),
      id_(a_->id() * 0x100000001b3ULL + 0x7e5),
      equations_(build_equations()),
      centralizer_(kernel(a_->base().zmod(), equations_)) {}

TensorElement TensorSquare::element(Vec coords) const {
  if (coords.size() != dim()) throw StructureError("tensor element has wrong number of coordinates");
  return {id_, a_->base().zmod().reduce(std::move(coords))};
}

TensorElement TensorSquare::from_components(const std::vector<QuotientElement>& z) const {
  if (z.size() != a_->degree()) throw StructureError("tensor element needs m components");
  Vec coords;
  for (const auto& zj : z) {
    a_->check(zj);
    coords.insert(coords.end(), zj.coords.begin(), zj.coords.end());
  }
  return {id_, std::move(coords)};
}

TensorElement TensorSquare::one() const {
  std::vector<QuotientElement> z(a_->degree(), a_->zero());
  z[0] = a_->one();
  return from_components(z);
}

QuotientElement TensorSquare::component(const TensorElement& mu, std::size_t j) const {
  check(mu);
  const std::size_t n = a_->dim();
  return a_->element(Vec(mu.coords.begin() + static_cast<std::ptrdiff_t>(j * n),
                         mu.coords.begin() + static_cast<std::ptrdiff_t>((j + 1) * n)));
}

TensorElement TensorSquare::add(const TensorElement& u, const TensorElement& v) const {
  check(u);
  check(v);
  const auto& zm = a_->base().zmod();
  Vec out(dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = zm.add(u.coords[i], v.coords[i]);
  return {id_, std::move(out)};
}

TensorElement TensorSquare::sub(const TensorElement& u, const TensorElement& v) const {
  check(u);
  check(v);
  const auto& zm = a_->base().zmod();
  Vec out(dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = zm.sub(u.coords[i], v.coords[i]);
  return {id_, std::move(out)};
}

TensorElement TensorSquare::left_mul(const QuotientElement& a, const TensorElement& mu) const {
  std::vector<QuotientElement> z;
  for (std::size_t j = 0; j < a_->degree(); ++j) z.push_back(a_->mul(a, component(mu, j)));
  return from_components(z);
}

TensorElement TensorSquare::right_mul_b(const TensorElement& mu, const RingElement& alpha) const {
  const std::size_t m = a_->degree();
  std::vector<QuotientElement> out(m, a_->zero());
  for (std::size_t j = 0; j < m; ++j) {
    const auto zj = component(mu, j);
    // x^j alpha = sum_i beta_i x^i; z_j (x) beta_i x^i = z_j beta_i (x) x^i
    const auto moved = a_->skew().right_commute(j, alpha);
    for (std::size_t i = 0; i < moved.coeffs.size(); ++i)
      out[i] = a_->add(out[i], a_->mul(zj, a_->embed(moved.coeffs[i])));
  }
  return from_components(out);
}

TensorElement TensorSquare::right_mul_x(const TensorElement& mu) const {
  const std::size_t m = a_->degree();
  const auto last = component(mu, m - 1);
  std::vector<QuotientElement> out;
  for (std::size_t j = 0; j < m; ++j) {
    // (mu x)_j = z_{j-1} - z_{m-1} a_j
    const auto shifted = j == 0 ? a_->zero() : component(mu, j - 1);
    out.push_back(a_->sub(shifted, a_->mul(last, a_->embed(a_->coefficient_of_f(j)))));
  }
  return from_components(out);
}

TensorElement TensorSquare::right_mul(const TensorElement& mu, const QuotientElement& a) const {
  TensorElement acc = zero();
  TensorElement power = mu;  // mu x^l
  for (std::size_t l = 0; l < a_->degree(); ++l) {
    acc = add(acc, right_mul_b(power, a_->coefficient(a, l)));
    power = right_mul_x(power);
  }
  return acc;
}

QuotientElement TensorSquare::mult_map(const TensorElement& mu) const {
  QuotientElement acc = a_->zero();
  for (std::size_t j = 0; j < a_->degree(); ++j) acc = a_->add(acc, a_->mul(component(mu, j), a_->x_power(j)));
  return acc;
}

Matrix TensorSquare::build_equations() const {
  const std::size_t n = dim();
  const auto& ring = a_->base();
  Matrix system(0, n);
  const auto x = a_->x();
  system.append_rows(matrix_of_linear_map(n, n, [&](const Vec& v) {
    const TensorElement mu{id_, v};
    return sub(left_mul(x, mu), right_mul_x(mu)).coords;
  }));
  for (std::size_t a = 0; a < ring.rank(); ++a) {
    const auto ea = ring.basis(a);
    const auto embedded = a_->embed(ea);
    system.append_rows(matrix_of_linear_map(n, n, [&](const Vec& v) {
      const TensorElement mu{id_, v};
      return sub(left_mul(embedded, mu), right_mul_b(mu, ea)).coords;
    }));
  }
  return system;
}

TensorElement TensorSquare::canonical_from_h(const QuotientElement& h) const {
  if (auto bad = a_->vm1_violation(h))
    throw PreconditionError("h is not in V_{m-1}: fails for basis element " + a_->base().labels()[*bad]);
  const auto ys = a_->y_elements();
  std::vector<QuotientElement> z;
  for (const auto& y : ys) z.push_back(a_->mul(y, h));
  return from_components(z);
}

Submodule TensorSquare::canonical_image() const {
  std::vector<Vec> gens;
  const auto vm1 = a_->centralizer_vm1();
  for (const auto& row : vm1.rows()) gens.push_back(canonical_from_h(a_->element(row)).coords);
  return Submodule::span(a_->base().zmod(), dim(), std::move(gens));
}

}  // namespace skewsep
