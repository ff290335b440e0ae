#include "skewsep/separability.hpp"

#include <algorithm>
#include <chrono>

namespace skewsep {

namespace {

// Generators of s with `first` put in front when it is a member, so that
// thinning prefers witnesses built from it.
std::vector<Vec> generators_with(const Submodule& s, const Vec& first) {
  std::vector<Vec> out;
  if (s.contains(first)) out.push_back(first);
  for (const auto& r : s.rows())
    if (r != first) out.push_back(r);
  return out;
}

Vec concat(Vec a, const Vec& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Vec target_vector(std::size_t zeros, const Vec& tail) { return concat(Vec(zeros, 0), tail); }

Matrix stacked(Matrix top, const Matrix& bottom) {
  top.append_rows(bottom);
  return top;
}

Matrix columns_matrix(const std::vector<Vec>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

// Solves sum_j lambda_j columns[j] = target over a shrinking column set: starting
// from all columns, the last remaining one is dropped whenever the rest still
// reach the target. Returns the surviving (index, coefficient) pairs.
std::optional<std::vector<std::pair<std::size_t, Int>>> thinned_combination(const ZMod& zm,
                                                                           const std::vector<Vec>& columns,
                                                                           const Vec& target) {
  auto solve = [&](const std::vector<std::size_t>& use) {
    std::vector<Vec> sub;
    for (std::size_t j : use) sub.push_back(columns[j]);
    return solve_linear(zm, columns_matrix(sub, target.size()), target);
  };
  std::vector<std::size_t> active(columns.size());
  for (std::size_t j = 0; j < active.size(); ++j) active[j] = j;
  auto solution = solve(active);
  if (!solution) return std::nullopt;
  for (std::size_t pos = active.size(); pos-- > 0;) {
    auto trial = active;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
    if (auto reduced = solve(trial)) {
      active = std::move(trial);
      solution = std::move(reduced);
    }
  }
  std::vector<std::pair<std::size_t, Int>> out;
  for (std::size_t i = 0; i < active.size(); ++i)
    if (solution->particular[i] != 0) out.emplace_back(active[i], solution->particular[i]);
  return out;
}

bool tensor_commutes_with_generators(const TensorSquare& t, const TensorElement& mu) {
  const auto& a = t.quotient();
  if (t.left_mul(a.x(), mu) != t.right_mul_x(mu)) return false;
  for (std::size_t d = 0; d < a.base().rank(); ++d) {
    const auto e = a.base().basis(d);
    if (t.left_mul(a.embed(e), mu) != t.right_mul_b(mu, e)) return false;
  }
  return true;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

QuotientElement separability_sum(const QuotientRing& a, const QuotientElement& h) {
  const auto ys = a.y_elements();
  QuotientElement acc = a.zero();
  QuotientElement xj = a.one();
  const auto x = a.x();
  for (std::size_t j = 0; j < a.degree(); ++j) {
    acc = a.add(acc, a.mul(a.mul(ys[j], h), xj));
    xj = a.mul(xj, x);
  }
  return acc;
}

Vec hirata_values(const QuotientRing& a, const QuotientElement& g, const QuotientElement& h) {
  Vec out;
  QuotientElement gx = g;
  const auto x = a.x();
  for (std::size_t k = 0; k < a.degree(); ++k) {
    out = concat(std::move(out), a.mul(gx, h).coords);
    gx = a.mul(gx, x);
  }
  return out;
}

std::optional<SeparabilityWitness> separable_criterion(const QuotientRing& a) {
  const std::size_t n = a.dim();
  const Matrix constraints = a.centralizer_equations(static_cast<int>(a.degree()) - 1);
  const Matrix sum_map =
      matrix_of_linear_map(n, n, [&](const Vec& v) { return separability_sum(a, a.element(v)).coords; });
  const auto solution =
      solve_linear(a.base().zmod(), stacked(constraints, sum_map), target_vector(constraints.rows(), a.one().coords));
  if (!solution) return std::nullopt;
  return SeparabilityWitness{a.element(solution->particular)};
}

std::optional<TensorElement> separable_definition(const TensorSquare& t) {
  const auto& a = t.quotient();
  const Matrix mult = matrix_of_linear_map(t.dim(), a.dim(), [&](const Vec& v) {
    return t.mult_map(t.element(v)).coords;
  });
  const Matrix& constraints = t.centralizer_equations();
  const auto solution =
      solve_linear(a.base().zmod(), stacked(constraints, mult), target_vector(constraints.rows(), a.one().coords));
  if (!solution) return std::nullopt;
  return t.element(solution->particular);
}

std::optional<HirataWitness> hirata_criterion(const QuotientRing& a) {
  const auto gs = generators_with(a.centralizer_v0(), a.one().coords);
  const auto hs = generators_with(a.centralizer_vm1(), a.one().coords);
  std::vector<Vec> columns;
  for (const auto& g : gs)
    for (const auto& h : hs) columns.push_back(hirata_values(a, a.element(g), a.element(h)));
  const Vec target = target_vector(a.dim() * (a.degree() - 1), a.one().coords);
  const auto combination = thinned_combination(a.base().zmod(), columns, target);
  if (!combination) return std::nullopt;

  // Bilinearity lets pairs sharing a generator merge into one.
  std::map<std::size_t, QuotientElement> by_g, by_h;
  for (const auto& [index, lambda] : *combination) {
    const std::size_t gi = index / hs.size(), hi = index % hs.size();
    const auto g = a.scale(lambda, a.element(gs[gi]));
    const auto h = a.scale(lambda, a.element(hs[hi]));
    auto [git, gnew] = by_g.try_emplace(gi, a.zero());
    git->second = a.add(git->second, h);
    auto [hit, hnew] = by_h.try_emplace(hi, a.zero());
    hit->second = a.add(hit->second, g);
  }
  HirataWitness w;
  if (by_g.size() <= by_h.size()) {
    for (const auto& [gi, h] : by_g)
      if (!a.is_zero(h)) w.pairs.push_back({a.element(gs[gi]), h});
  } else {
    for (const auto& [hi, g] : by_h)
      if (!a.is_zero(g)) w.pairs.push_back({g, a.element(hs[hi])});
  }
  return w;
}

std::optional<HirataDefinitionWitness> hirata_definition(const TensorSquare& t) {
  const auto& a = t.quotient();
  const auto gs = generators_with(a.centralizer_v0(), a.one().coords);
  const auto mus = generators_with(t.centralizer(), t.one().coords);
  std::vector<Vec> columns;
  for (const auto& gv : gs) {
    const auto g = a.element(gv);
    for (const auto& mv : mus) {
      const auto mu = t.element(mv);
      columns.push_back(concat(t.left_mul(g, mu).coords, t.right_mul(mu, g).coords));
    }
  }
  const Vec target = concat(t.one().coords, t.one().coords);
  const auto combination = thinned_combination(a.base().zmod(), columns, target);
  if (!combination) return std::nullopt;

  std::map<std::size_t, TensorElement> by_g;
  for (const auto& [index, lambda] : *combination) {
    const std::size_t gi = index / mus.size(), mi = index % mus.size();
    Vec scaled = mus[mi];
    for (auto& v : scaled) v = a.base().zmod().mul(v, lambda);
    auto [it, fresh] = by_g.try_emplace(gi, t.zero());
    it->second = t.add(it->second, t.element(std::move(scaled)));
  }
  HirataDefinitionWitness w;
  for (const auto& [gi, mu] : by_g)
    if (mu != t.zero()) w.terms.push_back({a.element(gs[gi]), mu});
  return w;
}

bool verify_witness(const QuotientRing& a, const SeparabilityWitness& w) {
  if (w.h.context != a.id() || a.vm1_violation(w.h)) return false;
  return separability_sum(a, w.h) == a.one();
}

bool verify_witness(const QuotientRing& a, const HirataWitness& w) {
  const std::size_t m = a.degree();
  std::vector<QuotientElement> sums(m, a.zero());
  const auto x = a.x();
  for (const auto& [g, h] : w.pairs) {
    if (g.context != a.id() || h.context != a.id()) return false;
    if (a.v0_violation(g) || a.vm1_violation(h)) return false;
    QuotientElement gx = g;
    for (std::size_t k = 0; k < m; ++k) {
      sums[k] = a.add(sums[k], a.mul(gx, h));
      gx = a.mul(gx, x);
    }
  }
  for (std::size_t k = 0; k + 1 < m; ++k)
    if (!a.is_zero(sums[k])) return false;
  return sums[m - 1] == a.one();
}

bool verify_witness(const TensorSquare& t, const TensorElement& separability_element) {
  if (separability_element.context != t.id()) return false;
  return tensor_commutes_with_generators(t, separability_element) &&
         t.mult_map(separability_element) == t.quotient().one();
}

bool verify_witness(const TensorSquare& t, const HirataDefinitionWitness& w) {
  const auto& a = t.quotient();
  TensorElement left = t.zero(), right = t.zero();
  for (const auto& [g, mu] : w.terms) {
    if (g.context != a.id() || mu.context != t.id()) return false;
    if (a.v0_violation(g) || !tensor_commutes_with_generators(t, mu)) return false;
    left = t.add(left, t.left_mul(g, mu));
    right = t.add(right, t.right_mul(mu, g));
  }
  return left == t.one() && right == t.one();
}

bool yx_conversion_check(const QuotientRing& a, const HirataWitness& w) {
  const auto ys = a.y_elements();
  for (std::size_t k = 0; k < ys.size(); ++k) {
    QuotientElement acc = a.zero();
    for (const auto& [g, h] : w.pairs) acc = a.add(acc, a.mul(a.mul(g, ys[k]), h));
    if (acc != (k == 0 ? a.one() : a.zero())) return false;
  }
  return true;
}

DecisionReport decide(const std::shared_ptr<const SkewRing>& skew, const SkewPolynomial& f,
                      const DecideOptions& options) {
  skew->check(f);
  if (!skew->is_monic(f) || f.degree() < 1) throw std::invalid_argument("f must be monic of degree >= 1");
  DecisionReport r;
  r.rho_d_commute = skew->commuting();
  r.coeffs_in_b_rho = coefficients_fixed_by_rho(*skew, f);

  auto start = Clock::now();
  r.direct_invariant = is_invariant_direct(*skew, f).invariant;
  if (r.rho_d_commute) r.coefficientwise_invariant = is_invariant_coefficientwise(*skew, f).invariant;
  r.invariant = r.direct_invariant;
  r.timings_ms["invariance"] = elapsed_ms(start);
  if (!r.invariant) {
    r.note = kNotInvariantNote;
    return r;
  }

  start = Clock::now();
  const auto a = QuotientRing::create(skew, f);
  r.quotient = a;
  r.timings_ms["quotient"] = elapsed_ms(start);

  start = Clock::now();
  r.witness_h = separable_criterion(*a);
  r.separable = r.witness_h.has_value();
  if (r.witness_h) r.witnesses_verified = r.witnesses_verified && verify_witness(*a, *r.witness_h);
  r.timings_ms["separable"] = elapsed_ms(start);

  start = Clock::now();
  r.witness_pairs = hirata_criterion(*a);
  r.hirata = r.witness_pairs.has_value();
  if (r.witness_pairs) {
    r.witnesses_verified = r.witnesses_verified && verify_witness(*a, *r.witness_pairs);
    if (r.standard_assumptions())
      r.witnesses_verified = r.witnesses_verified && yx_conversion_check(*a, *r.witness_pairs);
  }
  r.timings_ms["hirata"] = elapsed_ms(start);

  if (!r.standard_assumptions()) {
    r.note = kCriterionOnlyNote;
    return r;
  }
  if (!options.run_oracles) return r;

  start = Clock::now();
  const auto t = TensorSquare::create(a);
  const auto sep_def = separable_definition(*t);
  r.separable_agreement = sep_def.has_value() == *r.separable;
  if (sep_def) r.witnesses_verified = r.witnesses_verified && verify_witness(*t, *sep_def);
  const auto hir_def = hirata_definition(*t);
  r.hirata_agreement = hir_def.has_value() == *r.hirata;
  if (hir_def) r.witnesses_verified = r.witnesses_verified && verify_witness(*t, *hir_def);
  r.timings_ms["oracles"] = elapsed_ms(start);
  return r;
}

}  // namespace skewsep
