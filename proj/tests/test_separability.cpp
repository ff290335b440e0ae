#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace skewsep;

namespace {

const corpus::Context& find(const std::string& name) {
  static const auto all = corpus::all();
  for (const auto& c : all)
    if (c.name == name) return c;
  throw std::out_of_range(name);
}

std::shared_ptr<const QuotientRing> quotient(const std::string& ctx, std::vector<Vec> lower) {
  const auto& s = find(ctx).skew;
  std::vector<RingElement> coeffs;
  for (auto& v : lower) coeffs.push_back(s->base().element(std::move(v)));
  return QuotientRing::create(s, s->monic(coeffs));
}

QuotientElement b(const QuotientRing& a, Vec coords) { return a.embed(a.base().element(std::move(coords))); }

void for_each_invariant(const std::function<void(const std::shared_ptr<const QuotientRing>&)>& fn) {
  for (const auto& ctx : corpus::all())
    for (std::size_t m = 1; m <= 3; ++m)
      corpus::for_each_monic(*ctx.skew, m, [&](const SkewPolynomial& f) {
        if (is_invariant_direct(*ctx.skew, f).invariant) fn(QuotientRing::create(ctx.skew, f));
      });
}

}  // namespace

TEST_CASE("golden: Z/2") {
  SUBCASE("X^2 + X + 1: separable with h = 1, not Hirata") {
    const auto a = quotient("Z/2", {{1}, {1}});
    REQUIRE(oracle::separable(*a).has_value());
    REQUIRE_FALSE(oracle::hirata(*a));
    const auto w = separable_criterion(*a);
    REQUIRE(w);
    CHECK(w->h == a->one());
    CHECK(verify_witness(*a, *w));
    CHECK_FALSE(hirata_criterion(*a));
    const auto t = TensorSquare::create(a);
    const auto mu = separable_definition(*t);
    REQUIRE(mu);
    CHECK(*mu == t->from_components({a->add(a->x(), a->one()), a->one()}));
    CHECK_FALSE(hirata_definition(*t));
  }
  SUBCASE("X^2 + 1: not separable") {
    const auto a = quotient("Z/2", {{1}, {0}});
    REQUIRE_FALSE(oracle::separable(*a).has_value());
    CHECK_FALSE(separable_criterion(*a));
    CHECK_FALSE(separable_definition(*TensorSquare::create(a)));
    CHECK_FALSE(hirata_criterion(*a));
  }
  SUBCASE("verify_witness rejects bad witnesses") {
    const auto a = quotient("Z/2", {{1}, {1}});
    CHECK(verify_witness(*a, SeparabilityWitness{a->one()}));
    CHECK_FALSE(verify_witness(*a, SeparabilityWitness{a->x()}));
    CHECK_FALSE(verify_witness(*a, SeparabilityWitness{a->zero()}));
    CHECK_FALSE(verify_witness(*a, HirataWitness{}));
    CHECK_FALSE(verify_witness(*a, HirataWitness{{{a->zero(), a->zero()}}}));
    const auto other = quotient("Z/2", {{0}, {1}});
    CHECK_FALSE(verify_witness(*a, SeparabilityWitness{other->one()}));
  }
}

TEST_CASE("golden: F4 with Frobenius, X^2 + 1") {
  const auto a = quotient("F4/frobenius", {{1, 0}, {0, 0}});
  REQUIRE(oracle::separable(*a).has_value());
  REQUIRE(oracle::hirata(*a));
  const auto w = b(*a, {0, 1}), w2 = b(*a, {1, 1});

  const auto sep = separable_criterion(*a);
  REQUIRE(sep);
  CHECK(sep->h == a->mul(a->x(), w));
  CHECK(verify_witness(*a, *sep));

  const auto hir = hirata_criterion(*a);
  REQUIRE(hir);
  REQUIRE(hir->pairs.size() == 2);
  CHECK(hir->pairs[0] == HirataPair{a->one(), a->mul(a->x(), w2)});
  CHECK(hir->pairs[1] == HirataPair{w, a->x()});
  CHECK(verify_witness(*a, *hir));
  CHECK(yx_conversion_check(*a, *hir));

  // the family {(w, x w), (w^2, x w^2)} is another witness
  const HirataWitness alt{{{w, a->mul(a->x(), w)}, {w2, a->mul(a->x(), w2)}}};
  CHECK(verify_witness(*a, alt));
  CHECK(yx_conversion_check(*a, alt));
  // no single pair works: g h = 1 and x g^2 h = 0 cannot both hold
  for (const auto& g : oracle::members(*a, a->centralizer_v0()))
    for (const auto& h : oracle::members(*a, a->centralizer_vm1()))
      CHECK_FALSE(verify_witness(*a, HirataWitness{{{g, h}}}));

  const auto t = TensorSquare::create(a);
  CHECK(separable_definition(*t));
  const auto def = hirata_definition(*t);
  REQUIRE(def);
  CHECK(verify_witness(*t, *def));
}

TEST_CASE("golden: F2[t]/t^2 with d/dt, X^2") {
  const auto a = quotient("F2[t]/t^2/d", {{0, 0}, {0, 0}});
  REQUIRE(oracle::separable(*a).has_value());
  REQUIRE(oracle::hirata(*a));
  const auto t = b(*a, {0, 1});

  const auto sep = separable_criterion(*a);
  REQUIRE(sep);
  CHECK(sep->h == t);
  // x t + t x = 1
  CHECK(a->add(a->mul(a->x(), t), a->mul(t, a->x())) == a->one());

  const auto hir = hirata_criterion(*a);
  REQUIRE(hir);
  CHECK(*hir == HirataWitness{{{a->one(), t}, {t, a->one()}}});
  CHECK(verify_witness(*a, *hir));
  CHECK(yx_conversion_check(*a, *hir));
  CHECK(hirata_definition(*TensorSquare::create(a)));
}

TEST_CASE("golden: degree one") {
  for (const auto& ctx : corpus::all())
    corpus::for_each_monic(*ctx.skew, 1, [&](const SkewPolynomial& f) {
      if (!is_invariant_direct(*ctx.skew, f).invariant) return;
      const auto a = QuotientRing::create(ctx.skew, f);
      CAPTURE(ctx.name);
      CAPTURE(ctx.skew->format(f));
      CHECK(a->y_elements() == std::vector<QuotientElement>{a->one()});
      const auto sep = separable_criterion(*a);
      REQUIRE(sep);
      CHECK(sep->h == a->one());
      const auto hir = hirata_criterion(*a);
      REQUIRE(hir);
      CHECK(*hir == HirataWitness{{{a->one(), a->one()}}});
      CHECK(yx_conversion_check(*a, *hir));
      if (a->standard_assumptions()) {
        const auto t = TensorSquare::create(a);
        CHECK(separable_definition(*t) == t->one());
        const auto def = hirata_definition(*t);
        REQUIRE(def);
        REQUIRE(def->terms.size() == 1);
        CHECK(def->terms[0].g == a->one());
        CHECK(def->terms[0].mu == t->one());
      }
    });
}

TEST_CASE("criteria agree with their definitions and with exhaustive search") {
  std::size_t standard = 0, exhaustive = 0, hirata_count = 0, separable_count = 0;
  for_each_invariant([&](const auto& a) {
    CAPTURE(a->skew().format(a->modulus()));
    const auto sep = separable_criterion(*a);
    const auto hir = hirata_criterion(*a);
    if (sep) CHECK(verify_witness(*a, *sep));
    if (hir) {
      CHECK(verify_witness(*a, *hir));
      CHECK(sep.has_value());
    }
    separable_count += sep.has_value();
    hirata_count += hir.has_value();
    if (a->standard_assumptions()) {
      ++standard;
      const auto t = TensorSquare::create(a);
      const auto sep_def = separable_definition(*t);
      const auto hir_def = hirata_definition(*t);
      CHECK(sep_def.has_value() == sep.has_value());
      CHECK(hir_def.has_value() == hir.has_value());
      if (sep_def) CHECK(verify_witness(*t, *sep_def));
      if (hir_def) CHECK(verify_witness(*t, *hir_def));
      if (hir) CHECK(yx_conversion_check(*a, *hir));
    }
    if (a->algebra().order() <= 256 && a->centralizer_v0().order() * a->centralizer_vm1().order() <= 65536) {
      ++exhaustive;
      CHECK(oracle::separable(*a).has_value() == sep.has_value());
      CHECK(oracle::hirata(*a) == hir.has_value());
    }
  });
  CHECK(standard > 0);
  CHECK(exhaustive > 0);
  CHECK(hirata_count > 0);
  CHECK(separable_count > hirata_count);
}

TEST_CASE("decide") {
  SUBCASE("non-invariant f") {
    const auto& s = find("F2[t]/t^2/d").skew;
    const auto r = decide(s, s->monic({s->base().zero(), s->base().basis(1)}));
    CHECK_FALSE(r.invariant);
    CHECK_FALSE(r.separable.has_value());
    CHECK_FALSE(r.hirata.has_value());
    CHECK(r.note == kNotInvariantNote);
  }
  SUBCASE("standard assumptions") {
    const auto& s = find("F4/frobenius").skew;
    const auto r = decide(s, s->monic({s->base().one(), s->base().zero()}));
    CHECK(r.invariant);
    CHECK(r.coefficientwise_invariant == true);
    CHECK(r.separable == true);
    CHECK(r.hirata == true);
    CHECK(r.separable_agreement == true);
    CHECK(r.hirata_agreement == true);
    CHECK(r.witnesses_verified);
    CHECK(r.note.empty());
  }
  SUBCASE("outside the standard assumptions") {
    const auto& s = find("F3[t]/t^2/negate").skew;
    const auto t = s->base().basis(1);
    const auto r = decide(s, s->monic({t, s->base().one(), t}));
    CHECK(r.invariant);
    CHECK_FALSE(r.coeffs_in_b_rho);
    CHECK(r.separable.has_value());
    CHECK_FALSE(r.separable_agreement.has_value());
    CHECK_FALSE(r.hirata_agreement.has_value());
    CHECK(r.note == kCriterionOnlyNote);
  }
  SUBCASE("non-commuting maps") {
    const auto r = rings::product({rings::zmod(3), rings::zmod(3)});
    const auto rho = maps::swap_factors(r);
    const auto s = SkewRing::create(r, rho, maps::inner_derivation(r, rho, r.basis(0)));
    for (std::size_t m = 1; m <= 2; ++m)
      corpus::for_each_monic(*s, m, [&](const SkewPolynomial& f) {
        const auto rep = decide(s, f);
        CHECK_FALSE(rep.coefficientwise_invariant.has_value());
        if (rep.invariant) CHECK(rep.note == kCriterionOnlyNote);
      });
  }
}
