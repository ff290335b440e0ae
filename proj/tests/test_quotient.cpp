#include <doctest.h>

#include <random>

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

// Calls fn on every invariant f of degree 1..3 over every corpus context.
void for_each_invariant(const std::function<void(const std::shared_ptr<const QuotientRing>&)>& fn,
                        std::size_t max_degree = 3) {
  for (const auto& ctx : corpus::all())
    for (std::size_t m = 1; m <= max_degree; ++m)
      corpus::for_each_monic(*ctx.skew, m, [&](const SkewPolynomial& f) {
        if (is_invariant_direct(*ctx.skew, f).invariant) fn(QuotientRing::create(ctx.skew, f));
      });
}

}  // namespace

TEST_CASE("reduction examples") {
  SUBCASE("Z/2, X^2 + X + 1") {
    const auto a = quotient("Z/2", {{1}, {1}});
    CHECK(a->is_zero(a->reduce(a->modulus())));
    CHECK(a->reduce(a->skew().x_power(2)) == a->element({1, 1}));
    CHECK(a->format(a->reduce(a->skew().x_power(2))) == "x + 1");
  }
  SUBCASE("F4 with Frobenius, X^2 + 1") {
    const auto a = quotient("F4/frobenius", {{1, 0}, {0, 0}});
    CHECK(a->reduce(a->skew().x_power(2)) == a->one());
  }
  SUBCASE("F2[t]/t^2 with d/dt, X^2") {
    const auto a = quotient("F2[t]/t^2/d", {{0, 0}, {0, 0}});
    const auto t = a->embed(a->base().basis(1));
    CHECK(a->mul(a->x(), t) == a->element({0, 0, 0, 1}));  // x t
    CHECK(a->mul(t, a->x()) == a->element({1, 0, 0, 1}));  // 1 + x t
  }
  SUBCASE("x^m = -sum x^j a_j") {
    for_each_invariant([](const auto& a) {
      std::vector<RingElement> neg;
      for (std::size_t j = 0; j < a->degree(); ++j) neg.push_back(a->base().neg(a->coefficient_of_f(j)));
      CHECK(a->x_power(a->degree()) == a->from_coefficients(neg));
    });
  }
  SUBCASE("refusals") {
    const auto& s = find("F2[t]/t^2/d").skew;
    CHECK_THROWS_AS(QuotientRing::create(s, s->monic({s->base().zero(), s->base().basis(1)})), NotInvariant);
    CHECK_THROWS_AS(QuotientRing::create(s, s->one()), std::invalid_argument);
    const auto a = quotient("Z/2", {{1}, {1}});
    const auto b = quotient("Z/2", {{0}, {1}});
    CHECK_THROWS_AS(a->mul(a->one(), b->one()), ContextMismatch);
  }
}

TEST_CASE("A is a ring and reduce is a homomorphism") {
  std::mt19937 rng(99);
  for_each_invariant([&](const auto& a) {
    CAPTURE(a->skew().format(a->modulus()));
    CHECK(validate_ring(a->algebra()).ok());
    const auto& s = a->skew();
    const auto elements = s.base().elements();
    std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
    auto random_poly = [&] {
      std::vector<RingElement> c;
      for (int i = 0; i <= 4; ++i) c.push_back(elements[pick(rng)]);
      return s.polynomial(c);
    };
    for (int trial = 0; trial < 3; ++trial) {
      const auto p = random_poly(), q = random_poly();
      CHECK(a->reduce(s.mul(p, q)) == a->mul(a->reduce(p), a->reduce(q)));
      CHECK(a->reduce(s.add(p, q)) == a->add(a->reduce(p), a->reduce(q)));
    }
    // two-sidedness: p f reduces to zero as well as f p
    const auto p = random_poly();
    CHECK(a->is_zero(a->reduce(s.mul(p, a->modulus()))));
    CHECK(a->is_zero(a->reduce(s.mul(a->modulus(), p))));
    for (const auto& alpha : s.base().elements()) CHECK(a->lift(a->embed(alpha)) == s.constant(alpha));
  });
}

TEST_CASE("y elements") {
  SUBCASE("examples") {
    const auto a = quotient("Z/2", {{1}, {1}});
    const auto ys = a->y_elements();
    CHECK(ys[0] == a->add(a->x(), a->one()));
    CHECK(ys[1] == a->one());
  }
  SUBCASE("recurrences") {
    for_each_invariant([](const auto& a) {
      const auto ys = a->y_elements();
      const std::size_t m = a->degree();
      CHECK(ys[m - 1] == a->one());
      CHECK(a->mul(a->x(), ys[0]) == a->neg(a->embed(a->coefficient_of_f(0))));
      for (std::size_t j = 1; j < m; ++j)
        CHECK(a->mul(a->x(), ys[j]) == a->sub(ys[j - 1], a->embed(a->coefficient_of_f(j))));
    });
  }
  SUBCASE("alpha y_j expansion under the standard assumptions") {
    for_each_invariant([](const auto& a) {
      if (!a->standard_assumptions()) return;
      const auto& s = a->skew();
      const auto ys = a->y_elements();
      const std::size_t m = a->degree();
      for (std::size_t b = 0; b < s.base().rank(); ++b) {
        const auto alpha = s.base().basis(b);
        for (std::size_t j = 0; j < m; ++j) {
          QuotientElement rhs = a->zero();
          for (std::size_t i = j; i < m; ++i) {
            const auto term = s.apply_rho(s.apply_d(alpha, i - j), static_cast<int>(m - i - 1));
            const Int sign = (i - j) % 2 ? -1 : 1;
            rhs = a->add(rhs, a->scale(sign * s.binomial(i, j), a->mul(ys[i], a->embed(term))));
          }
          CHECK(a->mul(a->embed(alpha), ys[j]) == rhs);
        }
      }
      // each a_j commutes with x
      for (std::size_t j = 0; j < m; ++j) {
        const auto aj = a->embed(a->coefficient_of_f(j));
        CHECK(a->mul(aj, a->x()) == a->mul(a->x(), aj));
      }
    });
  }
}

TEST_CASE("centralizer examples") {
  SUBCASE("commutative base, identity maps") {
    const auto a = quotient("Z/4", {{1}, {2}});
    CHECK(a->centralizer_v0() == Submodule::full(a->base().zmod(), a->dim()));
  }
  SUBCASE("F4 with Frobenius, X^2 + 1") {
    const auto a = quotient("F4/frobenius", {{1, 0}, {0, 0}});
    const auto v0 = a->centralizer_v0(), v1 = a->centralizer_vm1();
    CHECK(v0.order() == 4);
    CHECK(v1.order() == 4);
    for (const auto& alpha : a->base().elements()) {
      CHECK(v0.contains(a->embed(alpha).coords));
      CHECK(v1.contains(a->mul(a->x(), a->embed(alpha)).coords));
    }
  }
  SUBCASE("F2[t]/t^2 with d/dt, X^2") {
    const auto a = quotient("F2[t]/t^2/d", {{0, 0}, {0, 0}});
    const auto v0 = a->centralizer_v0();
    CHECK(v0.order() == 4);
    for (const auto& alpha : a->base().elements()) CHECK(v0.contains(a->embed(alpha).coords));
  }
  SUBCASE("m = 1 gives V_{m-1} = V_0") {
    for_each_invariant([](const auto& a) { CHECK(a->centralizer_vm1() == a->centralizer_v0()); }, 1);
  }
  SUBCASE("rho = id gives V_{m-1} = V_0") {
    for_each_invariant([](const auto& a) {
      if (a->skew().rho().matrix == Matrix::identity(a->base().rank()))
        CHECK(a->centralizer_vm1() == a->centralizer_v0());
    });
  }
}

TEST_CASE("centralizers agree with exhaustive search") {
  for_each_invariant([](const auto& a) {
    if (a->algebra().order() > 4096) return;
    CAPTURE(a->skew().format(a->modulus()));
    const int last = static_cast<int>(a->degree()) - 1;
    const auto v0 = a->centralizer_v0(), vm1 = a->centralizer_vm1();
    const auto e0 = v0.elements(), em1 = vm1.elements();
    CHECK(std::set<Vec>(e0.begin(), e0.end()) == oracle::centralizer(*a, 0));
    CHECK(std::set<Vec>(em1.begin(), em1.end()) == oracle::centralizer(*a, last));
    for (const auto& g : e0) CHECK_FALSE(a->v0_violation(a->element(g)));
    for (const auto& h : em1) CHECK_FALSE(a->vm1_violation(a->element(h)));
  });
}
