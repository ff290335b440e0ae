#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>

#include "corpus.hpp"
#include "oracles.hpp"
#include "skewsep/catalog.hpp"
#include "skewsep/config.hpp"

using namespace skewsep;
using nlohmann::json;

namespace {

const corpus::Context& find(const std::string& name) {
  static const auto all = corpus::all();
  for (const auto& c : all)
    if (c.name == name) return c;
  throw std::out_of_range(name);
}

std::set<std::string> texts(const SkewRing& s, const Catalog& c, bool (*pick)(const DecisionReport&)) {
  std::set<std::string> out;
  for (const auto& e : c.entries)
    if (pick(e.report)) out.insert(s.format(e.f));
  return out;
}

bool is_separable(const DecisionReport& r) { return r.separable.value_or(false); }
bool is_hirata(const DecisionReport& r) { return r.hirata.value_or(false); }

std::shared_ptr<const SkewRing> from_config(const json& j) {
  auto cfg = parse_config(j);
  return SkewRing::create(std::move(cfg.ring), std::move(cfg.rho), std::move(cfg.d));
}

}  // namespace

TEST_CASE("catalog: Z/2, degree 2") {
  const auto& s = find("Z/2").skew;
  const auto c = run_catalog(s, 2, {});
  CHECK(c.candidates == 4);
  CHECK(c.entries.size() == 4);
  CHECK(texts(*s, c, is_separable) == std::set<std::string>{"X^2 + X", "X^2 + X + 1"});
  CHECK(texts(*s, c, is_hirata).empty());
  // the commutative rule of thumb: separable iff f' is a unit in A
  for (const auto& e : c.entries) {
    const auto a = e.report.quotient;
    const auto deriv = a->reduce(s->add(s->monomial(1, s->base().scale(2, s->base().one())),
                                        s->constant(s->coefficient(e.f, 1))));
    bool unit = false;
    for (const auto& u : oracle::elements(*a)) unit = unit || a->mul(deriv, u) == a->one();
    CHECK(unit == *e.report.separable);
  }
}

TEST_CASE("catalog: F4 with Frobenius, degree 2") {
  const auto& s = find("F4/frobenius").skew;
  const auto c = run_catalog(s, 2, {});
  CHECK(c.candidates == 16);
  REQUIRE_FALSE(c.entries.empty());
  const auto fixed = fixed_subring(s->base(), s->rho());
  for (const auto& e : c.entries)
    for (std::size_t i = 0; i < 2; ++i) CHECK(fixed.contains(s->coefficient(e.f, i).coords));
  CHECK(texts(*s, c, is_hirata).count("X^2 + 1") == 1);
}

TEST_CASE("catalog: degree one is always separable and Hirata") {
  for (const auto& ctx : corpus::all()) {
    CAPTURE(ctx.name);
    const auto c = run_catalog(ctx.skew, 1, {});
    CHECK(c.candidates == ctx.skew->base().order());
    for (const auto& e : c.entries) {
      CHECK(e.report.separable == true);
      CHECK(e.report.hirata == true);
      CHECK(e.report.witnesses_verified);
    }
  }
}

TEST_CASE("catalog: cap refusal names the cap") {
  const auto& s = find("F4").skew;
  CHECK_THROWS_WITH_AS(run_catalog(s, 3, {.cap = 63}), doctest::Contains("63"), CapExceeded);
  CHECK_NOTHROW(run_catalog(s, 3, {.cap = 64, .oracles = false}));
  CHECK_THROWS_AS(run_catalog(s, 40, {}), CapExceeded);
}

TEST_CASE("catalog: serial and parallel runs agree byte for byte") {
  for (const char* name : {"Z/3", "F4/frobenius", "F2[t]/t^2/d", "F3xF3/swap/inner"}) {
    CAPTURE(name);
    const auto& s = find(name).skew;
    const auto serial = catalog_json(*s, run_catalog(s, 2, {.jobs = 1})).dump();
    const auto again = catalog_json(*s, run_catalog(s, 2, {.jobs = 1})).dump();
    const auto parallel = catalog_json(*s, run_catalog(s, 2, {.jobs = 5})).dump();
    CHECK(serial == again);
    CHECK(serial == parallel);
  }
}

TEST_CASE("catalog: timings stay out of the canonical body") {
  const auto& s = find("Z/2").skew;
  const auto c = run_catalog(s, 2, {});
  const auto plain = catalog_json(*s, c);
  auto timed = catalog_json(*s, c, true);
  CHECK_FALSE(plain.contains("metadata"));
  REQUIRE(timed.contains("metadata"));
  timed.erase("metadata");
  CHECK(timed == plain);
}

TEST_CASE("documents: round trip, CSV shape and reverification") {
  for (const auto& ctx : corpus::all()) {
    CAPTURE(ctx.name);
    const auto doc = catalog_json(*ctx.skew, run_catalog(ctx.skew, 2, {.jobs = 2}));
    CHECK(json::parse(doc.dump(2)) == doc);
    const auto csv = document_csv(doc);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == doc["entries"].size() + 1);
    const auto result = reverify_document(json::parse(doc.dump()));
    CHECK(result.entries == doc["entries"].size());
    CHECK(result.ok());
    CHECK(doc["counts"]["hirata_without_separable"] == 0);
    // the stored descriptor rebuilds an equal context
    const auto rebuilt = from_config(doc["context"]);
    CHECK(rebuilt->base() == ctx.skew->base());
    CHECK(catalog_cache_key(*rebuilt, 2, true) == catalog_cache_key(*ctx.skew, 2, true));
  }
}

TEST_CASE("documents: tampered witnesses are caught") {
  const auto& s = find("F4/frobenius").skew;
  auto doc = catalog_json(*s, run_catalog(s, 2, {}));
  for (auto& e : doc["entries"])
    if (e["hirata"] == true) e["witness_pairs"].erase(e["witness_pairs"].size() - 1);
  CHECK_FALSE(reverify_document(doc).ok());

  doc = catalog_json(*s, run_catalog(s, 2, {}));
  for (auto& e : doc["entries"])
    if (e["separable"] == true) e["witness_h"] = nullptr;
  CHECK_FALSE(reverify_document(doc).ok());

  doc = catalog_json(*s, run_catalog(s, 2, {}));
  for (auto& e : doc["entries"])
    if (e["hirata"] == true) e["separable"] = false;
  const auto r = reverify_document(doc);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failures.front().find("not separable") != std::string::npos);
}

TEST_CASE("documents: empty catalog") {
  // every corpus context has invariant polynomials, so build one by hand
  const auto& s = find("Z/2").skew;
  Catalog empty;
  empty.degree = 2;
  const auto doc = catalog_json(*s, empty);
  CHECK(doc["entries"].empty());
  CHECK(doc["counts"]["invariant"] == 0);
  CHECK(document_csv(doc) == "f,invariant,separable,hirata,witness_h,witness_pairs,oracle_separable,oracle_hirata,"
                             "rho_d_commute,coeffs_in_B_rho,note\n");
  CHECK(reverify_document(doc).ok());
}

TEST_CASE("check: examples") {
  const auto& z2 = find("Z/2").skew;
  const auto& dual = find("F2[t]/t^2/d").skew;
  const auto t = dual->base().basis(1);
  const auto entries = check_all(dual, {dual->monic({dual->base().zero(), t})}, {});
  REQUIRE(entries.size() == 1);
  const auto j = entry_json(*dual, entries[0]);
  CHECK(j["invariant"] == false);
  CHECK(j["separable"] == "unknown");
  CHECK(j["hirata"] == "unknown");
  CHECK(j["note"] == kNotInvariantNote);
  CHECK(j["oracle_agreement"].is_null());

  const auto one = z2->base().one();
  const auto z = check_all(z2, {z2->monic({one, one}), z2->monic({one, z2->base().zero()})}, {.jobs = 2});
  CHECK(entry_json(*z2, z[0])["witness_h"]["text"] == "1");
  CHECK(entry_json(*z2, z[0])["hirata"] == false);
  CHECK(entry_json(*z2, z[1])["separable"] == false);
}

TEST_CASE("check: outside the standard assumptions the agreement is not claimed") {
  const auto& s = find("F3[t]/t^2/negate").skew;
  bool seen = false;
  for (const auto& e : run_catalog(s, 2, {}).entries) {
    if (e.report.standard_assumptions()) continue;
    seen = true;
    const auto j = entry_json(*s, e);
    CHECK(j["note"] == kCriterionOnlyNote);
    CHECK(j["oracle_agreement"].is_null());
  }
  CHECK(seen);
}

TEST_CASE("tensor elements serialize as an m x m array of coordinate vectors") {
  const auto& s = find("Z/2").skew;
  const auto one = s->base().one();
  const auto a = QuotientRing::create(s, s->monic({one, one}));
  const auto t = TensorSquare::create(a);
  const auto mu = t->from_components({a->add(a->x(), a->one()), a->one()});
  const auto j = tensor_element_json(*t, mu);
  CHECK(j["context"] == t->id());
  CHECK(j["components"] == json::parse("[[[1], [1]], [[1], [0]]]"));
  const auto other = TensorSquare::create(QuotientRing::create(s, s->monic({s->base().zero(), one})));
  CHECK_THROWS_AS(tensor_element_json(*other, mu), ContextMismatch);
}

TEST_CASE("config: shorthands and explicit presentations") {
  const auto gf4 = json::parse(R"({"ring": {"ring": "GF", "p": 2, "modulus": [1, 1, 1]}, "rho": "frobenius"})");
  const auto cfg = parse_config(gf4);
  CHECK(cfg.ring == corpus::f4());
  CHECK(validate_automorphism(cfg.ring, cfg.rho).ok());

  const auto s = from_config(gf4);
  const auto back = from_config(context_descriptor(*s));
  CHECK(back->base() == s->base());
  CHECK(back->rho().matrix == s->rho().matrix);

  const auto prod = parse_config(json::parse(
      R"({"ring": {"ring": "Product", "factors": [{"ring": "Zmod", "n": 3}, {"ring": "Zmod", "n": 3}]},
          "rho": "swap", "d": {"inner": [1, 0]}})"));
  CHECK(validate_derivation(prod.ring, prod.rho, prod.d).ok());
  CHECK_FALSE(check_commuting(prod.ring, prod.rho, prod.d));

  const auto m2 = parse_config(json::parse(R"({"ring": {"ring": "MatrixRing", "base": {"ring": "Zmod", "n": 2}, "n": 2},
      "polynomial": {"monic_degree": 1, "coeffs": [[1, 0, 0, 1]]}})"));
  CHECK(m2.ring.rank() == 4);
  REQUIRE(m2.polynomials.size() == 1);
  CHECK(m2.polynomials[0].size() == 2);
}

TEST_CASE("config: validation examples") {
  const auto z4 = parse_config(json::parse(R"({"ring": {"ring": "Zmod", "n": 4}})"));
  CHECK(validate_ring(z4.ring).ok());
  CHECK(validate_automorphism(z4.ring, z4.rho).ok());
  CHECK(validate_derivation(z4.ring, z4.rho, z4.d).ok());

  const auto bad = parse_config(
      json::parse(R"({"ring": {"ring": "GF", "p": 2, "modulus": [1, 1, 1]}, "rho": [[1, 0], [0, 0]]})"));
  const auto r = validate_automorphism(bad.ring, bad.rho);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failures.front().find("not bijective") != std::string::npos);
}

TEST_CASE("config: malformed input is refused before any computation") {
  CHECK_THROWS_AS(parse_config(json::parse("[]")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"rho": "identity"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"ring": {"ring": "Nope"}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"ring": {"ring": "Zmod", "n": 2}, "rho": [[1, 0]]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"ring": {"ring": "GF", "p": 2, "modulus": [1, 1, 1]}, "d": "d/dt"})")),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(json::parse(R"({"ring": {"ring": "Zmod", "n": 2}, "polynomial": {"coeffs": [[1, 1]]}})")),
      ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"ring": {"ring": "Zmod", "n": 2}, "jobs": 0})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"ring": {"ring": "Zmod", "n": 2}, "format": "xml"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"ring": {"characteristic": 2, "rank": 1, "one": [1]}})")),
                  ConfigError);
}

TEST_CASE("config: parse errors carry a location") {
  const auto path = std::filesystem::temp_directory_path() / "skewsep_bad_config.json";
  std::ofstream(path) << "{\"ring\": {\"ring\": \"Zmod\",, \"n\": 2}}";
  CHECK_THROWS_WITH_AS(read_json_file(path), doctest::Contains("byte 26"), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path), ConfigError);
}
