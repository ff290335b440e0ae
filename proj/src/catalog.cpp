#include "skewsep/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <sstream>
#include <thread>

#include "skewsep/config.hpp"

namespace skewsep {

using nlohmann::json;

namespace {

Vec sort_key(const SkewPolynomial& f) {
  Vec out;
  for (const auto& c : f.coeffs) out.insert(out.end(), c.coords.begin(), c.coords.end());
  return out;
}

json verdict(const std::optional<bool>& v) { return v ? json(*v) : json("unknown"); }

json element_json(const QuotientRing& a, const QuotientElement& u) {
  json coeffs = json::array();
  for (std::size_t j = 0; j < a.degree(); ++j) coeffs.push_back(a.coefficient(u, j).coords);
  return {{"coeffs", coeffs}, {"text", a.format(u)}};
}

json polynomial_json(const SkewRing& s, const SkewPolynomial& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(c.coords);
  return {{"coeffs", coeffs}, {"text", s.format(f)}};
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        (void)w;
        for (std::size_t i; !failed && (i = next++) < n;) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

json metadata(double wall_ms, std::size_t jobs, const std::vector<CatalogEntry>& entries) {
  json per_entry = json::array();
  for (const auto& e : entries) per_entry.push_back(e.report.timings_ms);
  return {{"wall_ms", wall_ms}, {"jobs", jobs}, {"entry_timings_ms", per_entry}};
}

QuotientElement element_from_json(const QuotientRing& a, const json& j) {
  std::vector<RingElement> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(a.base().element(c.get<Vec>()));
  if (coeffs.size() != a.degree()) throw ConfigError("witness element has the wrong number of coefficients");
  return a.from_coefficients(coeffs);
}

std::string csv_field(const json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string()) s = v.get<std::string>();
  else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string pairs_text(const json& pairs) {
  if (pairs.is_null()) return "";
  std::string out;
  for (const auto& p : pairs) {
    if (!out.empty()) out += " ";
    out += "(" + p.at("g").at("text").get<std::string>() + "; " + p.at("h").at("text").get<std::string>() + ")";
  }
  return out;
}

}  // namespace

const std::vector<std::string> kCsvColumns = {"f",           "invariant",       "separable",       "hirata",
                                              "witness_h",   "witness_pairs",   "oracle_separable", "oracle_hirata",
                                              "rho_d_commute", "coeffs_in_B_rho", "note"};

std::vector<CatalogEntry> check_all(const std::shared_ptr<const SkewRing>& skew,
                                    const std::vector<SkewPolynomial>& polynomials, const CatalogOptions& options) {
  std::vector<CatalogEntry> out(polynomials.size());
  parallel_for(polynomials.size(), options.jobs, [&](std::size_t i) {
    out[i] = {polynomials[i], decide(skew, polynomials[i], {options.oracles})};
  });
  return out;
}

Catalog run_catalog(const std::shared_ptr<const SkewRing>& skew, std::size_t m, const CatalogOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (m < 1) throw std::invalid_argument("catalog degree must be at least 1");
  const std::uint64_t size = skew->base().order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (total > options.cap / size) throw CapExceeded("|B|^m = " + std::to_string(size) + "^" + std::to_string(m), options.cap);
    total *= size;
  }
  if (total > options.cap) throw CapExceeded("|B|^m", options.cap);

  const auto elements = skew->base().elements(options.cap);
  // Partition by the coefficient of X^{m-1}; each worker owns whole partitions.
  std::vector<std::vector<CatalogEntry>> parts(elements.size());
  parallel_for(elements.size(), options.jobs, [&](std::size_t top) {
    std::vector<std::size_t> idx(m - 1, 0);
    while (true) {
      std::vector<RingElement> lower;
      for (std::size_t i : idx) lower.push_back(elements[i]);
      lower.push_back(elements[top]);
      const auto f = skew->monic(lower);
      auto report = decide(skew, f, {options.oracles});
      if (report.invariant) parts[top].push_back({f, std::move(report)});
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == elements.size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  });

  Catalog c;
  c.degree = m;
  c.candidates = total;
  for (auto& p : parts)
    for (auto& e : p) c.entries.push_back(std::move(e));
  std::sort(c.entries.begin(), c.entries.end(),
            [](const CatalogEntry& x, const CatalogEntry& y) { return sort_key(x.f) < sort_key(y.f); });
  c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

json tensor_element_json(const TensorSquare& t, const TensorElement& mu) {
  t.check(mu);
  const auto& a = t.quotient();
  json components = json::array();
  for (std::size_t j = 0; j < a.degree(); ++j) components.push_back(element_json(a, t.component(mu, j))["coeffs"]);
  return {{"context", t.id()}, {"components", components}};
}

json entry_json(const SkewRing& s, const CatalogEntry& e) {
  const auto& r = e.report;
  json j = {{"f", polynomial_json(s, e.f)},
            {"invariant", r.invariant},
            {"invariance", {{"direct", r.direct_invariant},
                            {"coefficientwise", r.coefficientwise_invariant ? json(*r.coefficientwise_invariant) : json()}}},
            {"separable", verdict(r.separable)},
            {"hirata", verdict(r.hirata)},
            {"witness_h", nullptr},
            {"witness_pairs", nullptr},
            {"oracle_agreement", nullptr},
            {"assumptions", {{"rho_d_commute", r.rho_d_commute}, {"coeffs_in_B_rho", r.coeffs_in_b_rho}}},
            {"witnesses_verified", r.witnesses_verified},
            {"note", r.note}};
  if (r.quotient && r.witness_h) j["witness_h"] = element_json(*r.quotient, r.witness_h->h);
  if (r.quotient && r.witness_pairs) {
    json pairs = json::array();
    for (const auto& p : r.witness_pairs->pairs)
      pairs.push_back({{"g", element_json(*r.quotient, p.g)}, {"h", element_json(*r.quotient, p.h)}});
    j["witness_pairs"] = pairs;
  }
  if (r.separable_agreement && r.hirata_agreement)
    j["oracle_agreement"] = {{"separable", *r.separable_agreement}, {"hirata", *r.hirata_agreement}};
  return j;
}

namespace {

json counts(const std::vector<CatalogEntry>& entries) {
  std::size_t invariant = 0, separable = 0, hirata = 0, criterion_only = 0, violations = 0, disagreements = 0,
              unverified = 0;
  for (const auto& e : entries) {
    const auto& r = e.report;
    invariant += r.invariant;
    separable += r.separable.value_or(false);
    hirata += r.hirata.value_or(false);
    criterion_only += r.invariant && !r.standard_assumptions();
    violations += r.hirata.value_or(false) && !r.separable.value_or(false);
    disagreements += (r.separable_agreement && !*r.separable_agreement) + (r.hirata_agreement && !*r.hirata_agreement);
    unverified += !r.witnesses_verified;
  }
  return {{"invariant", invariant},
          {"separable", separable},
          {"hirata", hirata},
          {"criterion_only", criterion_only},
          {"hirata_without_separable", violations},
          {"oracle_disagreements", disagreements},
          {"unverified_witnesses", unverified}};
}

}  // namespace

json catalog_json(const SkewRing& s, const Catalog& c, bool timings) {
  json entries = json::array();
  for (const auto& e : c.entries) entries.push_back(entry_json(s, e));
  json cnt = counts(c.entries);
  cnt["candidates"] = c.candidates;
  json doc = {{"tool", kToolVersion},
              {"kind", "catalog"},
              {"context", context_descriptor(s)},
              {"degree", c.degree},
              {"counts", cnt},
              {"entries", entries}};
  if (timings) doc["metadata"] = metadata(c.wall_ms, 0, c.entries);
  return doc;
}

json check_json(const SkewRing& s, const std::vector<CatalogEntry>& entries, bool timings) {
  json list = json::array();
  for (const auto& e : entries) list.push_back(entry_json(s, e));
  json doc = {{"tool", kToolVersion},
              {"kind", "check"},
              {"context", context_descriptor(s)},
              {"counts", counts(entries)},
              {"entries", list}};
  if (timings) doc["metadata"] = metadata(0, 0, entries);
  return doc;
}

std::string document_csv(const json& document) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) os << (i ? "," : "") << kCsvColumns[i];
  os << "\n";
  for (const auto& e : document.at("entries")) {
    const auto& agreement = e.at("oracle_agreement");
    const json witness_h = e.at("witness_h").is_null() ? json() : e.at("witness_h").at("text");
    const std::vector<json> row = {e.at("f").at("text"),
                                   e.at("invariant"),
                                   e.at("separable"),
                                   e.at("hirata"),
                                   witness_h,
                                   pairs_text(e.at("witness_pairs")),
                                   agreement.is_null() ? json() : agreement.at("separable"),
                                   agreement.is_null() ? json() : agreement.at("hirata"),
                                   e.at("assumptions").at("rho_d_commute"),
                                   e.at("assumptions").at("coeffs_in_B_rho"),
                                   e.at("note")};
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
  return os.str();
}

std::string catalog_cache_key(const SkewRing& s, std::size_t m, bool oracles) {
  const std::string material = context_descriptor(s).dump() + "|" + std::to_string(m) + "|" +
                               (oracles ? "oracles" : "criteria") + "|" + kToolVersion;
  std::ostringstream os;
  os << std::hex << fnv1a(material);
  return os.str();
}

ReverifyResult reverify_document(const json& document) {
  ReverifyResult out;
  const auto cfg = parse_config(document.at("context"));
  const auto skew = SkewRing::create(cfg.ring, cfg.rho, cfg.d);
  for (const auto& e : document.at("entries")) {
    ++out.entries;
    std::vector<RingElement> coeffs;
    for (const auto& c : e.at("f").at("coeffs")) coeffs.push_back(skew->base().element(c.get<Vec>()));
    const auto f = skew->polynomial(coeffs);
    const std::string name = skew->format(f);
    auto fail = [&](const std::string& why) { out.failures.push_back(name + ": " + why); };
    if (!skew->is_monic(f) || f.degree() < 1) {
      fail("not monic of positive degree");
      continue;
    }
    const bool invariant = is_invariant_direct(*skew, f).invariant;
    if (invariant != e.at("invariant").get<bool>()) fail("stored invariance flag does not match");
    if (!invariant) continue;
    const auto a = QuotientRing::create(skew, f);
    const auto& sep = e.at("separable");
    const auto& hir = e.at("hirata");
    if (sep == true) {
      if (e.at("witness_h").is_null() || !verify_witness(*a, SeparabilityWitness{element_from_json(*a, e.at("witness_h"))}))
        fail("separability witness does not verify");
    }
    if (hir == true) {
      HirataWitness w;
      if (!e.at("witness_pairs").is_null())
        for (const auto& p : e.at("witness_pairs"))
          w.pairs.push_back({element_from_json(*a, p.at("g")), element_from_json(*a, p.at("h"))});
      if (!verify_witness(*a, w)) fail("Hirata witness does not verify");
      if (sep != true) fail("Hirata separable but not separable");
    }
  }
  return out;
}

}  // namespace skewsep
