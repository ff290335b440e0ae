#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewsep/separability.hpp"

namespace skewsep {

inline constexpr const char* kToolVersion = "skewsep 1.0.0";

struct CatalogEntry {
  SkewPolynomial f;
  DecisionReport report;
};

struct CatalogOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  std::size_t jobs = 1;
  bool oracles = true;
};

struct Catalog {
  std::size_t degree = 0;
  std::uint64_t candidates = 0;
  // Invariant polynomials only, sorted by coefficient vector.
  std::vector<CatalogEntry> entries;
  double wall_ms = 0;
};

// Every monic f of degree m, classified. Throws CapExceeded when |B|^m > cap.
Catalog run_catalog(const std::shared_ptr<const SkewRing>& skew, std::size_t m, const CatalogOptions& options);

// decide() on each polynomial, results in input order.
std::vector<CatalogEntry> check_all(const std::shared_ptr<const SkewRing>& skew,
                                    const std::vector<SkewPolynomial>& polynomials, const CatalogOptions& options);

// {"context": id, "components": [[z_j coefficients of x^0..x^{m-1}] for each j]}
nlohmann::json tensor_element_json(const TensorSquare& t, const TensorElement& mu);

nlohmann::json entry_json(const SkewRing& s, const CatalogEntry& e);
// Canonical documents. Timings go to a separate "metadata" block, only when asked.
nlohmann::json catalog_json(const SkewRing& s, const Catalog& c, bool timings = false);
nlohmann::json check_json(const SkewRing& s, const std::vector<CatalogEntry>& entries, bool timings = false);

// One row per entry, fixed column order.
std::string document_csv(const nlohmann::json& document);
extern const std::vector<std::string> kCsvColumns;

std::string catalog_cache_key(const SkewRing& s, std::size_t m, bool oracles);

struct ReverifyResult {
  std::size_t entries = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Rebuilds the context from the document and re-checks every stored witness
// and the Hirata-implies-separable invariant by direct arithmetic.
ReverifyResult reverify_document(const nlohmann::json& document);

}  // namespace skewsep
