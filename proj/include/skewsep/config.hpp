#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewsep/skew_poly.hpp"

namespace skewsep {

// Malformed or inconsistent configuration. Axiom failures are not reported
// through this; they surface as ValidationReport entries.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct JobConfig {
  FiniteRing ring;
  StructureMap rho, d;
  // Full coefficient lists, low to high, each a coordinate vector.
  std::vector<std::vector<Vec>> polynomials = {};
  std::optional<std::size_t> degree = std::nullopt;
  std::uint64_t max_enum = kDefaultEnumerationCap;
  std::size_t jobs = 1;
  bool oracles = true;
  std::optional<std::string> format = std::nullopt;
};

// Ring: explicit {characteristic, rank, one, mul, labels?} or one of the
// shorthands {"ring": "Zmod", "n"}, {"ring": "GF", "p", "modulus"},
// {"ring": "TruncatedPoly", "p", "e"}, {"ring": "MatrixRing", "base", "n"},
// {"ring": "Product", "factors"}.
FiniteRing ring_from_json(const nlohmann::json& j);

// rho: "identity" | "frobenius" | "swap" | matrix rows.
// d: "zero" | "d/dt" | {"inner": beta} | matrix rows.
// Column a of a matrix holds the image of e_a.
StructureMap rho_from_json(const FiniteRing& ring, const nlohmann::json& j);
StructureMap d_from_json(const FiniteRing& ring, const StructureMap& rho, const nlohmann::json& j);

// {"coeffs": [[...], ...]} low to high, or {"monic_degree": m, "coeffs": a_0..a_{m-1}}.
std::vector<Vec> polynomial_from_json(const FiniteRing& ring, const nlohmann::json& j);

JobConfig parse_config(const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Explicit presentation of the whole context; parse_config accepts it back.
nlohmann::json context_descriptor(const SkewRing& s);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace skewsep
