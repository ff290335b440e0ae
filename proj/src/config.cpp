#include "skewsep/config.hpp"

#include <fstream>

namespace skewsep {

using nlohmann::json;

namespace {

Vec int_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + ": expected an array of integers");
  Vec out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError(what + ": expected integers");
    out.push_back(v.get<Int>());
  }
  return out;
}

const json& field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(what + ": missing \"" + key + "\"");
  return j.at(key);
}

Int int_field(const json& j, const char* key, const std::string& what) {
  const auto& v = field(j, key, what);
  if (!v.is_number_integer()) throw ConfigError(what + ": \"" + key + "\" must be an integer");
  return v.get<Int>();
}

std::size_t count_field(const json& j, const char* key, const std::string& what) {
  const Int v = int_field(j, key, what);
  if (v < 1) throw ConfigError(what + ": \"" + key + "\" must be positive");
  return static_cast<std::size_t>(v);
}

Matrix matrix_from_rows(const FiniteRing& ring, const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != ring.rank()) throw ConfigError(what + ": expected " + std::to_string(ring.rank()) + " rows");
  std::vector<Vec> rows;
  for (const auto& r : j) {
    auto row = ring.zmod().reduce(int_vector(r, what));
    if (row.size() != ring.rank()) throw ConfigError(what + ": rows must have length " + std::to_string(ring.rank()));
    rows.push_back(std::move(row));
  }
  return Matrix::from_rows(rows, ring.rank());
}

RingElement element_from_json(const FiniteRing& ring, const json& j, const std::string& what) {
  auto v = int_vector(j, what);
  if (v.size() != ring.rank())
    throw ConfigError(what + ": element needs " + std::to_string(ring.rank()) + " coordinates, got " +
                      std::to_string(v.size()));
  return ring.element(std::move(v));
}

json rows_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(Vec(m.row(i).begin(), m.row(i).end()));
  return out;
}

}  // namespace

FiniteRing ring_from_json(const json& j) {
  const std::string what = "ring";
  if (!j.is_object()) throw ConfigError("ring: expected an object");
  try {
    if (j.contains("ring")) {
      const auto kind = field(j, "ring", what).get<std::string>();
      if (kind == "Zmod") return rings::zmod(int_field(j, "n", what));
      if (kind == "GF") return rings::galois_field(int_field(j, "p", what), int_vector(field(j, "modulus", what), what));
      if (kind == "TruncatedPoly") return rings::truncated_poly(int_field(j, "p", what), count_field(j, "e", what));
      if (kind == "MatrixRing") return rings::matrix_ring(ring_from_json(field(j, "base", what)), count_field(j, "n", what));
      if (kind == "Product") {
        std::vector<FiniteRing> factors;
        for (const auto& f : field(j, "factors", what)) factors.push_back(ring_from_json(f));
        if (factors.empty()) throw ConfigError("ring: Product needs at least one factor");
        return rings::product(factors);
      }
      throw ConfigError("ring: unknown constructor \"" + kind + "\"");
    }
    const Int c = int_field(j, "characteristic", what);
    const std::size_t k = count_field(j, "rank", what);
    const auto& mul = field(j, "mul", what);
    if (!mul.is_array() || mul.size() != k) throw ConfigError("ring: mul must be a k x k x k array");
    std::vector<Int> table;
    for (const auto& row : mul) {
      if (!row.is_array() || row.size() != k) throw ConfigError("ring: mul must be a k x k x k array");
      for (const auto& entry : row) {
        const auto v = int_vector(entry, "ring mul");
        if (v.size() != k) throw ConfigError("ring: mul must be a k x k x k array");
        table.insert(table.end(), v.begin(), v.end());
      }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    if (c < 2) throw ConfigError("ring: characteristic must be at least 2");
    return FiniteRing(c, k, std::move(table), int_vector(field(j, "one", what), "ring one"), std::move(labels));
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("ring: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ring: ") + e.what());
  }
}

StructureMap rho_from_json(const FiniteRing& ring, const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "identity") return maps::identity(ring);
    if (name == "frobenius") return maps::frobenius(ring);
    if (name == "swap") {
      try {
        return maps::swap_factors(ring);
      } catch (const StructureError& e) {
        throw ConfigError(std::string("rho: ") + e.what());
      }
    }
    throw ConfigError("rho: unknown map \"" + name + "\"");
  }
  return {matrix_from_rows(ring, j, "rho"), MapKind::automorphism};
}

StructureMap d_from_json(const FiniteRing& ring, const StructureMap& rho, const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "zero") return maps::zero_derivation(ring);
    if (name == "d/dt") {
      try {
        return maps::formal_derivative(ring);
      } catch (const StructureError& e) {
        throw ConfigError(std::string("d: ") + e.what());
      }
    }
    throw ConfigError("d: unknown map \"" + name + "\"");
  }
  if (j.is_object() && j.contains("inner"))
    return maps::inner_derivation(ring, rho, element_from_json(ring, j.at("inner"), "d inner"));
  return {matrix_from_rows(ring, j, "d"), MapKind::derivation};
}

std::vector<Vec> polynomial_from_json(const FiniteRing& ring, const json& j) {
  const std::string what = "polynomial";
  const auto& coeffs = field(j, "coeffs", what);
  if (!coeffs.is_array()) throw ConfigError("polynomial: coeffs must be an array");
  std::vector<Vec> out;
  for (const auto& c : coeffs) out.push_back(element_from_json(ring, c, what).coords);
  if (j.contains("monic_degree")) {
    const std::size_t m = count_field(j, "monic_degree", what);
    if (out.size() != m)
      throw ConfigError("polynomial: monic_degree " + std::to_string(m) + " needs " + std::to_string(m) +
                        " lower coefficients");
    out.push_back(ring.one().coords);
  }
  return out;
}

JobConfig parse_config(const json& j) try {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  auto ring = ring_from_json(field(j, "ring", "config"));
  auto rho = j.contains("rho") ? rho_from_json(ring, j.at("rho")) : maps::identity(ring);
  auto d = j.contains("d") ? d_from_json(ring, rho, j.at("d")) : maps::zero_derivation(ring);
  JobConfig cfg{std::move(ring), std::move(rho), std::move(d)};
  if (j.contains("polynomial")) cfg.polynomials.push_back(polynomial_from_json(cfg.ring, j.at("polynomial")));
  if (j.contains("polynomials")) {
    if (!j.at("polynomials").is_array()) throw ConfigError("config: polynomials must be an array");
    for (const auto& p : j.at("polynomials")) cfg.polynomials.push_back(polynomial_from_json(cfg.ring, p));
  }
  if (j.contains("degree")) cfg.degree = count_field(j, "degree", "config");
  if (j.contains("max_enum")) cfg.max_enum = static_cast<std::uint64_t>(count_field(j, "max_enum", "config"));
  if (j.contains("jobs")) cfg.jobs = count_field(j, "jobs", "config");
  if (j.contains("oracles")) {
    if (!j.at("oracles").is_boolean()) throw ConfigError("config: oracles must be true or false");
    cfg.oracles = j.at("oracles").get<bool>();
  }
  if (j.contains("format")) {
    const auto fmt = j.at("format").get<std::string>();
    if (fmt != "json" && fmt != "csv") throw ConfigError("config: format must be \"json\" or \"csv\"");
    cfg.format = fmt;
  }
  return cfg;
} catch (const json::exception& e) {
  throw ConfigError(std::string("config: ") + e.what());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // e.byte is the offending byte offset
    throw ConfigError(path.string() + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json context_descriptor(const SkewRing& s) {
  const auto& r = s.base();
  json mul = json::array();
  for (std::size_t a = 0; a < r.rank(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < r.rank(); ++b) {
      Vec v;
      for (std::size_t d = 0; d < r.rank(); ++d) v.push_back(r.structure_constant(a, b, d));
      row.push_back(v);
    }
    mul.push_back(row);
  }
  return {{"ring",
           {{"characteristic", r.characteristic()},
            {"rank", r.rank()},
            {"one", r.one().coords},
            {"mul", mul},
            {"labels", r.labels()}}},
          {"rho", rows_json(s.rho().matrix)},
          {"d", rows_json(s.derivation().matrix)}};
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

}  // namespace skewsep
