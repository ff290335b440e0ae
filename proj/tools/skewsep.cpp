#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "skewsep/catalog.hpp"
#include "skewsep/config.hpp"

using namespace skewsep;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kCap = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> max_enum;
  std::optional<std::size_t> jobs;
  std::optional<std::size_t> degree;
  std::string cache;
  bool no_oracles = false;
  bool timings = false;
};

void common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "JSON config (or, for report, a saved document)")->required();
  cmd->add_option("--out", o.out, "write here instead of stdout");
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void job_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-enum", o.max_enum, "enumeration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", o.jobs, "worker threads, 0 = all cores");
  cmd->add_flag("--no-oracles", o.no_oracles, "skip the definitional cross-checks");
  cmd->add_flag("--timings", o.timings, "append a metadata block with timings");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + o.out);
  f << text;
}

std::string render(const json& doc, const std::string& format) {
  return format == "csv" ? document_csv(doc) : doc.dump(2) + "\n";
}

std::string format_of(const Options& o, const std::optional<std::string>& from_config) {
  if (!o.format.empty()) return o.format;
  return from_config.value_or("json");
}

JobConfig load(const Options& o) {
  auto cfg = parse_config(read_json_file(o.config));
  if (o.max_enum) cfg.max_enum = *o.max_enum;
  if (o.jobs) cfg.jobs = *o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : *o.jobs;
  if (o.no_oracles) cfg.oracles = false;
  return cfg;
}

json report_json(const ValidationReport& r) { return {{"ok", r.ok()}, {"failures", r.failures}}; }

int cmd_validate(const Options& o) {
  const auto cfg = load(o);
  const auto ring = validate_ring(cfg.ring);
  const auto rho = validate_automorphism(cfg.ring, cfg.rho);
  const auto d = validate_derivation(cfg.ring, cfg.rho, cfg.d);
  const bool ok = ring.ok() && rho.ok() && d.ok();
  json doc = {{"tool", kToolVersion},
              {"kind", "validate"},
              {"ok", ok},
              {"ring", report_json(ring)},
              {"rho", report_json(rho)},
              {"d", report_json(d)},
              {"rho_d_commute", ring.ok() ? json(check_commuting(cfg.ring, cfg.rho, cfg.d)) : json()},
              {"rank", cfg.ring.rank()},
              {"characteristic", cfg.ring.characteristic()}};
  if (format_of(o, cfg.format) == "csv") {
    std::string text = "component,ok,failures\n";
    for (const char* part : {"ring", "rho", "d"}) {
      std::string failures;
      for (const auto& f : doc[part]["failures"]) failures += (failures.empty() ? "" : "; ") + f.get<std::string>();
      text += std::string(part) + "," + (doc[part]["ok"].get<bool>() ? "true" : "false") + ",\"" + failures + "\"\n";
    }
    emit(o, text);
  } else {
    emit(o, doc.dump(2) + "\n");
  }
  for (const char* part : {"ring", "rho", "d"})
    for (const auto& f : doc[part]["failures"]) std::cerr << part << ": " << f.get<std::string>() << "\n";
  return ok ? kOk : kFailed;
}

std::shared_ptr<const SkewRing> context(JobConfig& cfg) {
  return SkewRing::create(std::move(cfg.ring), std::move(cfg.rho), std::move(cfg.d));
}

int cmd_check(const Options& o) {
  auto cfg = load(o);
  const auto format = format_of(o, cfg.format);
  if (cfg.polynomials.empty()) throw UsageError("check: the config names no polynomial");
  const auto polys = cfg.polynomials;
  const CatalogOptions opts{cfg.max_enum, cfg.jobs, cfg.oracles};
  const auto skew = context(cfg);
  std::vector<SkewPolynomial> fs;
  for (const auto& coords : polys) {
    std::vector<RingElement> coeffs;
    for (const auto& c : coords) coeffs.push_back(skew->base().element(c));
    auto f = skew->polynomial(std::move(coeffs));
    if (!skew->is_monic(f) || f.degree() < 1)
      throw ValidationFailed(ValidationReport{{"polynomial " + skew->format(f) + " is not monic of positive degree"}});
    fs.push_back(std::move(f));
  }
  const auto entries = check_all(skew, fs, opts);
  emit(o, render(check_json(*skew, entries, o.timings), format));
  bool ok = true;
  for (const auto& e : entries)
    if (!e.report.witnesses_verified) {
      std::cerr << skew->format(e.f) << ": witness failed verification\n";
      ok = false;
    }
  return ok ? kOk : kFailed;
}

int cmd_catalog(const Options& o) {
  auto cfg = load(o);
  const auto format = format_of(o, cfg.format);
  const auto degree = o.degree ? o.degree : cfg.degree;
  if (!degree) throw UsageError("catalog: no degree (use --degree or \"degree\" in the config)");
  const CatalogOptions opts{cfg.max_enum, cfg.jobs, cfg.oracles};
  const auto skew = context(cfg);

  std::filesystem::path cached;
  if (!o.cache.empty()) {
    std::filesystem::create_directories(o.cache);
    cached = std::filesystem::path(o.cache) / (catalog_cache_key(*skew, *degree, opts.oracles) + ".json");
    if (std::filesystem::exists(cached) && !o.timings) {
      const auto doc = read_json_file(cached);
      emit(o, render(doc, format));
      return doc.at("counts").at("hirata_without_separable") == 0 ? kOk : kFailed;
    }
  }

  const auto catalog = run_catalog(skew, *degree, opts);
  auto doc = catalog_json(*skew, catalog, o.timings);
  if (doc.contains("metadata")) doc["metadata"]["jobs"] = opts.jobs;
  if (!cached.empty()) {
    auto body = doc;
    body.erase("metadata");
    std::ofstream(cached, std::ios::binary) << body.dump(2) << "\n";
  }
  emit(o, render(doc, format));
  const auto& counts = doc.at("counts");
  if (counts.at("hirata_without_separable") != 0 || counts.at("unverified_witnesses") != 0) {
    std::cerr << "catalog: verification failures, see counts\n";
    return kFailed;
  }
  return kOk;
}

int cmd_report(const Options& o) {
  const auto doc = read_json_file(o.config);
  if (!doc.is_object() || !doc.contains("entries") || !doc.contains("context"))
    throw ConfigError(o.config + ": not a check or catalog document");
  const auto result = reverify_document(doc);
  for (const auto& f : result.failures) std::cerr << "report: " << f << "\n";
  if (!result.ok()) return kFailed;
  emit(o, render(doc, o.format.empty() ? "json" : o.format));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability of invariant skew polynomials over finite rings"};
  app.require_subcommand(1);
  Options o;
  auto* validate = app.add_subcommand("validate", "check the ring, rho and D axioms");
  auto* check = app.add_subcommand("check", "decide the polynomials named in the config");
  auto* catalog = app.add_subcommand("catalog", "classify every monic polynomial of one degree");
  auto* report = app.add_subcommand("report", "re-verify a saved document and emit it as JSON or CSV");
  for (auto* cmd : {validate, check, catalog, report}) common_flags(cmd, o);
  for (auto* cmd : {check, catalog}) job_flags(cmd, o);
  catalog->add_option("--degree", o.degree, "degree m, overrides the config")->check(CLI::PositiveNumber);
  catalog->add_option("--cache", o.cache, "directory for cached catalogs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*check) return cmd_check(o);
    if (*catalog) return cmd_catalog(o);
    return cmd_report(o);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kCap;
  } catch (const DegreeCapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kCap;
  } catch (const ValidationFailed& e) {
    for (const auto& f : e.report().failures) std::cerr << "invalid: " << f << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
