#include "cli.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zplie/algebra.hpp"
#include "zplie/io.hpp"
#include "zplie/maps.hpp"
#include "zplie/random.hpp"
#include "zplie/solver.hpp"
#include "zplie/structure.hpp"

namespace zplie::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class UsageError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct RunConfig {
  std::string command;
  std::string algebra;
  std::string xi;
  std::size_t levels = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string family;
  std::string delta;
  std::string ordering = "a";
  std::size_t samples = 200;
  std::string choice = "particular";
  bool timing = false;

  json echo() const {
    json j;
    j["algebra"] = algebra;
    if (!xi.empty()) j["xi"] = xi;
    j["levels"] = levels;
    j["seed"] = seed;
    if (!family.empty()) j["family"] = family;
    if (!delta.empty()) j["delta"] = delta;
    j["ordering"] = ordering;
    j["samples"] = samples;
    j["choice"] = choice;
    return j;
  }
};

class Report {
 public:
  explicit Report(const RunConfig& cfg) {
    doc_["command"] = cfg.command;
    doc_["config"] = cfg.echo();
    doc_["levels"] = json::array();
    doc_["checks"] = json::array();
  }

  void algebra(const Algebra& alg) {
    doc_["algebra"] = json{{"name", alg.name()}, {"dim", alg.dim()}};
  }

  void span(const TensorSpanBasis& s) {
    doc_["span"] = json{{"dim", s.size()}, {"saturation_draws", s.saturation_draws}};
  }

  void level(const SolutionSpace& s) {
    doc_["levels"].push_back(json{{"level", s.level},
                                  {"dimension", s.dimension()},
                                  {"constraints", s.constraint_count}});
  }

  // `required` checks decide the exit code; the rest are informational.
  void check(const std::string& name, std::size_t level, bool pass, const std::string& detail, bool required) {
    json c;
    c["check"] = name;
    c["level"] = level;
    c["pass"] = pass;
    c["required"] = required;
    if (!detail.empty()) c["detail"] = detail;
    doc_["checks"].push_back(std::move(c));
    if (required && !pass) failed_ = true;
  }

  void skip(const std::string& name, const std::string& reason) {
    doc_["checks"].push_back(json{{"check", name}, {"skipped", reason}});
  }

  void note(const std::string& key, json value) { doc_[key] = std::move(value); }

  bool failed() const { return failed_; }

  std::string finish(int code, std::optional<double> elapsed_ms) {
    static const char* names[] = {"ok", "", "verification_failed", "inconsistent", "io_error"};
    doc_["status"] = names[code];
    doc_["exit_code"] = code;
    if (elapsed_ms) doc_["elapsed_ms"] = *elapsed_ms;
    return doc_.dump(2) + "\n";
  }

  void summarize(std::ostream& os) const {
    if (doc_.contains("error")) os << "error: " << doc_["error"].get<std::string>() << "\n";
    for (const auto& l : doc_["levels"])
      os << "level " << l["level"].get<std::size_t>() << ": dimension " << l["dimension"].get<std::size_t>()
         << " (" << l["constraints"].get<std::size_t>() << " constraints)\n";
    for (const auto& c : doc_["checks"]) {
      if (c.contains("skipped")) {
        os << "SKIP " << c["check"].get<std::string>() << ": " << c["skipped"].get<std::string>() << "\n";
        continue;
      }
      os << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>() << " level "
         << c["level"].get<std::size_t>();
      if (c.contains("detail")) os << ": " << c["detail"].get<std::string>();
      os << "\n";
    }
  }

 private:
  json doc_;
  bool failed_ = false;
};

Algebra load_algebra(const std::string& source) {
  auto colon = source.find(':');
  if (colon == std::string::npos) throw UsageError("algebra must be matrix:<d>, blocks:<d1,...> or file:<path>");
  const std::string kind = source.substr(0, colon);
  const std::string rest = source.substr(colon + 1);
  auto parse_size = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad size \"" + s + "\" in " + source);
    std::size_t v = std::stoul(s);
    if (v == 0 || v > 64) throw UsageError("block sizes must be between 1 and 64");
    return v;
  };
  if (kind == "matrix") return build_matrix_algebra(parse_size(rest));
  if (kind == "blocks") {
    std::vector<std::size_t> sizes;
    std::stringstream ss(rest);
    std::string part;
    while (std::getline(ss, part, ',')) sizes.push_back(parse_size(part));
    if (sizes.empty()) throw UsageError("blocks: needs at least one size");
    return build_block_diagonal(sizes);
  }
  if (kind == "file") return io::algebra_from_json(io::read_file(rest));
  throw UsageError("unknown algebra kind \"" + kind + "\"");
}

Scalar require_xi(const RunConfig& cfg) {
  if (cfg.xi.empty()) throw UsageError(cfg.command + " needs --xi");
  return parse_scalar(cfg.xi);
}

MapFamily load_family(const RunConfig& cfg, const Algebra& alg) {
  if (cfg.family.empty()) throw UsageError(cfg.command + " needs --family");
  return io::family_from_json(io::read_file(cfg.family), alg);
}

Ordering parse_ordering(const std::string& s) {
  if (s == "a") return Ordering::A;
  if (s == "b") return Ordering::B;
  throw UsageError("--ordering must be a or b");
}

// Check pairs are drawn from a stream separate from the span generators.
std::vector<ElementPair> check_pairs(const Algebra& alg, const RunConfig& cfg) {
  return sample_zero_product_pairs(alg, cfg.samples, cfg.seed ^ 0x5a5a5a5a5a5a5a5aULL);
}

std::string describe(const Algebra& alg, const CheckResult& r) {
  return r.violation ? r.violation->describe(alg) : std::string();
}

void record(Report& rep, const Algebra& alg, const std::string& name, std::size_t level, const CheckResult& r,
            bool required) {
  rep.check(name, level, r.ok, describe(alg, r), required);
}

// Consequences of the xi-condition that a solved family must satisfy.
void theorem_checks(Report& rep, const Algebra& alg, const MapFamily& f, const Scalar& xi,
                    const std::vector<ElementPair>& pairs) {
  const std::size_t order = f.order();
  for (std::size_t n = 1; n <= order; ++n) {
    const MapFamily g = f.truncated(n);
    if (xi == 1) {
      auto bad = first_noncentral_unit_image(alg, g);
      rep.check("unit_image_central", n, !bad, bad ? "L_" + std::to_string(*bad) + "(I) is not central" : "", true);
    } else if (xi == 0) {
      auto bad = first_noncentral_unit_image(alg, g);
      rep.check("unit_image_central", n, !bad, bad ? "L_" + std::to_string(*bad) + "(I) is not central" : "", true);
      try {
        MapFamily d = associated_higher_derivation(alg, g);
        record(rep, alg, "generalized_higher_derivation", n, is_generalized_higher_derivation(alg, g, d), true);
      } catch (const Error& e) {
        rep.check("generalized_higher_derivation", n, false, e.what(), true);
      }
    } else {
      record(rep, alg, "higher_derivation", n, is_higher_derivation(alg, g), true);
    }
  }
  if (xi == 1) {
    if (!alg.has_blocks()) {
      rep.skip("inner_plus_central_decomposition", "algebra has no block structure");
      return;
    }
    try {
      Decomposition dec = decompose_family(alg, f, pairs);
      rep.check("inner_plus_central_decomposition", order, true,
                std::to_string(dec.verified_pairs) + " zero-product commutators annihilated", true);
    } catch (const DecompositionFailure& e) {
      rep.check("inner_plus_central_decomposition", e.level(), false, e.what(), true);
    }
  }
}

int cmd_solve(const RunConfig& cfg, const Algebra& alg, Report& rep) {
  const Scalar xi = require_xi(cfg);
  if (cfg.choice != "particular" && cfg.choice != "random") throw UsageError("--choice must be particular or random");
  const TensorSpanBasis span = zero_product_span(alg, cfg.seed);
  rep.span(span);
  // An optional --family is a prefix to extend; --levels is then the top level.
  MapFamily family = cfg.family.empty() ? MapFamily::identity(alg.dim(), 0) : load_family(cfg, alg);
  if (family.order() >= cfg.levels) throw UsageError("--levels must exceed the order of the given prefix");
  for (std::size_t n = family.order() + 1; n <= cfg.levels; ++n) {
    SolutionSpace space;
    try {
      space = solve_level(assemble_level_system(alg, family, xi, span));
    } catch (const InconsistentLevel& e) {
      const auto o = e.origin();
      rep.note("inconsistency", json{{"level", e.level()}, {"span_vector", o.span_vector}, {"coordinate", o.coordinate},
                                     {"message", e.what()}});
      return kInconsistent;
    }
    rep.level(space);
    io::write_file(fs::path(cfg.out) / ("level_" + std::to_string(n) + ".json"), io::solution_space_to_json(space));
    ExtensionChoice choice = ChooseParticular{};
    if (cfg.choice == "random") choice = ChooseRandom{cfg.seed + 0x9e3779b97f4a7c15ULL * n};
    family = family.extended(choose_extension(space, choice));
  }
  io::write_file(fs::path(cfg.out) / "family.json", io::family_to_json(alg, family));
  const auto pairs = check_pairs(alg, cfg);
  record(rep, alg, "zero_product_condition", cfg.levels, xi_condition_on_zero_products(alg, family, xi, pairs), true);
  theorem_checks(rep, alg, family, xi, pairs);
  return rep.failed() ? kVerificationFailed : kOk;
}

int cmd_verify(const RunConfig& cfg, const Algebra& alg, Report& rep) {
  const MapFamily f = load_family(cfg, alg);
  const bool with_xi = !cfg.xi.empty();
  for (std::size_t n = 1; n <= f.order(); ++n) {
    const MapFamily g = f.truncated(n);
    record(rep, alg, "higher_derivation", n, is_higher_derivation(alg, g), !with_xi);
    record(rep, alg, "lie_higher_derivation", n, is_lie_higher_derivation(alg, g), false);
  }
  if (!with_xi) return rep.failed() ? kVerificationFailed : kOk;
  const Scalar xi = parse_scalar(cfg.xi);
  const auto pairs = check_pairs(alg, cfg);
  bool zp_ok = true;
  for (std::size_t n = 1; n <= f.order(); ++n) {
    auto r = xi_condition_on_zero_products(alg, f.truncated(n), xi, pairs);
    record(rep, alg, "zero_product_condition", n, r, true);
    zp_ok = zp_ok && r.ok;
  }
  if (zp_ok) {
    theorem_checks(rep, alg, f, xi, pairs);
  } else {
    rep.skip("theorem_invariants", "zero-product condition does not hold");
  }
  return rep.failed() ? kVerificationFailed : kOk;
}

int cmd_decompose(const RunConfig& cfg, const Algebra& alg, Report& rep) {
  const MapFamily f = load_family(cfg, alg);
  if (!alg.has_blocks()) throw UsageError("decompose needs a block algebra");
  try {
    Decomposition dec = decompose_family(alg, f, check_pairs(alg, cfg));
    io::write_file(fs::path(cfg.out) / "decomposition.json", io::decomposition_to_json(dec));
    rep.check("inner_plus_central_decomposition", f.order(), true,
              std::to_string(dec.verified_pairs) + " zero-product commutators annihilated", true);
  } catch (const DecompositionFailure& e) {
    rep.check("inner_plus_central_decomposition", e.level(), false, e.what(), true);
  }
  return rep.failed() ? kVerificationFailed : kOk;
}

int cmd_transfer(const RunConfig& cfg, const Algebra& alg, Report&) {
  const MapFamily f = load_family(cfg, alg);
  const DeltaSequence d = transfer_to_delta(f, parse_ordering(cfg.ordering));
  io::write_file(fs::path(cfg.out) / "delta.json", io::delta_to_json(alg, d));
  return kOk;
}

int cmd_rebuild(const RunConfig& cfg, const Algebra& alg, Report&) {
  if (cfg.delta.empty()) throw UsageError("rebuild needs --delta");
  const DeltaSequence d = io::delta_from_json(io::read_file(cfg.delta), alg);
  io::write_file(fs::path(cfg.out) / "family.json", io::family_to_json(alg, rebuild_from_delta(d)));
  return kOk;
}

int cmd_classify(const RunConfig& cfg, const Algebra& alg, Report& rep) {
  const Scalar xi = require_xi(cfg);
  if (xi == 1) throw UsageError("classify handles xi != 1; use decompose for xi = 1");
  const MapFamily f = load_family(cfg, alg);
  XiClassification c = classify_xi_family(alg, f, xi, check_pairs(alg, cfg));
  io::write_file(fs::path(cfg.out) / "classification.json", io::classification_to_json(alg, c));
  rep.note("verdict", to_string(c.verdict));
  const bool ok = c.verdict != Verdict::NotClassified;
  std::string detail;
  for (const auto& w : c.witnesses) detail += (detail.empty() ? "" : "; ") + w;
  rep.check("classification", f.order(), ok, detail, true);
  return rep.failed() ? kVerificationFailed : kOk;
}

int cmd_inner(const RunConfig& cfg, const Algebra& alg, Report& rep) {
  Rng rng(cfg.seed);
  GeneratorSequence gens;
  for (std::size_t n = 0; n < cfg.levels; ++n) gens.gens.push_back(random_element(alg, rng));
  const MapFamily f = inner_higher(alg, gens);
  io::write_file(fs::path(cfg.out) / "family.json", io::family_to_json(alg, f));
  record(rep, alg, "higher_derivation", f.order(), is_higher_derivation(alg, f), true);
  return rep.failed() ? kVerificationFailed : kOk;
}

using Handler = int (*)(const RunConfig&, const Algebra&, Report&);

struct Command {
  const char* name;
  const char* help;
  Handler run;
};

const Command kCommands[] = {
    {"solve", "solve the zero-product system level by level", cmd_solve},
    {"verify", "check a family against the definitions and the xi-condition", cmd_verify},
    {"decompose", "split a xi = 1 family into inner and central parts", cmd_decompose},
    {"transfer", "convert a family to its delta sequence", cmd_transfer},
    {"rebuild", "rebuild a family from a delta sequence", cmd_rebuild},
    {"classify", "classify a family solving the xi-condition for xi != 1", cmd_classify},
    {"inner", "generate a random inner higher derivation", cmd_inner},
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-product higher derivations on block matrix algebras", "zplie"};
  app.require_subcommand(1);
  RunConfig cfg;
  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--algebra", cfg.algebra, "matrix:<d>, blocks:<d1,...> or file:<path>")->required();
    sub->add_option("--xi", cfg.xi, "rational p/q");
    sub->add_option("--levels", cfg.levels, "highest level N")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    sub->add_option("--seed", cfg.seed, "64-bit seed");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--family", cfg.family, "family JSON");
    sub->add_option("--delta", cfg.delta, "delta sequence JSON");
    sub->add_option("--ordering", cfg.ordering, "delta ordering a|b");
    sub->add_option("--samples", cfg.samples, "sampled zero-product pairs for checks");
    sub->add_option("--choice", cfg.choice, "solution picked per level: particular|random");
    sub->add_flag("--timing", cfg.timing, "record elapsed time in the report");
  }

  std::vector<std::string> storage{"zplie"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }

  const Command* cmd = nullptr;
  for (const auto& c : kCommands)
    if (app.got_subcommand(c.name)) cmd = &c;
  cfg.command = cmd->name;

  const auto start = std::chrono::steady_clock::now();
  Report rep(cfg);
  int code = kOk;
  try {
    const Algebra alg = load_algebra(cfg.algebra);
    rep.algebra(alg);
    code = cmd->run(cfg, alg, rep);
  } catch (const PreconditionFailed& e) {
    rep.note("error", e.what());
    code = kVerificationFailed;
  } catch (const InconsistentLevel& e) {
    rep.note("error", e.what());
    code = kInconsistent;
  } catch (const DecompositionFailure& e) {
    rep.note("error", e.what());
    code = kVerificationFailed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    rep.note("error", e.what());
    code = kVerificationFailed;
  }

  std::optional<double> elapsed;
  if (cfg.timing)
    elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  try {
    io::write_file(fs::path(cfg.out) / "report.json", rep.finish(code, elapsed));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  rep.summarize(out);
  if (code != kOk) err << cfg.command << " finished with exit code " << code << "\n";
  return code;
}

}  // namespace zplie::cli
