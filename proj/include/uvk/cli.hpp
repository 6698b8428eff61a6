// Command implementations behind the uvk executable: file/manifest checking,
// expression evaluation, and the canonicity harness. Kept in the library so
// the test suites drive exactly what the binary runs.

#ifndef UVK_CLI_HPP
#define UVK_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "uvk/corpus.hpp"
#include "uvk/library.hpp"

namespace uvk {

struct CliConfig {
  UniverseMode mode = UniverseMode::Strict;
  bool mode_explicit = false;  // a flag was passed, overriding manifest modes
  Strategy strategy = Strategy::Compute;
  uint64_t fuel = 10'000'000;
  bool transparent_all = false;
  bool json = false;
  std::vector<std::pair<std::string, std::string>> load_paths;  // prefix, dir
  std::string lib;                     // tier1 | tier2 | tier3 | ""
  std::string manifest_dir = "manifests";
  std::string lib_dir = "lib";
};

// Exit codes: 0 success, 1 check/type failure, 2 I/O failure, 3 fuel.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kIoError = 2, kFuel = 3 };

inline void apply_load_paths(Session& s, const CliConfig& cfg) {
  auto add_spec = [&](const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) return;
    s.loadpath().add(spec.substr(0, eq), spec.substr(eq + 1));
  };
  if (!cfg.load_paths.empty()) {
    for (auto& [p, d] : cfg.load_paths) s.loadpath().add(p, d);
    return;
  }
  if (const char* env = std::getenv("UVK_LOAD_PATH")) {
    std::string all = env;
    size_t pos = 0;
    bool any = false;
    while (pos <= all.size()) {
      auto next = all.find(':', pos);
      std::string piece = all.substr(
          pos, next == std::string::npos ? std::string::npos : next - pos);
      if (!piece.empty()) {
        add_spec(piece);
        any = true;
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (any) return;
  }
  // default layout relative to the working directory
  std::filesystem::path lib = cfg.lib_dir;
  s.loadpath().add("Foundations.Generalities", lib / "Generalities");
  s.loadpath().add("Foundations.hlevel1", lib / "hlevel1");
  s.loadpath().add("Foundations.hlevel2", lib / "hlevel2");
}

inline std::optional<Manifest> read_manifest(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

inline void print_file_report(const FileReport& f, std::ostream& out) {
  out << f.path << " [" << (f.module.empty() ? "-" : f.module)
      << "]: " << f.status;
  if (!f.message.empty()) out << " - " << f.message;
  out << " (" << f.defs.size() << " definitions, " << f.millis << " ms)\n";
  for (auto& c : f.universe_cycle) out << "    cycle: " << c << "\n";
  for (auto& e : f.evals) {
    out << "  Eval " << e.strategy << " " << e.expr << " = " << e.normal_form
        << "  [" << e.classification.show() << ", " << e.steps << " steps]";
    if (e.status != "ok") out << "  ERROR: " << e.message;
    out << "\n";
  }
  for (auto& c : f.canonicity) {
    out << "  CanonicityTest " << c.expr << " as " << c.expected.show()
        << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.pass) out << " (got " << c.actual.show() << ")";
    out << "\n";
  }
}

// `check` over explicit .uv files or a .mf manifest (or --lib tierN).
inline int run_check(const std::vector<std::string>& paths, CliConfig cfg,
                     std::ostream& out = std::cout) {
  std::vector<std::string> inputs = paths;
  if (!cfg.lib.empty())
    inputs.insert(inputs.begin(),
                  (std::filesystem::path(cfg.manifest_dir) /
                   (cfg.lib + ".mf")).string());
  if (inputs.empty()) {
    out << "check: no inputs\n";
    return kIoError;
  }

  CheckReport total;
  bool io_error = false, any_fail = false;

  for (auto& input : inputs) {
    std::filesystem::path p = input;
    if (!std::filesystem::exists(p)) {
      out << "check: no such file: " << input << "\n";
      io_error = true;
      continue;
    }
    if (p.extension() == ".mf") {
      auto m = read_manifest(p);
      if (!m) {
        io_error = true;
        continue;
      }
      UniverseMode mode = cfg.mode_explicit ? cfg.mode : m->mode;
      Session s(mode, SessionConfig{cfg.fuel, cfg.transparent_all});
      apply_load_paths(s, cfg);
      CheckReport r = s.check_manifest(*m);
      any_fail = any_fail || !r.ok();
      total.universe_mode = r.universe_mode;
      for (auto& f : r.files) total.files.push_back(f);
      for (auto& mm : r.expectation_mismatches)
        total.expectation_mismatches.push_back(mm);
    } else {
      Session s(cfg.mode, SessionConfig{cfg.fuel, cfg.transparent_all});
      apply_load_paths(s, cfg);
      FileReport f = s.load_file(p);
      if (f.status != "ok") any_fail = true;
      total.universe_mode =
          cfg.mode == UniverseMode::Off ? "off" : "strict";
      total.files.push_back(std::move(f));
    }
  }

  if (cfg.json) {
    out << to_json(total).dump(2) << "\n";
  } else {
    for (auto& f : total.files) print_file_report(f, out);
    for (auto& mm : total.expectation_mismatches)
      out << "expectation mismatch: " << mm << "\n";
  }
  if (io_error) return kIoError;
  return any_fail || !total.expectation_mismatches.empty() ? kCheckFailed
                                                           : kOk;
}

// `eval`: load the requested tier, then check and normalize an expression.
inline int run_eval(const std::string& expr_src, CliConfig cfg,
                    std::ostream& out = std::cout) {
  std::optional<Manifest> m;
  UniverseMode mode = cfg.mode;
  if (!cfg.lib.empty()) {
    m = read_manifest(std::filesystem::path(cfg.manifest_dir) /
                      (cfg.lib + ".mf"));
    if (!m) {
      out << "eval: cannot read manifest for " << cfg.lib << "\n";
      return kIoError;
    }
    if (!cfg.mode_explicit) mode = m->mode;
  }
  Session s(mode, SessionConfig{cfg.fuel, cfg.transparent_all});
  apply_load_paths(s, cfg);
  if (m) {
    CheckReport r = s.check_manifest(*m);
    if (!r.ok()) {
      out << "eval: library " << cfg.lib << " failed to load\n";
      return kCheckFailed;
    }
  }
  try {
    TermPtr t = resolve_term(parse_expr(expr_src), s.env());
    Context ctx;
    Inferred got = s.checker().infer(ctx, t);
    EvalOptions opt{cfg.strategy, cfg.fuel, cfg.transparent_all};
    auto r = normalize(s.env(), got.term, opt);
    auto cls = classify(r.term);
    if (cfg.json) {
      nlohmann::json j{{"expr", pretty(t)},
                       {"normal_form", pretty(r.term)},
                       {"classification", to_json(cls)},
                       {"steps", r.steps},
                       {"type", pretty(got.type)}};
      out << j.dump(2) << "\n";
    } else {
      out << pretty(r.term) << "\n";
      out << "  : " << pretty(got.type) << "\n";
      out << "  classification: " << cls.show() << "; steps: " << r.steps
          << "\n";
    }
    return kOk;
  } catch (const FuelExhausted& e) {
    out << "eval: " << e.what() << "\n";
    return kFuel;
  } catch (const std::exception& e) {
    out << "eval: " << e.what() << "\n";
    return kCheckFailed;
  }
}

// `canonicity`: the property harness. Generates closed axiom-free nat terms
// and requires every one to normalize to a numeral under both strategies
// with identical results.
struct CanonicitySummary {
  uint64_t seed = 0;
  int requested = 0;
  int passed = 0;
  int stuck = 0;
  int disagreements = 0;
  int non_numeral = 0;
  bool injected_axiom = false;
  bool injected_stuck_detected = false;

  bool ok() const {
    return disagreements == 0 && non_numeral == 0 &&
           (stuck == (injected_axiom ? 1 : 0)) &&
           (!injected_axiom || injected_stuck_detected);
  }
};

inline CanonicitySummary run_canonicity_corpus(uint64_t seed, int count,
                                               bool inject_axiom,
                                               const CliConfig& cfg) {
  CanonicitySummary sum;
  sum.seed = seed;
  sum.requested = count;
  sum.injected_axiom = inject_axiom;
  GlobalEnv env(cfg.mode);
  CorpusGen gen(seed);
  std::vector<TermPtr> terms;
  for (int i = 0; i < count; ++i) terms.push_back(gen.nat_term(4));
  if (inject_axiom) {
    GlobalDef ax;
    ax.name = "injected_axiom";
    ax.type = mk::nat();
    env.insert(std::move(ax));
    terms.push_back(mk::succ(mk::axiom("injected_axiom")));
  }
  for (auto& t : terms) {
    EvalOptions eager{Strategy::Compute, cfg.fuel, false};
    EvalOptions lazy{Strategy::Lazy, cfg.fuel, false};
    auto a = normalize(env, t, eager);
    auto b = normalize(env, t, lazy);
    if (!struct_eq(a.term, b.term)) {
      ++sum.disagreements;
      continue;
    }
    auto cls = classify(a.term);
    switch (cls.kind) {
      case Classification::Kind::Numeral:
        ++sum.passed;
        break;
      case Classification::Kind::Stuck:
        ++sum.stuck;
        if (inject_axiom && cls.blockers.count("injected_axiom"))
          sum.injected_stuck_detected = true;
        break;
      default:
        ++sum.non_numeral;
        break;
    }
  }
  return sum;
}

inline int run_canonicity(uint64_t seed, int count, bool inject_axiom,
                          CliConfig cfg, std::ostream& out = std::cout) {
  auto sum = run_canonicity_corpus(seed, count, inject_axiom, cfg);
  if (cfg.json) {
    nlohmann::json j{{"seed", sum.seed},
                     {"requested", sum.requested},
                     {"passed", sum.passed},
                     {"stuck", sum.stuck},
                     {"disagreements", sum.disagreements},
                     {"non_numeral", sum.non_numeral},
                     {"ok", sum.ok()}};
    out << j.dump(2) << "\n";
  } else {
    out << "canonicity: seed " << sum.seed << ", " << sum.requested
        << " terms: " << sum.passed << " numerals, " << sum.stuck
        << " stuck, " << sum.disagreements << " strategy disagreements, "
        << sum.non_numeral << " non-numeral\n";
    if (sum.injected_axiom)
      out << "  injected axiom term "
          << (sum.injected_stuck_detected ? "flagged as stuck"
                                          : "NOT detected")
          << "\n";
  }
  return sum.ok() ? kOk : kCheckFailed;
}

}  // namespace uvk

#endif  // UVK_CLI_HPP
