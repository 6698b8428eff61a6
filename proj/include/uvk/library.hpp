// Library loading: load paths with first-match resolution, declared module
// name verification, command execution with per-definition reporting, and
// manifest checking with expected-outcome comparison. Reports serialize to
// JSON.

#ifndef UVK_LIBRARY_HPP
#define UVK_LIBRARY_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uvk/kernel.hpp"

namespace uvk {

struct LoadPath {
  struct Entry {
    std::string prefix;             // dotted name
    std::filesystem::path directory;
  };
  std::vector<Entry> entries;  // order significant: first match wins

  void add(std::string prefix, std::filesystem::path dir) {
    entries.push_back({std::move(prefix), std::move(dir)});
  }
};

struct ModuleError : std::runtime_error {
  enum class Kind : uint8_t { NotFound, NameMismatch };
  Kind kind;
  ModuleError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

// Reads the module name a file declares via its Library command, without
// resolving anything.
inline std::optional<std::string> declared_module_name(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  auto cmds = parse_file(ss.str());
  for (auto& c : cmds)
    if (c.kind == Command::Kind::LibraryDecl) return c.dotted;
  return std::nullopt;
}

// Resolution walks the load path in order and takes the first directory
// that is paired with the module's prefix and contains the file. If that
// file declares a different module name the search stops with an error;
// no further match is attempted.
inline std::filesystem::path resolve_module(const LoadPath& lp,
                                            const std::string& dotted) {
  auto cut = dotted.rfind('.');
  std::string prefix = cut == std::string::npos ? "" : dotted.substr(0, cut);
  std::string leaf = cut == std::string::npos ? dotted : dotted.substr(cut + 1);
  for (auto& e : lp.entries) {
    if (e.prefix != prefix) continue;
    auto candidate = e.directory / (leaf + ".uv");
    if (!std::filesystem::exists(candidate)) continue;
    auto declared = declared_module_name(candidate);
    std::string found = declared ? *declared : leaf;
    if (found != dotted)
      throw ModuleError(ModuleError::Kind::NameMismatch,
                        "file " + candidate.string() + " declares library '" +
                            found + "', expected '" + dotted + "'");
    return candidate;
  }
  throw ModuleError(ModuleError::Kind::NotFound,
                    "no file for library '" + dotted + "' on the load path");
}

// ---------------------------------------------------------------------------
// Reports

struct DefReport {
  std::string name;
  std::string status;  // "ok" | "error" | "fuel"
  std::string message;
  std::vector<std::string> axioms;
  double millis = 0;
};

struct EvalReport {
  std::string expr;
  std::string strategy;
  std::string normal_form;
  Classification classification;
  uint64_t steps = 0;
  double millis = 0;
  std::string status = "ok";
  std::string message;
};

struct CanonReport {
  std::string expr;
  Classification expected;
  Classification actual;
  bool strategies_agree = true;
  bool pass = false;
  std::string message;
};

struct FileReport {
  std::string path;
  std::string module;
  std::string status = "ok";  // "ok" | "universefail" | "error"
  std::string message;
  std::vector<std::string> universe_cycle;
  std::vector<DefReport> defs;
  std::vector<EvalReport> evals;
  std::vector<CanonReport> canonicity;
  double millis = 0;

  bool all_eval_ok() const {
    for (auto& e : evals)
      if (e.status != "ok") return false;
    for (auto& c : canonicity)
      if (!c.pass) return false;
    return true;
  }
};

struct CheckReport {
  std::string universe_mode;
  std::vector<FileReport> files;
  std::vector<std::string> expectation_mismatches;

  bool ok() const {
    if (!expectation_mismatches.empty()) return false;
    for (auto& f : files)
      if (!f.all_eval_ok()) return false;
    return true;
  }
};

inline nlohmann::json to_json(const Classification& c) {
  nlohmann::json j;
  switch (c.kind) {
    case Classification::Kind::Numeral:
      j["kind"] = "numeral";
      j["value"] = c.numeral;
      break;
    case Classification::Kind::BoolVal:
      j["kind"] = "boolval";
      j["value"] = c.boolval;
      break;
    case Classification::Kind::Canonical:
      j["kind"] = "canonical";
      break;
    case Classification::Kind::Stuck:
      j["kind"] = "stuck";
      j["blockers"] = c.blockers;
      break;
  }
  return j;
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json files = nlohmann::json::array();
  for (auto& f : r.files) {
    nlohmann::json defs = nlohmann::json::array();
    for (auto& d : f.defs)
      defs.push_back({{"definition", d.name},
                      {"status", d.status},
                      {"message", d.message},
                      {"axioms", d.axioms},
                      {"millis", d.millis}});
    nlohmann::json evals = nlohmann::json::array();
    for (auto& e : f.evals)
      evals.push_back({{"expr", e.expr},
                       {"strategy", e.strategy},
                       {"normal_form", e.normal_form},
                       {"classification", to_json(e.classification)},
                       {"steps", e.steps},
                       {"millis", e.millis},
                       {"status", e.status}});
    nlohmann::json canons = nlohmann::json::array();
    for (auto& c : f.canonicity)
      canons.push_back({{"expr", c.expr},
                        {"expected", to_json(c.expected)},
                        {"actual", to_json(c.actual)},
                        {"strategies_agree", c.strategies_agree},
                        {"pass", c.pass}});
    files.push_back({{"file", f.path},
                     {"module", f.module},
                     {"status", f.status},
                     {"message", f.message},
                     {"universe_cycle", f.universe_cycle},
                     {"definitions", defs},
                     {"evals", evals},
                     {"canonicity_tests", canons},
                     {"millis", f.millis}});
  }
  return nlohmann::json{{"universe_mode", r.universe_mode},
                        {"files", files},
                        {"expectation_mismatches", r.expectation_mismatches},
                        {"ok", r.ok()}};
}

// ---------------------------------------------------------------------------
// Manifests: one module per line with an expected outcome, plus a mode line.
//   mode strict
//   Foundations.Generalities.uuu_core ok
//   Foundations.hlevel1.hProp_core universefail

struct Manifest {
  UniverseMode mode = UniverseMode::Strict;
  struct Entry {
    std::string module;
    std::string expected;  // "ok" | "universefail"
  };
  std::vector<Entry> files;
};

inline Manifest parse_manifest(const std::string& text) {
  Manifest m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (a == "mode") {
      ls >> b;
      m.mode = b == "off" ? UniverseMode::Off : UniverseMode::Strict;
      continue;
    }
    b = "ok";
    ls >> b;
    m.files.push_back({a, b});
  }
  return m;
}

// ---------------------------------------------------------------------------
// A loading session: one environment, one checker, one load path.

struct SessionConfig {
  uint64_t fuel = 10'000'000;
  bool transparent_all = false;
};

class Session {
 public:
  explicit Session(UniverseMode mode = UniverseMode::Strict,
                   SessionConfig config = {})
      : env_(mode), checker_(env_), config_(config) {}

  GlobalEnv& env() { return env_; }
  Checker& checker() { return checker_; }
  LoadPath& loadpath() { return loadpath_; }

  // Loads a module by dotted name (resolving through the load path),
  // including its Require Export closure.
  FileReport load_module(const std::string& dotted) {
    auto path = resolve_module(loadpath_, dotted);
    return load_file(path);
  }

  // Executes a file's commands in order. Stops at the first failing
  // definition, Coq-style; earlier registrations stay.
  FileReport load_file(const std::filesystem::path& path) {
    FileReport report;
    report.path = path.string();
    auto t0 = std::chrono::steady_clock::now();
    std::ifstream in(path);
    if (!in) {
      report.status = "error";
      report.message = "cannot open " + path.string();
      return report;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::vector<Command> cmds;
    try {
      cmds = parse_file(ss.str());
    } catch (const SyntaxError& e) {
      report.status = "error";
      report.message = e.what();
      return report;
    }
    for (auto& cmd : cmds) {
      if (!run_command(cmd, report)) break;
    }
    if (!report.module.empty()) env_.mark_module_loaded(report.module);
    report.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return report;
  }

  // Manifest checking: loads each module in order and compares outcomes
  // with the manifest's expectations.
  CheckReport check_manifest(const Manifest& m) {
    CheckReport report;
    report.universe_mode =
        env_.graph().mode() == UniverseMode::Off ? "off" : "strict";
    for (auto& entry : m.files) {
      FileReport fr;
      if (env_.module_loaded(entry.module)) continue;
      try {
        fr = load_module(entry.module);
      } catch (const ModuleError& e) {
        fr.status = "error";
        fr.message = e.what();
        fr.module = entry.module;
      }
      if (fr.status != entry.expected)
        report.expectation_mismatches.push_back(
            entry.module + ": expected " + entry.expected + ", got " +
            fr.status + (fr.message.empty() ? "" : " (" + fr.message + ")"));
      report.files.push_back(std::move(fr));
    }
    return report;
  }

 private:
  GlobalEnv env_;
  Checker checker_;
  LoadPath loadpath_;
  SessionConfig config_;

  // Returns false when the file must stop (failed definition).
  bool run_command(const Command& cmd, FileReport& report) {
    switch (cmd.kind) {
      case Command::Kind::LibraryDecl:
        report.module = cmd.dotted;
        return true;
      case Command::Kind::AddLoadPath:
        loadpath_.add(cmd.dotted, cmd.directory);
        return true;
      case Command::Kind::RequireExport: {
        if (env_.module_loaded(cmd.dotted)) return true;
        try {
          auto sub = load_module(cmd.dotted);
          if (sub.status != "ok") {
            report.status = "error";
            report.message = "required library " + cmd.dotted +
                             " failed to load: " + sub.message;
            return false;
          }
        } catch (const ModuleError& e) {
          report.status = "error";
          report.message = e.what();
          return false;
        }
        return true;
      }
      case Command::Kind::SetOpaque:
        if (!env_.set_opaque(cmd.name)) {
          report.status = "error";
          report.message = "Opaque: unknown constant " + cmd.name;
          return false;
        }
        checker_.reset_cache();
        return true;
      case Command::Kind::Definition:
      case Command::Kind::Postulate: {
        DefReport dr;
        dr.name = cmd.name;
        auto t0 = std::chrono::steady_clock::now();
        try {
          Command resolved = resolve_command(cmd, env_);
          checker_.register_command(resolved);
          dr.status = "ok";
          if (const GlobalDef* d = env_.find(cmd.name))
            dr.axioms.assign(d->axioms.begin(), d->axioms.end());
        } catch (const TypingError& e) {
          dr.status = "error";
          dr.message = e.what();
          report.message = cmd.name + ": " + e.what();
          if (e.kind == TypingError::Kind::Universe) {
            report.status = "universefail";
            if (e.universe)
              for (auto& c : e.universe->edges)
                report.universe_cycle.push_back(c.show() + " [" +
                                                c.provenance + "]");
          } else {
            report.status = "error";
          }
        } catch (const FuelExhausted& e) {
          dr.status = "fuel";
          dr.message = e.what();
          report.status = "error";
          report.message = cmd.name + ": " + e.what();
        } catch (const std::exception& e) {
          dr.status = "error";
          dr.message = e.what();
          report.status = "error";
          report.message = cmd.name + ": " + e.what();
        }
        dr.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        report.defs.push_back(dr);
        return dr.status == "ok";
      }
      case Command::Kind::Eval: {
        EvalReport er = run_eval(cmd);
        bool ok = er.status == "ok";
        report.evals.push_back(std::move(er));
        if (!ok && report.status == "ok") {
          report.status = "error";
          report.message = "Eval failed";
        }
        return ok;
      }
      case Command::Kind::CanonicityTest: {
        CanonReport cr = run_canonicity_test(cmd);
        bool ok = cr.pass;
        report.canonicity.push_back(std::move(cr));
        if (!ok && report.status == "ok") {
          report.status = "error";
          report.message = "CanonicityTest failed";
        }
        return ok;
      }
    }
    return true;
  }

  EvalReport run_eval(const Command& cmd) {
    EvalReport er;
    er.strategy = strategy_name(cmd.strategy);
    auto t0 = std::chrono::steady_clock::now();
    try {
      TermPtr t = resolve_term(cmd.body, env_);
      er.expr = pretty(t);
      Context ctx;
      Inferred got = checker_.infer(ctx, t);  // must be well-typed
      EvalOptions opt{cmd.strategy, config_.fuel, config_.transparent_all};
      auto r = normalize(env_, got.term, opt);
      er.normal_form = pretty(r.term);
      er.classification = classify(r.term);
      er.steps = r.steps;
    } catch (const FuelExhausted& e) {
      er.status = "fuel";
      er.message = e.what();
    } catch (const std::exception& e) {
      er.status = "error";
      er.message = e.what();
    }
    er.millis = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    return er;
  }

  CanonReport run_canonicity_test(const Command& cmd) {
    CanonReport cr;
    cr.expected = cmd.expected;
    try {
      TermPtr t = resolve_term(cmd.body, env_);
      cr.expr = pretty(t);
      Context ctx;
      Inferred got = checker_.infer(ctx, t);
      EvalOptions eager{Strategy::Compute, config_.fuel,
                        config_.transparent_all};
      EvalOptions lazy{Strategy::Lazy, config_.fuel,
                       config_.transparent_all};
      auto a = normalize(env_, got.term, eager);
      auto b = normalize(env_, got.term, lazy);
      cr.strategies_agree = struct_eq(a.term, b.term);
      cr.actual = classify(a.term);
      bool matches = cr.actual == cr.expected;
      // `stuck` with no names listed matches any stuck result
      if (cr.expected.kind == Classification::Kind::Stuck &&
          cr.expected.blockers.empty() &&
          cr.actual.kind == Classification::Kind::Stuck)
        matches = true;
      cr.pass = matches && cr.strategies_agree;
    } catch (const std::exception& e) {
      cr.pass = false;
      cr.message = e.what();
    }
    return cr;
  }
};

}  // namespace uvk

#endif  // UVK_LIBRARY_HPP
