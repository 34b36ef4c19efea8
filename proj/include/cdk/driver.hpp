#pragma once

// Command implementations behind the cdk binary: check, normalize, translate,
// extract, selftest. Each takes streams and returns the process exit code
// (0 success, 1 type/shape error, 2 parse error, 3 fuel exhausted) so the
// whole surface is testable without spawning processes.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdk/extract.hpp"
#include "cdk/parse.hpp"
#include "cdk/translate.hpp"

namespace cdk {

inline constexpr const char* kFuelEnvVar = "CDK_MAX_FUEL";

// The requested fuel, capped by the CDK_MAX_FUEL environment variable if set.
inline int effective_fuel(int requested) {
  if (const char* cap = std::getenv(kFuelEnvVar)) {
    int c = std::atoi(cap);
    if (c > 0) return std::min(requested, c);
  }
  return requested;
}

namespace detail {

inline std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads and parses a file; on failure prints a message and returns the exit
// code, otherwise fills `out`.
inline std::optional<int> load(const std::string& path, SourceFile& out,
                               std::ostream& err) {
  auto text = slurp(path);
  if (!text) {
    err << path << ": cannot read file\n";
    return 1;
  }
  ParseResult r = parse_source(*text);
  if (r.parse_error) {
    err << path << ":" << r.parse_error->line << ":" << r.parse_error->col
        << ": parse error: expected " << r.parse_error->expected << "\n";
    return 2;
  }
  if (r.type_error) {
    err << path << ": " << r.type_error->render() << "\n";
    return 1;
  }
  out = std::move(*r.file);
  return std::nullopt;
}

// The definition a command operates on: the target of the last matching
// directive, or the last definition when the file has none.
inline const Definition* select_target(const SourceFile& f, Directive::Kind kind) {
  const Definition* target = nullptr;
  for (auto& d : f.directives)
    if (d.kind == kind) target = f.find_def(d.target);
  if (!target && !f.defs.empty()) target = &f.defs.back();
  return target;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

inline int run_check(const std::string& path, std::ostream& out, std::ostream& err) {
  SourceFile f;
  if (auto code = detail::load(path, f, err)) return *code;
  int failures = 0;
  for (auto& d : f.defs) {
    if (d.ok()) {
      out << d.name << ": ok\n";
    } else {
      out << d.name << ": " << d.error->render() << "\n";
      ++failures;
    }
  }
  if (f.defs.empty()) out << path << ": no definitions\n";
  return failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// normalize
// ---------------------------------------------------------------------------

inline int run_normalize(const std::string& path, int fuel, bool with_trace,
                         bool as_json, std::ostream& out, std::ostream& err) {
  SourceFile f;
  if (auto code = detail::load(path, f, err)) return *code;
  const Definition* d = detail::select_target(f, Directive::Normalize);
  if (!d) {
    err << path << ": no definitions\n";
    return 1;
  }
  if (!d->ok()) {
    err << path << ": " << d->name << ": " << d->error->render() << "\n";
    return 1;
  }
  Trace tr = normalize(*d->term, effective_fuel(fuel));
  if (tr.fuel_exhausted) {
    err << path << ": " << d->name << ": fuel exhausted after "
        << tr.steps.size() << " steps\n";
    return 3;
  }
  if (as_json) {
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    int n = 0;
    for (const Step& s : tr.steps) {
      steps.push_back({{"step", ++n},
                       {"rule", rule_name(s.rule)},
                       {"path", path_str(s.path)},
                       {"term", print(s.after)}});
    }
    out << steps.dump(2) << "\n";
  } else {
    if (with_trace) {
      int n = 0;
      for (const Step& s : tr.steps)
        out << "step " << ++n << ": " << rule_name(s.rule) << " at "
            << path_str(s.path) << "\n";
    }
    out << "normal form: " << print(tr.last()) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// translate
// ---------------------------------------------------------------------------

inline int run_translate(const std::string& path,
                         const std::optional<std::string>& out_path,
                         std::ostream& out, std::ostream& err) {
  SourceFile f;
  if (auto code = detail::load(path, f, err)) return *code;
  for (auto& d : f.defs) {
    if (!d.ok()) {
      err << path << ": " << d.name << ": " << d.error->render() << "\n";
      return 1;
    }
  }
  SourceFile result;
  result.mode = Mode::IL_BOT;
  result.sig = f.sig;
  result.directives = f.directives;
  DummyCache dummies;
  for (auto& d : f.defs) {
    auto tr = translate(*d.term, dummies);
    if (!tr) {
      err << path << ": " << d.name << ": " << tr.error().render() << "\n";
      return 1;
    }
    // The translation must land at the same type in il-bot mode; verify
    // rather than trust, since the output is handed to the user as proof.
    auto re = check(f.sig, Context{}, *tr, d.type, Mode::IL_BOT);
    if (!re.ok()) {
      err << path << ": " << d.name
          << ": translated term failed re-checking: " << re.error().render() << "\n";
      return 1;
    }
    result.defs.push_back(Definition{d.name, d.type, *tr, std::nullopt,
                                     std::nullopt, d.line});
  }
  std::string text = print_source(result);
  if (out_path) {
    std::ofstream o(*out_path, std::ios::binary);
    if (!o) {
      err << *out_path << ": cannot write file\n";
      return 1;
    }
    o << text;
  } else {
    out << text;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

inline int run_extract(const std::string& path, int fuel, std::ostream& out,
                       std::ostream& err) {
  SourceFile f;
  if (auto code = detail::load(path, f, err)) return *code;
  const Definition* d = detail::select_target(f, Directive::Extract);
  if (!d) {
    err << path << ": no definitions\n";
    return 1;
  }
  if (!d->ok()) {
    err << path << ": " << d->name << ": " << d->error->render() << "\n";
    return 1;
  }
  Trace tr = normalize(*d->term, effective_fuel(fuel));
  if (tr.fuel_exhausted) {
    err << path << ": " << d->name << ": fuel exhausted after "
        << tr.steps.size() << " steps\n";
    return 3;
  }
  const Proof& nf = tr.last();
  if (as<Formula::Exists>(d->type)) {
    auto w = extract_witness(nf);
    if (!w) {
      err << path << ": " << d->name << ": " << w.error().render() << "\n";
      return 1;
    }
    out << "witness: " << print(w->witness) << "\n";
    out << "body: " << print(w->body) << "\n";
    return 0;
  }
  if (as<Formula::Or>(d->type)) {
    auto w = extract_disjunct(nf);
    if (!w) {
      err << path << ": " << d->name << ": " << w.error().render() << "\n";
      return 1;
    }
    out << "side: " << w->side << "\n";
    out << "body: " << print(w->body) << "\n";
    return 0;
  }
  if (as<Formula::Forall>(d->type)) {
    auto w = extract_universal(nf);
    if (!w) {
      err << path << ": " << d->name << ": " << w.error().render() << "\n";
      return 1;
    }
    out << "var: " << w->var << "\n";
    out << "body: " << print(w->body) << "\n";
    return 0;
  }
  err << path << ": " << d->name << ": type " << print(d->type)
      << " is not an existential, disjunction, or universal\n";
  return 1;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

namespace detail {

struct FileVerdict {
  int defs = 0;
  int steps = 0;
  std::vector<std::string> failures;
};

// Runs the whole invariant suite over one parsed file: expectations,
// subject-reduction replay, translation typing, dummy soundness, per-step
// simulation, and normal-form shapes.
inline FileVerdict selftest_file(const SourceFile& f, int fuel) {
  FileVerdict v;
  DummyCache dummies;
  for (auto& d : f.defs) {
    ++v.defs;
    bool expect_ok = !d.expect || d.expect->ok;
    if (expect_ok && !d.ok()) {
      v.failures.push_back(d.name + ": expected ok, got " + d.error->render());
      continue;
    }
    if (!expect_ok) {
      if (d.ok()) {
        v.failures.push_back(d.name + ": expected " + d.expect->err_kind +
                             ", but it checked");
      } else if (err_kind_name(d.error->kind) != d.expect->err_kind) {
        v.failures.push_back(d.name + ": expected " + d.expect->err_kind + ", got " +
                             d.error->render());
      }
      continue;
    }

    // Subject reduction, free-variable monotonicity, termination.
    auto rep = replay_subject_reduction(f.sig, Context{}, *d.term, f.mode, fuel);
    if (!rep.ok) {
      v.failures.push_back(d.name + ": " + rep.message);
      continue;
    }
    v.steps += (int)rep.trace.steps.size();

    // Translation types at the same formula in il-bot mode and is D-free.
    auto tr = translate(*d.term, dummies);
    if (!tr) {
      v.failures.push_back(d.name + ": translation failed: " + tr.error().render());
      continue;
    }
    if (contains_cd_axiom(*tr)) {
      v.failures.push_back(d.name + ": translation still contains D");
      continue;
    }
    auto re = check(f.sig, Context{}, *tr, d.type, Mode::IL_BOT);
    if (!re.ok()) {
      v.failures.push_back(d.name + ": translation failed re-checking: " +
                           re.error().render());
      continue;
    }

    // The canonical dummy inhabitant of the definition's type.
    Proof dummy = dummy_term(d.type);
    if (!proof_free_vars(dummy).empty()) {
      v.failures.push_back(d.name + ": dummy inhabitant is not closed");
      continue;
    }
    auto dc = check(f.sig, Context{}, dummy, d.type, Mode::IL_BOT);
    if (!dc.ok()) {
      v.failures.push_back(d.name + ": dummy inhabitant failed checking: " +
                           dc.error().render());
      continue;
    }

    // Every reduction step is simulated by a nonempty target-side sequence.
    for (const Step& s : rep.trace.steps) {
      SimulationReport sim = check_simulation(s);
      if (!sim.simulated || sim.length < 1) {
        v.failures.push_back(d.name + ": step " + rule_name(s.rule) + " at " +
                             path_str(s.path) + " not simulated: " + sim.message);
        break;
      }
    }

    // Closed normal proofs of quantified/disjunctive type must have their
    // introduction shape — extraction relies on it being total here.
    const Proof& nf = rep.trace.last();
    if (proof_free_vars(nf).empty()) {
      if (as<Formula::Exists>(d.type)) {
        auto w = extract_witness(nf);
        if (!w) {
          v.failures.push_back(d.name + ": " + w.error().render());
          continue;
        }
      } else if (as<Formula::Or>(d.type)) {
        auto w = extract_disjunct(nf);
        if (!w) {
          v.failures.push_back(d.name + ": " + w.error().render());
          continue;
        }
      } else if (as<Formula::Forall>(d.type)) {
        auto w = extract_universal(nf);
        if (!w) {
          v.failures.push_back(d.name + ": " + w.error().render());
          continue;
        }
      }
    }
  }
  return v;
}

}  // namespace detail

inline int run_selftest(const std::string& dir, int fuel, std::ostream& out,
                        std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  std::error_code ec;
  for (auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".cd") paths.push_back(entry.path().string());
  }
  if (ec) {
    err << dir << ": cannot read directory\n";
    return 1;
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    err << dir << ": no .cd files\n";
    return 1;
  }
  int fuel_eff = effective_fuel(fuel);
  int ok_files = 0;
  for (auto& p : paths) {
    SourceFile f;
    std::ostringstream load_err;
    if (auto code = detail::load(p, f, load_err)) {
      (void)code;
      out << p << ": FAIL: " << load_err.str();
      continue;
    }
    detail::FileVerdict v = detail::selftest_file(f, fuel_eff);
    if (v.failures.empty()) {
      out << p << ": ok (" << v.defs << " definitions, " << v.steps << " steps)\n";
      ++ok_files;
    } else {
      for (auto& msg : v.failures) out << p << ": FAIL: " << msg << "\n";
    }
  }
  out << "selftest: " << ok_files << "/" << paths.size() << " files ok\n";
  return ok_files == (int)paths.size() ? 0 : 1;
}

}  // namespace cdk
