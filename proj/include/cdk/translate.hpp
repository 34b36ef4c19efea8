#pragma once

// Translation of cd proof terms into il-bot proof terms: every occurrence of
// the axiom constant D[I] is replaced by an explicit proof of I built from
// case analysis at the dummy witness, with canonical closed inhabitants d^A
// supplied where a branch needs an arbitrary proof. Also a per-step
// simulation checker: each source reduction step must be matched by a
// nonempty reduction sequence between the translations.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdk/reduce.hpp"

namespace cdk {

// ---------------------------------------------------------------------------
// Alpha-canonical keys
// ---------------------------------------------------------------------------

// A string that is identical for alpha-equal values: binders are renamed to
// #0, #1, ... in traversal order. Used as a map key for the dummy cache and
// for visited-set deduplication in the simulation search.
namespace detail {
struct CanonEnv {
  std::vector<std::pair<std::string, std::string>> fo, pv;
  int counter = 0;

  std::string lookup(const std::vector<std::pair<std::string, std::string>>& env,
                     const std::string& name) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == name) return it->second;
    return name;
  }
  std::string push(std::vector<std::pair<std::string, std::string>>& env,
                   const std::string& name) {
    std::string c = "#" + std::to_string(counter++);
    env.emplace_back(name, c);
    return c;
  }
  void pop(std::vector<std::pair<std::string, std::string>>& env) { env.pop_back(); }
};

inline void canon(const Term& t, CanonEnv& env, std::string& out) {
  std::visit(overloaded{
                 [&](const Term::Var& v) { out += "v:" + env.lookup(env.fo, v.name) + ";"; },
                 [&](const Term::Cnst& c) { out += "c:" + c.name + ";"; },
                 [&](const Term::App& a) {
                   out += "f:" + a.fn + "(";
                   for (auto& m : a.args) canon(m, env, out);
                   out += ")";
                 },
             },
             t.node());
}

inline void canon(const Formula& f, CanonEnv& env, std::string& out) {
  std::visit(overloaded{
                 [&](const Formula::Atom& a) {
                   out += "P:" + a.pred + "(";
                   for (auto& m : a.args) canon(m, env, out);
                   out += ")";
                 },
                 [&](const Formula::Bottom&) { out += "bot;"; },
                 [&](const Formula::And& n) {
                   out += "&(";
                   canon(n.l, env, out);
                   canon(n.r, env, out);
                   out += ")";
                 },
                 [&](const Formula::Or& n) {
                   out += "|(";
                   canon(n.l, env, out);
                   canon(n.r, env, out);
                   out += ")";
                 },
                 [&](const Formula::Imp& n) {
                   out += "->(";
                   canon(n.l, env, out);
                   canon(n.r, env, out);
                   out += ")";
                 },
                 [&](const Formula::Forall& n) {
                   out += "A" + env.push(env.fo, n.var) + ".(";
                   canon(n.body, env, out);
                   out += ")";
                   env.pop(env.fo);
                 },
                 [&](const Formula::Exists& n) {
                   out += "E" + env.push(env.fo, n.var) + ".(";
                   canon(n.body, env, out);
                   out += ")";
                   env.pop(env.fo);
                 },
             },
             f.node());
}

inline void canon(const Proof& p, CanonEnv& env, std::string& out) {
  std::visit(
      overloaded{
          [&](const Proof::PVar& n) {
            out += "x:" + env.lookup(env.pv, n.name) + "^(";
            canon(n.ann, env, out);
            out += ")";
          },
          [&](const Proof::Lam& n) {
            out += "lam";
            canon(n.ann, env, out);
            out += env.push(env.pv, n.var) + ".(";
            canon(n.body, env, out);
            out += ")";
            env.pop(env.pv);
          },
          [&](const Proof::PApp& n) {
            out += "@(";
            canon(n.fn, env, out);
            canon(n.arg, env, out);
            out += ")";
          },
          [&](const Proof::Pair& n) {
            out += "pair(";
            canon(n.l, env, out);
            canon(n.r, env, out);
            out += ")";
          },
          [&](const Proof::Proj& n) {
            out += "proj" + std::to_string(n.idx) + "(";
            canon(n.body, env, out);
            out += ")";
          },
          [&](const Proof::Inj& n) {
            out += "inj" + std::to_string(n.idx) + "^(";
            canon(n.ann, env, out);
            out += ")(";
            canon(n.body, env, out);
            out += ")";
          },
          [&](const Proof::Case& n) {
            out += "case(";
            canon(n.scrut, env, out);
            out += ")[" + env.push(env.pv, n.lvar) + ".(";
            canon(n.lbranch, env, out);
            env.pop(env.pv);
            out += ")," + env.push(env.pv, n.rvar) + ".(";
            canon(n.rbranch, env, out);
            env.pop(env.pv);
            out += ")]";
          },
          [&](const Proof::FOLam& n) {
            out += "gen" + env.push(env.fo, n.var) + ".(";
            canon(n.body, env, out);
            out += ")";
            env.pop(env.fo);
          },
          [&](const Proof::FOApp& n) {
            out += "inst(";
            canon(n.body, env, out);
            canon(n.arg, env, out);
            out += ")";
          },
          [&](const Proof::ExIntro& n) {
            out += "pack^(";
            canon(n.ann, env, out);
            out += ")(";
            canon(n.witness, env, out);
            canon(n.body, env, out);
            out += ")";
          },
          [&](const Proof::ExElim& n) {
            out += "unpack(";
            canon(n.scrut, env, out);
            out += ")[" + env.push(env.fo, n.fovar) + "," + env.push(env.pv, n.pvar) +
                   ".(";
            canon(n.body, env, out);
            env.pop(env.pv);
            env.pop(env.fo);
            out += ")]";
          },
          [&](const Proof::CDAxiom& n) {
            out += "D^(";
            canon(n.inst, env, out);
            out += ")";
          },
          [&](const Proof::Efq& n) {
            out += "efq^(";
            canon(n.target, env, out);
            out += ")(";
            canon(n.body, env, out);
            out += ")";
          },
          [&](const Proof::FalsityConst&) { out += "F;"; },
      },
      p.node());
}
}  // namespace detail

inline std::string alpha_canon_key(const Formula& f) {
  detail::CanonEnv env;
  std::string out;
  detail::canon(f, env, out);
  return out;
}
inline std::string alpha_canon_key(const Proof& p) {
  detail::CanonEnv env;
  std::string out;
  detail::canon(p, env, out);
  return out;
}

// ---------------------------------------------------------------------------
// Dummy inhabitants
// ---------------------------------------------------------------------------

// Builds the canonical closed il-bot inhabitant of A: atoms are filled by
// efq over F, conjunctions by pairs, disjunctions lean left, implications
// ignore their argument, universals generalize, existentials pick dum.
inline Proof dummy_term(const Formula& A) {
  return std::visit(
      overloaded{
          [&](const Formula::Atom&) { return p_efq(A, p_falsity()); },
          [&](const Formula::Bottom&) { return p_falsity(); },
          [&](const Formula::And& n) {
            return p_pair(dummy_term(n.l), dummy_term(n.r));
          },
          [&](const Formula::Or& n) { return p_inj(0, dummy_term(n.l), A); },
          [&](const Formula::Imp& n) {
            return p_lam("x", n.l, dummy_term(n.r));
          },
          [&](const Formula::Forall& n) {
            return p_folam(n.var, dummy_term(n.body));
          },
          [&](const Formula::Exists& n) {
            return p_pack(t_dum(), dummy_term(fo_subst(n.body, t_dum(), n.var)), A);
          },
      },
      A.node());
}

// Memo keyed up to alpha-equivalence.
class DummyCache {
 public:
  const Proof& get(const Formula& A) {
    std::string key = alpha_canon_key(A);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), dummy_term(A)).first;
    return it->second;
  }

 private:
  std::map<std::string, Proof> cache_;
};

// ---------------------------------------------------------------------------
// Axiom translation
// ---------------------------------------------------------------------------

// For I = forall a. (A | B) -> (forall a. A) | B, produces the il-bot proof
//
//   fun (f : forall a. (A | B)) =>
//     case f @ dum of {
//       inl z => inl[(forall a. A) | B]
//                    (gen a => case f @ a of { inl x => x | inr y => d^A })
//     | inr z => inr[(forall a. A) | B] z
//     }
//
// The binders f, z, x, y are chosen fresh for the names of I.
inline Result<Proof> translate_axiom(const Formula& I, DummyCache& dummies) {
  if (!check_cd_instance(I))
    return TypeError{ErrKind::BadCDInstance,
                     {},
                     print(I) + " does not have the constant-domain axiom shape",
                     std::nullopt,
                     std::nullopt};
  auto* imp = as<Formula::Imp>(I);
  auto* all = as<Formula::Forall>(imp->l);
  auto* disj = as<Formula::Or>(all->body);
  const std::string& a = all->var;
  const Formula& A = disj->l;
  const Formula& B = disj->r;
  const Formula& concl = imp->r;

  NameSet avoid = fo_all_names(I);
  std::string f = fresh_name("f", avoid);
  avoid.insert(f);
  std::string z = fresh_name("z", avoid);
  avoid.insert(z);
  std::string x = fresh_name("x", avoid);
  avoid.insert(x);
  std::string y = fresh_name("y", avoid);

  Proof fvar = p_var(f, imp->l);
  Proof inner = p_case(p_foapp(fvar, t_var(a)), x, p_var(x, A), y, dummies.get(A));
  Proof left = p_inj(0, p_folam(a, inner), concl);
  Proof right = p_inj(1, p_var(z, fo_subst(B, t_dum(), a)), concl);
  Proof body = p_case(p_foapp(fvar, t_dum()), z, left, z, right);
  return p_lam(f, imp->l, body);
}

inline Result<Proof> translate_axiom(const Formula& I) {
  DummyCache dummies;
  return translate_axiom(I, dummies);
}

// ---------------------------------------------------------------------------
// Term translation
// ---------------------------------------------------------------------------

// Homomorphic replacement of every D[I] by its translation; everything else
// is rebuilt unchanged. The result never contains a CDAxiom node and checks
// in il-bot mode at the original type.
inline Result<Proof> translate(const Proof& t, DummyCache& dummies) {
  auto rec = [&](const Proof& s) { return translate(s, dummies); };
  return std::visit(
      overloaded{
          [&](const Proof::PVar&) -> Result<Proof> { return t; },
          [&](const Proof::Lam& n) -> Result<Proof> {
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_lam(n.var, n.ann, *b);
          },
          [&](const Proof::PApp& n) -> Result<Proof> {
            auto fn = rec(n.fn);
            if (!fn) return fn.error();
            auto arg = rec(n.arg);
            if (!arg) return arg.error();
            return p_app(*fn, *arg);
          },
          [&](const Proof::Pair& n) -> Result<Proof> {
            auto l = rec(n.l);
            if (!l) return l.error();
            auto r = rec(n.r);
            if (!r) return r.error();
            return p_pair(*l, *r);
          },
          [&](const Proof::Proj& n) -> Result<Proof> {
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_proj(*b, n.idx);
          },
          [&](const Proof::Inj& n) -> Result<Proof> {
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_inj(n.idx, *b, n.ann);
          },
          [&](const Proof::Case& n) -> Result<Proof> {
            auto s = rec(n.scrut);
            if (!s) return s.error();
            auto l = rec(n.lbranch);
            if (!l) return l.error();
            auto r = rec(n.rbranch);
            if (!r) return r.error();
            return p_case(*s, n.lvar, *l, n.rvar, *r);
          },
          [&](const Proof::FOLam& n) -> Result<Proof> {
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_folam(n.var, *b);
          },
          [&](const Proof::FOApp& n) -> Result<Proof> {
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_foapp(*b, n.arg);
          },
          [&](const Proof::ExIntro& n) -> Result<Proof> {
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_pack(n.witness, *b, n.ann);
          },
          [&](const Proof::ExElim& n) -> Result<Proof> {
            auto s = rec(n.scrut);
            if (!s) return s.error();
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_unpack(*s, n.fovar, n.pvar, *b);
          },
          [&](const Proof::CDAxiom& n) -> Result<Proof> {
            return translate_axiom(n.inst, dummies);
          },
          [&](const Proof::Efq& n) -> Result<Proof> {
            auto b = rec(n.body);
            if (!b) return b.error();
            return p_efq(n.target, *b);
          },
          [&](const Proof::FalsityConst&) -> Result<Proof> { return t; },
      },
      t.node());
}

inline Result<Proof> translate(const Proof& t) {
  DummyCache dummies;
  return translate(t, dummies);
}

inline bool contains_cd_axiom(const Proof& t) {
  if (as<Proof::CDAxiom>(t)) return true;
  for (const Proof& c : proof_children(t))
    if (contains_cd_axiom(c)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Simulation of source steps by target reduction
// ---------------------------------------------------------------------------

struct SimulationReport {
  bool simulated = false;
  int length = 0;             // number of il-bot steps matching the one cd step
  std::string strategy;       // "leftmost-outermost" or "breadth-search"
  std::string message;        // diagnostic when not simulated
};

// Given one reduction step s of a cd term, searches for a nonempty il-bot
// reduction sequence from translate(s.before) to a term alpha-equal to
// translate(s.after). The deterministic leftmost-outermost walk is tried
// first; if it runs past the target, a breadth-limited search over all
// single-step successors takes over.
inline SimulationReport check_simulation(const Step& s, int lo_fuel = 128,
                                         int bfs_depth = 8,
                                         size_t frontier_cap = 4096) {
  SimulationReport rep;
  DummyCache dummies;
  auto src = translate(s.before, dummies);
  auto dst = translate(s.after, dummies);
  if (!src || !dst) {
    rep.message = "translation failed: " +
                  (src ? dst.error().render() : src.error().render());
    return rep;
  }
  const std::string target_key = alpha_canon_key(*dst);

  // Deterministic walk.
  Proof cur = *src;
  for (int k = 1; k <= lo_fuel; ++k) {
    auto st = step(cur);
    if (!st) break;
    cur = st->after;
    if (alpha_canon_key(cur) == target_key) {
      rep.simulated = true;
      rep.length = k;
      rep.strategy = "leftmost-outermost";
      return rep;
    }
  }

  // Breadth-limited search over all single-step successors.
  std::deque<std::pair<Proof, int>> frontier;
  std::map<std::string, bool> seen;
  frontier.emplace_back(*src, 0);
  seen[alpha_canon_key(*src)] = true;
  while (!frontier.empty()) {
    auto [term, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= bfs_depth) continue;
    for (auto& [path, tag] : find_redexes(term)) {
      (void)tag;
      Proof next = replace_at(term, path, contract(*subterm_at(term, path)));
      std::string key = alpha_canon_key(next);
      if (key == target_key) {
        rep.simulated = true;
        rep.length = depth + 1;
        rep.strategy = "breadth-search";
        return rep;
      }
      if (seen.size() < frontier_cap && !seen.count(key)) {
        seen[key] = true;
        frontier.emplace_back(next, depth + 1);
      }
    }
  }
  rep.message = "no il-bot reduction sequence found within the search bounds";
  return rep;
}

}  // namespace cdk
