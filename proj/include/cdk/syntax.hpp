#pragma once

// Three-level syntax for first-order natural deduction proof terms:
// individual terms, formulas, and annotated proof terms, together with
// free-variable computation, capture-avoiding substitution and
// alpha-equivalence. All values are immutable; operations are pure.

#include <cassert>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cdk {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using NameSet = std::set<std::string>;

// Deterministic freshening: prime the base name until it avoids the set.
inline std::string fresh_name(const std::string& base, const NameSet& avoid) {
  std::string n = base;
  while (avoid.count(n)) n += '\'';
  return n;
}

// ---------------------------------------------------------------------------
// First-order (individual) terms
// ---------------------------------------------------------------------------

class Term {
 public:
  struct Var {
    std::string name;
  };
  struct Cnst {
    std::string name;
  };
  struct App {
    std::string fn;
    std::vector<Term> args;
  };
  using Node = std::variant<Var, Cnst, App>;

  explicit Term(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

inline Term t_var(std::string name) { return Term(Term::Var{std::move(name)}); }
inline Term t_const(std::string name) { return Term(Term::Cnst{std::move(name)}); }
inline Term t_app(std::string fn, std::vector<Term> args) {
  return Term(Term::App{std::move(fn), std::move(args)});
}
// The fixed constant used by the second D-reduction and as default witness.
inline Term t_dum() { return t_const("dum"); }

// First-order terms contain no binders, so structural equality is the
// only equality they have.
inline bool operator==(const Term& a, const Term& b) {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) {
            auto* w = std::get_if<Term::Var>(&b.node());
            return w && w->name == v.name;
          },
          [&](const Term::Cnst& c) {
            auto* d = std::get_if<Term::Cnst>(&b.node());
            return d && d->name == c.name;
          },
          [&](const Term::App& f) {
            auto* g = std::get_if<Term::App>(&b.node());
            if (!g || g->fn != f.fn || g->args.size() != f.args.size()) return false;
            for (size_t i = 0; i < f.args.size(); ++i)
              if (!(f.args[i] == g->args[i])) return false;
            return true;
          },
      },
      a.node());
}
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

class Formula {
 public:
  struct Atom {
    std::string pred;
    std::vector<Term> args;
  };
  struct Bottom {};
  struct And;
  struct Or;
  struct Imp;
  struct Forall;
  struct Exists;
  using Node = std::variant<Atom, Bottom, And, Or, Imp, Forall, Exists>;

  explicit Formula(Node n);

  const Node& node() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Formula::And {
  Formula l, r;
};
struct Formula::Or {
  Formula l, r;
};
struct Formula::Imp {
  Formula l, r;
};
struct Formula::Forall {
  std::string var;
  Formula body;
};
struct Formula::Exists {
  std::string var;
  Formula body;
};

inline Formula::Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline const Formula::Node& Formula::node() const { return *node_; }

inline Formula f_atom(std::string pred, std::vector<Term> args = {}) {
  return Formula(Formula::Atom{std::move(pred), std::move(args)});
}
inline Formula f_bot() { return Formula(Formula::Bottom{}); }
inline Formula f_and(Formula l, Formula r) {
  return Formula(Formula::And{std::move(l), std::move(r)});
}
inline Formula f_or(Formula l, Formula r) {
  return Formula(Formula::Or{std::move(l), std::move(r)});
}
inline Formula f_imp(Formula l, Formula r) {
  return Formula(Formula::Imp{std::move(l), std::move(r)});
}
// Negation is a shorthand for A -> bot; it has no constructor of its own.
inline Formula f_neg(Formula a) { return f_imp(std::move(a), f_bot()); }
inline Formula f_forall(std::string var, Formula body) {
  return Formula(Formula::Forall{std::move(var), std::move(body)});
}
inline Formula f_exists(std::string var, Formula body) {
  return Formula(Formula::Exists{std::move(var), std::move(body)});
}

inline bool is_atomic(const Formula& f) {
  return std::holds_alternative<Formula::Atom>(f.node()) ||
         std::holds_alternative<Formula::Bottom>(f.node());
}
inline bool is_bottom(const Formula& f) {
  return std::holds_alternative<Formula::Bottom>(f.node());
}

// ---------------------------------------------------------------------------
// Proof terms
// ---------------------------------------------------------------------------

class Proof {
 public:
  struct PVar {
    std::string name;
    Formula ann;
  };
  struct Lam;
  struct PApp;
  struct Pair;
  struct Proj;
  struct Inj;
  struct Case;
  struct FOLam;
  struct FOApp;
  struct ExIntro;
  struct ExElim;
  struct CDAxiom {
    Formula inst;
  };
  struct Efq;
  struct FalsityConst {};
  using Node = std::variant<PVar, Lam, PApp, Pair, Proj, Inj, Case, FOLam, FOApp,
                            ExIntro, ExElim, CDAxiom, Efq, FalsityConst>;

  explicit Proof(Node n);

  const Node& node() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Proof::Lam {
  std::string var;
  Formula ann;  // domain of the abstraction
  Proof body;
};
struct Proof::PApp {
  Proof fn, arg;
};
struct Proof::Pair {
  Proof l, r;
};
struct Proof::Proj {
  Proof body;
  int idx;  // 0 or 1
};
struct Proof::Inj {
  int idx;  // 0 or 1
  Proof body;
  Formula ann;  // the whole disjunction being introduced
};
struct Proof::Case {
  Proof scrut;
  std::string lvar;
  Proof lbranch;
  std::string rvar;
  Proof rbranch;
};
struct Proof::FOLam {
  std::string var;  // first-order variable
  Proof body;
};
struct Proof::FOApp {
  Proof body;
  Term arg;
};
struct Proof::ExIntro {
  Term witness;
  Proof body;
  Formula ann;  // the whole existential being introduced
};
struct Proof::ExElim {
  Proof scrut;
  std::string fovar;
  std::string pvar;
  Proof body;
};
struct Proof::Efq {
  Formula target;  // must be atomic
  Proof body;
};

inline Proof::Proof(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline const Proof::Node& Proof::node() const { return *node_; }

inline Proof p_var(std::string x, Formula ann) {
  return Proof(Proof::PVar{std::move(x), std::move(ann)});
}
inline Proof p_lam(std::string x, Formula ann, Proof body) {
  return Proof(Proof::Lam{std::move(x), std::move(ann), std::move(body)});
}
inline Proof p_app(Proof fn, Proof arg) {
  return Proof(Proof::PApp{std::move(fn), std::move(arg)});
}
inline Proof p_pair(Proof l, Proof r) {
  return Proof(Proof::Pair{std::move(l), std::move(r)});
}
inline Proof p_proj(Proof t, int idx) {
  assert(idx == 0 || idx == 1);
  return Proof(Proof::Proj{std::move(t), idx});
}
inline Proof p_inj(int idx, Proof t, Formula ann) {
  assert(idx == 0 || idx == 1);
  return Proof(Proof::Inj{idx, std::move(t), std::move(ann)});
}
inline Proof p_case(Proof scrut, std::string lvar, Proof lbranch, std::string rvar,
                    Proof rbranch) {
  return Proof(Proof::Case{std::move(scrut), std::move(lvar), std::move(lbranch),
                           std::move(rvar), std::move(rbranch)});
}
inline Proof p_folam(std::string var, Proof body) {
  return Proof(Proof::FOLam{std::move(var), std::move(body)});
}
inline Proof p_foapp(Proof t, Term arg) {
  return Proof(Proof::FOApp{std::move(t), std::move(arg)});
}
inline Proof p_pack(Term witness, Proof body, Formula ann) {
  return Proof(Proof::ExIntro{std::move(witness), std::move(body), std::move(ann)});
}
inline Proof p_unpack(Proof scrut, std::string fovar, std::string pvar, Proof body) {
  return Proof(Proof::ExElim{std::move(scrut), std::move(fovar), std::move(pvar),
                             std::move(body)});
}
inline Proof p_cd(Formula inst) { return Proof(Proof::CDAxiom{std::move(inst)}); }
inline Proof p_efq(Formula target, Proof body) {
  return Proof(Proof::Efq{std::move(target), std::move(body)});
}
inline Proof p_falsity() { return Proof(Proof::FalsityConst{}); }

template <class T>
const T* as(const Proof& p) {
  return std::get_if<T>(&p.node());
}
template <class T>
const T* as(const Formula& f) {
  return std::get_if<T>(&f.node());
}
template <class T>
const T* as(const Term& t) {
  return std::get_if<T>(&t.node());
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

namespace detail {
inline void fo_fv(const Term& t, NameSet& out) {
  std::visit(overloaded{
                 [&](const Term::Var& v) { out.insert(v.name); },
                 [&](const Term::Cnst&) {},
                 [&](const Term::App& a) {
                   for (auto& m : a.args) fo_fv(m, out);
                 },
             },
             t.node());
}

inline void fo_fv(const Formula& f, NameSet& out) {
  std::visit(overloaded{
                 [&](const Formula::Atom& a) {
                   for (auto& m : a.args) fo_fv(m, out);
                 },
                 [&](const Formula::Bottom&) {},
                 [&](const Formula::And& n) { fo_fv(n.l, out); fo_fv(n.r, out); },
                 [&](const Formula::Or& n) { fo_fv(n.l, out); fo_fv(n.r, out); },
                 [&](const Formula::Imp& n) { fo_fv(n.l, out); fo_fv(n.r, out); },
                 [&](const Formula::Forall& n) {
                   NameSet inner;
                   fo_fv(n.body, inner);
                   inner.erase(n.var);
                   out.insert(inner.begin(), inner.end());
                 },
                 [&](const Formula::Exists& n) {
                   NameSet inner;
                   fo_fv(n.body, inner);
                   inner.erase(n.var);
                   out.insert(inner.begin(), inner.end());
                 },
             },
             f.node());
}

inline void fo_fv(const Proof& p, NameSet& out) {
  std::visit(
      overloaded{
          [&](const Proof::PVar& n) { fo_fv(n.ann, out); },
          [&](const Proof::Lam& n) { fo_fv(n.ann, out); fo_fv(n.body, out); },
          [&](const Proof::PApp& n) { fo_fv(n.fn, out); fo_fv(n.arg, out); },
          [&](const Proof::Pair& n) { fo_fv(n.l, out); fo_fv(n.r, out); },
          [&](const Proof::Proj& n) { fo_fv(n.body, out); },
          [&](const Proof::Inj& n) { fo_fv(n.ann, out); fo_fv(n.body, out); },
          [&](const Proof::Case& n) {
            fo_fv(n.scrut, out);
            fo_fv(n.lbranch, out);
            fo_fv(n.rbranch, out);
          },
          [&](const Proof::FOLam& n) {
            NameSet inner;
            fo_fv(n.body, inner);
            inner.erase(n.var);
            out.insert(inner.begin(), inner.end());
          },
          [&](const Proof::FOApp& n) { fo_fv(n.body, out); fo_fv(n.arg, out); },
          [&](const Proof::ExIntro& n) {
            fo_fv(n.witness, out);
            fo_fv(n.body, out);
            fo_fv(n.ann, out);
          },
          [&](const Proof::ExElim& n) {
            fo_fv(n.scrut, out);
            NameSet inner;
            fo_fv(n.body, inner);
            inner.erase(n.fovar);
            out.insert(inner.begin(), inner.end());
          },
          [&](const Proof::CDAxiom& n) { fo_fv(n.inst, out); },
          [&](const Proof::Efq& n) { fo_fv(n.target, out); fo_fv(n.body, out); },
          [&](const Proof::FalsityConst&) {},
      },
      p.node());
}
}  // namespace detail

inline NameSet fo_free_vars(const Term& t) {
  NameSet out;
  detail::fo_fv(t, out);
  return out;
}
inline NameSet fo_free_vars(const Formula& f) {
  NameSet out;
  detail::fo_fv(f, out);
  return out;
}
inline NameSet fo_free_vars(const Proof& p) {
  NameSet out;
  detail::fo_fv(p, out);
  return out;
}

inline NameSet proof_free_vars(const Proof& p) {
  NameSet out;
  std::visit(
      overloaded{
          [&](const Proof::PVar& n) { out.insert(n.name); },
          [&](const Proof::Lam& n) {
            NameSet inner = proof_free_vars(n.body);
            inner.erase(n.var);
            out.insert(inner.begin(), inner.end());
          },
          [&](const Proof::PApp& n) {
            auto a = proof_free_vars(n.fn), b = proof_free_vars(n.arg);
            out.insert(a.begin(), a.end());
            out.insert(b.begin(), b.end());
          },
          [&](const Proof::Pair& n) {
            auto a = proof_free_vars(n.l), b = proof_free_vars(n.r);
            out.insert(a.begin(), a.end());
            out.insert(b.begin(), b.end());
          },
          [&](const Proof::Proj& n) { out = proof_free_vars(n.body); },
          [&](const Proof::Inj& n) { out = proof_free_vars(n.body); },
          [&](const Proof::Case& n) {
            auto s = proof_free_vars(n.scrut);
            out.insert(s.begin(), s.end());
            auto l = proof_free_vars(n.lbranch);
            l.erase(n.lvar);
            out.insert(l.begin(), l.end());
            auto r = proof_free_vars(n.rbranch);
            r.erase(n.rvar);
            out.insert(r.begin(), r.end());
          },
          [&](const Proof::FOLam& n) { out = proof_free_vars(n.body); },
          [&](const Proof::FOApp& n) { out = proof_free_vars(n.body); },
          [&](const Proof::ExIntro& n) { out = proof_free_vars(n.body); },
          [&](const Proof::ExElim& n) {
            auto s = proof_free_vars(n.scrut);
            out.insert(s.begin(), s.end());
            auto b = proof_free_vars(n.body);
            b.erase(n.pvar);
            out.insert(b.begin(), b.end());
          },
          [&](const Proof::CDAxiom&) {},
          [&](const Proof::Efq& n) { out = proof_free_vars(n.body); },
          [&](const Proof::FalsityConst&) {},
      },
      p.node());
  return out;
}

// All first-order names occurring anywhere (free, bound or as a binder).
// Used to pick fresh names that cannot collide with anything in sight.
namespace detail {
inline void fo_names(const Term& t, NameSet& out) {
  std::visit(overloaded{
                 [&](const Term::Var& v) { out.insert(v.name); },
                 [&](const Term::Cnst&) {},
                 [&](const Term::App& a) {
                   for (auto& m : a.args) fo_names(m, out);
                 },
             },
             t.node());
}
inline void fo_names(const Formula& f, NameSet& out) {
  std::visit(overloaded{
                 [&](const Formula::Atom& a) {
                   for (auto& m : a.args) fo_names(m, out);
                 },
                 [&](const Formula::Bottom&) {},
                 [&](const Formula::And& n) { fo_names(n.l, out); fo_names(n.r, out); },
                 [&](const Formula::Or& n) { fo_names(n.l, out); fo_names(n.r, out); },
                 [&](const Formula::Imp& n) { fo_names(n.l, out); fo_names(n.r, out); },
                 [&](const Formula::Forall& n) {
                   out.insert(n.var);
                   fo_names(n.body, out);
                 },
                 [&](const Formula::Exists& n) {
                   out.insert(n.var);
                   fo_names(n.body, out);
                 },
             },
             f.node());
}
inline void fo_names(const Proof& p, NameSet& out) {
  std::visit(
      overloaded{
          [&](const Proof::PVar& n) { fo_names(n.ann, out); },
          [&](const Proof::Lam& n) { fo_names(n.ann, out); fo_names(n.body, out); },
          [&](const Proof::PApp& n) { fo_names(n.fn, out); fo_names(n.arg, out); },
          [&](const Proof::Pair& n) { fo_names(n.l, out); fo_names(n.r, out); },
          [&](const Proof::Proj& n) { fo_names(n.body, out); },
          [&](const Proof::Inj& n) { fo_names(n.ann, out); fo_names(n.body, out); },
          [&](const Proof::Case& n) {
            fo_names(n.scrut, out);
            fo_names(n.lbranch, out);
            fo_names(n.rbranch, out);
          },
          [&](const Proof::FOLam& n) {
            out.insert(n.var);
            fo_names(n.body, out);
          },
          [&](const Proof::FOApp& n) { fo_names(n.body, out); fo_names(n.arg, out); },
          [&](const Proof::ExIntro& n) {
            fo_names(n.witness, out);
            fo_names(n.body, out);
            fo_names(n.ann, out);
          },
          [&](const Proof::ExElim& n) {
            fo_names(n.scrut, out);
            out.insert(n.fovar);
            fo_names(n.body, out);
          },
          [&](const Proof::CDAxiom& n) { fo_names(n.inst, out); },
          [&](const Proof::Efq& n) { fo_names(n.target, out); fo_names(n.body, out); },
          [&](const Proof::FalsityConst&) {},
      },
      p.node());
}
inline void proof_names(const Proof& p, NameSet& out) {
  std::visit(
      overloaded{
          [&](const Proof::PVar& n) { out.insert(n.name); },
          [&](const Proof::Lam& n) {
            out.insert(n.var);
            proof_names(n.body, out);
          },
          [&](const Proof::PApp& n) { proof_names(n.fn, out); proof_names(n.arg, out); },
          [&](const Proof::Pair& n) { proof_names(n.l, out); proof_names(n.r, out); },
          [&](const Proof::Proj& n) { proof_names(n.body, out); },
          [&](const Proof::Inj& n) { proof_names(n.body, out); },
          [&](const Proof::Case& n) {
            proof_names(n.scrut, out);
            out.insert(n.lvar);
            proof_names(n.lbranch, out);
            out.insert(n.rvar);
            proof_names(n.rbranch, out);
          },
          [&](const Proof::FOLam& n) { proof_names(n.body, out); },
          [&](const Proof::FOApp& n) { proof_names(n.body, out); },
          [&](const Proof::ExIntro& n) { proof_names(n.body, out); },
          [&](const Proof::ExElim& n) {
            proof_names(n.scrut, out);
            out.insert(n.pvar);
            proof_names(n.body, out);
          },
          [&](const Proof::CDAxiom&) {},
          [&](const Proof::Efq& n) { proof_names(n.body, out); },
          [&](const Proof::FalsityConst&) {},
      },
      p.node());
}
}  // namespace detail

inline NameSet fo_all_names(const Formula& f) {
  NameSet out;
  detail::fo_names(f, out);
  return out;
}
inline NameSet fo_all_names(const Proof& p) {
  NameSet out;
  detail::fo_names(p, out);
  return out;
}
inline NameSet proof_all_names(const Proof& p) {
  NameSet out;
  detail::proof_names(p, out);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence
// ---------------------------------------------------------------------------

namespace detail {
// Parallel binder environments; innermost entry wins, like de Bruijn levels.
struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> fo;
  std::vector<std::pair<std::string, std::string>> pv;

  static bool var_eq(const std::vector<std::pair<std::string, std::string>>& env,
                     const std::string& l, const std::string& r) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      bool bl = it->first == l, br = it->second == r;
      if (bl || br) return bl && br;
    }
    return l == r;
  }
};

inline bool aeq(const Term& a, const Term& b, AlphaEnv& env) {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) {
            auto* w = std::get_if<Term::Var>(&b.node());
            return w && AlphaEnv::var_eq(env.fo, v.name, w->name);
          },
          [&](const Term::Cnst& c) {
            auto* d = std::get_if<Term::Cnst>(&b.node());
            return d && d->name == c.name;
          },
          [&](const Term::App& f) {
            auto* g = std::get_if<Term::App>(&b.node());
            if (!g || g->fn != f.fn || g->args.size() != f.args.size()) return false;
            for (size_t i = 0; i < f.args.size(); ++i)
              if (!aeq(f.args[i], g->args[i], env)) return false;
            return true;
          },
      },
      a.node());
}

inline bool aeq(const Formula& a, const Formula& b, AlphaEnv& env) {
  return std::visit(
      overloaded{
          [&](const Formula::Atom& x) {
            auto* y = std::get_if<Formula::Atom>(&b.node());
            if (!y || y->pred != x.pred || y->args.size() != x.args.size()) return false;
            for (size_t i = 0; i < x.args.size(); ++i)
              if (!aeq(x.args[i], y->args[i], env)) return false;
            return true;
          },
          [&](const Formula::Bottom&) {
            return std::holds_alternative<Formula::Bottom>(b.node());
          },
          [&](const Formula::And& x) {
            auto* y = std::get_if<Formula::And>(&b.node());
            return y && aeq(x.l, y->l, env) && aeq(x.r, y->r, env);
          },
          [&](const Formula::Or& x) {
            auto* y = std::get_if<Formula::Or>(&b.node());
            return y && aeq(x.l, y->l, env) && aeq(x.r, y->r, env);
          },
          [&](const Formula::Imp& x) {
            auto* y = std::get_if<Formula::Imp>(&b.node());
            return y && aeq(x.l, y->l, env) && aeq(x.r, y->r, env);
          },
          [&](const Formula::Forall& x) {
            auto* y = std::get_if<Formula::Forall>(&b.node());
            if (!y) return false;
            env.fo.emplace_back(x.var, y->var);
            bool ok = aeq(x.body, y->body, env);
            env.fo.pop_back();
            return ok;
          },
          [&](const Formula::Exists& x) {
            auto* y = std::get_if<Formula::Exists>(&b.node());
            if (!y) return false;
            env.fo.emplace_back(x.var, y->var);
            bool ok = aeq(x.body, y->body, env);
            env.fo.pop_back();
            return ok;
          },
      },
      a.node());
}

inline bool aeq(const Proof& a, const Proof& b, AlphaEnv& env) {
  return std::visit(
      overloaded{
          [&](const Proof::PVar& x) {
            auto* y = std::get_if<Proof::PVar>(&b.node());
            return y && AlphaEnv::var_eq(env.pv, x.name, y->name) && aeq(x.ann, y->ann, env);
          },
          [&](const Proof::Lam& x) {
            auto* y = std::get_if<Proof::Lam>(&b.node());
            if (!y || !aeq(x.ann, y->ann, env)) return false;
            env.pv.emplace_back(x.var, y->var);
            bool ok = aeq(x.body, y->body, env);
            env.pv.pop_back();
            return ok;
          },
          [&](const Proof::PApp& x) {
            auto* y = std::get_if<Proof::PApp>(&b.node());
            return y && aeq(x.fn, y->fn, env) && aeq(x.arg, y->arg, env);
          },
          [&](const Proof::Pair& x) {
            auto* y = std::get_if<Proof::Pair>(&b.node());
            return y && aeq(x.l, y->l, env) && aeq(x.r, y->r, env);
          },
          [&](const Proof::Proj& x) {
            auto* y = std::get_if<Proof::Proj>(&b.node());
            return y && y->idx == x.idx && aeq(x.body, y->body, env);
          },
          [&](const Proof::Inj& x) {
            auto* y = std::get_if<Proof::Inj>(&b.node());
            return y && y->idx == x.idx && aeq(x.ann, y->ann, env) &&
                   aeq(x.body, y->body, env);
          },
          [&](const Proof::Case& x) {
            auto* y = std::get_if<Proof::Case>(&b.node());
            if (!y || !aeq(x.scrut, y->scrut, env)) return false;
            env.pv.emplace_back(x.lvar, y->lvar);
            bool okl = aeq(x.lbranch, y->lbranch, env);
            env.pv.pop_back();
            if (!okl) return false;
            env.pv.emplace_back(x.rvar, y->rvar);
            bool okr = aeq(x.rbranch, y->rbranch, env);
            env.pv.pop_back();
            return okr;
          },
          [&](const Proof::FOLam& x) {
            auto* y = std::get_if<Proof::FOLam>(&b.node());
            if (!y) return false;
            env.fo.emplace_back(x.var, y->var);
            bool ok = aeq(x.body, y->body, env);
            env.fo.pop_back();
            return ok;
          },
          [&](const Proof::FOApp& x) {
            auto* y = std::get_if<Proof::FOApp>(&b.node());
            return y && aeq(x.body, y->body, env) && aeq(x.arg, y->arg, env);
          },
          [&](const Proof::ExIntro& x) {
            auto* y = std::get_if<Proof::ExIntro>(&b.node());
            return y && aeq(x.witness, y->witness, env) && aeq(x.body, y->body, env) &&
                   aeq(x.ann, y->ann, env);
          },
          [&](const Proof::ExElim& x) {
            auto* y = std::get_if<Proof::ExElim>(&b.node());
            if (!y || !aeq(x.scrut, y->scrut, env)) return false;
            env.fo.emplace_back(x.fovar, y->fovar);
            env.pv.emplace_back(x.pvar, y->pvar);
            bool ok = aeq(x.body, y->body, env);
            env.pv.pop_back();
            env.fo.pop_back();
            return ok;
          },
          [&](const Proof::CDAxiom& x) {
            auto* y = std::get_if<Proof::CDAxiom>(&b.node());
            return y && aeq(x.inst, y->inst, env);
          },
          [&](const Proof::Efq& x) {
            auto* y = std::get_if<Proof::Efq>(&b.node());
            return y && aeq(x.target, y->target, env) && aeq(x.body, y->body, env);
          },
          [&](const Proof::FalsityConst&) {
            return std::holds_alternative<Proof::FalsityConst>(b.node());
          },
      },
      a.node());
}
}  // namespace detail

inline bool alpha_equal(const Term& a, const Term& b) { return a == b; }
inline bool alpha_equal(const Formula& a, const Formula& b) {
  detail::AlphaEnv env;
  return detail::aeq(a, b, env);
}
inline bool alpha_equal(const Proof& a, const Proof& b) {
  detail::AlphaEnv env;
  return detail::aeq(a, b, env);
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

inline Term fo_subst(const Term& t, const Term& m, const std::string& alpha) {
  return std::visit(overloaded{
                        [&](const Term::Var& v) { return v.name == alpha ? m : t; },
                        [&](const Term::Cnst&) { return t; },
                        [&](const Term::App& a) {
                          std::vector<Term> args;
                          args.reserve(a.args.size());
                          for (auto& x : a.args) args.push_back(fo_subst(x, m, alpha));
                          return t_app(a.fn, std::move(args));
                        },
                    },
                    t.node());
}

inline Formula fo_subst(const Formula& f, const Term& m, const std::string& alpha) {
  auto quant = [&](const std::string& var, const Formula& body, bool forall) {
    if (var == alpha) return f;
    NameSet body_fv = fo_free_vars(body);
    if (!body_fv.count(alpha)) return f;
    NameSet m_fv = fo_free_vars(m);
    std::string v = var;
    Formula b = body;
    if (m_fv.count(var)) {
      NameSet avoid = fo_all_names(body);
      avoid.insert(m_fv.begin(), m_fv.end());
      avoid.insert(alpha);
      v = fresh_name(var, avoid);
      b = fo_subst(body, t_var(v), var);
    }
    b = fo_subst(b, m, alpha);
    return forall ? f_forall(v, b) : f_exists(v, b);
  };
  return std::visit(
      overloaded{
          [&](const Formula::Atom& a) {
            std::vector<Term> args;
            args.reserve(a.args.size());
            for (auto& x : a.args) args.push_back(fo_subst(x, m, alpha));
            return f_atom(a.pred, std::move(args));
          },
          [&](const Formula::Bottom&) { return f; },
          [&](const Formula::And& n) {
            return f_and(fo_subst(n.l, m, alpha), fo_subst(n.r, m, alpha));
          },
          [&](const Formula::Or& n) {
            return f_or(fo_subst(n.l, m, alpha), fo_subst(n.r, m, alpha));
          },
          [&](const Formula::Imp& n) {
            return f_imp(fo_subst(n.l, m, alpha), fo_subst(n.r, m, alpha));
          },
          [&](const Formula::Forall& n) { return quant(n.var, n.body, true); },
          [&](const Formula::Exists& n) { return quant(n.var, n.body, false); },
      },
      f.node());
}

inline Proof fo_subst(const Proof& p, const Term& m, const std::string& alpha) {
  return std::visit(
      overloaded{
          [&](const Proof::PVar& n) { return p_var(n.name, fo_subst(n.ann, m, alpha)); },
          [&](const Proof::Lam& n) {
            return p_lam(n.var, fo_subst(n.ann, m, alpha), fo_subst(n.body, m, alpha));
          },
          [&](const Proof::PApp& n) {
            return p_app(fo_subst(n.fn, m, alpha), fo_subst(n.arg, m, alpha));
          },
          [&](const Proof::Pair& n) {
            return p_pair(fo_subst(n.l, m, alpha), fo_subst(n.r, m, alpha));
          },
          [&](const Proof::Proj& n) { return p_proj(fo_subst(n.body, m, alpha), n.idx); },
          [&](const Proof::Inj& n) {
            return p_inj(n.idx, fo_subst(n.body, m, alpha), fo_subst(n.ann, m, alpha));
          },
          [&](const Proof::Case& n) {
            return p_case(fo_subst(n.scrut, m, alpha), n.lvar, fo_subst(n.lbranch, m, alpha),
                          n.rvar, fo_subst(n.rbranch, m, alpha));
          },
          [&](const Proof::FOLam& n) {
            if (n.var == alpha) return p;
            NameSet body_fv = fo_free_vars(n.body);
            if (!body_fv.count(alpha)) return p;
            NameSet m_fv = fo_free_vars(m);
            std::string v = n.var;
            Proof b = n.body;
            if (m_fv.count(n.var)) {
              NameSet avoid = fo_all_names(n.body);
              avoid.insert(m_fv.begin(), m_fv.end());
              avoid.insert(alpha);
              v = fresh_name(n.var, avoid);
              b = fo_subst(n.body, t_var(v), n.var);
            }
            return p_folam(v, fo_subst(b, m, alpha));
          },
          [&](const Proof::FOApp& n) {
            return p_foapp(fo_subst(n.body, m, alpha), fo_subst(n.arg, m, alpha));
          },
          [&](const Proof::ExIntro& n) {
            return p_pack(fo_subst(n.witness, m, alpha), fo_subst(n.body, m, alpha),
                          fo_subst(n.ann, m, alpha));
          },
          [&](const Proof::ExElim& n) {
            Proof s = fo_subst(n.scrut, m, alpha);
            if (n.fovar == alpha) return p_unpack(s, n.fovar, n.pvar, n.body);
            NameSet body_fv = fo_free_vars(n.body);
            if (!body_fv.count(alpha)) return p_unpack(s, n.fovar, n.pvar, n.body);
            NameSet m_fv = fo_free_vars(m);
            std::string v = n.fovar;
            Proof b = n.body;
            if (m_fv.count(n.fovar)) {
              NameSet avoid = fo_all_names(n.body);
              avoid.insert(m_fv.begin(), m_fv.end());
              avoid.insert(alpha);
              v = fresh_name(n.fovar, avoid);
              b = fo_subst(n.body, t_var(v), n.fovar);
            }
            return p_unpack(s, v, n.pvar, fo_subst(b, m, alpha));
          },
          [&](const Proof::CDAxiom& n) { return p_cd(fo_subst(n.inst, m, alpha)); },
          [&](const Proof::Efq& n) {
            return p_efq(fo_subst(n.target, m, alpha), fo_subst(n.body, m, alpha));
          },
          [&](const Proof::FalsityConst&) { return p; },
      },
      p.node());
}

// Renames the free proof variable `from` to `to`. Precondition: `to` does not
// occur in `p` at all (use proof_all_names to pick it), so no capture is possible.
inline Proof rename_proof_var(const Proof& p, const std::string& from,
                              const std::string& to) {
  return std::visit(
      overloaded{
          [&](const Proof::PVar& n) {
            return n.name == from ? p_var(to, n.ann) : p;
          },
          [&](const Proof::Lam& n) {
            if (n.var == from) return p;
            return p_lam(n.var, n.ann, rename_proof_var(n.body, from, to));
          },
          [&](const Proof::PApp& n) {
            return p_app(rename_proof_var(n.fn, from, to), rename_proof_var(n.arg, from, to));
          },
          [&](const Proof::Pair& n) {
            return p_pair(rename_proof_var(n.l, from, to), rename_proof_var(n.r, from, to));
          },
          [&](const Proof::Proj& n) {
            return p_proj(rename_proof_var(n.body, from, to), n.idx);
          },
          [&](const Proof::Inj& n) {
            return p_inj(n.idx, rename_proof_var(n.body, from, to), n.ann);
          },
          [&](const Proof::Case& n) {
            Proof s = rename_proof_var(n.scrut, from, to);
            Proof l = n.lvar == from ? n.lbranch : rename_proof_var(n.lbranch, from, to);
            Proof r = n.rvar == from ? n.rbranch : rename_proof_var(n.rbranch, from, to);
            return p_case(s, n.lvar, l, n.rvar, r);
          },
          [&](const Proof::FOLam& n) {
            return p_folam(n.var, rename_proof_var(n.body, from, to));
          },
          [&](const Proof::FOApp& n) {
            return p_foapp(rename_proof_var(n.body, from, to), n.arg);
          },
          [&](const Proof::ExIntro& n) {
            return p_pack(n.witness, rename_proof_var(n.body, from, to), n.ann);
          },
          [&](const Proof::ExElim& n) {
            Proof s = rename_proof_var(n.scrut, from, to);
            Proof b = n.pvar == from ? n.body : rename_proof_var(n.body, from, to);
            return p_unpack(s, n.fovar, n.pvar, b);
          },
          [&](const Proof::CDAxiom&) { return p; },
          [&](const Proof::Efq& n) {
            return p_efq(n.target, rename_proof_var(n.body, from, to));
          },
          [&](const Proof::FalsityConst&) { return p; },
      },
      p.node());
}

// Capture-avoiding substitution of the proof term u for the free proof
// variable x. Proof binders that would capture free proof variables of u are
// renamed, and first-order binders that would capture free first-order
// variables of u are renamed as well.
inline Proof proof_subst(const Proof& p, const Proof& u, const std::string& x) {
  // Substitute under a proof binder; returns the (possibly renamed) binder
  // and the substituted body.
  auto under_pbinder =
      [&](const std::string& var, const Proof& body) -> std::pair<std::string, Proof> {
    if (var == x) return {var, body};  // shadowed: nothing to do below
    if (!proof_free_vars(body).count(x)) return {var, body};
    std::string v = var;
    Proof b = body;
    if (proof_free_vars(u).count(var)) {
      NameSet avoid = proof_all_names(body);
      auto ufv = proof_free_vars(u);
      avoid.insert(ufv.begin(), ufv.end());
      avoid.insert(x);
      v = fresh_name(var, avoid);
      b = rename_proof_var(body, var, v);
    }
    return {v, proof_subst(b, u, x)};
  };

  return std::visit(
      overloaded{
          [&](const Proof::PVar& n) { return n.name == x ? u : p; },
          [&](const Proof::Lam& n) {
            auto [v, b] = under_pbinder(n.var, n.body);
            return p_lam(v, n.ann, b);
          },
          [&](const Proof::PApp& n) {
            return p_app(proof_subst(n.fn, u, x), proof_subst(n.arg, u, x));
          },
          [&](const Proof::Pair& n) {
            return p_pair(proof_subst(n.l, u, x), proof_subst(n.r, u, x));
          },
          [&](const Proof::Proj& n) { return p_proj(proof_subst(n.body, u, x), n.idx); },
          [&](const Proof::Inj& n) {
            return p_inj(n.idx, proof_subst(n.body, u, x), n.ann);
          },
          [&](const Proof::Case& n) {
            Proof s = proof_subst(n.scrut, u, x);
            auto [lv, l] = under_pbinder(n.lvar, n.lbranch);
            auto [rv, r] = under_pbinder(n.rvar, n.rbranch);
            return p_case(s, lv, l, rv, r);
          },
          [&](const Proof::FOLam& n) {
            if (!proof_free_vars(n.body).count(x)) return p;
            std::string v = n.var;
            Proof b = n.body;
            if (fo_free_vars(u).count(n.var)) {
              NameSet avoid = fo_all_names(n.body);
              auto ufv = fo_free_vars(u);
              avoid.insert(ufv.begin(), ufv.end());
              v = fresh_name(n.var, avoid);
              b = fo_subst(n.body, t_var(v), n.var);
            }
            return p_folam(v, proof_subst(b, u, x));
          },
          [&](const Proof::FOApp& n) {
            return p_foapp(proof_subst(n.body, u, x), n.arg);
          },
          [&](const Proof::ExIntro& n) {
            return p_pack(n.witness, proof_subst(n.body, u, x), n.ann);
          },
          [&](const Proof::ExElim& n) {
            Proof s = proof_subst(n.scrut, u, x);
            // body sits under both a first-order and a proof binder
            std::string fv = n.fovar;
            Proof b = n.body;
            if (n.pvar != x && proof_free_vars(b).count(x)) {
              if (fo_free_vars(u).count(fv)) {
                NameSet avoid = fo_all_names(b);
                auto ufv = fo_free_vars(u);
                avoid.insert(ufv.begin(), ufv.end());
                fv = fresh_name(n.fovar, avoid);
                b = fo_subst(b, t_var(fv), n.fovar);
              }
            }
            std::string pv = n.pvar;
            if (pv != x && proof_free_vars(b).count(x)) {
              if (proof_free_vars(u).count(pv)) {
                NameSet avoid = proof_all_names(b);
                auto ufv = proof_free_vars(u);
                avoid.insert(ufv.begin(), ufv.end());
                avoid.insert(x);
                pv = fresh_name(n.pvar, avoid);
                b = rename_proof_var(b, n.pvar, pv);
              }
              b = proof_subst(b, u, x);
            }
            return p_unpack(s, fv, pv, b);
          },
          [&](const Proof::CDAxiom&) { return p; },
          [&](const Proof::Efq& n) { return p_efq(n.target, proof_subst(n.body, u, x)); },
          [&](const Proof::FalsityConst&) { return p; },
      },
      p.node());
}

// ---------------------------------------------------------------------------
// Signature and typing context
// ---------------------------------------------------------------------------

// Function and predicate symbols with arities. The constant dum is always
// declared; bot is a formula constructor, not a predicate entry.
struct Signature {
  std::set<std::string> constants;
  std::map<std::string, int> functions;
  std::map<std::string, int> predicates;

  Signature() { constants.insert("dum"); }

  bool has_const(const std::string& n) const { return constants.count(n) > 0; }
  std::optional<int> fn_arity(const std::string& n) const {
    auto it = functions.find(n);
    if (it == functions.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> pred_arity(const std::string& n) const {
    auto it = predicates.find(n);
    if (it == predicates.end()) return std::nullopt;
    return it->second;
  }
};

// The Gamma of typing judgments: an ordered map from proof variables to
// formulas. A name is bound at most once; the typechecker renames binders
// on the way down to maintain this.
class Context {
 public:
  using Entry = std::pair<std::string, Formula>;

  Context() = default;
  Context(std::initializer_list<Entry> entries) {
    for (auto& e : entries) {
      assert(!contains(e.first));
      entries_.push_back(e);
    }
  }

  const Formula* lookup(const std::string& name) const {
    for (auto& e : entries_)
      if (e.first == name) return &e.second;
    return nullptr;
  }
  bool contains(const std::string& name) const { return lookup(name) != nullptr; }

  Context extended(const std::string& name, const Formula& type) const {
    assert(!contains(name));
    Context c = *this;
    c.entries_.emplace_back(name, type);
    return c;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  NameSet names() const {
    NameSet out;
    for (auto& e : entries_) out.insert(e.first);
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace cdk
