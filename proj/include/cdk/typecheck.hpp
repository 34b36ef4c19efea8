#pragma once

// The typing judgment Γ ⊢ t : A, implemented by syntax-directed structural
// recursion over proof terms. Two modes: in cd mode the constant-domain
// axiom D is available and the falsity constant F is not; in il-bot mode
// it is the other way round. Formula comparison is alpha-equivalence
// throughout. Inference threads the current subterm path so every error is
// addressed to the node whose rule or side condition failed.

#include <optional>
#include <string>
#include <utility>

#include "cdk/print.hpp"
#include "cdk/syntax.hpp"

namespace cdk {

enum class Mode { CD, IL_BOT };

inline std::string mode_name(Mode m) { return m == Mode::CD ? "cd" : "il-bot"; }

enum class ErrKind {
  UnboundVariable,
  Mismatch,
  EigenvariableViolation,
  BadCDInstance,
  NonAtomicEfq,
  ModeViolation,
  ArityError,
};

inline std::string err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::UnboundVariable: return "UnboundVariable";
    case ErrKind::Mismatch: return "Mismatch";
    case ErrKind::EigenvariableViolation: return "EigenvariableViolation";
    case ErrKind::BadCDInstance: return "BadCDInstance";
    case ErrKind::NonAtomicEfq: return "NonAtomicEfq";
    case ErrKind::ModeViolation: return "ModeViolation";
    case ErrKind::ArityError: return "ArityError";
  }
  return "?";
}

struct TypeError {
  ErrKind kind;
  Path location;
  std::string detail;
  std::optional<Formula> expected;
  std::optional<Formula> actual;

  // Canonical one-line rendering: `<path>: <kind>: expected <A>, got <B>`
  // when both formulas are known, otherwise the detail string.
  std::string render() const {
    std::string s = path_str(location) + ": " + err_kind_name(kind) + ": ";
    if (expected && actual)
      s += "expected " + print(*expected) + ", got " + print(*actual);
    else
      s += detail;
    return s;
  }
};

template <class T, class E = TypeError>
class Result {
 public:
  Result(T v) : value_(std::move(v)) {}
  Result(E e) : error_(std::move(e)) {}

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }
  const T& operator*() const { return *value_; }
  const T* operator->() const { return &*value_; }
  const E& error() const { return *error_; }

 private:
  std::optional<T> value_;
  std::optional<E> error_;
};

struct Ok {};
using CheckResult = Result<Ok>;

namespace detail {
inline TypeError err(ErrKind kind, Path loc, std::string detail) {
  return TypeError{kind, std::move(loc), std::move(detail), std::nullopt, std::nullopt};
}
inline TypeError mismatch(Path loc, Formula expected, Formula actual) {
  return TypeError{ErrKind::Mismatch, std::move(loc), "", std::move(expected),
                   std::move(actual)};
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Signature conformance
// ---------------------------------------------------------------------------

inline std::optional<TypeError> well_formed(const Signature& sig, const Term& t,
                                            const Path& at = {}) {
  return std::visit(
      overloaded{
          [&](const Term::Var&) -> std::optional<TypeError> { return std::nullopt; },
          [&](const Term::Cnst& c) -> std::optional<TypeError> {
            if (!sig.has_const(c.name))
              return detail::err(ErrKind::ArityError, at,
                                 "undeclared constant " + c.name);
            return std::nullopt;
          },
          [&](const Term::App& a) -> std::optional<TypeError> {
            auto ar = sig.fn_arity(a.fn);
            if (!ar)
              return detail::err(ErrKind::ArityError, at,
                                 "undeclared function symbol " + a.fn);
            if (*ar != (int)a.args.size())
              return detail::err(ErrKind::ArityError, at,
                                 "function " + a.fn + " expects " + std::to_string(*ar) +
                                     " arguments, got " + std::to_string(a.args.size()));
            for (auto& m : a.args)
              if (auto e = well_formed(sig, m, at)) return e;
            return std::nullopt;
          },
      },
      t.node());
}

inline std::optional<TypeError> well_formed(const Signature& sig, const Formula& f,
                                            const Path& at = {}) {
  return std::visit(
      overloaded{
          [&](const Formula::Atom& a) -> std::optional<TypeError> {
            auto ar = sig.pred_arity(a.pred);
            if (!ar)
              return detail::err(ErrKind::ArityError, at,
                                 "undeclared predicate " + a.pred);
            if (*ar != (int)a.args.size())
              return detail::err(ErrKind::ArityError, at,
                                 "predicate " + a.pred + " expects " + std::to_string(*ar) +
                                     " arguments, got " + std::to_string(a.args.size()));
            for (auto& m : a.args)
              if (auto e = well_formed(sig, m, at)) return e;
            return std::nullopt;
          },
          [&](const Formula::Bottom&) -> std::optional<TypeError> { return std::nullopt; },
          [&](const Formula::And& n) -> std::optional<TypeError> {
            if (auto e = well_formed(sig, n.l, at)) return e;
            return well_formed(sig, n.r, at);
          },
          [&](const Formula::Or& n) -> std::optional<TypeError> {
            if (auto e = well_formed(sig, n.l, at)) return e;
            return well_formed(sig, n.r, at);
          },
          [&](const Formula::Imp& n) -> std::optional<TypeError> {
            if (auto e = well_formed(sig, n.l, at)) return e;
            return well_formed(sig, n.r, at);
          },
          [&](const Formula::Forall& n) -> std::optional<TypeError> {
            return well_formed(sig, n.body, at);
          },
          [&](const Formula::Exists& n) -> std::optional<TypeError> {
            return well_formed(sig, n.body, at);
          },
      },
      f.node());
}

// ---------------------------------------------------------------------------
// The constant-domain axiom shape
// ---------------------------------------------------------------------------

// True iff I has the form forall a. (A | B) -> (forall a. A) | B with the
// bound variable not occurring free in B.
inline bool check_cd_instance(const Formula& I) {
  auto* imp = as<Formula::Imp>(I);
  if (!imp) return false;
  auto* all = as<Formula::Forall>(imp->l);
  if (!all) return false;
  auto* disj = as<Formula::Or>(all->body);
  if (!disj) return false;
  auto* rdisj = as<Formula::Or>(imp->r);
  if (!rdisj) return false;
  if (!alpha_equal(rdisj->l, f_forall(all->var, disj->l))) return false;
  if (!alpha_equal(rdisj->r, disj->r)) return false;
  return fo_free_vars(disj->r).count(all->var) == 0;
}

// ---------------------------------------------------------------------------
// Inference
// ---------------------------------------------------------------------------

namespace detail {

inline Path child(const Path& p, int i) {
  Path q = p;
  q.push_back(i);
  return q;
}

inline Result<Formula> infer_at(const Signature& sig, const Context& ctx, const Proof& t,
                                Mode mode, const Path& at) {
  auto wf_f = [&](const Formula& f) -> std::optional<TypeError> {
    return well_formed(sig, f, at);
  };
  auto wf_t = [&](const Term& m) -> std::optional<TypeError> {
    return well_formed(sig, m, at);
  };
  // Extends the context with a proof hypothesis, renaming the binder if the
  // name is already bound in Γ so that contexts stay single-binding.
  auto bind = [&](const std::string& var, const Formula& type, const Proof& body)
      -> std::tuple<std::string, Proof, Context> {
    std::string v = var;
    Proof b = body;
    if (ctx.contains(var)) {
      NameSet avoid = ctx.names();
      NameSet all = proof_all_names(body);
      avoid.insert(all.begin(), all.end());
      v = fresh_name(var, avoid);
      b = rename_proof_var(body, var, v);
    }
    return {v, b, ctx.extended(v, type)};
  };

  return std::visit(
      overloaded{
          [&](const Proof::PVar& n) -> Result<Formula> {
            if (auto e = wf_f(n.ann)) return *e;
            const Formula* bound = ctx.lookup(n.name);
            if (!bound)
              return err(ErrKind::UnboundVariable, at,
                         "unbound proof variable " + n.name);
            if (!alpha_equal(*bound, n.ann)) return mismatch(at, *bound, n.ann);
            return n.ann;
          },
          [&](const Proof::Lam& n) -> Result<Formula> {
            if (auto e = wf_f(n.ann)) return *e;
            auto [v, b, ctx2] = bind(n.var, n.ann, n.body);
            auto body_ty = infer_at(sig, ctx2, b, mode, child(at, 0));
            if (!body_ty) return body_ty.error();
            return f_imp(n.ann, *body_ty);
          },
          [&](const Proof::PApp& n) -> Result<Formula> {
            auto fn_ty = infer_at(sig, ctx, n.fn, mode, child(at, 0));
            if (!fn_ty) return fn_ty.error();
            auto* imp = as<Formula::Imp>(*fn_ty);
            if (!imp)
              return err(ErrKind::Mismatch, at,
                         "applied term has type " + print(*fn_ty) +
                             ", which is not an implication");
            auto arg_ty = infer_at(sig, ctx, n.arg, mode, child(at, 1));
            if (!arg_ty) return arg_ty.error();
            if (!alpha_equal(imp->l, *arg_ty)) return mismatch(at, imp->l, *arg_ty);
            return imp->r;
          },
          [&](const Proof::Pair& n) -> Result<Formula> {
            auto l = infer_at(sig, ctx, n.l, mode, child(at, 0));
            if (!l) return l.error();
            auto r = infer_at(sig, ctx, n.r, mode, child(at, 1));
            if (!r) return r.error();
            return f_and(*l, *r);
          },
          [&](const Proof::Proj& n) -> Result<Formula> {
            auto ty = infer_at(sig, ctx, n.body, mode, child(at, 0));
            if (!ty) return ty.error();
            auto* conj = as<Formula::And>(*ty);
            if (!conj)
              return err(ErrKind::Mismatch, at,
                         "projected term has type " + print(*ty) +
                             ", which is not a conjunction");
            return n.idx == 0 ? conj->l : conj->r;
          },
          [&](const Proof::Inj& n) -> Result<Formula> {
            if (auto e = wf_f(n.ann)) return *e;
            auto* disj = as<Formula::Or>(n.ann);
            if (!disj)
              return err(ErrKind::Mismatch, at,
                         "injection annotation " + print(n.ann) +
                             " is not a disjunction");
            auto ty = infer_at(sig, ctx, n.body, mode, child(at, 0));
            if (!ty) return ty.error();
            const Formula& want = n.idx == 0 ? disj->l : disj->r;
            if (!alpha_equal(want, *ty)) return mismatch(at, want, *ty);
            return n.ann;
          },
          [&](const Proof::Case& n) -> Result<Formula> {
            auto sty = infer_at(sig, ctx, n.scrut, mode, child(at, 0));
            if (!sty) return sty.error();
            auto* disj = as<Formula::Or>(*sty);
            if (!disj)
              return err(ErrKind::Mismatch, at,
                         "case scrutinee has type " + print(*sty) +
                             ", which is not a disjunction");
            auto [lv, lb, lctx] = bind(n.lvar, disj->l, n.lbranch);
            auto lty = infer_at(sig, lctx, lb, mode, child(at, 1));
            if (!lty) return lty.error();
            auto [rv, rb, rctx] = bind(n.rvar, disj->r, n.rbranch);
            auto rty = infer_at(sig, rctx, rb, mode, child(at, 2));
            if (!rty) return rty.error();
            if (!alpha_equal(*lty, *rty)) return mismatch(at, *lty, *rty);
            return *lty;
          },
          [&](const Proof::FOLam& n) -> Result<Formula> {
            // Eigenvariable condition: the generalized variable must not occur
            // free in the type of any hypothesis the body actually uses.
            for (const std::string& y : proof_free_vars(n.body)) {
              const Formula* ty = ctx.lookup(y);
              if (ty && fo_free_vars(*ty).count(n.var))
                return err(ErrKind::EigenvariableViolation, at,
                           "variable " + n.var + " occurs free in the type " +
                               print(*ty) + " of free hypothesis " + y);
            }
            auto body_ty = infer_at(sig, ctx, n.body, mode, child(at, 0));
            if (!body_ty) return body_ty.error();
            return f_forall(n.var, *body_ty);
          },
          [&](const Proof::FOApp& n) -> Result<Formula> {
            auto ty = infer_at(sig, ctx, n.body, mode, child(at, 0));
            if (!ty) return ty.error();
            auto* all = as<Formula::Forall>(*ty);
            if (!all)
              return err(ErrKind::Mismatch, at,
                         "instantiated term has type " + print(*ty) +
                             ", which is not universally quantified");
            if (auto e = wf_t(n.arg)) return *e;
            return fo_subst(all->body, n.arg, all->var);
          },
          [&](const Proof::ExIntro& n) -> Result<Formula> {
            if (auto e = wf_f(n.ann)) return *e;
            if (auto e = wf_t(n.witness)) return *e;
            auto* ex = as<Formula::Exists>(n.ann);
            if (!ex)
              return err(ErrKind::Mismatch, at,
                         "pack annotation " + print(n.ann) +
                             " is not existentially quantified");
            auto ty = infer_at(sig, ctx, n.body, mode, child(at, 0));
            if (!ty) return ty.error();
            Formula want = fo_subst(ex->body, n.witness, ex->var);
            if (!alpha_equal(want, *ty)) return mismatch(at, want, *ty);
            return n.ann;
          },
          [&](const Proof::ExElim& n) -> Result<Formula> {
            auto sty = infer_at(sig, ctx, n.scrut, mode, child(at, 0));
            if (!sty) return sty.error();
            auto* ex = as<Formula::Exists>(*sty);
            if (!ex)
              return err(ErrKind::Mismatch, at,
                         "unpack scrutinee has type " + print(*sty) +
                             ", which is not existentially quantified");
            // The opened variable must be genuinely fresh for the scrutinee's
            // type, or renaming the existential binder to it would capture.
            if (fo_free_vars(*sty).count(n.fovar))
              return err(ErrKind::EigenvariableViolation, at,
                         "variable " + n.fovar +
                             " occurs free in the scrutinee type " + print(*sty));
            Formula hyp = fo_subst(ex->body, t_var(n.fovar), ex->var);
            auto [pv, b, ctx2] = bind(n.pvar, hyp, n.body);
            for (const std::string& y : proof_free_vars(b)) {
              if (y == pv) continue;
              const Formula* ty = ctx.lookup(y);
              if (ty && fo_free_vars(*ty).count(n.fovar))
                return err(ErrKind::EigenvariableViolation, at,
                           "variable " + n.fovar + " occurs free in the type " +
                               print(*ty) + " of free hypothesis " + y);
            }
            auto cty = infer_at(sig, ctx2, b, mode, child(at, 1));
            if (!cty) return cty.error();
            if (fo_free_vars(*cty).count(n.fovar))
              return err(ErrKind::EigenvariableViolation, at,
                         "variable " + n.fovar + " occurs free in the result type " +
                             print(*cty));
            return *cty;
          },
          [&](const Proof::CDAxiom& n) -> Result<Formula> {
            if (mode != Mode::CD)
              return err(ErrKind::ModeViolation, at,
                         "the axiom constant D is not available in il-bot mode");
            if (auto e = wf_f(n.inst)) return *e;
            if (!check_cd_instance(n.inst))
              return err(ErrKind::BadCDInstance, at,
                         print(n.inst) +
                             " does not have the shape forall a. (A | B) -> "
                             "(forall a. A) | B with a not free in B");
            return n.inst;
          },
          [&](const Proof::Efq& n) -> Result<Formula> {
            if (auto e = wf_f(n.target)) return *e;
            if (!is_atomic(n.target))
              return err(ErrKind::NonAtomicEfq, at,
                         "efq target " + print(n.target) + " is not atomic");
            auto ty = infer_at(sig, ctx, n.body, mode, child(at, 0));
            if (!ty) return ty.error();
            if (!is_bottom(*ty)) return mismatch(at, f_bot(), *ty);
            return n.target;
          },
          [&](const Proof::FalsityConst&) -> Result<Formula> {
            if (mode != Mode::IL_BOT)
              return err(ErrKind::ModeViolation, at,
                         "the falsity constant F is not available in cd mode");
            return f_bot();
          },
      },
      t.node());
}
}  // namespace detail

inline Result<Formula> infer(const Signature& sig, const Context& ctx, const Proof& t,
                             Mode mode) {
  return detail::infer_at(sig, ctx, t, mode, {});
}

inline CheckResult check(const Signature& sig, const Context& ctx, const Proof& t,
                         const Formula& want, Mode mode) {
  if (auto e = well_formed(sig, want)) return *e;
  auto got = infer(sig, ctx, t, mode);
  if (!got) return got.error();
  if (!alpha_equal(want, *got)) return detail::mismatch({}, want, *got);
  return Ok{};
}

}  // namespace cdk
