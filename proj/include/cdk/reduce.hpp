#pragma once

// The seven reduction rules, redex discovery in leftmost-outermost order,
// fuel-bounded normalization with a full trace, head decomposition of
// arbitrary proof terms, and a replay harness that re-typechecks a term
// after every single step.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdk/typecheck.hpp"

namespace cdk {

enum class RuleTag { Beta, FOBeta, ProjPair, CaseInj, ExElimIntro, CDInj0, CDInj1 };

inline std::string rule_name(RuleTag r) {
  switch (r) {
    case RuleTag::Beta: return "Beta";
    case RuleTag::FOBeta: return "FOBeta";
    case RuleTag::ProjPair: return "ProjPair";
    case RuleTag::CaseInj: return "CaseInj";
    case RuleTag::ExElimIntro: return "ExElimIntro";
    case RuleTag::CDInj0: return "CDInj0";
    case RuleTag::CDInj1: return "CDInj1";
  }
  return "?";
}

// A single reduction step. before and after are the whole terms; after is
// before with exactly the subterm at path contracted.
struct Step {
  RuleTag rule;
  Path path;
  Proof before;
  Proof after;
};

struct Trace {
  Proof initial;
  std::vector<Step> steps;
  bool normal = false;
  bool fuel_exhausted = false;

  const Proof& last() const { return steps.empty() ? initial : steps.back().after; }
};

// ---------------------------------------------------------------------------
// Redex matching and contraction
// ---------------------------------------------------------------------------

// Does the root of t match a reduction left-hand side? The D rules require
// the axiom instance to be genuinely of constant-domain shape and its
// argument to be literally an FO abstraction over an injection; no reduction
// is forced first to expose that shape.
inline std::optional<RuleTag> redex_tag(const Proof& t) {
  if (auto* app = as<Proof::PApp>(t)) {
    if (as<Proof::Lam>(app->fn)) return RuleTag::Beta;
    if (auto* d = as<Proof::CDAxiom>(app->fn)) {
      if (auto* fol = as<Proof::FOLam>(app->arg)) {
        if (auto* inj = as<Proof::Inj>(fol->body)) {
          if (!check_cd_instance(d->inst)) return std::nullopt;
          return inj->idx == 0 ? RuleTag::CDInj0 : RuleTag::CDInj1;
        }
      }
    }
    return std::nullopt;
  }
  if (auto* foapp = as<Proof::FOApp>(t)) {
    if (as<Proof::FOLam>(foapp->body)) return RuleTag::FOBeta;
    return std::nullopt;
  }
  if (auto* proj = as<Proof::Proj>(t)) {
    if (as<Proof::Pair>(proj->body)) return RuleTag::ProjPair;
    return std::nullopt;
  }
  if (auto* c = as<Proof::Case>(t)) {
    if (as<Proof::Inj>(c->scrut)) return RuleTag::CaseInj;
    return std::nullopt;
  }
  if (auto* ee = as<Proof::ExElim>(t)) {
    if (as<Proof::ExIntro>(ee->scrut)) return RuleTag::ExElimIntro;
    return std::nullopt;
  }
  return std::nullopt;
}

// Contracts the redex at the root. Returns nothing if the root is not a redex.
inline std::optional<Proof> try_contract(const Proof& t) {
  auto tag = redex_tag(t);
  if (!tag) return std::nullopt;
  switch (*tag) {
    case RuleTag::Beta: {
      auto* app = as<Proof::PApp>(t);
      auto* lam = as<Proof::Lam>(app->fn);
      return proof_subst(lam->body, app->arg, lam->var);
    }
    case RuleTag::FOBeta: {
      auto* foapp = as<Proof::FOApp>(t);
      auto* fol = as<Proof::FOLam>(foapp->body);
      return fo_subst(fol->body, foapp->arg, fol->var);
    }
    case RuleTag::ProjPair: {
      auto* proj = as<Proof::Proj>(t);
      auto* pair = as<Proof::Pair>(proj->body);
      return proj->idx == 0 ? pair->l : pair->r;
    }
    case RuleTag::CaseInj: {
      auto* c = as<Proof::Case>(t);
      auto* inj = as<Proof::Inj>(c->scrut);
      if (inj->idx == 0) return proof_subst(c->lbranch, inj->body, c->lvar);
      return proof_subst(c->rbranch, inj->body, c->rvar);
    }
    case RuleTag::ExElimIntro: {
      auto* ee = as<Proof::ExElim>(t);
      auto* intro = as<Proof::ExIntro>(ee->scrut);
      Proof body = fo_subst(ee->body, intro->witness, ee->fovar);
      return proof_subst(body, intro->body, ee->pvar);
    }
    case RuleTag::CDInj0: {
      auto* app = as<Proof::PApp>(t);
      auto* d = as<Proof::CDAxiom>(app->fn);
      auto* fol = as<Proof::FOLam>(app->arg);
      auto* inj = as<Proof::Inj>(fol->body);
      // The contractum is re-annotated with the axiom's conclusion so it
      // stays checkable as it stands.
      const Formula& concl = as<Formula::Imp>(d->inst)->r;
      return p_inj(0, p_folam(fol->var, inj->body), concl);
    }
    case RuleTag::CDInj1: {
      auto* app = as<Proof::PApp>(t);
      auto* d = as<Proof::CDAxiom>(app->fn);
      auto* fol = as<Proof::FOLam>(app->arg);
      auto* inj = as<Proof::Inj>(fol->body);
      const Formula& concl = as<Formula::Imp>(d->inst)->r;
      return p_inj(1, fo_subst(inj->body, t_dum(), fol->var), concl);
    }
  }
  return std::nullopt;
}

class NotARedexError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Proof contract(const Proof& t) {
  auto r = try_contract(t);
  if (!r) throw NotARedexError("contract: not a redex: " + print(t));
  return *r;
}

// ---------------------------------------------------------------------------
// Subterm addressing
// ---------------------------------------------------------------------------

inline std::vector<Proof> proof_children(const Proof& t) {
  return std::visit(
      overloaded{
          [&](const Proof::PVar&) { return std::vector<Proof>{}; },
          [&](const Proof::Lam& n) { return std::vector<Proof>{n.body}; },
          [&](const Proof::PApp& n) { return std::vector<Proof>{n.fn, n.arg}; },
          [&](const Proof::Pair& n) { return std::vector<Proof>{n.l, n.r}; },
          [&](const Proof::Proj& n) { return std::vector<Proof>{n.body}; },
          [&](const Proof::Inj& n) { return std::vector<Proof>{n.body}; },
          [&](const Proof::Case& n) {
            return std::vector<Proof>{n.scrut, n.lbranch, n.rbranch};
          },
          [&](const Proof::FOLam& n) { return std::vector<Proof>{n.body}; },
          [&](const Proof::FOApp& n) { return std::vector<Proof>{n.body}; },
          [&](const Proof::ExIntro& n) { return std::vector<Proof>{n.body}; },
          [&](const Proof::ExElim& n) { return std::vector<Proof>{n.scrut, n.body}; },
          [&](const Proof::CDAxiom&) { return std::vector<Proof>{}; },
          [&](const Proof::Efq& n) { return std::vector<Proof>{n.body}; },
          [&](const Proof::FalsityConst&) { return std::vector<Proof>{}; },
      },
      t.node());
}

inline std::optional<Proof> subterm_at(const Proof& t, const Path& path, size_t from = 0) {
  if (from == path.size()) return t;
  auto kids = proof_children(t);
  int i = path[from];
  if (i < 0 || i >= (int)kids.size()) return std::nullopt;
  return subterm_at(kids[i], path, from + 1);
}

// Rebuilds t with the subterm at path replaced by nu.
inline Proof replace_at(const Proof& t, const Path& path, const Proof& nu,
                        size_t from = 0) {
  if (from == path.size()) return nu;
  int i = path[from];
  auto rec = [&](const Proof& child) { return replace_at(child, path, nu, from + 1); };
  return std::visit(
      overloaded{
          [&](const Proof::Lam& n) { return p_lam(n.var, n.ann, rec(n.body)); },
          [&](const Proof::PApp& n) {
            return i == 0 ? p_app(rec(n.fn), n.arg) : p_app(n.fn, rec(n.arg));
          },
          [&](const Proof::Pair& n) {
            return i == 0 ? p_pair(rec(n.l), n.r) : p_pair(n.l, rec(n.r));
          },
          [&](const Proof::Proj& n) { return p_proj(rec(n.body), n.idx); },
          [&](const Proof::Inj& n) { return p_inj(n.idx, rec(n.body), n.ann); },
          [&](const Proof::Case& n) {
            if (i == 0) return p_case(rec(n.scrut), n.lvar, n.lbranch, n.rvar, n.rbranch);
            if (i == 1) return p_case(n.scrut, n.lvar, rec(n.lbranch), n.rvar, n.rbranch);
            return p_case(n.scrut, n.lvar, n.lbranch, n.rvar, rec(n.rbranch));
          },
          [&](const Proof::FOLam& n) { return p_folam(n.var, rec(n.body)); },
          [&](const Proof::FOApp& n) { return p_foapp(rec(n.body), n.arg); },
          [&](const Proof::ExIntro& n) { return p_pack(n.witness, rec(n.body), n.ann); },
          [&](const Proof::ExElim& n) {
            return i == 0 ? p_unpack(rec(n.scrut), n.fovar, n.pvar, n.body)
                          : p_unpack(n.scrut, n.fovar, n.pvar, rec(n.body));
          },
          [&](const Proof::Efq& n) { return p_efq(n.target, rec(n.body)); },
          [&](const auto&) -> Proof {
            throw std::logic_error("replace_at: path leads into a leaf");
          },
      },
      t.node());
}

// ---------------------------------------------------------------------------
// Strategy
// ---------------------------------------------------------------------------

namespace detail {
inline void collect_redexes(const Proof& t, Path& here,
                            std::vector<std::pair<Path, RuleTag>>& out) {
  if (auto tag = redex_tag(t)) out.emplace_back(here, *tag);
  auto kids = proof_children(t);
  for (size_t i = 0; i < kids.size(); ++i) {
    here.push_back((int)i);
    collect_redexes(kids[i], here, out);
    here.pop_back();
  }
}

inline std::optional<std::pair<Path, RuleTag>> first_redex(const Proof& t, Path& here) {
  if (auto tag = redex_tag(t)) return std::make_pair(here, *tag);
  auto kids = proof_children(t);
  for (size_t i = 0; i < kids.size(); ++i) {
    here.push_back((int)i);
    auto r = first_redex(kids[i], here);
    here.pop_back();
    if (r) return r;
  }
  return std::nullopt;
}
}  // namespace detail

// All redex positions in leftmost-outermost (pre-)order.
inline std::vector<std::pair<Path, RuleTag>> find_redexes(const Proof& t) {
  std::vector<std::pair<Path, RuleTag>> out;
  Path here;
  detail::collect_redexes(t, here, out);
  return out;
}

inline bool is_normal(const Proof& t) {
  Path here;
  return !detail::first_redex(t, here).has_value();
}

// Contracts the leftmost-outermost redex; nothing if t is normal.
inline std::optional<Step> step(const Proof& t) {
  Path here;
  auto r = detail::first_redex(t, here);
  if (!r) return std::nullopt;
  Proof redex = *subterm_at(t, r->first);
  Proof after = replace_at(t, r->first, contract(redex));
  return Step{r->second, r->first, t, after};
}

inline constexpr int kDefaultFuel = 10000;

// Iterates step until a normal form is reached or fuel runs out. For
// well-typed input normalization always terminates, so exhausting fuel
// signals either a bug or an ill-typed term.
inline Trace normalize(const Proof& t, int fuel = kDefaultFuel) {
  Trace tr{t, {}, false, false};
  Proof cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto s = step(cur);
    if (!s) {
      tr.normal = true;
      return tr;
    }
    cur = s->after;
    tr.steps.push_back(std::move(*s));
  }
  if (step(cur))
    tr.fuel_exhausted = true;
  else
    tr.normal = true;
  return tr;
}

// ---------------------------------------------------------------------------
// Head decomposition
// ---------------------------------------------------------------------------

// Every proof term decomposes as fun-binders over a head applied to a spine
// of eliminations: the head is a variable, one of the constants D / efq / F,
// or an introduction form (which happens exactly when the term has a redex
// or is a bare introduction).
enum class HeadKind { Var, ConstD, ConstEfq, ConstF, Intro };

struct SpineItem {
  struct AppArg {
    Proof arg;
  };
  struct FOArg {
    Term arg;
  };
  struct ProjItem {
    int idx;
  };
  struct CaseCtx {
    std::string lvar;
    Proof lbranch;
    std::string rvar;
    Proof rbranch;
  };
  struct ExElimCtx {
    std::string fovar;
    std::string pvar;
    Proof body;
  };
  std::variant<AppArg, FOArg, ProjItem, CaseCtx, ExElimCtx> item;
};

struct HeadForm {
  std::vector<std::pair<std::string, Formula>> binders;  // leading fun binders
  HeadKind kind;
  std::optional<Proof> head;            // the head subterm (absent for efq)
  std::optional<Formula> efq_target;    // present iff kind == ConstEfq
  std::vector<SpineItem> spine;         // innermost elimination first
};

namespace detail {
inline void spine_walk(const Proof& t, HeadForm& out) {
  std::visit(
      overloaded{
          [&](const Proof::PApp& n) {
            spine_walk(n.fn, out);
            out.spine.push_back({SpineItem::AppArg{n.arg}});
          },
          [&](const Proof::FOApp& n) {
            spine_walk(n.body, out);
            out.spine.push_back({SpineItem::FOArg{n.arg}});
          },
          [&](const Proof::Proj& n) {
            spine_walk(n.body, out);
            out.spine.push_back({SpineItem::ProjItem{n.idx}});
          },
          [&](const Proof::Case& n) {
            spine_walk(n.scrut, out);
            out.spine.push_back(
                {SpineItem::CaseCtx{n.lvar, n.lbranch, n.rvar, n.rbranch}});
          },
          [&](const Proof::ExElim& n) {
            spine_walk(n.scrut, out);
            out.spine.push_back({SpineItem::ExElimCtx{n.fovar, n.pvar, n.body}});
          },
          [&](const Proof::Efq& n) {
            out.kind = HeadKind::ConstEfq;
            out.efq_target = n.target;
            out.spine.push_back({SpineItem::AppArg{n.body}});
          },
          [&](const Proof::PVar&) {
            out.kind = HeadKind::Var;
            out.head = t;
          },
          [&](const Proof::CDAxiom&) {
            out.kind = HeadKind::ConstD;
            out.head = t;
          },
          [&](const Proof::FalsityConst&) {
            out.kind = HeadKind::ConstF;
            out.head = t;
          },
          [&](const auto&) {  // Lam, FOLam, Pair, Inj, ExIntro
            out.kind = HeadKind::Intro;
            out.head = t;
          },
      },
      t.node());
}
}  // namespace detail

inline HeadForm head_decompose(const Proof& t) {
  HeadForm out;
  Proof cur = t;
  while (auto* lam = as<Proof::Lam>(cur)) {
    out.binders.emplace_back(lam->var, lam->ann);
    cur = lam->body;
  }
  detail::spine_walk(cur, out);
  return out;
}

inline Proof head_recompose(const HeadForm& h) {
  size_t i = 0;
  Proof cur = [&]() -> Proof {
    if (h.kind == HeadKind::ConstEfq) {
      // the first spine item is the efq argument
      const auto& arg = std::get<SpineItem::AppArg>(h.spine.at(i).item);
      ++i;
      return p_efq(*h.efq_target, arg.arg);
    }
    return *h.head;
  }();
  for (; i < h.spine.size(); ++i) {
    cur = std::visit(
        overloaded{
            [&](const SpineItem::AppArg& s) { return p_app(cur, s.arg); },
            [&](const SpineItem::FOArg& s) { return p_foapp(cur, s.arg); },
            [&](const SpineItem::ProjItem& s) { return p_proj(cur, s.idx); },
            [&](const SpineItem::CaseCtx& s) {
              return p_case(cur, s.lvar, s.lbranch, s.rvar, s.rbranch);
            },
            [&](const SpineItem::ExElimCtx& s) {
              return p_unpack(cur, s.fovar, s.pvar, s.body);
            },
        },
        h.spine[i].item);
  }
  for (auto it = h.binders.rbegin(); it != h.binders.rend(); ++it)
    cur = p_lam(it->first, it->second, cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Subject-reduction replay
// ---------------------------------------------------------------------------

struct ReplayReport {
  bool ok = false;
  std::string message;
  std::optional<Step> offending;
  Trace trace;
};

// Normalizes t and re-infers after every step, asserting the type stays
// alpha-equal to the original and the free proof variables never grow.
inline ReplayReport replay_subject_reduction(const Signature& sig, const Context& ctx,
                                             const Proof& t, Mode mode,
                                             int fuel = kDefaultFuel) {
  ReplayReport rep{false, "", std::nullopt, normalize(t, fuel)};
  auto ty = infer(sig, ctx, t, mode);
  if (!ty) {
    rep.message = "initial term does not typecheck: " + ty.error().render();
    return rep;
  }
  for (const Step& s : rep.trace.steps) {
    auto after_ty = infer(sig, ctx, s.after, mode);
    if (!after_ty) {
      rep.message = "step broke typing: " + after_ty.error().render();
      rep.offending = s;
      return rep;
    }
    if (!alpha_equal(*ty, *after_ty)) {
      rep.message = "type changed from " + print(*ty) + " to " + print(*after_ty);
      rep.offending = s;
      return rep;
    }
    NameSet before_fv = proof_free_vars(s.before);
    for (const std::string& v : proof_free_vars(s.after)) {
      if (!before_fv.count(v)) {
        rep.message = "free proof variable " + v + " appeared during reduction";
        rep.offending = s;
        return rep;
      }
    }
  }
  if (rep.trace.fuel_exhausted) {
    rep.message = "fuel exhausted before reaching a normal form";
    return rep;
  }
  rep.ok = true;
  return rep;
}

}  // namespace cdk
