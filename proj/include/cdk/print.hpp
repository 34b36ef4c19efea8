#pragma once

// Rendering of terms, formulas and proof terms back to surface syntax.
// The printer emits the minimal parenthesization that reparses to an
// alpha-equal (in fact structurally equal) tree, so printing is the
// canonical serialization used in traces, JSON output and error messages.

#include <string>
#include <vector>

#include "cdk/syntax.hpp"

namespace cdk {

inline std::string print(const Term& t) {
  return std::visit(overloaded{
                        [&](const Term::Var& v) { return v.name; },
                        [&](const Term::Cnst& c) { return c.name; },
                        [&](const Term::App& a) {
                          std::string s = a.fn + "(";
                          for (size_t i = 0; i < a.args.size(); ++i) {
                            if (i) s += ", ";
                            s += print(a.args[i]);
                          }
                          return s + ")";
                        },
                    },
                    t.node());
}

namespace detail {
// Formula precedence, loosest to tightest: -> < | < & < unary (~, quantifiers).
enum FPrec { FP_IMP = 0, FP_OR = 1, FP_AND = 2, FP_UNARY = 3, FP_ATOM = 4 };

inline std::string print_f(const Formula& f, int min_prec);

inline int fprec(const Formula& f) {
  return std::visit(overloaded{
                        [](const Formula::Atom&) { return (int)FP_ATOM; },
                        [](const Formula::Bottom&) { return (int)FP_ATOM; },
                        [](const Formula::And&) { return (int)FP_AND; },
                        [](const Formula::Or&) { return (int)FP_OR; },
                        [](const Formula::Imp& n) {
                          return (int)(is_bottom(n.r) ? FP_UNARY : FP_IMP);
                        },
                        [](const Formula::Forall&) { return (int)FP_UNARY; },
                        [](const Formula::Exists&) { return (int)FP_UNARY; },
                    },
                    f.node());
}

inline std::string print_f(const Formula& f, int min_prec) {
  std::string s = std::visit(
      overloaded{
          [&](const Formula::Atom& a) {
            if (a.args.empty()) return a.pred;
            std::string r = a.pred + "(";
            for (size_t i = 0; i < a.args.size(); ++i) {
              if (i) r += ", ";
              r += print(a.args[i]);
            }
            return r + ")";
          },
          [&](const Formula::Bottom&) { return std::string("bot"); },
          [&](const Formula::And& n) {
            return print_f(n.l, FP_AND) + " & " + print_f(n.r, FP_UNARY);
          },
          [&](const Formula::Or& n) {
            return print_f(n.l, FP_OR) + " | " + print_f(n.r, FP_AND);
          },
          [&](const Formula::Imp& n) {
            // A -> bot prints as the negation it abbreviates.
            if (is_bottom(n.r)) return "~" + print_f(n.l, FP_UNARY);
            return print_f(n.l, FP_OR) + " -> " + print_f(n.r, FP_IMP);
          },
          [&](const Formula::Forall& n) {
            return "forall " + n.var + ". " + print_f(n.body, FP_UNARY);
          },
          [&](const Formula::Exists& n) {
            return "exists " + n.var + ". " + print_f(n.body, FP_UNARY);
          },
      },
      f.node());
  if (fprec(f) < min_prec) return "(" + s + ")";
  return s;
}

// Proof precedence: binder-like forms < application chains < atoms.
enum PPrec { PP_LOW = 0, PP_APP = 1, PP_ATOM = 2 };

inline int pprec(const Proof& p) {
  return std::visit(
      overloaded{
          [](const Proof::PVar&) { return (int)PP_ATOM; },
          [](const Proof::Lam&) { return (int)PP_LOW; },
          [](const Proof::PApp&) { return (int)PP_APP; },
          [](const Proof::Pair&) { return (int)PP_ATOM; },
          [](const Proof::Proj&) { return (int)PP_APP; },
          [](const Proof::Inj&) { return (int)PP_LOW; },
          [](const Proof::Case&) { return (int)PP_LOW; },
          [](const Proof::FOLam&) { return (int)PP_LOW; },
          [](const Proof::FOApp&) { return (int)PP_APP; },
          [](const Proof::ExIntro&) { return (int)PP_ATOM; },
          [](const Proof::ExElim&) { return (int)PP_LOW; },
          [](const Proof::CDAxiom&) { return (int)PP_ATOM; },
          [](const Proof::Efq&) { return (int)PP_ATOM; },
          [](const Proof::FalsityConst&) { return (int)PP_ATOM; },
      },
      p.node());
}

inline std::string print_p(const Proof& p, int min_prec) {
  std::string s = std::visit(
      overloaded{
          [&](const Proof::PVar& n) { return n.name; },
          [&](const Proof::Lam& n) {
            return "fun (" + n.var + " : " + print_f(n.ann, FP_IMP) + ") => " +
                   print_p(n.body, PP_LOW);
          },
          [&](const Proof::PApp& n) {
            return print_p(n.fn, PP_APP) + " " + print_p(n.arg, PP_ATOM);
          },
          [&](const Proof::Pair& n) {
            return "(" + print_p(n.l, PP_LOW) + ", " + print_p(n.r, PP_LOW) + ")";
          },
          [&](const Proof::Proj& n) {
            return print_p(n.body, PP_APP) + (n.idx == 0 ? ".0" : ".1");
          },
          [&](const Proof::Inj& n) {
            return std::string(n.idx == 0 ? "inl" : "inr") + "[" +
                   print_f(n.ann, FP_IMP) + "] " + print_p(n.body, PP_ATOM);
          },
          [&](const Proof::Case& n) {
            return "case " + print_p(n.scrut, PP_LOW) + " of { inl " + n.lvar + " => " +
                   print_p(n.lbranch, PP_LOW) + " | inr " + n.rvar + " => " +
                   print_p(n.rbranch, PP_LOW) + " }";
          },
          [&](const Proof::FOLam& n) {
            return "gen " + n.var + " => " + print_p(n.body, PP_LOW);
          },
          [&](const Proof::FOApp& n) {
            return print_p(n.body, PP_APP) + " @ " + print(n.arg);
          },
          [&](const Proof::ExIntro& n) {
            return "pack[" + print_f(n.ann, FP_IMP) + "](" + print(n.witness) + ", " +
                   print_p(n.body, PP_LOW) + ")";
          },
          [&](const Proof::ExElim& n) {
            return "unpack " + print_p(n.scrut, PP_LOW) + " as (" + n.fovar + ", " +
                   n.pvar + ") in " + print_p(n.body, PP_LOW);
          },
          [&](const Proof::CDAxiom& n) {
            return "D[" + print_f(n.inst, FP_IMP) + "]";
          },
          [&](const Proof::Efq& n) {
            return "efq[" + print_f(n.target, FP_IMP) + "](" + print_p(n.body, PP_LOW) +
                   ")";
          },
          [&](const Proof::FalsityConst&) { return std::string("F"); },
      },
      p.node());
  if (pprec(p) < min_prec) return "(" + s + ")";
  return s;
}
}  // namespace detail

inline std::string print(const Formula& f) { return detail::print_f(f, detail::FP_IMP); }
inline std::string print(const Proof& p) { return detail::print_p(p, detail::PP_LOW); }

// ---------------------------------------------------------------------------
// Subterm paths
// ---------------------------------------------------------------------------

// A path addresses a subterm by child indices from the root. Child order per
// constructor: Lam/FOLam/Proj/Inj/FOApp/ExIntro/Efq have the sole proof child
// at 0; PApp is fn=0, arg=1; Pair is l=0, r=1; Case is scrut=0, lbranch=1,
// rbranch=2; ExElim is scrut=0, body=1.
using Path = std::vector<int>;

inline std::string path_str(const Path& path) {
  if (path.empty()) return "/";
  std::string s;
  for (int i : path) s += "/" + std::to_string(i);
  return s;
}

}  // namespace cdk
