#pragma once

// Extraction of computational content from closed normal proofs: the witness
// of an existential, the realized side of a disjunction, the generalized
// body of a universal. These are pure shape checks — for a closed normal
// well-typed term the introduction shape is guaranteed, so a shape failure
// here indicates a kernel bug, not a user error. Callers normalize first.

#include <string>

#include "cdk/reduce.hpp"

namespace cdk {

enum class ExtractErrKind { NotClosed, NotNormal, ShapeViolation };

inline std::string extract_err_kind_name(ExtractErrKind k) {
  switch (k) {
    case ExtractErrKind::NotClosed: return "NotClosed";
    case ExtractErrKind::NotNormal: return "NotNormal";
    case ExtractErrKind::ShapeViolation: return "ShapeViolation";
  }
  return "?";
}

struct ExtractError {
  ExtractErrKind kind;
  std::string detail;

  std::string render() const { return extract_err_kind_name(kind) + ": " + detail; }
};

struct WitnessResult {
  Term witness;
  Proof body;  // proves the matrix at the witness
};

struct DisjunctResult {
  int side;  // 0 for the left disjunct, 1 for the right
  Proof body;
};

struct UniversalResult {
  std::string var;
  Proof body;
};

namespace detail {
inline std::optional<ExtractError> extract_preconditions(const Proof& t) {
  NameSet fv = proof_free_vars(t);
  if (!fv.empty())
    return ExtractError{ExtractErrKind::NotClosed,
                        "term has free proof variable " + *fv.begin()};
  if (!is_normal(t))
    return ExtractError{ExtractErrKind::NotNormal, "term still has a redex"};
  return std::nullopt;
}
}  // namespace detail

// For a closed normal proof of exists a. A: the introduced witness m and the
// proof of A[m/a].
inline Result<WitnessResult, ExtractError> extract_witness(const Proof& t) {
  if (auto e = detail::extract_preconditions(t)) return *e;
  auto* intro = as<Proof::ExIntro>(t);
  if (!intro)
    return ExtractError{ExtractErrKind::ShapeViolation,
                        "closed normal proof of an existential is not a pack: " +
                            print(t)};
  return WitnessResult{intro->witness, intro->body};
}

// For a closed normal proof of A | B: which injection was taken, and its body.
inline Result<DisjunctResult, ExtractError> extract_disjunct(const Proof& t) {
  if (auto e = detail::extract_preconditions(t)) return *e;
  auto* inj = as<Proof::Inj>(t);
  if (!inj)
    return ExtractError{ExtractErrKind::ShapeViolation,
                        "closed normal proof of a disjunction is not an injection: " +
                            print(t)};
  return DisjunctResult{inj->idx, inj->body};
}

// For a closed normal proof of forall a. A: the binder and the body proving A.
inline Result<UniversalResult, ExtractError> extract_universal(const Proof& t) {
  if (auto e = detail::extract_preconditions(t)) return *e;
  auto* fol = as<Proof::FOLam>(t);
  if (!fol)
    return ExtractError{ExtractErrKind::ShapeViolation,
                        "closed normal proof of a universal is not an FO abstraction: " +
                            print(t)};
  return UniversalResult{fol->var, fol->body};
}

}  // namespace cdk
