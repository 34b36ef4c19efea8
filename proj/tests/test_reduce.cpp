#include <catch2/catch_amalgamated.hpp>

#include "cdk/cdk.hpp"
#include "gen.hpp"

using namespace cdk;

namespace {

Formula P() { return f_atom("P0"); }
Formula Q() { return f_atom("Q0"); }
Formula R(const Term& t) { return f_atom("R1", {t}); }

Proof id(const Formula& a) { return p_lam("x", a, p_var("x", a)); }

}  // namespace

TEST_CASE("beta contraction", "[reduce]") {
  Proof t = p_app(id(P()), p_var("y", P()));
  REQUIRE(redex_tag(t) == RuleTag::Beta);
  CHECK(alpha_equal(contract(t), p_var("y", P())));

  SECTION("substitution is capture-avoiding") {
    // (fun x => fun y => x) y  -->  fun y' => y
    Proof f = p_lam("x", P(), p_lam("y", Q(), p_var("x", P())));
    Proof got = contract(p_app(f, p_var("y", P())));
    CHECK(alpha_equal(got, p_lam("z", Q(), p_var("y", P()))));
    CHECK(proof_free_vars(got) == NameSet{"y"});
  }
}

TEST_CASE("first-order beta contraction", "[reduce]") {
  Proof hall = p_var("h", f_forall("a", R(t_var("a"))));
  Proof t = p_foapp(p_folam("b", p_foapp(hall, t_var("b"))), t_const("c"));
  REQUIRE(redex_tag(t) == RuleTag::FOBeta);
  CHECK(alpha_equal(contract(t), p_foapp(hall, t_const("c"))));
}

TEST_CASE("projection contraction", "[reduce]") {
  Proof pair = p_pair(p_var("u", P()), p_var("v", Q()));
  CHECK(redex_tag(p_proj(pair, 0)) == RuleTag::ProjPair);
  CHECK(alpha_equal(contract(p_proj(pair, 0)), p_var("u", P())));
  CHECK(alpha_equal(contract(p_proj(pair, 1)), p_var("v", Q())));
}

TEST_CASE("case contraction", "[reduce]") {
  Formula pq = f_or(P(), Q());
  Proof t0 = p_case(p_inj(0, p_var("u", P()), pq), "x", p_var("x", P()), "y",
                    p_var("w", P()));
  REQUIRE(redex_tag(t0) == RuleTag::CaseInj);
  CHECK(alpha_equal(contract(t0), p_var("u", P())));
  Proof t1 = p_case(p_inj(1, p_var("v", Q()), pq), "x", p_var("w", P()), "y",
                    p_var("w", P()));
  CHECK(alpha_equal(contract(t1), p_var("w", P())));
}

TEST_CASE("unpack contraction substitutes the witness before the proof", "[reduce]") {
  // unpack pack(c, k) as (b, x) in x   where k : R1(b) mentions a FREE b.
  // The body's x is annotated R1(b_bound): the first-order substitution
  // rewrites that annotation to R1(c), and only then is x replaced by k, so
  // k's free b must survive uncaptured.
  Formula ex = f_exists("z", R(t_var("z")));
  Proof k = p_var("k", R(t_var("b")));
  Proof t = p_unpack(p_pack(t_const("c"), k, ex), "b", "x", p_var("x", R(t_var("b"))));
  REQUIRE(redex_tag(t) == RuleTag::ExElimIntro);
  Proof got = contract(t);
  CHECK(alpha_equal(got, p_var("k", R(t_var("b")))));
  CHECK(fo_free_vars(got) == NameSet{"b"});

  SECTION("both substitutions happen") {
    // unpack pack(c, u) as (b, x) in (x, m : R1(b))
    Proof u = p_var("u", R(t_const("c")));
    Proof body = p_pair(p_var("x", R(t_var("b"))), p_var("m", R(t_var("b"))));
    Proof got2 = contract(p_unpack(p_pack(t_const("c"), u, ex), "b", "x", body));
    Proof want = p_pair(p_var("u", R(t_const("c"))), p_var("m", R(t_const("c"))));
    CHECK(alpha_equal(got2, want));
  }
}

TEST_CASE("constant-domain contractions", "[reduce]") {
  Formula inst = f_imp(f_forall("a", f_or(R(t_var("a")), Q())),
                       f_or(f_forall("a", R(t_var("a"))), Q()));
  Formula concl = f_or(f_forall("a", R(t_var("a"))), Q());
  Formula disj_a = f_or(R(t_var("a")), Q());
  Proof hall = p_var("f", f_forall("b", R(t_var("b"))));

  SECTION("left injection keeps the abstraction") {
    Proof arg = p_folam("a", p_inj(0, p_foapp(hall, t_var("a")), disj_a));
    Proof t = p_app(p_cd(inst), arg);
    REQUIRE(redex_tag(t) == RuleTag::CDInj0);
    Proof want = p_inj(0, p_folam("a", p_foapp(hall, t_var("a"))), concl);
    CHECK(alpha_equal(contract(t), want));
  }
  SECTION("right injection plugs the dummy constant") {
    Proof arg = p_folam("a", p_inj(1, p_var("y", Q()), disj_a));
    Proof t = p_app(p_cd(inst), arg);
    REQUIRE(redex_tag(t) == RuleTag::CDInj1);
    Proof want = p_inj(1, p_var("y", Q()), concl);
    CHECK(alpha_equal(contract(t), want));
  }
  SECTION("the dummy substitution reaches annotations") {
    // inr body mentioning the bound variable in its annotation-only position.
    Formula disj2 = f_or(R(t_var("a")), f_imp(R(t_var("a")), R(t_var("a"))));
    // Not a legal instance (a free in B), so no CD redex may fire.
    Formula bad = f_imp(f_forall("a", disj2),
                        f_or(f_forall("a", R(t_var("a"))), f_imp(R(t_var("a")), R(t_var("a")))));
    Proof arg = p_folam("a", p_inj(1, id(R(t_var("a"))), disj2));
    CHECK_FALSE(redex_tag(p_app(p_cd(bad), arg)).has_value());
  }
  SECTION("no contraction without a literal abstracted injection") {
    Proof not_inj = p_folam("a", p_foapp(p_var("g", f_forall("b", disj_a)), t_var("a")));
    CHECK_FALSE(redex_tag(p_app(p_cd(inst), not_inj)).has_value());
    CHECK_FALSE(redex_tag(p_app(p_cd(inst), p_var("h", f_forall("a", disj_a)))).has_value());
  }
  SECTION("contract on a non-redex throws") {
    CHECK_THROWS_AS(contract(p_var("x", P())), NotARedexError);
  }
}

TEST_CASE("redex discovery is leftmost-outermost", "[reduce]") {
  Proof beta = p_app(id(P()), p_var("u", P()));

  SECTION("siblings are found left to right") {
    Proof t = p_pair(beta, p_app(id(Q()), p_var("v", Q())));
    auto rs = find_redexes(t);
    REQUIRE(rs.size() == 2);
    CHECK(path_str(rs[0].first) == "/0");
    CHECK(path_str(rs[1].first) == "/1");
    auto s = step(t);
    REQUIRE(s);
    CHECK(path_str(s->path) == "/0");
    CHECK(s->rule == RuleTag::Beta);
  }
  SECTION("an outer redex shadows the one inside it") {
    // (fun x => (fun y => y) x) u : redexes at / and /0/0.
    Proof f = p_lam("x", P(), p_app(id(P()), p_var("x", P())));
    Proof t = p_app(f, p_var("u", P()));
    auto rs = find_redexes(t);
    REQUIRE(rs.size() == 2);
    CHECK(path_str(rs[0].first) == "/");
    CHECK(path_str(rs[1].first) == "/0/0");
    auto s = step(t);
    REQUIRE(s);
    CHECK(s->path.empty());
  }
  SECTION("normal terms have no redexes") {
    CHECK(is_normal(id(P())));
    CHECK(is_normal(p_var("x", P())));
    CHECK_FALSE(is_normal(beta));
    CHECK_FALSE(step(id(P())).has_value());
  }
}

TEST_CASE("subterm addressing", "[reduce]") {
  Proof t = p_lam("x", P(), p_case(p_var("h", f_or(P(), Q())), "a", p_var("a", P()),
                                   "b", p_var("x", P())));
  auto scrut = subterm_at(t, {0, 0});
  REQUIRE(scrut);
  CHECK(alpha_equal(*scrut, p_var("h", f_or(P(), Q()))));
  auto rb = subterm_at(t, {0, 2});
  REQUIRE(rb);
  CHECK(alpha_equal(*rb, p_var("x", P())));
  CHECK_FALSE(subterm_at(t, {0, 3}).has_value());
  CHECK_FALSE(subterm_at(t, {1}).has_value());

  Proof u = replace_at(t, {0, 0}, p_var("k", f_or(P(), Q())));
  auto back = subterm_at(u, {0, 0});
  REQUIRE(back);
  CHECK(alpha_equal(*back, p_var("k", f_or(P(), Q()))));
  CHECK(alpha_equal(replace_at(t, {}, p_var("z", P())), p_var("z", P())));
}

TEST_CASE("normalize runs to a normal form and records the trace", "[reduce]") {
  // (fun x => (x, x).1) ((fun y => y) u)
  Proof inner = p_app(id(P()), p_var("u", P()));
  Proof f = p_lam("x", P(), p_proj(p_pair(p_var("x", P()), p_var("x", P())), 1));
  Proof t = p_app(f, inner);
  Trace tr = normalize(t);
  CHECK(tr.normal);
  CHECK_FALSE(tr.fuel_exhausted);
  REQUIRE(tr.steps.size() == 3);
  CHECK(tr.steps[0].rule == RuleTag::Beta);
  CHECK(path_str(tr.steps[0].path) == "/");
  CHECK(tr.steps[1].rule == RuleTag::ProjPair);
  CHECK(tr.steps[2].rule == RuleTag::Beta);
  CHECK(alpha_equal(tr.last(), p_var("u", P())));
  // Each step's before is the previous step's after.
  CHECK(alpha_equal(tr.steps[0].before, t));
  for (size_t i = 1; i < tr.steps.size(); ++i)
    CHECK(alpha_equal(tr.steps[i].before, tr.steps[i - 1].after));

  SECTION("exact fuel still reports normal") {
    Trace tight = normalize(t, 3);
    CHECK(tight.normal);
    CHECK_FALSE(tight.fuel_exhausted);
  }
  SECTION("one step short reports exhaustion") {
    Trace starved = normalize(t, 2);
    CHECK_FALSE(starved.normal);
    CHECK(starved.fuel_exhausted);
    CHECK(starved.steps.size() == 2);
  }
  SECTION("normalization is deterministic") {
    Trace again = normalize(t);
    REQUIRE(again.steps.size() == tr.steps.size());
    for (size_t i = 0; i < tr.steps.size(); ++i) {
      CHECK(again.steps[i].rule == tr.steps[i].rule);
      CHECK(again.steps[i].path == tr.steps[i].path);
      CHECK(print(again.steps[i].after) == print(tr.steps[i].after));
    }
  }
}

TEST_CASE("head decomposition", "[reduce]") {
  SECTION("binders, variable head, spine in evaluation order") {
    // fun x => ((x u) @ c).0
    Proof u = p_var("u", P());
    Proof t = p_lam("x", f_imp(P(), f_forall("a", f_and(R(t_var("a")), Q()))),
                    p_proj(p_foapp(p_app(p_var("x", f_imp(P(), f_forall("a", f_and(R(t_var("a")), Q())))), u),
                                   t_const("c")),
                           0));
    HeadForm h = head_decompose(t);
    CHECK(h.binders.size() == 1);
    CHECK(h.kind == HeadKind::Var);
    REQUIRE(h.head);
    REQUIRE(h.spine.size() == 3);
    CHECK(std::holds_alternative<SpineItem::AppArg>(h.spine[0].item));
    CHECK(std::holds_alternative<SpineItem::FOArg>(h.spine[1].item));
    CHECK(std::holds_alternative<SpineItem::ProjItem>(h.spine[2].item));
    CHECK(alpha_equal(head_recompose(h), t));
  }
  SECTION("efq is a constant head consuming its argument") {
    Proof t = p_app(p_efq(f_imp(P(), Q()), p_var("b", f_bot())), p_var("u", P()));
    HeadForm h = head_decompose(t);
    CHECK(h.kind == HeadKind::ConstEfq);
    REQUIRE(h.efq_target);
    CHECK(alpha_equal(*h.efq_target, f_imp(P(), Q())));
    REQUIRE(h.spine.size() == 2);
    CHECK(alpha_equal(head_recompose(h), t));
  }
  SECTION("an applied D is a constant head") {
    Formula inst = f_imp(f_forall("a", f_or(R(t_var("a")), Q())),
                         f_or(f_forall("a", R(t_var("a"))), Q()));
    Proof t = p_app(p_cd(inst), p_var("h", f_forall("a", f_or(R(t_var("a")), Q()))));
    HeadForm h = head_decompose(t);
    CHECK(h.kind == HeadKind::ConstD);
    CHECK(h.spine.size() == 1);
    CHECK(alpha_equal(head_recompose(h), t));
  }
  SECTION("a redex shows up as an introduction head") {
    Proof t = p_app(id(P()), p_var("u", P()));
    HeadForm h = head_decompose(t);
    CHECK(h.kind == HeadKind::Intro);
    CHECK(alpha_equal(head_recompose(h), t));
  }
  SECTION("case and unpack frames carry their binders") {
    Proof t = p_case(p_var("h", f_or(P(), Q())), "x", p_var("x", P()), "y",
                     p_var("z", P()));
    HeadForm h = head_decompose(t);
    CHECK(h.kind == HeadKind::Var);
    REQUIRE(h.spine.size() == 1);
    CHECK(std::holds_alternative<SpineItem::CaseCtx>(h.spine[0].item));
    CHECK(alpha_equal(head_recompose(h), t));
  }
  SECTION("recompose inverts decompose on generated terms") {
    gen::Gen g(99);
    for (int i = 0; i < 100; ++i) {
      auto [t, ty] = g.open_term(4);
      (void)ty;
      CHECK(alpha_equal(head_recompose(head_decompose(t)), t));
    }
  }
  SECTION("closed normal forms never have a variable or D head") {
    gen::Gen g(512);
    for (int i = 0; i < 60; ++i) {
      auto [t, ty] = g.closed_term(3);
      (void)ty;
      Trace tr = normalize(t);
      REQUIRE(tr.normal);
      HeadForm h = head_decompose(tr.last());
      // A closed normal proof starts with its closure binders; beneath them
      // the head can be a variable bound by those binders, but never D.
      CHECK(h.kind != HeadKind::ConstD);
    }
  }
}

TEST_CASE("subject reduction replay", "[reduce][prop]") {
  Signature sig = gen::make_sig();
  Context ctx = gen::seed_context();

  SECTION("a well-typed chain replays") {
    Proof t = p_app(id(P()), p_var("hp", P()));
    ReplayReport rep = replay_subject_reduction(sig, ctx, t, Mode::CD);
    CHECK(rep.ok);
    CHECK(rep.trace.steps.size() == 1);
  }
  SECTION("an ill-typed term is reported up front") {
    Proof t = p_app(p_var("hp", P()), p_var("hp", P()));
    ReplayReport rep = replay_subject_reduction(sig, ctx, t, Mode::CD);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message.find("does not typecheck") != std::string::npos);
  }
  SECTION("generated terms preserve their types along every step") {
    gen::Gen g(31337);
    for (int i = 0; i < 150; ++i) {
      auto [t, ty] = g.open_term(4 + i % 4);
      (void)ty;
      ReplayReport rep = replay_subject_reduction(sig, ctx, t, Mode::CD);
      INFO(print(t));
      CHECK(rep.ok);
    }
  }
}
