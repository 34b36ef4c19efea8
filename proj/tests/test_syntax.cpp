#include <catch2/catch_amalgamated.hpp>

#include "cdk/cdk.hpp"

using namespace cdk;

namespace {

Formula R(const Term& t) { return f_atom("R1", {t}); }
Formula P() { return f_atom("P0"); }
Formula Q() { return f_atom("Q0"); }

}  // namespace

TEST_CASE("fresh_name appends primes until the name is unused", "[syntax]") {
  NameSet avoid{"x", "x'"};
  CHECK(fresh_name("x", avoid) == "x''");
  CHECK(fresh_name("y", avoid) == "y");
  CHECK(fresh_name("x", {}) == "x");
}

TEST_CASE("first-order terms compare structurally", "[syntax]") {
  CHECK(t_var("a") == t_var("a"));
  CHECK(t_var("a") != t_var("b"));
  CHECK(t_var("a") != t_const("a"));
  CHECK(t_app("s", {t_const("c")}) == t_app("s", {t_const("c")}));
  CHECK(t_app("s", {t_const("c")}) != t_app("s", {t_var("c")}));
  CHECK(t_dum() == t_const("dum"));
}

TEST_CASE("alpha equivalence of formulas", "[syntax]") {
  SECTION("bound names do not matter") {
    CHECK(alpha_equal(f_forall("a", R(t_var("a"))), f_forall("b", R(t_var("b")))));
    CHECK(alpha_equal(f_exists("a", R(t_var("a"))), f_exists("z", R(t_var("z")))));
  }
  SECTION("free names do matter") {
    CHECK_FALSE(alpha_equal(R(t_var("a")), R(t_var("b"))));
    CHECK_FALSE(alpha_equal(f_forall("a", R(t_var("b"))), f_forall("c", R(t_var("c")))));
  }
  SECTION("a bound name never matches a free one") {
    // forall a. R(a) vs forall b. R(a): the second body's a is free.
    CHECK_FALSE(
        alpha_equal(f_forall("a", R(t_var("a"))), f_forall("b", R(t_var("a")))));
  }
  SECTION("nested and shadowing binders") {
    Formula l = f_forall("a", f_forall("a", R(t_var("a"))));
    Formula r = f_forall("b", f_forall("c", R(t_var("c"))));
    CHECK(alpha_equal(l, r));
    CHECK_FALSE(alpha_equal(l, f_forall("b", f_forall("c", R(t_var("b"))))));
  }
  SECTION("connectives compare componentwise") {
    CHECK(alpha_equal(f_imp(P(), f_bot()), f_neg(P())));
    CHECK_FALSE(alpha_equal(f_and(P(), Q()), f_and(Q(), P())));
  }
}

TEST_CASE("alpha equivalence of proofs", "[syntax]") {
  SECTION("lambda binders") {
    Proof l = p_lam("x", P(), p_var("x", P()));
    Proof r = p_lam("y", P(), p_var("y", P()));
    CHECK(alpha_equal(l, r));
    CHECK_FALSE(alpha_equal(l, p_lam("y", Q(), p_var("y", Q()))));
  }
  SECTION("annotations participate") {
    Proof l = p_inj(0, p_var("x", P()), f_or(P(), Q()));
    Proof r = p_inj(0, p_var("x", P()), f_or(P(), P()));
    CHECK_FALSE(alpha_equal(l, r));
  }
  SECTION("case branch binders are independent") {
    Proof l = p_case(p_var("h", f_or(P(), Q())), "x", p_var("x", P()), "y",
                     p_var("y", Q()));
    Proof r = p_case(p_var("h", f_or(P(), Q())), "u", p_var("u", P()), "v",
                     p_var("v", Q()));
    CHECK(alpha_equal(l, r));
  }
  SECTION("first-order binders in proofs align with formula binders") {
    Proof l = p_folam("a", p_var("h", R(t_var("a"))));
    Proof r = p_folam("b", p_var("h", R(t_var("b"))));
    CHECK(alpha_equal(l, r));
    CHECK_FALSE(alpha_equal(l, p_folam("b", p_var("h", R(t_var("a"))))));
  }
  SECTION("unpack binds one variable of each kind") {
    Proof scrut = p_var("e", f_exists("a", R(t_var("a"))));
    Proof l = p_unpack(scrut, "b", "x", p_pair(p_var("x", R(t_var("b"))), p_var("x", R(t_var("b")))));
    Proof r = p_unpack(scrut, "c", "z", p_pair(p_var("z", R(t_var("c"))), p_var("z", R(t_var("c")))));
    CHECK(alpha_equal(l, r));
  }
}

TEST_CASE("free first-order variables", "[syntax]") {
  CHECK(fo_free_vars(R(t_var("a"))) == NameSet{"a"});
  CHECK(fo_free_vars(f_forall("a", R(t_var("a")))).empty());
  CHECK(fo_free_vars(f_forall("a", f_atom("S2", {t_var("a"), t_var("b")}))) ==
        NameSet{"b"});
  CHECK(fo_free_vars(t_app("s", {t_var("a"), t_const("c")})) == NameSet{"a"});

  SECTION("proof annotations count") {
    CHECK(fo_free_vars(p_var("x", R(t_var("a")))) == NameSet{"a"});
    CHECK(fo_free_vars(p_folam("a", p_var("x", R(t_var("a"))))).empty());
    CHECK(fo_free_vars(p_foapp(p_var("h", f_forall("b", R(t_var("b")))), t_var("m"))) ==
          NameSet{"m"});
  }
  SECTION("unpack removes its first-order binder from the body only") {
    Proof scrut = p_var("e", f_exists("a", R(t_var("a"))));
    Proof t = p_unpack(scrut, "b", "x", p_var("x", R(t_var("b"))));
    CHECK(fo_free_vars(t).empty());
    Proof leaky = p_unpack(p_var("e", f_exists("a", R(t_var("b")))), "b", "x",
                           p_var("x", P()));
    CHECK(fo_free_vars(leaky) == NameSet{"b"});  // free in the scrutinee
  }
}

TEST_CASE("free proof variables", "[syntax]") {
  Proof id = p_lam("x", P(), p_var("x", P()));
  CHECK(proof_free_vars(id).empty());
  CHECK(proof_free_vars(p_app(id, p_var("y", P()))) == NameSet{"y"});
  Proof c = p_case(p_var("h", f_or(P(), Q())), "x", p_var("x", P()), "y",
                   p_var("z", P()));
  CHECK(proof_free_vars(c) == NameSet{"h", "z"});
  Proof u = p_unpack(p_var("e", f_exists("a", R(t_var("a")))), "b", "x",
                     p_app(p_var("f", f_imp(R(t_var("b")), P())), p_var("x", R(t_var("b")))));
  CHECK(proof_free_vars(u) == NameSet{"e", "f"});
}

TEST_CASE("first-order substitution in formulas", "[subst]") {
  SECTION("plain replacement") {
    CHECK(alpha_equal(fo_subst(R(t_var("a")), t_const("c"), "a"), R(t_const("c"))));
  }
  SECTION("substitution stops at a shadowing binder") {
    Formula f = f_forall("a", R(t_var("a")));
    CHECK(alpha_equal(fo_subst(f, t_const("c"), "a"), f));
  }
  SECTION("binders are renamed to avoid capture") {
    // (forall b. S2(a,b))[b/a] must not capture the substituted b.
    Formula f = f_forall("b", f_atom("S2", {t_var("a"), t_var("b")}));
    Formula got = fo_subst(f, t_var("b"), "a");
    Formula want = f_forall("z", f_atom("S2", {t_var("b"), t_var("z")}));
    CHECK(alpha_equal(got, want));
    CHECK(fo_free_vars(got) == NameSet{"b"});
  }
  SECTION("no-op when the variable is not free") {
    Formula f = f_imp(P(), Q());
    CHECK(alpha_equal(fo_subst(f, t_const("c"), "a"), f));
  }
}

TEST_CASE("first-order substitution in proofs", "[subst]") {
  SECTION("annotations and witnesses are rewritten") {
    Proof t = p_pack(t_var("a"), p_var("x", R(t_var("a"))), f_exists("z", R(t_var("z"))));
    Proof got = fo_subst(t, t_const("c"), "a");
    Proof want = p_pack(t_const("c"), p_var("x", R(t_const("c"))),
                        f_exists("z", R(t_var("z"))));
    CHECK(alpha_equal(got, want));
  }
  SECTION("gen binders rename to avoid capture") {
    // (gen b => x : S2(a,b))[b/a]
    Proof t = p_folam("b", p_var("x", f_atom("S2", {t_var("a"), t_var("b")})));
    Proof got = fo_subst(t, t_var("b"), "a");
    Proof want = p_folam("w", p_var("x", f_atom("S2", {t_var("b"), t_var("w")})));
    CHECK(alpha_equal(got, want));
  }
}

TEST_CASE("proof substitution", "[subst]") {
  SECTION("plain replacement discards the occurrence annotation") {
    Proof got = proof_subst(p_var("x", P()), p_var("u", P()), "x");
    CHECK(alpha_equal(got, p_var("u", P())));
  }
  SECTION("stops at shadowing lambda") {
    Proof t = p_lam("x", P(), p_var("x", P()));
    CHECK(alpha_equal(proof_subst(t, p_var("u", P()), "x"), t));
  }
  SECTION("lambda binders rename to avoid capturing the payload") {
    // (fun x => y)[x/y] must come out as fun x' => x, with x free.
    Proof t = p_lam("x", P(), p_var("y", P()));
    Proof got = proof_subst(t, p_var("x", P()), "y");
    Proof want = p_lam("z", P(), p_var("x", P()));
    CHECK(alpha_equal(got, want));
    CHECK(proof_free_vars(got) == NameSet{"x"});
  }
  SECTION("first-order binders rename when the payload mentions them") {
    // (gen a => h)[k : R1(a) / h]: the free a in k's annotation must survive.
    Proof t = p_folam("a", p_var("h", R(t_var("a"))));
    Proof got = proof_subst(t, p_var("k", R(t_var("a"))), "h");
    CHECK(proof_free_vars(got) == NameSet{"k"});
    CHECK(fo_free_vars(got) == NameSet{"a"});
    CHECK(alpha_equal(got, p_folam("w", p_var("k", R(t_var("a"))))));
  }
  SECTION("case branches substitute independently of their binders") {
    Proof t = p_case(p_var("h", f_or(P(), Q())), "x", p_var("y", P()), "y",
                     p_var("y", Q()));
    Proof got = proof_subst(t, p_var("z", P()), "y");
    // The left branch's free y is replaced; the right branch's y is bound.
    Proof want = p_case(p_var("h", f_or(P(), Q())), "x", p_var("z", P()), "y",
                        p_var("y", Q()));
    CHECK(alpha_equal(got, want));
  }
}

TEST_CASE("renaming keeps occurrence annotations", "[subst]") {
  Proof t = p_lam("x", R(t_var("a")), p_var("h", R(t_var("a"))));
  Proof got = rename_proof_var(t, "h", "k");
  CHECK(alpha_equal(got, p_lam("x", R(t_var("a")), p_var("k", R(t_var("a"))))));
  // Renaming stops at a shadowing binder.
  Proof s = p_lam("h", P(), p_var("h", P()));
  CHECK(alpha_equal(rename_proof_var(s, "h", "k"), s));
}

TEST_CASE("contexts bind once and look up in order", "[syntax]") {
  Context ctx;
  CHECK_FALSE(ctx.contains("x"));
  Context ctx2 = ctx.extended("x", P());
  CHECK(ctx2.contains("x"));
  REQUIRE(ctx2.lookup("x") != nullptr);
  CHECK(alpha_equal(*ctx2.lookup("x"), P()));
  CHECK(ctx2.lookup("y") == nullptr);
  CHECK(ctx2.names() == NameSet{"x"});
}

TEST_CASE("paths print as slash-separated indices", "[syntax]") {
  CHECK(path_str({}) == "/");
  CHECK(path_str({0}) == "/0");
  CHECK(path_str({0, 1, 2}) == "/0/1/2");
}

TEST_CASE("printer round-trips through the grammar levels", "[print]") {
  CHECK(print(f_imp(P(), f_imp(Q(), P()))) == "P0 -> Q0 -> P0");
  CHECK(print(f_imp(f_imp(P(), Q()), P())) == "(P0 -> Q0) -> P0");
  CHECK(print(f_neg(P())) == "~P0");
  CHECK(print(f_and(P(), f_or(Q(), P()))) == "P0 & (Q0 | P0)");
  CHECK(print(f_or(f_and(P(), Q()), P())) == "P0 & Q0 | P0");
  CHECK(print(f_forall("a", f_or(R(t_var("a")), Q()))) == "forall a. (R1(a) | Q0)");
  CHECK(print(f_or(f_forall("a", R(t_var("a"))), Q())) == "forall a. R1(a) | Q0");
  CHECK(print(p_lam("x", P(), p_var("x", P()))) == "fun (x : P0) => x");
  CHECK(print(p_app(p_var("f", f_imp(P(), Q())), p_var("x", P()))) == "f x");
  CHECK(print(p_foapp(p_var("h", f_forall("a", R(t_var("a")))), t_const("c"))) ==
        "h @ c");
  CHECK(print(p_proj(p_var("p", f_and(P(), Q())), 1)) == "p.1");
}
