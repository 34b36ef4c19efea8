#include <catch2/catch_amalgamated.hpp>

#include "cdk/cdk.hpp"
#include "gen.hpp"

using namespace cdk;

namespace {

Formula P() { return f_atom("P0"); }
Formula Q() { return f_atom("Q0"); }
Formula R(const Term& t) { return f_atom("R1", {t}); }

Proof rid(const Term& t) { return p_lam("x", R(t), p_var("x", R(t))); }

}  // namespace

TEST_CASE("witness extraction", "[extract]") {
  Formula ex = f_exists("a", f_imp(R(t_var("a")), R(t_var("a"))));

  SECTION("a pack yields its witness and body") {
    Proof t = p_pack(t_const("c"), rid(t_const("c")), ex);
    auto r = extract_witness(t);
    REQUIRE(r.ok());
    CHECK(r->witness == t_const("c"));
    CHECK(alpha_equal(r->body, rid(t_const("c"))));
  }
  SECTION("compound witnesses survive unevaluated") {
    Term sc = t_app("s", {t_const("c")});
    auto r = extract_witness(p_pack(sc, rid(sc), ex));
    REQUIRE(r.ok());
    CHECK(print(r->witness) == "s(c)");
  }
  SECTION("open terms are refused") {
    Proof t = p_pack(t_const("c"), p_var("h", R(t_const("c"))), f_exists("a", R(t_var("a"))));
    auto r = extract_witness(t);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == ExtractErrKind::NotClosed);
    CHECK(r.error().render() == "NotClosed: term has free proof variable h");
  }
  SECTION("unreduced terms are refused") {
    Proof idp = p_lam("x", f_imp(P(), P()), p_var("x", f_imp(P(), P())));
    Proof t = p_app(idp, p_lam("y", P(), p_var("y", P())));
    auto r = extract_witness(t);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == ExtractErrKind::NotNormal);
  }
  SECTION("a non-pack shape is a kernel-level violation") {
    auto r = extract_witness(p_lam("y", P(), p_var("y", P())));
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == ExtractErrKind::ShapeViolation);
  }
}

TEST_CASE("disjunct extraction", "[extract]") {
  Formula pp = f_imp(P(), P());
  Proof idp = p_lam("y", P(), p_var("y", P()));

  SECTION("left and right injections report their side") {
    auto l = extract_disjunct(p_inj(0, idp, f_or(pp, Q())));
    REQUIRE(l.ok());
    CHECK(l->side == 0);
    CHECK(alpha_equal(l->body, idp));
    auto r = extract_disjunct(p_inj(1, idp, f_or(Q(), pp)));
    REQUIRE(r.ok());
    CHECK(r->side == 1);
  }
  SECTION("a pair is the wrong shape") {
    auto r = extract_disjunct(p_pair(idp, idp));
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == ExtractErrKind::ShapeViolation);
    CHECK(r.error().detail.find("not an injection") != std::string::npos);
  }
}

TEST_CASE("universal extraction", "[extract]") {
  SECTION("an FO abstraction yields binder and body") {
    Proof t = p_folam("a", rid(t_var("a")));
    auto r = extract_universal(t);
    REQUIRE(r.ok());
    CHECK(r->var == "a");
    CHECK(alpha_equal(r->body, rid(t_var("a"))));
  }
  SECTION("a proof lambda is the wrong shape") {
    auto r = extract_universal(p_lam("y", P(), p_var("y", P())));
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == ExtractErrKind::ShapeViolation);
  }
}

TEST_CASE("normalize then extract", "[extract]") {
  SECTION("a computed disjunct") {
    Formula qq = f_imp(Q(), Q());
    Proof idq = p_lam("y", Q(), p_var("y", Q()));
    Formula disj = f_or(P(), qq);
    Proof t = p_app(p_lam("w", qq, p_inj(1, p_var("w", qq), disj)), idq);
    Trace tr = normalize(t);
    REQUIRE(tr.normal);
    auto r = extract_disjunct(tr.last());
    REQUIRE(r.ok());
    CHECK(r->side == 1);
    CHECK(alpha_equal(r->body, idq));
  }
  SECTION("a disjunct decided by the constant-domain contraction") {
    Formula A = f_imp(R(t_var("a")), R(t_var("a")));
    Formula I = f_imp(f_forall("a", f_or(A, Q())), f_or(f_forall("a", A), Q()));
    Proof t = p_app(p_cd(I), p_folam("a", p_inj(0, rid(t_var("a")), f_or(A, Q()))));
    REQUIRE(check(gen::make_sig(), Context{}, t, f_or(f_forall("a", A), Q()), Mode::CD).ok());
    Trace tr = normalize(t);
    REQUIRE(tr.normal);
    auto d = extract_disjunct(tr.last());
    REQUIRE(d.ok());
    CHECK(d->side == 0);
    auto u = extract_universal(d->body);
    REQUIRE(u.ok());
    CHECK(alpha_equal(u->body, rid(t_var(u->var))));
  }
  SECTION("a computed witness") {
    // (fun h => unpack h as (b, x) in pack(s(b), x')) (pack(c, id))
    Formula exA = f_exists("a", f_imp(R(t_var("a")), R(t_var("a"))));
    Proof t = p_app(
        p_lam("h", exA,
              p_unpack(p_var("h", exA), "b", "x",
                       p_pack(t_var("b"), p_var("x", f_imp(R(t_var("b")), R(t_var("b")))), exA))),
        p_pack(t_const("c"), rid(t_const("c")), exA));
    Trace tr = normalize(t);
    REQUIRE(tr.normal);
    auto r = extract_witness(tr.last());
    REQUIRE(r.ok());
    CHECK(r->witness == t_const("c"));
  }
  SECTION("data shapes wrapped around arbitrary closed normal bodies extract") {
    gen::Gen g(0xE047);
    for (int i = 0; i < 100; ++i) {
      auto [t, ty] = g.closed_term(3);
      Trace tr = normalize(t);
      REQUIRE(tr.normal);
      const Proof& nf = tr.last();
      INFO(print(nf));
      switch (i % 3) {
        case 0: {
          auto r = extract_disjunct(p_inj(i % 2, nf, f_or(ty, ty)));
          REQUIRE(r.ok());
          CHECK(r->side == i % 2);
          CHECK(alpha_equal(r->body, nf));
          break;
        }
        case 1: {
          auto r = extract_witness(p_pack(t_const("c"), nf, f_exists("a", ty)));
          REQUIRE(r.ok());
          CHECK(r->witness == t_const("c"));
          CHECK(alpha_equal(r->body, nf));
          break;
        }
        default: {
          auto r = extract_universal(p_folam("a", nf));
          REQUIRE(r.ok());
          CHECK(alpha_equal(r->body, nf));
          break;
        }
      }
    }
  }
}
