#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "oracle.hpp"
#include "set_sampling.hpp"
#include "uf/interpret.hpp"
#include "uf/prelude.hpp"

using namespace uf;

namespace {

HF c2() { return mk_hf({hf_empty(), hf_singleton(hf_empty())}); }
HF c3() { return hf_nat(3); }

std::function<HF(const HF&)> const_fam(const HF& c) {
  return [c](const HF&) { return c; };
}

}  // namespace

TEST_CASE("hereditarily finite codes") {
  HF e = hf_empty();
  HF s = hf_singleton(e);

  SECTION("pairs project back") {
    REQUIRE(hf_eq(kfst(kpair(e, s)), e));
    REQUIRE(hf_eq(ksnd(kpair(e, s)), s));
    REQUIRE(hf_eq(kfst(kpair(s, s)), s));
    REQUIRE(hf_eq(ksnd(kpair(s, s)), s));
    REQUIRE(is_kpair(kpair(e, e)));
    REQUIRE_FALSE(is_kpair(mk_hf({e, s, c2()})));
  }

  SECTION("graphs apply like functions") {
    HF g = hf_graph({{e, s}, {s, e}});
    REQUIRE(hf_eq(hf_apply(g, e), s));
    REQUIRE(hf_eq(hf_apply(g, s), e));
    REQUIRE_THROWS_AS(hf_apply(g, c2()), std::runtime_error);
    REQUIRE(is_graph_on(g, {e, s}));
    REQUIRE_FALSE(is_graph_on(g, {e}));
  }

  SECTION("enumeration counts by total nodes") {
    REQUIRE(enumerate_hf(1).size() == 1);
    REQUIRE(enumerate_hf(3).size() == 3);
    REQUIRE(enumerate_hf(6).size() == 14);
    auto all = enumerate_hf(16);
    REQUIRE(all.size() == 25732);
    for (size_t i = 1; i < all.size(); ++i) REQUIRE(hf_lt(all[i - 1], all[i]));
    REQUIRE(std::all_of(all.begin(), all.end(),
                        [](const HF& c) { return node_count(c) <= 16; }));
  }
}

TEST_CASE("code formers") {
  HF e = hf_empty();
  HF s = hf_singleton(e);

  SECTION("ground codes") {
    REQUIRE(zero_code()->elems.empty());
    REQUIRE(one_code()->elems.size() == 1);
    REQUIRE(hf_eq(id_code(e, e), one_code()));
    REQUIRE(hf_eq(id_code(e, s), zero_code()));
  }

  SECTION("disjoint sum tags left and right") {
    HF p = plus_code(c2(), c3(), 64);
    REQUIRE(p->elems.size() == 5);
    int left = 0, right = 0;
    for (const HF& m : p->elems) {
      REQUIRE(is_kpair(m));
      if (hf_eq(kfst(m), hf_nat(0))) ++left;
      if (hf_eq(kfst(m), hf_nat(1))) ++right;
    }
    REQUIRE(left == 2);
    REQUIRE(right == 3);
  }

  SECTION("function space over a two-element base with constant three-element fibers") {
    HF p = pi_code(c2(), const_fam(c3()), 256);
    REQUIRE(p->elems.size() == 9);
    for (const HF& g : p->elems) REQUIRE(is_graph_on(g, c2()->elems));
    // The same family inside the default budget is refused, not truncated.
    REQUIRE_THROWS_AS(pi_code(c2(), const_fam(c3()), 64), BudgetExceeded);
  }

  SECTION("dependent pair fiber counts points of the total") {
    // Over 2 = {0, 1}: empty fiber above 0, two points above 1.
    auto fam = [&](const HF& m) { return m->elems.empty() ? zero_code() : c2(); };
    HF sg = sigma_code(c2(), fam, 64);
    REQUIRE(sg->elems.size() == 2);
    for (const HF& m : sg->elems) REQUIRE(hf_eq(kfst(m), s));
  }

  SECTION("tree type over one node label and no branching stabilizes at once") {
    HF w = w_code(hf_singleton(e), const_fam(zero_code()), 64);
    REQUIRE(w->elems.size() == 1);
    REQUIRE(hf_eq(w->elems[0], kpair(e, hf_empty())));
  }

  SECTION("tree type with a live branching direction is refused at every budget tried") {
    // One label admits a subtree slot, the other is a leaf: each stage builds
    // strictly taller trees, so the iteration must end in a budget error.
    auto fam = [&](const HF& m) { return m->elems.empty() ? one_code() : zero_code(); };
    REQUIRE_THROWS_AS(w_code(c2(), fam, 64), BudgetExceeded);
    REQUIRE_THROWS_AS(w_code(c2(), fam, 512), BudgetExceeded);
  }
}

TEST_CASE("set objects and morphisms") {
  HF e = hf_empty();
  HF s = hf_singleton(e);

  SECTION("materialized objects sort and deduplicate") {
    SetObj X = mk_setobj({s, e, s, e});
    REQUIRE(setobj_elems(X).size() == 2);
    REQUIRE(hf_eq(setobj_elems(X)[0], e));
    REQUIRE(setobj_mem(X, s));
    REQUIRE_FALSE(setobj_mem(X, c2()));
  }

  SECTION("virtual objects answer membership but refuse enumeration") {
    SetObj V = virt_obj("evens", [](const HF& c) { return c->elems.size() % 2 == 0; });
    REQUIRE(setobj_mem(V, e));
    REQUIRE_FALSE(setobj_mem(V, s));
    REQUIRE_THROWS_AS(setobj_elems(V), Unsupported);
  }

  SECTION("fiber totals enumerate on demand and test membership lazily") {
    SetObj base = mk_setobj({e, s});
    SetMor name = set_mor(base, virt_obj("codes", [](const HF&) { return true; }),
                          [&](const HF& x) { return x->elems.empty() ? c2() : one_code(); });
    SetObj total = fiber_obj(name);
    REQUIRE(setobj_mem(total, kpair(e, s)));
    REQUIRE(setobj_mem(total, kpair(s, e)));
    REQUIRE_FALSE(setobj_mem(total, kpair(s, s)));
    REQUIRE(setobj_elems(total).size() == 3);
  }

  SECTION("hom enumeration is exhaustive and capped") {
    auto ops = finite_set_ops();
    SetObj two = mk_setobj({e, s});
    auto homs = ops.enum_hom(two, two);
    REQUIRE(homs.size() == 4);
    for (const auto& h : homs) REQUIRE(setobj_mem(two, h.ap(e)));

    auto tiny = finite_set_ops(3);
    REQUIRE_THROWS_AS(tiny.enum_hom(two, two), BudgetExceeded);
  }

  SECTION("identity and composition act pointwise") {
    auto ops = finite_set_ops();
    SetObj two = mk_setobj({e, s});
    SetMor swap = set_mor(two, two, [&](const HF& x) { return x->elems.empty() ? s : e; });
    SetMor id2 = ops.identity(two);
    REQUIRE(ops.mor_eq(ops.compose(swap, swap), id2));
    REQUIRE_FALSE(ops.mor_eq(swap, id2));
    REQUIRE(ops.mor_eq(ops.compose(id2, swap), swap));
  }
}

TEST_CASE("universe fibrations") {
  auto M = build_set_universe(64, 16);
  HF e = hf_empty();
  HF s = hf_singleton(e);

  SECTION("points of the displayed family sit over their code") {
    REQUIRE(setobj_mem(M.U, c2()));
    REQUIRE(setobj_mem(M.Utilde, kpair(c2(), s)));
    REQUIRE_FALSE(setobj_mem(M.Utilde, kpair(c2(), c2())));
    REQUIRE(hf_eq(M.p.ap(kpair(c2(), s)), c2()));
  }

  SECTION("empty and singleton classifiers have the right fibers") {
    SetObj pt = mk_setobj({e});
    SetMor z = set_mor(pt, M.U, [](const HF&) { return zero_code(); });
    SetMor o = set_mor(pt, M.U, [](const HF&) { return one_code(); });
    REQUIRE(setobj_elems(fiber_obj(z)).empty());
    auto os = setobj_elems(fiber_obj(o));
    REQUIRE(os.size() == 1);
    REQUIRE(hf_eq(os[0], kpair(e, e)));
  }

  SECTION("chosen squares and their universal factorization") {
    SetObj pt = mk_setobj({e});
    SetMor name = set_mor(pt, M.U, [](const HF&) { return c2(); });
    auto sq = M.uni.chosen(name);
    auto elems = setobj_elems(sq.obj);
    REQUIRE(elems.size() == 2);
    REQUIRE(hf_eq(sq.P.ap(elems[0]), e));
    REQUIRE(hf_eq(kfst(sq.Q.ap(elems[0])), c2()));

    SetObj probe = mk_setobj({e, s});
    SetMor u = set_mor(probe, pt, [&](const HF&) { return e; });
    SetMor good = set_mor(probe, M.Utilde,
                          [&](const HF& x) { return kpair(c2(), x->elems.empty() ? e : s); });
    SetMor h = M.uni.factor(name, u, good);
    REQUIRE(hf_eq(h.ap(e), kpair(e, e)));
    REQUIRE(hf_eq(h.ap(s), kpair(e, s)));

    SetMor bad = set_mor(probe, M.Utilde, [&](const HF&) { return kpair(one_code(), e); });
    SetMor hb = M.uni.factor(name, u, bad);
    REQUIRE_THROWS_AS(hb.ap(e), NotCommuting);
  }

  SECTION("construction rejects unusable budgets") {
    REQUIRE_THROWS_AS(build_set_universe(16, 16), Unsupported);
    REQUIRE_THROWS_AS(build_set_universe(8, 16), Unsupported);
    REQUIRE_THROWS_AS(build_set_universe(1024, 32), Unsupported);
  }
}

TEST_CASE("contextual laws hold over sampled towers") {
  auto M = build_set_universe(64, 16);
  auto cc = contextualize(M.uni);
  auto ops = induce_logical_structure(M.uni, M.data);
  test::SetSampler sampler(M, cc, ops, 20260817);

  std::vector<LawSample<test::SObj, test::SMor>> laws;
  for (int i = 0; i < 250; ++i) laws.push_back(sampler.law_sample());
  std::vector<StructureSample<test::SObj, test::SMor>> structs;
  for (int i = 0; i < 125; ++i) structs.push_back(sampler.structure_sample(0));
  for (int i = 0; i < 125; ++i) structs.push_back(sampler.structure_sample(1));

  auto report = verify_contextual_laws(cc, laws, &ops, structs);
  for (const auto& line : report) UNSCOPED_INFO(line);
  REQUIRE(report.empty());
}

TEST_CASE("injected faults are caught by the law checks") {
  auto M = build_set_universe(64, 16);
  auto cc = contextualize(M.uni);
  auto ops = induce_logical_structure(M.uni, M.data);
  test::SetSampler sampler(M, cc, ops, 7);

  SECTION("a pullback that rewrites codes breaks functoriality") {
    auto bad = test::twisted_cc(cc);
    LawSample<test::SObj, test::SMor> s;
    test::SObj Gamma = sampler.tower(1);
    s.X = sampler.extend(Gamma, {zero_code(), one_code()}, 1);
    test::SObj Delta = sampler.tower(1);
    s.f = sampler.mor_into(Delta, Gamma, 3);
    s.g = sampler.mor_into(cc.terminal, Delta, 5);
    auto report = verify_contextual_laws(bad, {s});
    bool hit = false;
    for (const auto& line : report)
      if (line.find("(fg)* X = g*(f*X)") != std::string::npos) hit = true;
    REQUIRE(hit);
  }

  SECTION("a chooser that swaps fiber members breaks the identity square") {
    auto bad_cc = contextualize(test::member_swapped_universe(M));
    LawSample<test::SObj, test::SMor> s;
    test::SObj Gamma = sampler.tower(1);
    s.X = sampler.extend(Gamma, {sampler.c_two()}, 1);
    s.f = sampler.mor_into(sampler.tower(1), Gamma, 3);
    auto report = verify_contextual_laws(bad_cc, {s});
    bool hit = false;
    for (const auto& line : report)
      if (line.find("q(1, X) = 1") != std::string::npos) hit = true;
    REQUIRE(hit);
  }
}

TEST_CASE("identity lifting") {
  auto M = build_set_universe(64, 16);
  HF e = hf_empty();
  HF s = hf_singleton(e);

  auto diag_point = [](const HF& lift_pt) {
    HF u = kfst(lift_pt);
    return kpair(kfst(u), kfst(ksnd(u)));
  };

  SetMor top = set_mor(M.Utilde, M.UtxU, [](const HF& u) { return kpair(u, kfst(u)); });
  SetMor bottom = set_mor(M.IdUtilde, M.UxU, [&](const HF& pt) {
    HF u = kfst(pt);
    return kpair(kfst(u), kfst(u));
  });

  SECTION("the filler is forced on the diagonal and closes both triangles") {
    SetMor lift = id_lifting(M, IdLiftQuery{top, bottom});
    std::vector<HF> pts = {kpair(kpair(one_code(), kpair(e, e)), e),
                           kpair(kpair(c2(), kpair(s, s)), e)};
    for (const HF& pt : pts) {
      HF val = lift.ap(pt);
      REQUIRE(hf_eq(val, top.ap(diag_point(pt))));
      REQUIRE(hf_eq(M.pxU.ap(val), bottom.ap(pt)));
    }
    // Precomposing with the path inclusion recovers the top leg.
    for (const HF& u : {kpair(one_code(), e), kpair(c2(), s)})
      REQUIRE(hf_eq(lift.ap(M.r.ap(u)), top.ap(u)));
  }

  SECTION("legs that do not close the square are reported") {
    SetMor skew = set_mor(M.IdUtilde, M.UxU, [&](const HF& pt) {
      HF u = kfst(pt);
      return kpair(kfst(u), zero_code());
    });
    SetMor lift = id_lifting(M, IdLiftQuery{top, skew});
    REQUIRE_THROWS_AS(lift.ap(kpair(kpair(one_code(), kpair(e, e)), e)), NotCommuting);
  }

  SECTION("the filler follows the given top leg rather than a fixed formula") {
    // A different valid top: send each member to the least member of its code.
    SetMor least = set_mor(M.Utilde, M.UtxU, [](const HF& u) {
      HF A = kfst(u);
      return kpair(kpair(A, A->elems[0]), A);
    });
    SetMor lift = id_lifting(M, IdLiftQuery{least, bottom});
    HF pt = kpair(kpair(c2(), kpair(s, s)), e);
    REQUIRE(hf_eq(lift.ap(pt), kpair(kpair(c2(), e), c2())));
  }
}

TEST_CASE("interpretation of terms and types") {
  Environment env = test::test_env();
  auto M = build_set_universe(64, 16);
  HF e = hf_empty();
  HF s = hf_singleton(e);

  SECTION("the identity on the singleton denotes the identity graph") {
    auto j = Judgement::term_j({}, mk::lam("x", mk::one(), mk::var(0)),
                               mk::pi("x", mk::one(), mk::one()));
    auto r = interpret(env, j, M);
    REQUIRE(r.morphism.has_value());
    HF g = ksnd(r.morphism->m.ap(e));
    REQUIRE(hf_eq(hf_apply(g, e), e));
  }

  SECTION("case analysis on a left injection picks the left branch") {
    Term two = mk::sum(mk::one(), mk::one());
    Term body = mk::casesum("z", two, "x", mk::inl(mk::var(0)), "y",
                            mk::inr(mk::var(0)), mk::var(0));
    Term lhs = mk::app(mk::lam("s", two, body), mk::inl(mk::star()));
    auto yes = interpret(env, Judgement::term_eq({}, lhs, mk::inl(mk::star()), two), M);
    REQUIRE(yes.equal.has_value());
    REQUIRE(*yes.equal);
    auto no = interpret(env, Judgement::term_eq({}, lhs, mk::inr(mk::star()), two), M);
    REQUIRE(no.equal.has_value());
    REQUIRE_FALSE(*no.equal);
  }

  SECTION("a code variable's function space has the expected fiber") {
    auto Mbig = build_set_universe(4096, 16);
    Context ctx = Context{}.extended("a", mk::u());
    auto j = Judgement::type_j(ctx, mk::el(mk::cpi(mk::var(0), "x", mk::var(1))));
    auto r = interpret(env, j, Mbig);
    REQUIRE(r.object.has_value());
    HF fib = r.object->names.back().ap(kpair(e, c2()));
    REQUIRE(fib->elems.size() == 4);
    for (const HF& g : fib->elems) REQUIRE(is_graph_on(g, c2()->elems));
  }

  SECTION("decoding commutes with the type formers") {
    Term cone2 = mk::cplus(mk::cone(), mk::cone());
    auto j1 = Judgement::type_eq({}, mk::el(cone2), mk::sum(mk::one(), mk::one()));
    auto r1 = interpret(env, j1, M);
    REQUIRE(r1.equal.has_value());
    REQUIRE(*r1.equal);

    auto j2 = Judgement::type_eq({}, mk::el(mk::czero()), mk::zero());
    auto r2 = interpret(env, j2, M);
    REQUIRE(r2.equal.has_value());
    REQUIRE(*r2.equal);

    auto j3 = Judgement::type_eq({}, mk::el(mk::cpi(mk::cone(), "x", mk::cone())),
                                 mk::pi("x", mk::el(mk::cone()), mk::el(mk::cone())));
    auto r3 = interpret(env, j3, M);
    REQUIRE(r3.equal.has_value());
    REQUIRE(*r3.equal);
  }

  SECTION("the extensionality witness denotes the unique path point") {
    TheoryFlags fl;
    fl.funext = true;
    Environment fenv = test::test_env(fl);
    Term P = mk::pi("x", mk::one(), mk::one());
    Term f = mk::lam("x", mk::one(), mk::var(0));
    Term p = mk::lam("x", mk::one(), mk::refl(mk::one(), mk::var(0)));
    Term w = mk::ext(f, f, p);
    auto j = Judgement::term_eq({}, w, mk::refl(P, f), mk::idt(P, f, f));
    auto r = interpret(fenv, j, M);
    REQUIRE(r.equal.has_value());
    REQUIRE(*r.equal);
  }

  SECTION("transport along the trivial path fixes both points of a two-element type") {
    Term A2 = mk::el(mk::cplus(mk::cone(), mk::cone()));
    for (Term a : {mk::inl(mk::star()), mk::inr(mk::star())}) {
      Term t = mk::jelim("x", "y", "q", shift(A2, 3), "z", mk::var(0), a, a,
                         mk::refl(A2, a));
      auto r = interpret(env, Judgement::term_eq({}, t, a, A2), M);
      REQUIRE(r.equal.has_value());
      REQUIRE(*r.equal);
    }
  }

  SECTION("an axiom with no computational content has no denotation") {
    TheoryFlags fl;
    fl.univalence_axiom = true;
    Environment uenv = test::test_env(fl);
    const Def* d = uenv.find("uvt");
    REQUIRE(d != nullptr);
    auto j = Judgement::term_j({}, mk::cst("uvt"), d->type);
    REQUIRE_THROWS_AS(interpret(uenv, j, M), Unsupported);
  }
}

TEST_CASE("interpretation agrees with the kernel on derivable equalities") {
  Environment env = test::test_env();
  auto M = build_set_universe(4096, 16);
  test::Gen g(20260817);
  int ok = 0, skip = 0;
  for (int i = 0; i < 64; ++i) {
    auto inst = test::gen_rule_instance(g, i);
    try {
      Judgement j = inst.type ? Judgement::term_eq({}, inst.lhs, inst.rhs, inst.type)
                              : Judgement::type_eq({}, inst.lhs, inst.rhs);
      auto r = interpret(env, j, M);
      REQUIRE(r.equal.has_value());
      INFO("rule " << inst.rule << " instance " << i);
      REQUIRE(*r.equal);
      ++ok;
    } catch (const BudgetExceeded&) {
      ++skip;
    }
  }
  REQUIRE(ok >= 40);
  REQUIRE(ok + skip == 64);
}

TEST_CASE("the small universe is closed under the formers below its budget") {
  auto M = build_set_universe(64, 16);
  const long N0 = M.N0;
  HF inner = M.inner_code();
  REQUIRE(inner->elems.size() == 25732);
  REQUIRE(setobj_mem(M.U, inner));

  SECTION("unary sweeps over every small code") {
    auto empty_fam = const_fam(zero_code());
    for (const HF& c : inner->elems) {
      HF p = pi_code(c, empty_fam, N0);
      REQUIRE(node_count(p) <= N0);
      REQUIRE(p->elems.size() == (c->elems.empty() ? 1 : 0));

      HF sg = sigma_code(c, empty_fam, N0);
      REQUIRE(node_count(sg) <= N0);
      REQUIRE(sg->elems.empty());

      if (!c->elems.empty()) {
        HF idc = id_code(c->elems[0], c->elems[0]);
        REQUIRE(node_count(idc) <= N0);
      }

      try {
        HF w = w_code(c, empty_fam, N0);
        REQUIRE(node_count(w) <= N0);
        REQUIRE(w->elems.size() == c->elems.size());
        for (const HF& t : w->elems) REQUIRE(hf_eq(ksnd(t), hf_empty()));
      } catch (const BudgetExceeded&) {
      }
    }
  }

  SECTION("binary sweeps with the inclusion square") {
    auto small = enumerate_hf(6);
    REQUIRE(small.size() == 14);
    int formed = 0;
    for (const HF& a : small) {
      for (const HF& b : small) {
        auto fam = const_fam(b);
        for (auto former : {pi_code, sigma_code}) {
          try {
            HF at16 = former(a, fam, N0);
            REQUIRE(node_count(at16) <= N0);
            // Forming at the outer budget and including must agree.
            REQUIRE(hf_eq(at16, former(a, fam, M.N)));
            ++formed;
          } catch (const BudgetExceeded&) {
          }
        }
        try {
          HF at16 = plus_code(a, b, N0);
          REQUIRE(node_count(at16) <= N0);
          REQUIRE(hf_eq(at16, plus_code(a, b, M.N)));
          ++formed;
        } catch (const BudgetExceeded&) {
        }
      }
    }
    REQUIRE(formed > 100);
  }

  SECTION("the structure record computes the same codes") {
    auto& In = *M.data.inner;
    SetObj pt = mk_setobj({hf_empty()});
    SetMor a = set_mor(pt, fiber_obj(In.u0), [](const HF&) {
      return kpair(hf_empty(), c2());
    });
    SetMor b = set_mor(fiber_obj(set_mor(pt, M.U, [](const HF&) { return c2(); })),
                       fiber_obj(In.u0),
                       [](const HF&) { return kpair(hf_empty(), one_code()); });
    HF v = In.pi0(a, b).ap(hf_empty());
    REQUIRE(hf_eq(ksnd(v), pi_code(c2(), const_fam(one_code()), M.N)));
    REQUIRE(hf_eq(ksnd(In.z0.ap(hf_empty())), zero_code()));
    REQUIRE(hf_eq(ksnd(In.o0.ap(hf_empty())), one_code()));
    REQUIRE(hf_eq(In.i.ap(kpair(hf_empty(), c2())), c2()));
  }
}

TEST_CASE("the flipped chooser gives the same category up to the canonical bijection") {
  auto M = build_set_universe(64, 16);
  auto flipped = flipped_universe(M);
  auto cc2 = contextualize(flipped);

  SECTION("the flipped chooser satisfies the laws on member-first towers") {
    // Samples must be assembled against the flipped realizations: names and
    // morphisms bake their domains in at construction time.
    auto pool_name = [&](const SetObj& dom, int salt) {
      return set_mor(dom, M.U, [salt](const HF& x) {
        return (node_count(x) * 7 + salt) % 2 == 0 ? one_code() : c2();
      });
    };
    auto hash_map = [](const SetObj& dom, const SetObj& cod, int salt) {
      return set_mor(dom, cod, [cod, salt](const HF& x) {
        const auto& es = setobj_elems(cod);
        return es[static_cast<size_t>(node_count(x) * 3 + salt) % es.size()];
      });
    };
    test::SObj G1{{pool_name(flipped.base.terminal, 0)}};
    test::SObj D1{{pool_name(flipped.base.terminal, 1)}};
    test::SObj X = G1;
    X.names.push_back(pool_name(realize(flipped, G1), 2));

    LawSample<test::SObj, test::SMor> s;
    s.X = X;
    s.f = test::SMor{hash_map(realize(flipped, D1), realize(flipped, G1), 1), D1, G1};
    s.g = test::SMor{hash_map(flipped.base.terminal, realize(flipped, D1), 2),
                     cc2.terminal, D1};
    auto report = verify_contextual_laws(cc2, {s});
    for (const auto& line : report) UNSCOPED_INFO(line);
    REQUIRE(report.empty());
  }

  SECTION("the pointwise swap commutes with projections and classifiers") {
    SetObj pt = mk_setobj({hf_empty()});
    SetMor name = set_mor(pt, M.U, [](const HF&) { return c2(); });
    auto sq1 = M.uni.chosen(name);
    auto sq2 = flipped.chosen(name);
    for (const HF& x : setobj_elems(sq1.obj)) {
      HF y = kpair(ksnd(x), kfst(x));
      REQUIRE(setobj_mem(sq2.obj, y));
      REQUIRE(hf_eq(sq2.P.ap(y), sq1.P.ap(x)));
      REQUIRE(hf_eq(sq2.Q.ap(y), sq1.Q.ap(x)));
    }
  }
}
