#pragma once

#include <random>
#include <string>
#include <vector>

#include "uf/contextual.hpp"
#include "uf/set_model.hpp"

// Randomized towers, morphisms, and structure configurations over the
// finite-set universe, sized so that every fiber stays within the default
// budget and the universality checks stay enumerable.

namespace uf::test {

using uf::CtxMor;
using uf::CtxObj;
using uf::HF;
using uf::SetMor;
using uf::SetObj;
using uf::SetUniverse;

using SObj = CtxObj<SetMor>;
using SMor = CtxMor<SetObj, SetMor>;
using SCC = uf::ContextualCategoryOps<SObj, SMor>;
using SOps = uf::LogicalStructureOps<SObj, SMor>;

struct SetSampler {
  const SetUniverse& M;
  const SCC& cc;
  const SOps& ops;
  std::mt19937 rng;

  SetSampler(const SetUniverse& m, const SCC& c, const SOps& o, unsigned seed)
      : M(m), cc(c), ops(o), rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  HF c_zero() const { return uf::zero_code(); }
  HF c_one() const { return uf::one_code(); }
  HF c_two() const {
    return uf::mk_hf({uf::hf_empty(), uf::hf_singleton(uf::hf_empty())});
  }

  // A name over G whose fiber at x is drawn from `pool` by a point hash, so
  // distinct points of the realization usually get distinct fibers.
  SetMor mk_name(const SObj& G, const std::vector<HF>& pool, int salt) {
    return uf::set_mor(uf::realize(M.uni, G), M.U, [pool, salt](const HF& x) {
      size_t ix = static_cast<size_t>(uf::node_count(x) * 7 + salt) % pool.size();
      return pool[ix];
    });
  }

  std::vector<HF> nonempty_pool(int variant) const {
    switch (variant % 3) {
      case 0: return {c_one()};
      case 1: return {c_two()};
      default: return {c_one(), c_two()};
    }
  }

  SObj extend(const SObj& G, const std::vector<HF>& pool, int salt) {
    SObj X = G;
    X.names.push_back(mk_name(G, pool, salt));
    return X;
  }

  // Tower of the requested level over the terminal, all fibers nonempty.
  SObj tower(int level) {
    SObj G = cc.terminal;
    for (int i = 0; i < level; ++i) G = extend(G, nonempty_pool(pick(3)), pick(17));
    return G;
  }

  // The section of the top extension that picks one member of each fiber.
  SMor section_first(const SObj& GX, int salt = 0) {
    SObj G = cc.ft(GX);
    SetMor name = GX.names.back();
    SetMor m = uf::set_mor(uf::realize(M.uni, G), uf::fiber_obj(name),
                           [n = name.ap, salt](const HF& x) {
                             HF fib = n(x);
                             size_t ix = static_cast<size_t>(uf::node_count(x) * 3 + salt) %
                                         fib->elems.size();
                             return uf::kpair(x, fib->elems[ix]);
                           });
    return SMor{m, G, GX};
  }

  // An arbitrary morphism Delta -> Gamma, assembled fiberwise; every name in
  // Gamma must have nonempty fibers along the chosen path.
  SMor mor_into(const SObj& Delta, const SObj& Gamma, int salt) {
    std::vector<SetMor> names = Gamma.names;
    SetMor m = uf::set_mor(uf::realize(M.uni, Delta), uf::realize(M.uni, Gamma),
                           [names, salt](const HF& x) {
                             HF v = uf::hf_empty();
                             int lvl = 0;
                             for (const SetMor& n : names) {
                               HF fib = n.ap(v);
                               size_t ix = static_cast<size_t>(uf::node_count(x) * 3 +
                                                               salt + lvl * 5) %
                                           fib->elems.size();
                               v = uf::kpair(v, fib->elems[ix]);
                               ++lvl;
                             }
                             return v;
                           });
    return SMor{m, Delta, Gamma};
  }

  uf::LawSample<SObj, SMor> law_sample() {
    uf::LawSample<SObj, SMor> s;
    int xl = 1 + pick(2);
    s.X = tower(xl);
    SObj Delta = tower(pick(2));
    s.f = mor_into(Delta, cc.ft(s.X), pick(29));
    if (pick(2) == 0) {
      SObj E = tower(pick(2));
      s.g = mor_into(E, Delta, pick(29));
    }
    return s;
  }

  // One extension of `over` together with the section-into-first-member map
  // used for the eliminator data of the structure checks: d sends a point to
  // the canonical point above `via`'s value at it.
  SMor d_map(const SObj& dom, const SMor& via, const SObj& C) {
    SetMor nameC = C.names.back();
    SetMor m = uf::set_mor(uf::realize(M.uni, dom), uf::realize(M.uni, C),
                           [v = via.m.ap, n = nameC.ap](const HF& e) {
                             HF w = v(e);
                             HF fib = n(w);
                             return uf::kpair(w, fib->elems[0]);
                           });
    return SMor{m, dom, C};
  }

  // flavor 0: every fiber of B nonempty (binder eliminators exercised, the
  // tree type is empty). flavor 1: B constantly empty (leaf-only trees, the
  // tree eliminator exercised).
  uf::StructureSample<SObj, SMor> structure_sample(int flavor) {
    uf::StructureSample<SObj, SMor> s;
    SObj Gamma = tower(pick(2));
    SObj GA = extend(Gamma, nonempty_pool(pick(3)), pick(17));
    std::vector<HF> bpool = flavor == 0 ? nonempty_pool(pick(3)) : std::vector<HF>{c_zero()};
    s.GAB = extend(GA, bpool, pick(17));

    SObj Delta = tower(pick(2));
    s.f = mor_into(Delta, Gamma, pick(29));

    s.GB = extend(Gamma, nonempty_pool(pick(3)), pick(17));

    if (flavor == 0) {
      s.sectA = section_first(GA, pick(5));
      s.sectB = section_first(s.GAB, pick(5));

      SObj Sg = ops.sigma->Sigma(s.GAB);
      SObj sigmaC = extend(Sg, nonempty_pool(pick(3)), pick(17));
      s.sigmaC = sigmaC;
      s.sigmaD = d_map(s.GAB, ops.sigma->pair(s.GAB), sigmaC);
    } else {
      SObj WO = ops.w->W(s.GAB);
      SObj wC = extend(WO, nonempty_pool(pick(3)), pick(17));
      s.wC = wC;
      SObj sd = ops.w->sup_dom(s.GAB);
      SObj D = extend(sd, {c_one()}, 0);
      SMor supD{cc.compose(ops.w->sup(s.GAB), cc.proj(D)).m, D, WO};
      s.wD = d_map(D, supD, wC);
    }

    SObj IdO = ops.id->IdObj(GA);
    SObj idC = extend(IdO, nonempty_pool(pick(3)), pick(17));
    s.idC = idC;
    s.idD = d_map(GA, ops.id->refl(GA), idC);

    s.zeroC = extend(ops.zero->Zero(Gamma), nonempty_pool(pick(3)), pick(17));

    SObj OO = ops.one->One(Gamma);
    SObj oneC = extend(OO, nonempty_pool(pick(3)), pick(17));
    s.oneC = oneC;
    s.oneD = d_map(Gamma, ops.one->star(Gamma), oneC);

    SObj Sm = ops.sum->Sum(GA, *s.GB);
    SObj sumC = extend(Sm, nonempty_pool(pick(3)), pick(17));
    s.sumC = sumC;
    s.sumDl = d_map(GA, ops.sum->inl(GA, *s.GB), sumC);
    s.sumDr = d_map(*s.GB, ops.sum->inr(GA, *s.GB), sumC);

    return s;
  }
};

// A contextualization whose pullback twists the appended name over level-1
// domains, exchanging the empty and singleton codes. Violates f*-g*
// compatibility without disturbing any single pullback square.
inline SCC twisted_cc(const SCC& cc) {
  SCC out = cc;
  auto orig = cc.pullback_object;
  out.pullback_object = [orig](const SMor& f, const SObj& X) {
    SObj r = orig(f, X);
    if (f.dm.names.size() == 1) {
      SetMor nm = r.names.back();
      r.names.back() = uf::set_mor(nm.dm, nm.cd, [a = nm.ap](const HF& x) {
        HF c = a(x);
        if (uf::hf_eq(c, uf::zero_code())) return uf::one_code();
        if (uf::hf_eq(c, uf::one_code())) return uf::zero_code();
        return c;
      });
    }
    return r;
  };
  return out;
}

// A universe whose chosen squares send two-element fibers to the wrong
// member of the displayed family. The projection leg is untouched, so the
// squares still commute; the q-compatibility law is what breaks.
inline uf::UniverseInCategory<SetObj, SetMor> member_swapped_universe(const SetUniverse& M) {
  auto u = M.uni;
  auto orig = u.chosen;
  u.chosen = [orig](const SetMor& name) {
    auto sq = orig(name);
    sq.Q = uf::set_mor(sq.Q.dm, sq.Q.cd, [q = sq.Q.ap](const HF& e) {
      HF v = q(e);
      HF c = uf::kfst(v), m = uf::ksnd(v);
      if (c->elems.size() == 2) {
        HF other = uf::hf_eq(m, c->elems[0]) ? c->elems[1] : c->elems[0];
        return uf::kpair(c, other);
      }
      return v;
    });
    return sq;
  };
  return u;
}

}  // namespace uf::test
