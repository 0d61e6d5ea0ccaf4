#pragma once

// Interpretation of checked judgements in the finite-set model. Contexts
// denote iterated extensions of the terminal object, a type over a context
// denotes a name from the realized context into U, and a term denotes a
// section of the extension its type names. Equality judgements denote the
// decidable pointwise comparison of the two sides.
//
// Every eliminator is routed through the induced structure on the
// contextualization, with premise types formed by the same substitutions the
// checker uses, so the denotation of a rule instance agrees with the
// denotation of its reduct by construction of the structure maps, not by a
// side computation here.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uf/contextual.hpp"
#include "uf/errors.hpp"
#include "uf/kernel.hpp"
#include "uf/set_model.hpp"
#include "uf/term.hpp"

namespace uf {

struct SetDenotation {
  std::optional<CtxObj<SetMor>> object;            // a type judgement
  std::optional<CtxMor<SetObj, SetMor>> morphism;  // a term judgement
  std::optional<bool> equal;                       // an equality judgement
};

namespace interp_detail {

using SObj = CtxObj<SetMor>;
using SMor = CtxMor<SetObj, SetMor>;

struct St {
  const Environment& env;
  const SetUniverse& M;
  ContextualCategoryOps<SObj, SMor> cc;
  LogicalStructureOps<SObj, SMor> ops;
};

inline SObj push(SObj X, const SetMor& n) {
  X.names.push_back(n);
  return X;
}

inline SetMor interp_type_name(St& st, const Context& ctx, const SObj& G, const Term& ty);
inline SMor interp_term(St& st, const Context& ctx, const SObj& G, const Term& t,
                        const Term& ty);

inline SMor section_of(St& st, const SObj& G, const SetMor& name,
                       std::function<HF(const HF&)> val) {
  SetObj realG = realize(st.M.uni, G);
  SetMor m = set_mor(std::move(realG), fiber_obj(name),
                     [val = std::move(val)](const HF& x) { return kpair(x, val(x)); });
  return SMor{std::move(m), G, push(G, name)};
}

// (G; A) together with A's name.
struct Ext1 {
  SetMor name;
  SObj obj;
};

inline Ext1 extend(St& st, const Context& ctx, const SObj& G, const Term& A) {
  Ext1 e;
  e.name = interp_type_name(st, ctx, G, A);
  e.obj = push(G, e.name);
  return e;
}

// (G; A; B) for a binder former, tracking the extended checker context.
struct Ext2 {
  SetMor nA, nB;
  SObj GA, GAB;
  Context ctxA;
};

inline Ext2 extend2(St& st, const Context& ctx, const SObj& G, const std::string& hint,
                    const Term& A, const Term& B) {
  Ext2 e;
  e.nA = interp_type_name(st, ctx, G, A);
  e.GA = push(G, e.nA);
  e.ctxA = ctx.extended(hint, A);
  e.nB = interp_type_name(st, e.ctxA, e.GA, B);
  e.GAB = push(e.GA, e.nB);
  return e;
}

inline SetMor interp_type_name(St& st, const Context& ctx, const SObj& G, const Term& ty0) {
  const auto& base = st.M.uni.base;
  Term ty = detail::whnf(st.env, ctx, ty0);
  switch (ty->tag) {
    case Tk::Pi: {
      Ext2 e = extend2(st, ctx, G, ty->hints[0], ty->sub[0], ty->sub[1]);
      return st.ops.pi->Pi(e.GAB).names.back();
    }
    case Tk::Sigma: {
      Ext2 e = extend2(st, ctx, G, ty->hints[0], ty->sub[0], ty->sub[1]);
      return st.ops.sigma->Sigma(e.GAB).names.back();
    }
    case Tk::W: {
      Ext2 e = extend2(st, ctx, G, ty->hints[0], ty->sub[0], ty->sub[1]);
      return st.ops.w->W(e.GAB).names.back();
    }
    case Tk::Id: {
      Ext1 a = extend(st, ctx, G, ty->sub[0]);
      SMor mS = interp_term(st, ctx, G, ty->sub[1], ty->sub[0]);
      SMor nS = interp_term(st, ctx, G, ty->sub[2], ty->sub[0]);
      SObj IdO = st.ops.id->IdObj(a.obj);
      SMor h = st.cc.factor(st.cc.proj(a.obj), a.obj, mS, nS);
      return base.compose(IdO.names.back(), h.m);
    }
    case Tk::Zero:
      return st.ops.zero->Zero(G).names.back();
    case Tk::One:
      return st.ops.one->One(G).names.back();
    case Tk::Sum: {
      Ext1 a = extend(st, ctx, G, ty->sub[0]);
      Ext1 b = extend(st, ctx, G, ty->sub[1]);
      return st.ops.sum->Sum(a.obj, b.obj).names.back();
    }
    case Tk::U:
      return base.compose(st.M.data.inner->u0, base.bang(realize(st.M.uni, G)));
    case Tk::El: {
      SMor cS = interp_term(st, ctx, G, ty->sub[0], mk::u());
      return set_mor(realize(st.M.uni, G), st.M.U,
                     [s = cS.m.ap](const HF& x) { return ksnd(s(x)); });
    }
    default:
      throw Unsupported("no set denotation for a type headed by this former");
  }
}

// Repackage a section of (G; U) as a morphism into the inner-universe object,
// the shape the universe structure operates on.
inline SMor as_code_mor(St& st, const SObj& G, const SMor& s) {
  SObj UO = st.ops.universe->U;
  SetObj realG = realize(st.M.uni, G);
  SetObj U0ext = realize(st.M.uni, UO);
  SetMor m = set_mor(std::move(realG), std::move(U0ext), [v = s.m.ap](const HF& x) {
    return kpair(hf_empty(), ksnd(v(x)));
  });
  return SMor{std::move(m), G, UO};
}

inline SMor code_section(St& st, const Context& ctx, const SObj& G, const SMor& raw) {
  SetMor name = interp_type_name(st, ctx, G, mk::u());
  return section_of(st, G, name, [m = raw.m.ap](const HF& x) { return ksnd(m(x)); });
}

inline SMor interp_term(St& st, const Context& ctx, const SObj& G, const Term& t,
                        const Term& ty) {
  const auto& base = st.M.uni.base;
  auto& cc = st.cc;
  switch (t->tag) {
    case Tk::Var: {
      const int ix = t->ix;
      SetMor name = interp_type_name(st, ctx, G, ctx.var_type(ix));
      return section_of(st, G, name, [ix](const HF& x) {
        HF e = x;
        for (int i = 0; i < ix; ++i) e = kfst(e);
        return ksnd(e);
      });
    }
    case Tk::Const: {
      const Def* d = st.env.find(t->name);
      if (!d) throw err_unbound(t->name);
      if (!d->body)
        throw Unsupported("axiom '" + t->name + "' has no denotation in the finite-set model");
      return interp_term(st, ctx, G, d->body, d->type);
    }
    case Tk::Lam: {
      Term w = detail::whnf(st.env, ctx, ty);
      Ext2 e = extend2(st, ctx, G, w->hints[0], w->sub[0], w->sub[1]);
      SMor bodyS = interp_term(st, e.ctxA, e.GA, t->sub[1], w->sub[1]);
      return st.ops.pi->lambda(e.GAB, bodyS);
    }
    case Tk::App: {
      Term ft = detail::whnf(st.env, ctx, infer(st.env, ctx, t->sub[0]));
      Ext2 e = extend2(st, ctx, G, ft->hints[0], ft->sub[0], ft->sub[1]);
      SMor fS = interp_term(st, ctx, G, t->sub[0], ft);
      SMor aS = interp_term(st, ctx, G, t->sub[1], ft->sub[0]);
      SMor apM = st.ops.pi->app(e.GAB, fS, aS);
      SetMor name = base.compose(e.nB, aS.m);
      return section_of(st, G, name, [m = apM.m.ap](const HF& x) { return ksnd(m(x)); });
    }
    case Tk::Pair: {
      Term w = detail::whnf(st.env, ctx, ty);
      Ext2 e = extend2(st, ctx, G, w->hints[0], w->sub[0], w->sub[1]);
      SMor aS = interp_term(st, ctx, G, t->sub[0], w->sub[0]);
      SMor bS = interp_term(st, ctx, G, t->sub[1], inst(w->sub[1], t->sub[0]));
      SMor tuple = cc.compose(cc.pullback_map(aS, e.GAB), bS);
      return cc.compose(st.ops.sigma->pair(e.GAB), tuple);
    }
    case Tk::Split: {
      Term s = detail::whnf(st.env, ctx, infer(st.env, ctx, t->sub[2]));
      Ext2 e = extend2(st, ctx, G, s->hints[0], s->sub[0], s->sub[1]);
      SObj SO = st.ops.sigma->Sigma(e.GAB);
      SetMor nC = interp_type_name(st, ctx.extended(t->hints[0], s), SO, t->sub[0]);
      SObj CE = push(SO, nC);
      Context bc = ctx.extended(t->hints[1], s->sub[0]).extended(t->hints[2], s->sub[1]);
      Term bty = subst_sim(t->sub[0], {mk::pair(mk::var(1), mk::var(0))}, 0, 2);
      SMor brS = interp_term(st, bc, e.GAB, t->sub[1], bty);
      SMor d = cc.compose(cc.pullback_map(st.ops.sigma->pair(e.GAB), CE), brS);
      SMor splitM = st.ops.sigma->split(e.GAB, CE, d);
      SMor scS = interp_term(st, ctx, G, t->sub[2], s);
      SetMor name = base.compose(nC, scS.m);
      return section_of(st, G, name, [m = splitM.m.ap, sc = scS.m.ap](const HF& x) {
        return ksnd(m(sc(x)));
      });
    }
    case Tk::Refl: {
      SetMor name = interp_type_name(st, ctx, G, ty);
      Ext1 a = extend(st, ctx, G, t->sub[0]);
      SMor mS = interp_term(st, ctx, G, t->sub[1], t->sub[0]);
      SMor reflM = st.ops.id->refl(a.obj);
      return section_of(st, G, name, [rm = reflM.m.ap, mv = mS.m.ap](const HF& x) {
        return ksnd(rm(mv(x)));
      });
    }
    case Tk::J: {
      Term pt = detail::whnf(st.env, ctx, infer(st.env, ctx, t->sub[4]));
      const Term& A = pt->sub[0];
      Ext1 a = extend(st, ctx, G, A);
      SObj IdO = st.ops.id->IdObj(a.obj);
      Context mc = ctx.extended(t->hints[0], A)
                       .extended(t->hints[1], shift(A, 1))
                       .extended(t->hints[2], mk::idt(shift(A, 2), mk::var(1), mk::var(0)));
      SetMor nC = interp_type_name(st, mc, IdO, t->sub[0]);
      SObj CE = push(IdO, nC);
      Term bty = subst_sim(t->sub[0],
                           {mk::refl(shift(A, 1), mk::var(0)), mk::var(0), mk::var(0)}, 0, 1);
      SMor brS = interp_term(st, ctx.extended(t->hints[3], A), a.obj, t->sub[1], bty);
      SMor d = cc.compose(cc.pullback_map(st.ops.id->refl(a.obj), CE), brS);
      SMor JM = st.ops.id->J(a.obj, CE, d);
      SMor aS = interp_term(st, ctx, G, t->sub[2], A);
      SMor bS = interp_term(st, ctx, G, t->sub[3], A);
      SMor pS = interp_term(st, ctx, G, t->sub[4], pt);
      auto tuple = [av = aS.m.ap, bv = bS.m.ap, pv = pS.m.ap](const HF& x) {
        return kpair(kpair(kpair(x, ksnd(av(x))), ksnd(bv(x))), ksnd(pv(x)));
      };
      SetMor tupleM = set_mor(realize(st.M.uni, G), realize(st.M.uni, IdO), tuple);
      SetMor name = base.compose(nC, tupleM);
      return section_of(st, G, name, [jm = JM.m.ap, tuple](const HF& x) {
        return ksnd(jm(tuple(x)));
      });
    }
    case Tk::Sup: {
      Term w = detail::whnf(st.env, ctx, ty);
      Ext2 e = extend2(st, ctx, G, w->hints[0], w->sub[0], w->sub[1]);
      SObj sd = st.ops.w->sup_dom(e.GAB);
      SMor aS = interp_term(st, ctx, G, t->sub[0], w->sub[0]);
      Term fty = mk::pi("u", inst(w->sub[1], t->sub[0]), shift(w, 1));
      SMor fS = interp_term(st, ctx, G, t->sub[1], fty);
      SMor tuple = cc.compose(cc.pullback_map(aS, sd), fS);
      return cc.compose(st.ops.w->sup(e.GAB), tuple);
    }
    case Tk::WRec: {
      Term w = detail::whnf(st.env, ctx, infer(st.env, ctx, t->sub[2]));
      const Term& A = w->sub[0];
      const Term& B = w->sub[1];
      Ext2 e = extend2(st, ctx, G, w->hints[0], A, B);
      SObj WO = st.ops.w->W(e.GAB);
      SObj sd = st.ops.w->sup_dom(e.GAB);
      SetMor nC = interp_type_name(st, ctx.extended(t->hints[0], w), WO, t->sub[0]);
      SObj CE = push(WO, nC);
      Term yt = mk::pi("u", B, shift(w, 2));
      Term zt = mk::pi("u", shift(B, 1),
                       subst_sim(t->sub[0], {mk::app(mk::var(1), mk::var(0))}, 0, 3));
      Context bc2 = ctx.extended(t->hints[1], A).extended(t->hints[2], yt);
      SetMor nZ = interp_type_name(st, bc2, sd, zt);
      SObj D = push(sd, nZ);
      Term bty = subst_sim(t->sub[0], {mk::sup(mk::var(2), mk::var(1))}, 0, 3);
      SMor brS = interp_term(st, bc2.extended(t->hints[3], zt), D, t->sub[1], bty);
      SMor supD = cc.compose(st.ops.w->sup(e.GAB), cc.proj(D));
      SMor d = cc.compose(cc.pullback_map(supD, CE), brS);
      SMor wrecM = st.ops.w->wrec(e.GAB, CE, d);
      SMor trS = interp_term(st, ctx, G, t->sub[2], w);
      SetMor name = base.compose(nC, trS.m);
      return section_of(st, G, name, [m = wrecM.m.ap, tr = trS.m.ap](const HF& x) {
        return ksnd(m(tr(x)));
      });
    }
    case Tk::Case0: {
      SObj ZO = st.ops.zero->Zero(G);
      SetMor nC = interp_type_name(st, ctx.extended(t->hints[0], mk::zero()), ZO, t->sub[0]);
      SObj CE = push(ZO, nC);
      SMor kaseM = st.ops.zero->kase(G, CE);
      SMor scS = interp_term(st, ctx, G, t->sub[1], mk::zero());
      SetMor name = base.compose(nC, scS.m);
      return section_of(st, G, name, [m = kaseM.m.ap, sc = scS.m.ap](const HF& x) {
        return ksnd(m(sc(x)));
      });
    }
    case Tk::Star:
      return st.ops.one->star(G);
    case Tk::Rec1: {
      SObj OO = st.ops.one->One(G);
      SetMor nC = interp_type_name(st, ctx.extended(t->hints[0], mk::one()), OO, t->sub[0]);
      SObj CE = push(OO, nC);
      SMor brS = interp_term(st, ctx, G, t->sub[1], inst(t->sub[0], mk::star()));
      SMor d = cc.compose(cc.pullback_map(st.ops.one->star(G), CE), brS);
      SMor recM = st.ops.one->rec(G, CE, d);
      SMor scS = interp_term(st, ctx, G, t->sub[2], mk::one());
      SetMor name = base.compose(nC, scS.m);
      return section_of(st, G, name, [m = recM.m.ap, sc = scS.m.ap](const HF& x) {
        return ksnd(m(sc(x)));
      });
    }
    case Tk::Inl:
    case Tk::Inr: {
      Term w = detail::whnf(st.env, ctx, ty);
      Ext1 ea = extend(st, ctx, G, w->sub[0]);
      Ext1 eb = extend(st, ctx, G, w->sub[1]);
      if (t->tag == Tk::Inl) {
        SMor argS = interp_term(st, ctx, G, t->sub[0], w->sub[0]);
        return cc.compose(st.ops.sum->inl(ea.obj, eb.obj), argS);
      }
      SMor argS = interp_term(st, ctx, G, t->sub[0], w->sub[1]);
      return cc.compose(st.ops.sum->inr(ea.obj, eb.obj), argS);
    }
    case Tk::CaseSum: {
      Term s = detail::whnf(st.env, ctx, infer(st.env, ctx, t->sub[3]));
      Ext1 ea = extend(st, ctx, G, s->sub[0]);
      Ext1 eb = extend(st, ctx, G, s->sub[1]);
      SObj SO = st.ops.sum->Sum(ea.obj, eb.obj);
      SetMor nC = interp_type_name(st, ctx.extended(t->hints[0], s), SO, t->sub[0]);
      SObj CE = push(SO, nC);
      Term lty = subst_sim(t->sub[0], {mk::inl(mk::var(0))}, 0, 1);
      Term rty = subst_sim(t->sub[0], {mk::inr(mk::var(0))}, 0, 1);
      SMor lS = interp_term(st, ctx.extended(t->hints[1], s->sub[0]), ea.obj, t->sub[1], lty);
      SMor rS = interp_term(st, ctx.extended(t->hints[2], s->sub[1]), eb.obj, t->sub[2], rty);
      SMor dl = cc.compose(cc.pullback_map(st.ops.sum->inl(ea.obj, eb.obj), CE), lS);
      SMor dr = cc.compose(cc.pullback_map(st.ops.sum->inr(ea.obj, eb.obj), CE), rS);
      SMor kaseM = st.ops.sum->kase(ea.obj, eb.obj, CE, dl, dr);
      SMor scS = interp_term(st, ctx, G, t->sub[3], s);
      SetMor name = base.compose(nC, scS.m);
      return section_of(st, G, name, [m = kaseM.m.ap, sc = scS.m.ap](const HF& x) {
        return ksnd(m(sc(x)));
      });
    }
    case Tk::CZero:
      return code_section(st, ctx, G, st.ops.universe->z(G));
    case Tk::COne:
      return code_section(st, ctx, G, st.ops.universe->o(G));
    case Tk::CPlus: {
      SMor aM = as_code_mor(st, G, interp_term(st, ctx, G, t->sub[0], mk::u()));
      SMor bM = as_code_mor(st, G, interp_term(st, ctx, G, t->sub[1], mk::u()));
      return code_section(st, ctx, G, st.ops.universe->plus(aM, bM));
    }
    case Tk::CPi:
    case Tk::CSigma:
    case Tk::CW: {
      SMor aM = as_code_mor(st, G, interp_term(st, ctx, G, t->sub[0], mk::u()));
      Ext1 eel = extend(st, ctx, G, mk::el(t->sub[0]));
      Context ca = ctx.extended(t->hints[0], mk::el(t->sub[0]));
      SMor bM = as_code_mor(st, eel.obj, interp_term(st, ca, eel.obj, t->sub[1], mk::u()));
      SMor raw = t->tag == Tk::CPi      ? st.ops.universe->pi(aM, bM)
                 : t->tag == Tk::CSigma ? st.ops.universe->sigma(aM, bM)
                                        : st.ops.universe->w(aM, bM);
      return code_section(st, ctx, G, raw);
    }
    case Tk::CId: {
      SMor aS = interp_term(st, ctx, G, t->sub[0], mk::u());
      SMor mS = interp_term(st, ctx, G, t->sub[1], mk::el(t->sub[0]));
      SMor nS = interp_term(st, ctx, G, t->sub[2], mk::el(t->sub[0]));
      SetMor vm = set_mor(realize(st.M.uni, G), st.M.UId,
                          [av = aS.m.ap, mv = mS.m.ap, nv = nS.m.ap](const HF& x) {
                            return kpair(ksnd(av(x)), kpair(ksnd(mv(x)), ksnd(nv(x))));
                          });
      SMor vM{std::move(vm), G, st.ops.universe->U};
      return code_section(st, ctx, G, st.ops.universe->id(vM));
    }
    case Tk::Ext:
    case Tk::ExtComp: {
      // Path fibers in this model are empty or singleton, so the checked
      // input pins the denotation to the unique point over the diagonal.
      SetMor name = interp_type_name(st, ctx, G, ty);
      return section_of(st, G, name, [](const HF&) { return hf_empty(); });
    }
    default:
      throw Unsupported("no set denotation for a term headed by this former");
  }
}

}  // namespace interp_detail

inline SetDenotation interpret(const Environment& env, const Judgement& j,
                               const SetUniverse& M) {
  using namespace interp_detail;
  check_context(env, j.ctx);
  St st{env, M, contextualize(M.uni), induce_logical_structure(M.uni, M.data)};

  SObj G;
  {
    Context pre;
    for (const auto& entry : j.ctx.entries) {
      G = push(G, interp_type_name(st, pre, G, entry.type));
      pre = pre.extended(entry.name, entry.type);
    }
  }

  SetDenotation out;
  switch (j.form) {
    case JudgementForm::TypeJ: {
      check_type(env, j.ctx, j.a);
      out.object = push(G, interp_type_name(st, j.ctx, G, j.a));
      break;
    }
    case JudgementForm::TypeEqJ: {
      check_type(env, j.ctx, j.a);
      check_type(env, j.ctx, j.b);
      SetMor na = interp_type_name(st, j.ctx, G, j.a);
      SetMor nb = interp_type_name(st, j.ctx, G, j.b);
      out.equal = M.uni.base.mor_eq(na, nb);
      break;
    }
    case JudgementForm::TermJ: {
      check_type(env, j.ctx, j.ty);
      check(env, j.ctx, j.a, j.ty);
      out.morphism = interp_term(st, j.ctx, G, j.a, j.ty);
      break;
    }
    case JudgementForm::TermEqJ: {
      check_type(env, j.ctx, j.ty);
      check(env, j.ctx, j.a, j.ty);
      check(env, j.ctx, j.b, j.ty);
      SMor sa = interp_term(st, j.ctx, G, j.a, j.ty);
      SMor sb = interp_term(st, j.ctx, G, j.b, j.ty);
      out.equal = st.cc.mor_eq(sa, sb);
      break;
    }
  }
  return out;
}

}  // namespace uf
