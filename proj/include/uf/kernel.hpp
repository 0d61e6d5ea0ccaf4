#pragma once

// Derivability of the four judgement forms: bidirectional typechecking with
// definitional equality decided by normalization (environment-machine
// evaluation to weak values, then readback). Optional rules are behind
// TheoryFlags; a fuel budget guards against ill-typed divergence.

#include <functional>
#include <optional>

#include "uf/errors.hpp"
#include "uf/term.hpp"

namespace uf {

struct TheoryFlags {
  bool eta_pi = false;
  bool funext = false;
  bool univalence_axiom = false;
};

struct Def {
  std::string name;
  Term type;
  Term body;  // null for axioms
};

struct Environment {
  std::vector<Def> defs;
  TheoryFlags flags;
  long fuel = 2'000'000;

  const Def* find(const std::string& name) const {
    for (const auto& d : defs)
      if (d.name == name) return &d;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Values

enum class Vk {
  Lam, Pi, Sigma, Pair, Id, Refl, W, Sup,
  Zero, One, Star, Sum, Inl, Inr, U, El,
  CPi, CSigma, CId, CZero, COne, CPlus, CW,
  Ext, ExtComp,
  NVar, NConst, Neutral,
};

struct Value;
using Val = std::shared_ptr<const Value>;

struct Clo {
  int arity = 1;
  std::vector<std::string> hints;
  std::function<Val(const std::vector<Val>&)> fn;
};

struct VElim {
  Tk k;  // App, Split, J, WRec, Case0, Rec1, CaseSum
  std::vector<Val> vs;
  std::vector<Clo> cs;
};

struct Value {
  Vk k;
  std::vector<Val> vs;
  std::vector<Clo> cs;
  int lvl = -1;       // NVar
  std::string name;   // NConst name / binder hint
  std::vector<VElim> spine;  // Neutral: vs[0] is the head
};

namespace vmk {
inline Val mk(Vk k, std::vector<Val> vs = {}, std::vector<Clo> cs = {}, std::string name = {}) {
  auto v = std::make_shared<Value>();
  v->k = k;
  v->vs = std::move(vs);
  v->cs = std::move(cs);
  v->name = std::move(name);
  return v;
}
inline Val nvar(int lvl) {
  auto v = std::make_shared<Value>();
  v->k = Vk::NVar;
  v->lvl = lvl;
  return v;
}
inline Val nconst(const std::string& name) {
  auto v = std::make_shared<Value>();
  v->k = Vk::NConst;
  v->name = name;
  return v;
}
}  // namespace vmk

struct EvalCtx {
  const Environment& env;
  long fuel;
  explicit EvalCtx(const Environment& e) : env(e), fuel(e.fuel) {}
  void step() {
    if (--fuel < 0) throw FuelExhausted(env.fuel);
  }
};

struct VEnv {
  std::vector<Val> vs;  // Var(i) = vs[size-1-i]
  const Val& at(int ix) const {
    if (ix < 0 || static_cast<size_t>(ix) >= vs.size()) throw err_unbound("variable #" + std::to_string(ix));
    return vs[vs.size() - 1 - static_cast<size_t>(ix)];
  }
  VEnv pushed(Val v) const {
    VEnv e = *this;
    e.vs.push_back(std::move(v));
    return e;
  }
};

inline Val eval(EvalCtx& C, const VEnv& venv, const Term& t);

inline Clo make_clo(EvalCtx& C, const VEnv& venv, const Term& body, int arity, std::vector<std::string> hints) {
  Clo c;
  c.arity = arity;
  c.hints = std::move(hints);
  c.fn = [&C, venv, body](const std::vector<Val>& args) {
    VEnv e = venv;
    for (const auto& a : args) e.vs.push_back(a);
    return eval(C, e, body);
  };
  return c;
}

inline Val apply_clo(const Clo& c, std::vector<Val> args) { return c.fn(args); }

inline Val stuck(Val head, VElim e) {
  if (head->k == Vk::Neutral) {
    auto v = std::make_shared<Value>(*head);
    v->spine.push_back(std::move(e));
    return v;
  }
  auto v = std::make_shared<Value>();
  v->k = Vk::Neutral;
  v->vs = {std::move(head)};
  v->spine = {std::move(e)};
  return v;
}

inline Val vapp(EvalCtx& C, Val f, Val a) {
  C.step();
  if (f->k == Vk::Lam) return apply_clo(f->cs[0], {std::move(a)});
  return stuck(std::move(f), VElim{Tk::App, {std::move(a)}, {}});
}

inline Val vel(EvalCtx& C, Val c) {
  C.step();
  switch (c->k) {
    case Vk::CPi:
    case Vk::CSigma:
    case Vk::CW: {
      Val dom = vel(C, c->vs[0]);
      Clo inner = c->cs[0];
      Clo cod;
      cod.arity = 1;
      cod.hints = inner.hints;
      cod.fn = [&C, inner](const std::vector<Val>& args) { return vel(C, apply_clo(inner, args)); };
      Vk k = c->k == Vk::CPi ? Vk::Pi : (c->k == Vk::CSigma ? Vk::Sigma : Vk::W);
      return vmk::mk(k, {dom}, {cod}, c->name);
    }
    case Vk::CId: return vmk::mk(Vk::Id, {vel(C, c->vs[0]), c->vs[1], c->vs[2]});
    case Vk::CZero: return vmk::mk(Vk::Zero);
    case Vk::COne: return vmk::mk(Vk::One);
    case Vk::CPlus: return vmk::mk(Vk::Sum, {vel(C, c->vs[0]), vel(C, c->vs[1])});
    default: return vmk::mk(Vk::El, {std::move(c)});
  }
}

inline Val do_wrec(EvalCtx& C, const Clo& motive, const Clo& branch, Val tree) {
  C.step();
  if (tree->k == Vk::Sup) {
    Val a = tree->vs[0], f = tree->vs[1];
    Clo rec;
    rec.arity = 1;
    rec.hints = {"u"};
    rec.fn = [&C, motive, branch, f](const std::vector<Val>& args) {
      return do_wrec(C, motive, branch, vapp(C, f, args[0]));
    };
    Val recfn = vmk::mk(Vk::Lam, {}, {rec}, "u");
    return apply_clo(branch, {a, f, recfn});
  }
  return stuck(std::move(tree), VElim{Tk::WRec, {}, {motive, branch}});
}

inline Val eval(EvalCtx& C, const VEnv& venv, const Term& t) {
  C.step();
  switch (t->tag) {
    case Tk::Var: return venv.at(t->ix);
    case Tk::Const: {
      const Def* d = C.env.find(t->name);
      if (!d) throw err_unbound(t->name);
      if (d->body) return eval(C, VEnv{}, d->body);
      return vmk::nconst(t->name);
    }
    case Tk::Pi:
    case Tk::Sigma:
    case Tk::W: {
      Vk k = t->tag == Tk::Pi ? Vk::Pi : (t->tag == Tk::Sigma ? Vk::Sigma : Vk::W);
      return vmk::mk(k, {eval(C, venv, t->sub[0])}, {make_clo(C, venv, t->sub[1], 1, t->hints)}, t->hints[0]);
    }
    case Tk::Lam:
      return vmk::mk(Vk::Lam, {}, {make_clo(C, venv, t->sub[1], 1, t->hints)}, t->hints[0]);
    case Tk::App: return vapp(C, eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1]));
    case Tk::Pair: return vmk::mk(Vk::Pair, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1])});
    case Tk::Split: {
      Val s = eval(C, venv, t->sub[2]);
      Clo mo = make_clo(C, venv, t->sub[0], 1, {t->hints[0]});
      Clo br = make_clo(C, venv, t->sub[1], 2, {t->hints[1], t->hints[2]});
      if (s->k == Vk::Pair) return apply_clo(br, {s->vs[0], s->vs[1]});
      return stuck(std::move(s), VElim{Tk::Split, {}, {mo, br}});
    }
    case Tk::Id: return vmk::mk(Vk::Id, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1]), eval(C, venv, t->sub[2])});
    case Tk::Refl: return vmk::mk(Vk::Refl, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1])});
    case Tk::J: {
      Val p = eval(C, venv, t->sub[4]);
      Clo mo = make_clo(C, venv, t->sub[0], 3, {t->hints[0], t->hints[1], t->hints[2]});
      Clo br = make_clo(C, venv, t->sub[1], 1, {t->hints[3]});
      if (p->k == Vk::Refl) return apply_clo(br, {p->vs[1]});
      Val a = eval(C, venv, t->sub[2]);
      Val b = eval(C, venv, t->sub[3]);
      return stuck(std::move(p), VElim{Tk::J, {a, b}, {mo, br}});
    }
    case Tk::Sup: return vmk::mk(Vk::Sup, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1])});
    case Tk::WRec: {
      Clo mo = make_clo(C, venv, t->sub[0], 1, {t->hints[0]});
      Clo br = make_clo(C, venv, t->sub[1], 3, {t->hints[1], t->hints[2], t->hints[3]});
      return do_wrec(C, mo, br, eval(C, venv, t->sub[2]));
    }
    case Tk::Zero: return vmk::mk(Vk::Zero);
    case Tk::Case0: {
      Val s = eval(C, venv, t->sub[1]);
      Clo mo = make_clo(C, venv, t->sub[0], 1, {t->hints[0]});
      return stuck(std::move(s), VElim{Tk::Case0, {}, {mo}});
    }
    case Tk::One: return vmk::mk(Vk::One);
    case Tk::Star: return vmk::mk(Vk::Star);
    case Tk::Rec1: {
      Val s = eval(C, venv, t->sub[2]);
      Clo mo = make_clo(C, venv, t->sub[0], 1, {t->hints[0]});
      if (s->k == Vk::Star) return eval(C, venv, t->sub[1]);
      Val d = eval(C, venv, t->sub[1]);
      return stuck(std::move(s), VElim{Tk::Rec1, {d}, {mo}});
    }
    case Tk::Sum: return vmk::mk(Vk::Sum, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1])});
    case Tk::Inl: return vmk::mk(Vk::Inl, {eval(C, venv, t->sub[0])});
    case Tk::Inr: return vmk::mk(Vk::Inr, {eval(C, venv, t->sub[0])});
    case Tk::CaseSum: {
      Val s = eval(C, venv, t->sub[3]);
      Clo mo = make_clo(C, venv, t->sub[0], 1, {t->hints[0]});
      Clo lb = make_clo(C, venv, t->sub[1], 1, {t->hints[1]});
      Clo rb = make_clo(C, venv, t->sub[2], 1, {t->hints[2]});
      if (s->k == Vk::Inl) return apply_clo(lb, {s->vs[0]});
      if (s->k == Vk::Inr) return apply_clo(rb, {s->vs[0]});
      return stuck(std::move(s), VElim{Tk::CaseSum, {}, {mo, lb, rb}});
    }
    case Tk::U: return vmk::mk(Vk::U);
    case Tk::El: return vel(C, eval(C, venv, t->sub[0]));
    case Tk::CPi:
    case Tk::CSigma:
    case Tk::CW: {
      Vk k = t->tag == Tk::CPi ? Vk::CPi : (t->tag == Tk::CSigma ? Vk::CSigma : Vk::CW);
      return vmk::mk(k, {eval(C, venv, t->sub[0])}, {make_clo(C, venv, t->sub[1], 1, t->hints)}, t->hints[0]);
    }
    case Tk::CId: return vmk::mk(Vk::CId, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1]), eval(C, venv, t->sub[2])});
    case Tk::CZero: return vmk::mk(Vk::CZero);
    case Tk::COne: return vmk::mk(Vk::COne);
    case Tk::CPlus: return vmk::mk(Vk::CPlus, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1])});
    case Tk::Ext: return vmk::mk(Vk::Ext, {eval(C, venv, t->sub[0]), eval(C, venv, t->sub[1]), eval(C, venv, t->sub[2])});
    case Tk::ExtComp: return vmk::mk(Vk::ExtComp, {}, {make_clo(C, venv, t->sub[0], 1, t->hints)}, t->hints[0]);
  }
  throw Error("Internal", "eval: unhandled tag");
}

// ---------------------------------------------------------------------------
// Readback

inline Term readback(EvalCtx& C, int depth, const Val& v);

inline Term rb_clo(EvalCtx& C, int depth, const Clo& c) {
  std::vector<Val> args;
  for (int i = 0; i < c.arity; ++i) args.push_back(vmk::nvar(depth + i));
  return readback(C, depth + c.arity, apply_clo(c, args));
}

inline std::string hint_of(const Clo& c, size_t i) {
  return i < c.hints.size() && !c.hints[i].empty() ? c.hints[i] : "x";
}

inline Term readback(EvalCtx& C, int depth, const Val& v) {
  C.step();
  switch (v->k) {
    case Vk::Lam: {
      Term body = rb_clo(C, depth, v->cs[0]);
      if (C.env.flags.eta_pi && body->tag == Tk::App && body->sub[1]->tag == Tk::Var &&
          body->sub[1]->ix == 0 && !uses_var(body->sub[0], 0))
        return shift(body->sub[0], -1);
      return mk::lam(hint_of(v->cs[0], 0), nullptr, body);
    }
    case Vk::Pi: return mk::pi(hint_of(v->cs[0], 0), readback(C, depth, v->vs[0]), rb_clo(C, depth, v->cs[0]));
    case Vk::Sigma: return mk::sigma(hint_of(v->cs[0], 0), readback(C, depth, v->vs[0]), rb_clo(C, depth, v->cs[0]));
    case Vk::W: return mk::wt(hint_of(v->cs[0], 0), readback(C, depth, v->vs[0]), rb_clo(C, depth, v->cs[0]));
    case Vk::Pair: return mk::pair(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]));
    case Vk::Id: return mk::idt(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]), readback(C, depth, v->vs[2]));
    case Vk::Refl: return mk::refl(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]));
    case Vk::Sup: return mk::sup(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]));
    case Vk::Zero: return mk::zero();
    case Vk::One: return mk::one();
    case Vk::Star: return mk::star();
    case Vk::Sum: return mk::sum(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]));
    case Vk::Inl: return mk::inl(readback(C, depth, v->vs[0]));
    case Vk::Inr: return mk::inr(readback(C, depth, v->vs[0]));
    case Vk::U: return mk::u();
    case Vk::El: return mk::el(readback(C, depth, v->vs[0]));
    case Vk::CPi: return mk::cpi(readback(C, depth, v->vs[0]), hint_of(v->cs[0], 0), rb_clo(C, depth, v->cs[0]));
    case Vk::CSigma: return mk::csigma(readback(C, depth, v->vs[0]), hint_of(v->cs[0], 0), rb_clo(C, depth, v->cs[0]));
    case Vk::CW: return mk::cw(readback(C, depth, v->vs[0]), hint_of(v->cs[0], 0), rb_clo(C, depth, v->cs[0]));
    case Vk::CId: return mk::cid(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]), readback(C, depth, v->vs[2]));
    case Vk::CZero: return mk::czero();
    case Vk::COne: return mk::cone();
    case Vk::CPlus: return mk::cplus(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]));
    case Vk::Ext: return mk::ext(readback(C, depth, v->vs[0]), readback(C, depth, v->vs[1]), readback(C, depth, v->vs[2]));
    case Vk::ExtComp: return mk::extcomp(hint_of(v->cs[0], 0), rb_clo(C, depth, v->cs[0]));
    case Vk::NVar: return mk::var(depth - 1 - v->lvl);
    case Vk::NConst: return mk::cst(v->name);
    case Vk::Neutral: {
      Term acc = readback(C, depth, v->vs[0]);
      for (const auto& e : v->spine) {
        switch (e.k) {
          case Tk::App: acc = mk::app(acc, readback(C, depth, e.vs[0])); break;
          case Tk::Split:
            acc = mk::split(hint_of(e.cs[0], 0), rb_clo(C, depth, e.cs[0]), hint_of(e.cs[1], 0),
                            hint_of(e.cs[1], 1), rb_clo(C, depth, e.cs[1]), acc);
            break;
          case Tk::J:
            acc = mk::jelim(hint_of(e.cs[0], 0), hint_of(e.cs[0], 1), hint_of(e.cs[0], 2), rb_clo(C, depth, e.cs[0]),
                            hint_of(e.cs[1], 0), rb_clo(C, depth, e.cs[1]), readback(C, depth, e.vs[0]),
                            readback(C, depth, e.vs[1]), acc);
            break;
          case Tk::WRec:
            acc = mk::wrec(hint_of(e.cs[0], 0), rb_clo(C, depth, e.cs[0]), hint_of(e.cs[1], 0), hint_of(e.cs[1], 1),
                           hint_of(e.cs[1], 2), rb_clo(C, depth, e.cs[1]), acc);
            break;
          case Tk::Case0: acc = mk::case0(hint_of(e.cs[0], 0), rb_clo(C, depth, e.cs[0]), acc); break;
          case Tk::Rec1:
            acc = mk::rec1(hint_of(e.cs[0], 0), rb_clo(C, depth, e.cs[0]), readback(C, depth, e.vs[0]), acc);
            break;
          case Tk::CaseSum:
            acc = mk::casesum(hint_of(e.cs[0], 0), rb_clo(C, depth, e.cs[0]), hint_of(e.cs[1], 0),
                              rb_clo(C, depth, e.cs[1]), hint_of(e.cs[2], 0), rb_clo(C, depth, e.cs[2]), acc);
            break;
          default: throw Error("Internal", "readback: bad spine");
        }
      }
      return acc;
    }
  }
  throw Error("Internal", "readback: unhandled kind");
}

// ---------------------------------------------------------------------------
// Public kernel operations

inline VEnv venv_for(const Context& ctx) {
  VEnv e;
  for (size_t i = 0; i < ctx.size(); ++i) e.vs.push_back(vmk::nvar(static_cast<int>(i)));
  return e;
}

inline Term normalize(const Environment& env, const Context& ctx, const Term& t) {
  EvalCtx C(env);
  Val v = eval(C, venv_for(ctx), t);
  return readback(C, static_cast<int>(ctx.size()), v);
}

inline bool defeq(const Environment& env, const Context& ctx, const Term& t, const Term& u, const Term& /*type*/ = nullptr) {
  if (alpha_eq(t, u)) return true;
  return alpha_eq(normalize(env, ctx, t), normalize(env, ctx, u));
}

inline Term infer(const Environment& env, const Context& ctx, const Term& t);
inline void check(const Environment& env, const Context& ctx, const Term& t, const Term& type);
inline void check_type(const Environment& env, const Context& ctx, const Term& a);

namespace detail {

inline Term whnf(const Environment& env, const Context& ctx, const Term& t) { return normalize(env, ctx, t); }

inline void require_defeq(const Environment& env, const Context& ctx, const Term& got, const Term& want,
                          const Term& at) {
  if (!defeq(env, ctx, got, want)) throw err_mismatch(dump(want), dump(got), dump(at));
}

}  // namespace detail

inline void check_type(const Environment& env, const Context& ctx, const Term& a) {
  switch (a->tag) {
    case Tk::Pi:
    case Tk::Sigma:
    case Tk::W:
      check_type(env, ctx, a->sub[0]);
      check_type(env, ctx.extended(a->hints[0], a->sub[0]), a->sub[1]);
      return;
    case Tk::Id:
      check_type(env, ctx, a->sub[0]);
      check(env, ctx, a->sub[1], a->sub[0]);
      check(env, ctx, a->sub[2], a->sub[0]);
      return;
    case Tk::Zero:
    case Tk::One:
    case Tk::U:
      return;
    case Tk::Sum:
      check_type(env, ctx, a->sub[0]);
      check_type(env, ctx, a->sub[1]);
      return;
    case Tk::El:
      check(env, ctx, a->sub[0], mk::u());
      return;
    default:
      // A term can stand for a type only through El; anything else is not a
      // type former of the theory.
      throw err_not_a_type(dump(a), "not a type former");
  }
}

inline void check_context(const Environment& env, const Context& ctx) {
  Context pre;
  for (size_t i = 0; i < ctx.entries.size(); ++i) {
    const auto& e = ctx.entries[i];
    if (!e.name.empty() && e.name != "_") {
      for (const auto& p : pre.entries)
        if (p.name == e.name) throw err_dup_var(e.name);
    }
    try {
      check_type(env, pre, e.type);
    } catch (const TypeError& err) {
      throw err_ill_formed(static_cast<int>(i), err.what());
    }
    pre.entries.push_back(e);
  }
}

inline Term infer(const Environment& env, const Context& ctx, const Term& t) {
  switch (t->tag) {
    case Tk::Var:
      if (t->ix < 0 || static_cast<size_t>(t->ix) >= ctx.size()) throw err_unbound("#" + std::to_string(t->ix));
      return ctx.var_type(t->ix);
    case Tk::Const: {
      const Def* d = env.find(t->name);
      if (!d) throw err_unbound(t->name);
      return d->type;
    }
    case Tk::App: {
      Term ft = detail::whnf(env, ctx, infer(env, ctx, t->sub[0]));
      if (ft->tag != Tk::Pi) throw err_mismatch("function type", dump(ft), dump(t));
      check(env, ctx, t->sub[1], ft->sub[0]);
      return inst(ft->sub[1], t->sub[1]);
    }
    case Tk::Lam: {
      if (!t->sub[0]) throw err_cannot_infer("unannotated lambda " + dump(t));
      check_type(env, ctx, t->sub[0]);
      Term bt = infer(env, ctx.extended(t->hints[0], t->sub[0]), t->sub[1]);
      return mk::pi(t->hints[0], t->sub[0], bt);
    }
    case Tk::Split: {
      Term st = detail::whnf(env, ctx, infer(env, ctx, t->sub[2]));
      if (st->tag != Tk::Sigma) throw err_mismatch("Sigma type", dump(st), dump(t));
      const Term &A = st->sub[0], &B = st->sub[1];
      check_type(env, ctx.extended(t->hints[0], st), t->sub[0]);
      Context br = ctx.extended(t->hints[1], A).extended(t->hints[2], B);
      Term want = subst_sim(t->sub[0], {mk::pair(mk::var(1), mk::var(0))}, 0, 2);
      check(env, br, t->sub[1], want);
      return inst(t->sub[0], t->sub[2]);
    }
    case Tk::J: {
      Term pt = detail::whnf(env, ctx, infer(env, ctx, t->sub[4]));
      if (pt->tag != Tk::Id) throw err_mismatch("Id type", dump(pt), dump(t));
      const Term& A = pt->sub[0];
      check(env, ctx, t->sub[2], A);
      check(env, ctx, t->sub[3], A);
      detail::require_defeq(env, ctx, pt->sub[1], t->sub[2], t);
      detail::require_defeq(env, ctx, pt->sub[2], t->sub[3], t);
      Context mc = ctx.extended(t->hints[0], A)
                       .extended(t->hints[1], shift(A, 1))
                       .extended(t->hints[2], mk::idt(shift(A, 2), mk::var(1), mk::var(0)));
      check_type(env, mc, t->sub[0]);
      Context bc = ctx.extended(t->hints[3], A);
      Term want = subst_sim(t->sub[0], {mk::refl(shift(A, 1), mk::var(0)), mk::var(0), mk::var(0)}, 0, 1);
      check(env, bc, t->sub[1], want);
      return subst_sim(t->sub[0], {t->sub[4], t->sub[3], t->sub[2]}, 0, 0);
    }
    case Tk::WRec: {
      Term wt = detail::whnf(env, ctx, infer(env, ctx, t->sub[2]));
      if (wt->tag != Tk::W) throw err_mismatch("W type", dump(wt), dump(t));
      const Term &A = wt->sub[0], &B = wt->sub[1];
      check_type(env, ctx.extended(t->hints[0], wt), t->sub[0]);
      // branch context: x:A, y:[B(x), W], z:Pi(u:B(x)) C(app(y,u))
      Term yt = mk::pi("u", B, shift(wt, 2));
      Term zt = mk::pi("u", shift(B, 1),
                       subst_sim(t->sub[0], {mk::app(mk::var(1), mk::var(0))}, 0, 3));
      Context bc = ctx.extended(t->hints[1], A).extended(t->hints[2], yt).extended(t->hints[3], zt);
      Term want = subst_sim(t->sub[0], {mk::sup(mk::var(2), mk::var(1))}, 0, 3);
      check(env, bc, t->sub[1], want);
      return inst(t->sub[0], t->sub[2]);
    }
    case Tk::Case0: {
      Term st = detail::whnf(env, ctx, infer(env, ctx, t->sub[1]));
      if (st->tag != Tk::Zero) throw err_mismatch("Zero", dump(st), dump(t));
      check_type(env, ctx.extended(t->hints[0], mk::zero()), t->sub[0]);
      return inst(t->sub[0], t->sub[1]);
    }
    case Tk::Rec1: {
      Term st = detail::whnf(env, ctx, infer(env, ctx, t->sub[2]));
      if (st->tag != Tk::One) throw err_mismatch("One", dump(st), dump(t));
      check_type(env, ctx.extended(t->hints[0], mk::one()), t->sub[0]);
      check(env, ctx, t->sub[1], inst(t->sub[0], mk::star()));
      return inst(t->sub[0], t->sub[2]);
    }
    case Tk::CaseSum: {
      Term st = detail::whnf(env, ctx, infer(env, ctx, t->sub[3]));
      if (st->tag != Tk::Sum) throw err_mismatch("Sum type", dump(st), dump(t));
      const Term &A = st->sub[0], &B = st->sub[1];
      check_type(env, ctx.extended(t->hints[0], st), t->sub[0]);
      check(env, ctx.extended(t->hints[1], A), t->sub[1], subst_sim(t->sub[0], {mk::inl(mk::var(0))}, 0, 1));
      check(env, ctx.extended(t->hints[2], B), t->sub[2], subst_sim(t->sub[0], {mk::inr(mk::var(0))}, 0, 1));
      return inst(t->sub[0], t->sub[3]);
    }
    case Tk::Star: return mk::one();
    case Tk::Refl:
      check_type(env, ctx, t->sub[0]);
      check(env, ctx, t->sub[1], t->sub[0]);
      return mk::idt(t->sub[0], t->sub[1], t->sub[1]);
    case Tk::Ext: {
      if (!env.flags.funext) throw err_missing_flag("ext requires the funext rules");
      Term ft = detail::whnf(env, ctx, infer(env, ctx, t->sub[0]));
      if (ft->tag != Tk::Pi) throw err_mismatch("function type", dump(ft), dump(t));
      check(env, ctx, t->sub[1], ft);
      Term hwant = mk::pi(ft->hints[0], ft->sub[0],
                          mk::idt(ft->sub[1], mk::app(shift(t->sub[0], 1), mk::var(0)),
                                  mk::app(shift(t->sub[1], 1), mk::var(0))));
      check(env, ctx, t->sub[2], hwant);
      return mk::idt(ft, t->sub[0], t->sub[1]);
    }
    case Tk::CPi:
    case Tk::CSigma:
    case Tk::CW:
      check(env, ctx, t->sub[0], mk::u());
      check(env, ctx.extended(t->hints[0], mk::el(t->sub[0])), t->sub[1], mk::u());
      return mk::u();
    case Tk::CId:
      check(env, ctx, t->sub[0], mk::u());
      check(env, ctx, t->sub[1], mk::el(t->sub[0]));
      check(env, ctx, t->sub[2], mk::el(t->sub[0]));
      return mk::u();
    case Tk::CZero:
    case Tk::COne:
      return mk::u();
    case Tk::CPlus:
      check(env, ctx, t->sub[0], mk::u());
      check(env, ctx, t->sub[1], mk::u());
      return mk::u();
    case Tk::U:
      throw err_cannot_infer("U is a type, not a term (it has no code)");
    case Tk::Pi:
    case Tk::Sigma:
    case Tk::W:
    case Tk::Id:
    case Tk::Zero:
    case Tk::One:
    case Tk::Sum:
    case Tk::El:
      throw err_cannot_infer(dump(t) + " is a type, not a term");
    default:
      throw err_cannot_infer(dump(t) + " only checks against a given type");
  }
}

inline void check(const Environment& env, const Context& ctx, const Term& t, const Term& type) {
  switch (t->tag) {
    case Tk::Lam: {
      Term w = detail::whnf(env, ctx, type);
      if (w->tag != Tk::Pi) throw err_mismatch(dump(type), "a lambda", dump(t));
      if (t->sub[0]) {
        check_type(env, ctx, t->sub[0]);
        detail::require_defeq(env, ctx, t->sub[0], w->sub[0], t);
      }
      check(env, ctx.extended(t->hints[0], w->sub[0]), t->sub[1], w->sub[1]);
      return;
    }
    case Tk::Pair: {
      Term w = detail::whnf(env, ctx, type);
      if (w->tag != Tk::Sigma) throw err_mismatch(dump(type), "a pair", dump(t));
      check(env, ctx, t->sub[0], w->sub[0]);
      check(env, ctx, t->sub[1], inst(w->sub[1], t->sub[0]));
      return;
    }
    case Tk::Refl: {
      Term w = detail::whnf(env, ctx, type);
      if (w->tag != Tk::Id) throw err_mismatch(dump(type), "refl", dump(t));
      check_type(env, ctx, t->sub[0]);
      detail::require_defeq(env, ctx, t->sub[0], w->sub[0], t);
      check(env, ctx, t->sub[1], w->sub[0]);
      detail::require_defeq(env, ctx, t->sub[1], w->sub[1], t);
      detail::require_defeq(env, ctx, t->sub[1], w->sub[2], t);
      return;
    }
    case Tk::Sup: {
      Term w = detail::whnf(env, ctx, type);
      if (w->tag != Tk::W) throw err_mismatch(dump(type), "sup", dump(t));
      check(env, ctx, t->sub[0], w->sub[0]);
      check(env, ctx, t->sub[1], mk::pi("u", inst(w->sub[1], t->sub[0]), shift(w, 1)));
      return;
    }
    case Tk::Inl: {
      Term w = detail::whnf(env, ctx, type);
      if (w->tag != Tk::Sum) throw err_mismatch(dump(type), "inl", dump(t));
      check(env, ctx, t->sub[0], w->sub[0]);
      return;
    }
    case Tk::Inr: {
      Term w = detail::whnf(env, ctx, type);
      if (w->tag != Tk::Sum) throw err_mismatch(dump(type), "inr", dump(t));
      check(env, ctx, t->sub[0], w->sub[1]);
      return;
    }
    case Tk::ExtComp: {
      if (!env.flags.funext) throw err_missing_flag("extcomp requires the funext rules");
      Term w = detail::whnf(env, ctx, type);
      if (w->tag != Tk::Id) throw err_mismatch(dump(type), "extcomp", dump(t));
      Term inner = detail::whnf(env, ctx, w->sub[0]);
      if (inner->tag != Tk::Id) throw err_mismatch("Id over Id type", dump(inner), dump(t));
      Term pit = detail::whnf(env, ctx, inner->sub[0]);
      if (pit->tag != Tk::Pi) throw err_mismatch("Id over Id over Pi", dump(pit), dump(t));
      const Term &A = pit->sub[0], &B = pit->sub[1];
      check(env, ctx.extended(t->hints[0], A), t->sub[0], B);
      Term lb = mk::lam(t->hints[0], A, t->sub[0]);
      Term hb = mk::lam(t->hints[0], A, mk::refl(B, t->sub[0]));
      detail::require_defeq(env, ctx, inner->sub[1], lb, t);
      detail::require_defeq(env, ctx, inner->sub[2], lb, t);
      detail::require_defeq(env, ctx, w->sub[1], mk::ext(lb, lb, hb), t);
      detail::require_defeq(env, ctx, w->sub[2], mk::refl(pit, lb), t);
      return;
    }
    default: {
      Term got = infer(env, ctx, t);
      if (!defeq(env, ctx, got, type)) throw err_mismatch(dump(type), dump(got), dump(t));
      return;
    }
  }
}

}  // namespace uf
