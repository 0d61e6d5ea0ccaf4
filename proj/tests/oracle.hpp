#pragma once

// Shared test machinery: seeded RNG, raw-term generators for the syntax
// properties, and well-typed instance generators used to exercise the
// computation rules. Expected values are built structurally (via the syntax
// module's substitution), never by asking the kernel what it thinks.

#include <random>

#include "uf/kernel.hpp"
#include "uf/prelude.hpp"

namespace uf::test {

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool coin() { return pick(2) == 0; }
};

// --- raw terms (no typing discipline; for the substitution/alpha properties)

inline Term gen_raw(Gen& g, int depth, int maxvar);

inline std::string gen_hint(Gen& g) {
  static const char* names[] = {"x", "y", "z", "u", "v", "_"};
  return names[g.pick(6)];
}

inline Term gen_raw(Gen& g, int depth, int maxvar) {
  using namespace mk;
  if (depth <= 0 || (maxvar > 0 && g.pick(3) == 0)) {
    switch (g.pick(5)) {
      case 0: return maxvar > 0 ? var(g.pick(maxvar)) : star();
      case 1: return star();
      case 2: return one();
      case 3: return zero();
      default: return u();
    }
  }
  auto sub = [&](int extra = 0) { return gen_raw(g, depth - 1, maxvar + extra); };
  switch (g.pick(16)) {
    case 0: return pi(gen_hint(g), sub(), sub(1));
    case 1: return g.coin() ? lam(gen_hint(g), sub(), sub(1)) : lam(gen_hint(g), nullptr, sub(1));
    case 2: return app(sub(), sub());
    case 3: return sigma(gen_hint(g), sub(), sub(1));
    case 4: return pair(sub(), sub());
    case 5: return split(gen_hint(g), sub(1), gen_hint(g), gen_hint(g), sub(2), sub());
    case 6: return idt(sub(), sub(), sub());
    case 7: return refl(sub(), sub());
    case 8:
      return jelim(gen_hint(g), gen_hint(g), gen_hint(g), sub(3), gen_hint(g), sub(1), sub(), sub(), sub());
    case 9: return wt(gen_hint(g), sub(), sub(1));
    case 10: return sup(sub(), sub());
    case 11: return wrec(gen_hint(g), sub(1), gen_hint(g), gen_hint(g), gen_hint(g), sub(3), sub());
    case 12: return casesum(gen_hint(g), sub(1), gen_hint(g), sub(1), gen_hint(g), sub(1), sub());
    case 13: return el(g.coin() ? cpi(sub(), gen_hint(g), sub(1)) : cid(sub(), sub(), sub()));
    case 14: return sum(sub(), sub());
    default: return ext(sub(), sub(), sub());
  }
}

// Same shape, different display hints.
inline Term rehint(Gen& g, const Term& t) {
  if (!t) return t;
  auto n = std::make_shared<TermNode>(*t);
  for (auto& h : n->hints) h = gen_hint(g);
  for (auto& s : n->sub) s = rehint(g, s);
  return n;
}

// --- well-typed instances (closed terms over the prelude environment)

inline Term gen_inh_type(Gen& g, int depth);

// A code whose El is inhabited by gen_term_of below.
inline Term gen_code(Gen& g, int depth) {
  using namespace mk;
  if (depth <= 0) return cone();
  switch (g.pick(5)) {
    case 0: return cone();
    case 1: return cplus(gen_code(g, depth - 1), gen_code(g, depth - 1));
    case 2: return csigma(gen_code(g, depth - 1), gen_hint(g), shift(gen_code(g, depth - 1), 1));
    case 3: return cpi(gen_code(g, depth - 1), gen_hint(g), shift(gen_code(g, depth - 1), 1));
    default: return cone();
  }
}

// Closed inhabited types; dependency is only through shifted-closed bodies, so
// every binder body is again closed after inst.
inline Term gen_inh_type(Gen& g, int depth) {
  using namespace mk;
  if (depth <= 0) return one();
  switch (g.pick(6)) {
    case 0: return one();
    case 1: return sum(gen_inh_type(g, depth - 1), gen_inh_type(g, depth - 1));
    case 2: return sigma(gen_hint(g), gen_inh_type(g, depth - 1), shift(gen_inh_type(g, depth - 1), 1));
    case 3: return pi(gen_hint(g), gen_inh_type(g, depth - 1), shift(gen_inh_type(g, depth - 1), 1));
    case 4: return el(gen_code(g, depth - 1));
    default: return u();
  }
}

inline Term gen_term_of(Gen& g, const Term& ty, int depth) {
  using namespace mk;
  switch (ty->tag) {
    case Tk::One: return star();
    case Tk::Sum:
      return g.coin() ? inl(gen_term_of(g, ty->sub[0], depth - 1)) : inr(gen_term_of(g, ty->sub[1], depth - 1));
    case Tk::Sigma: {
      Term a = gen_term_of(g, ty->sub[0], depth - 1);
      return pair(a, gen_term_of(g, inst(ty->sub[1], a), depth - 1));
    }
    case Tk::Pi:
      return lam(ty->hints[0], ty->sub[0], shift(gen_term_of(g, inst(ty->sub[1], star()), depth - 1), 1));
    case Tk::Id: return refl(ty->sub[0], ty->sub[1]);
    case Tk::U: return gen_code(g, depth - 1);
    case Tk::El:
      switch (ty->sub[0]->tag) {
        case Tk::COne: return star();
        case Tk::CPlus:
          return g.coin() ? inl(gen_term_of(g, el(ty->sub[0]->sub[0]), depth - 1))
                          : inr(gen_term_of(g, el(ty->sub[0]->sub[1]), depth - 1));
        case Tk::CSigma: {
          Term a = gen_term_of(g, el(ty->sub[0]->sub[0]), depth - 1);
          return pair(a, gen_term_of(g, el(inst(ty->sub[0]->sub[1], a)), depth - 1));
        }
        case Tk::CPi:
          return lam(ty->sub[0]->hints[0], el(ty->sub[0]->sub[0]),
                     shift(gen_term_of(g, el(inst(ty->sub[0]->sub[1], star())), depth - 1), 1));
        default: return star();
      }
    default: return star();
  }
}

// A term of ty that synthesizes: introduction forms other than star/refl/codes
// are routed through a unit eliminator whose motive carries the type.
inline Term synth(const Term& ty, const Term& t) {
  switch (t->tag) {
    case Tk::Var:
    case Tk::Star:
    case Tk::Refl:
    case Tk::CPi:
    case Tk::CSigma:
    case Tk::CId:
    case Tk::CZero:
    case Tk::COne:
    case Tk::CPlus:
    case Tk::CW:
      return t;
    default:
      return mk::rec1("u", shift(ty, 1), t, mk::star());
  }
}

// One instance of a computation-rule equation: lhs contains the redex, rhs is
// built by substitution per the rule. Eliminators whose scrutinee is a literal
// introduction form are wrapped in an applied lambda, since scrutinees are
// synthesis positions. type == nullptr marks a type-level equation.
struct RuleInstance {
  std::string rule;
  Term type;
  Term lhs;
  Term rhs;
};

inline RuleInstance gen_rule_instance(Gen& g, int which) {
  using namespace mk;
  const int d = 2;
  switch (which % 8) {
    case 0: {  // app(lam x. b, a) = b[a]
      Term A = gen_inh_type(g, d);
      Term B0 = gen_inh_type(g, d);
      Term a = gen_term_of(g, A, d);
      Term b = alpha_eq(A, B0) && g.coin() ? var(0) : shift(synth(B0, gen_term_of(g, B0, d)), 1);
      Term rhs = b->tag == Tk::Var ? a : inst(b, a);
      return {"pi-comp", b->tag == Tk::Var ? A : B0, app(lam("x", A, b), a), rhs};
    }
    case 1: {  // split(C; x y. d; pair(a, b)) = d[a, b]
      Term A = gen_inh_type(g, d);
      Term B0 = gen_inh_type(g, d);
      Term C0 = gen_inh_type(g, d);
      Term a = gen_term_of(g, A, d);
      Term b = gen_term_of(g, B0, d);
      Term dd = alpha_eq(C0, A) && g.coin() ? var(1) : shift(gen_term_of(g, C0, d), 2);
      Term rhs = subst_sim(dd, {b, a}, 0, 0);
      Term lhs = app(lam("s", sigma("x", A, shift(B0, 1)),
                         split("z", shift(C0, 2), "x", "y", shift(dd, 1, 2), var(0))),
                     pair(a, b));
      return {"sigma-comp", C0, lhs, rhs};
    }
    case 2: {  // J(C; z. d; a, a, refl) = d[a]
      Term A = gen_inh_type(g, d);
      Term C0 = gen_inh_type(g, d);
      Term a = gen_term_of(g, A, d);
      Term dd = alpha_eq(C0, A) && g.coin() ? var(0) : shift(gen_term_of(g, C0, d), 1);
      Term rhs = dd->tag == Tk::Var ? a : inst(dd, a);
      return {"id-comp", C0,
              jelim("x", "y", "q", shift(C0, 3), "z", dd, a, a, refl(A, a)), rhs};
    }
    case 3: {  // rec1(C; dd; star) = dd
      Term C0 = gen_inh_type(g, d);
      Term dd = gen_term_of(g, C0, d);
      return {"one-comp", C0, rec1("x", shift(C0, 1), dd, star()), dd};
    }
    case 4: {  // case(C; l; r; inl a / inr b) = l[a] / r[b]
      Term A = gen_inh_type(g, d);
      Term B = gen_inh_type(g, d);
      Term C0 = gen_inh_type(g, d);
      Term l = alpha_eq(C0, A) && g.coin() ? var(0) : shift(gen_term_of(g, C0, d), 1);
      Term r = alpha_eq(C0, B) && g.coin() ? var(0) : shift(gen_term_of(g, C0, d), 1);
      bool left = g.coin();
      Term x = gen_term_of(g, left ? A : B, d);
      Term scrut = left ? inl(x) : inr(x);
      Term branch = left ? l : r;
      Term rhs = branch->tag == Tk::Var ? x : inst(branch, x);
      Term lhs = app(lam("s", sum(A, B),
                         casesum("z", shift(C0, 2), "x", shift(l, 1, 1), "y", shift(r, 1, 1), var(0))),
                     scrut);
      return {"plus-comp", C0, lhs, rhs};
    }
    case 5: {  // wrec(C; x y z. dd; sup(a, f)) = dd[a, f, lam u. wrec(..., f u)]
      // over W(One, Zero), whose only element is the leaf sup(star, empty).
      Term Wty = wt("x", one(), zero());
      Term f = lam("u", zero(), case0("q", shift(Wty, 2), var(0)));
      Term C0 = gen_inh_type(g, d);
      Term dd = shift(gen_term_of(g, C0, d), 3);
      Term recfn = lam("u", zero(), wrec("w", shift(C0, 2), "x", "y", "z", shift(dd, 1),
                                         app(shift(f, 1), var(0))));
      Term rhs = subst_sim(dd, {recfn, f, star()}, 0, 0);
      Term lhs = app(lam("s", Wty, wrec("w", shift(C0, 2), "x", "y", "z", shift(dd, 1), var(0))),
                     sup(star(), f));
      return {"w-comp", C0, lhs, rhs};
    }
    case 6: {  // el(code) = the type former it denotes
      Term c1 = gen_code(g, d);
      Term c2 = gen_code(g, d);
      Term lhs, rhs;
      switch (g.pick(4)) {
        case 0:
          lhs = el(cpi(c1, "x", shift(c2, 1)));
          rhs = pi("x", el(c1), el(shift(c2, 1)));
          break;
        case 1:
          lhs = el(csigma(c1, "x", shift(c2, 1)));
          rhs = sigma("x", el(c1), el(shift(c2, 1)));
          break;
        case 2:
          lhs = el(cplus(c1, c2));
          rhs = sum(el(c1), el(c2));
          break;
        default: {
          Term m = gen_term_of(g, el(c1), d);
          lhs = el(cid(c1, m, m));
          rhs = idt(el(c1), m, m);
          break;
        }
      }
      return {"el-eq", nullptr, lhs, rhs};
    }
    default: {  // el(z) = Zero, el(o) = One
      bool z = g.coin();
      return {"el-eq", nullptr, el(z ? czero() : cone()), z ? zero() : one()};
    }
  }
}

inline Environment test_env(TheoryFlags flags = {}) { return load_prelude(flags); }

}  // namespace uf::test
