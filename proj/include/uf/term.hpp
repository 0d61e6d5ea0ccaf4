#pragma once

// Raw syntax of the type theory: immutable term trees with de Bruijn indices
// for bound variables and pretty-name hints for display. Alpha-equivalence is
// structural equality on everything except the hints.

#include <cassert>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace uf {

enum class Tk {
  Var, Const,
  Pi, Lam, App,
  Sigma, Pair, Split,
  Id, Refl, J,
  W, Sup, WRec,
  Zero, Case0,
  One, Star, Rec1,
  Sum, Inl, Inr, CaseSum,
  U, El,
  CPi, CSigma, CId, CZero, COne, CPlus, CW,
  Ext, ExtComp,
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  Tk tag;
  int ix = -1;                     // Var: de Bruijn index
  std::string name;                // Const: definition name
  std::vector<std::string> hints;  // binder display names, in binder order
  std::vector<Term> sub;           // children; Lam's sub[0] may be null (no annotation)
};

// Binder depth of child `c` under a node with tag `t`.
inline int binders_at(Tk t, size_t c) {
  switch (t) {
    case Tk::Pi: case Tk::Sigma: case Tk::W:
    case Tk::CPi: case Tk::CSigma: case Tk::CW:
    case Tk::Lam:
      return c == 1 ? 1 : 0;
    case Tk::Split:   return c == 0 ? 1 : (c == 1 ? 2 : 0);
    case Tk::J:       return c == 0 ? 3 : (c == 1 ? 1 : 0);
    case Tk::WRec:    return c == 0 ? 1 : (c == 1 ? 3 : 0);
    case Tk::Case0:   return c == 0 ? 1 : 0;
    case Tk::Rec1:    return c == 0 ? 1 : 0;
    case Tk::CaseSum: return c <= 2 ? 1 : 0;
    case Tk::ExtComp: return c == 0 ? 1 : 0;
    default: return 0;
  }
}

namespace mk {

inline Term node(Tk t, std::vector<Term> sub = {}, std::vector<std::string> hints = {}) {
  auto n = std::make_shared<TermNode>();
  n->tag = t;
  n->sub = std::move(sub);
  n->hints = std::move(hints);
  return n;
}

inline Term var(int ix, std::string hint = "") {
  auto n = std::make_shared<TermNode>();
  n->tag = Tk::Var;
  n->ix = ix;
  if (!hint.empty()) n->hints = {std::move(hint)};
  return n;
}

inline Term cst(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tk::Const;
  n->name = std::move(name);
  return n;
}

inline Term pi(std::string x, Term dom, Term cod) { return node(Tk::Pi, {dom, cod}, {std::move(x)}); }
inline Term lam(std::string x, Term dom, Term body) { return node(Tk::Lam, {dom, body}, {std::move(x)}); }
inline Term app(Term f, Term a) { return node(Tk::App, {f, a}); }
inline Term sigma(std::string x, Term a, Term b) { return node(Tk::Sigma, {a, b}, {std::move(x)}); }
inline Term pair(Term a, Term b) { return node(Tk::Pair, {a, b}); }
inline Term split(std::string z, Term motive, std::string x, std::string y, Term branch, Term scrut) {
  return node(Tk::Split, {motive, branch, scrut}, {std::move(z), std::move(x), std::move(y)});
}
inline Term idt(Term a, Term m, Term n) { return node(Tk::Id, {a, m, n}); }
inline Term refl(Term a, Term m) { return node(Tk::Refl, {a, m}); }
inline Term jelim(std::string x, std::string y, std::string u, Term motive, std::string z, Term branch,
                  Term a, Term b, Term path) {
  return node(Tk::J, {motive, branch, a, b, path}, {std::move(x), std::move(y), std::move(u), std::move(z)});
}
inline Term wt(std::string x, Term a, Term b) { return node(Tk::W, {a, b}, {std::move(x)}); }
inline Term sup(Term a, Term f) { return node(Tk::Sup, {a, f}); }
inline Term wrec(std::string w, Term motive, std::string x, std::string y, std::string z, Term branch, Term tree) {
  return node(Tk::WRec, {motive, branch, tree}, {std::move(w), std::move(x), std::move(y), std::move(z)});
}
inline Term zero() { return node(Tk::Zero); }
inline Term case0(std::string x, Term motive, Term scrut) { return node(Tk::Case0, {motive, scrut}, {std::move(x)}); }
inline Term one() { return node(Tk::One); }
inline Term star() { return node(Tk::Star); }
inline Term rec1(std::string x, Term motive, Term branch, Term scrut) {
  return node(Tk::Rec1, {motive, branch, scrut}, {std::move(x)});
}
inline Term sum(Term a, Term b) { return node(Tk::Sum, {a, b}); }
inline Term inl(Term a) { return node(Tk::Inl, {a}); }
inline Term inr(Term b) { return node(Tk::Inr, {b}); }
inline Term casesum(std::string z, Term motive, std::string x, Term lbr, std::string y, Term rbr, Term scrut) {
  return node(Tk::CaseSum, {motive, lbr, rbr, scrut}, {std::move(z), std::move(x), std::move(y)});
}
inline Term u() { return node(Tk::U); }
inline Term el(Term code) { return node(Tk::El, {code}); }
inline Term cpi(Term a, std::string x, Term b) { return node(Tk::CPi, {a, b}, {std::move(x)}); }
inline Term csigma(Term a, std::string x, Term b) { return node(Tk::CSigma, {a, b}, {std::move(x)}); }
inline Term cid(Term a, Term m, Term n) { return node(Tk::CId, {a, m, n}); }
inline Term czero() { return node(Tk::CZero); }
inline Term cone() { return node(Tk::COne); }
inline Term cplus(Term a, Term b) { return node(Tk::CPlus, {a, b}); }
inline Term cw(Term a, std::string x, Term b) { return node(Tk::CW, {a, b}, {std::move(x)}); }
inline Term ext(Term f, Term g, Term h) { return node(Tk::Ext, {f, g, h}); }
inline Term extcomp(std::string x, Term body) { return node(Tk::ExtComp, {body}, {std::move(x)}); }

}  // namespace mk

// Structural equality ignoring display hints: this IS alpha-equivalence in the
// nameless representation.
inline bool alpha_eq(const Term& t, const Term& u) {
  if (t == u) return true;
  if (!t || !u) return false;
  if (t->tag != u->tag) return false;
  if (t->tag == Tk::Var) return t->ix == u->ix;
  if (t->tag == Tk::Const) return t->name == u->name;
  if (t->sub.size() != u->sub.size()) return false;
  for (size_t i = 0; i < t->sub.size(); ++i)
    if (!alpha_eq(t->sub[i], u->sub[i])) return false;
  return true;
}

// Add d to every free index >= cutoff.
inline Term shift(const Term& t, int d, int cutoff = 0) {
  if (!t) return t;
  if (d == 0) return t;
  switch (t->tag) {
    case Tk::Var:
      if (t->ix < cutoff) return t;
      return mk::var(t->ix + d, t->hints.empty() ? "" : t->hints[0]);
    case Tk::Const:
      return t;
    default: {
      auto n = std::make_shared<TermNode>(*t);
      bool changed = false;
      for (size_t i = 0; i < n->sub.size(); ++i) {
        Term s = shift(t->sub[i], d, cutoff + binders_at(t->tag, i));
        if (s != t->sub[i]) changed = true;
        n->sub[i] = s;
      }
      return changed ? Term(n) : t;
    }
  }
}

// Capture-free substitution of `a` for the free variable with index `j`:
// indices above j are decremented (the variable is consumed).
inline Term subst(const Term& t, int j, const Term& a) {
  if (!t) return t;
  switch (t->tag) {
    case Tk::Var:
      if (t->ix == j) return shift(a, j);
      if (t->ix > j) return mk::var(t->ix - 1, t->hints.empty() ? "" : t->hints[0]);
      return t;
    case Tk::Const:
      return t;
    default: {
      auto n = std::make_shared<TermNode>(*t);
      for (size_t i = 0; i < n->sub.size(); ++i)
        n->sub[i] = subst(t->sub[i], j + binders_at(t->tag, i), a);
      return n;
    }
  }
}

// Substitute the innermost binder (index 0); the common instantiation step.
inline Term inst(const Term& body, const Term& a) { return subst(body, 0, a); }

// Simultaneous substitution: Var(i) for i < sub.size() becomes sub[i]
// (sub[0] replaces the innermost variable), each expressed in the target
// context. Variables beyond the block are rebased by base_extra (the number
// of target entries below the block's position minus the source's), or must
// not occur when base_extra < 0.
inline Term subst_sim(const Term& t, const std::vector<Term>& sub, int depth = 0, int base_extra = -1) {
  if (!t) return t;
  switch (t->tag) {
    case Tk::Var: {
      if (t->ix < depth) return t;
      size_t k = static_cast<size_t>(t->ix - depth);
      if (k < sub.size()) return shift(sub[k], depth);
      assert(base_extra >= 0 && "subst_sim: uncovered free variable");
      return mk::var(t->ix - static_cast<int>(sub.size()) + base_extra,
                     t->hints.empty() ? "" : t->hints[0]);
    }
    case Tk::Const:
      return t;
    default: {
      auto n = std::make_shared<TermNode>(*t);
      for (size_t i = 0; i < n->sub.size(); ++i)
        n->sub[i] = subst_sim(t->sub[i], sub, depth + binders_at(t->tag, i), base_extra);
      return n;
    }
  }
}

inline void free_vars_into(const Term& t, int depth, std::set<int>& out) {
  if (!t) return;
  switch (t->tag) {
    case Tk::Var:
      if (t->ix >= depth) out.insert(t->ix - depth);
      return;
    case Tk::Const:
      return;
    default:
      for (size_t i = 0; i < t->sub.size(); ++i)
        free_vars_into(t->sub[i], depth + binders_at(t->tag, i), out);
  }
}

inline std::set<int> free_vars(const Term& t) {
  std::set<int> out;
  free_vars_into(t, 0, out);
  return out;
}

inline bool uses_var(const Term& t, int j) {
  if (!t) return false;
  if (t->tag == Tk::Var) return t->ix == j;
  if (t->tag == Tk::Const) return false;
  for (size_t i = 0; i < t->sub.size(); ++i)
    if (uses_var(t->sub[i], j + binders_at(t->tag, i))) return true;
  return false;
}

struct CtxEntry {
  std::string name;
  Term type;  // expressed in the telescope of the preceding entries
};

struct Context {
  std::vector<CtxEntry> entries;

  size_t size() const { return entries.size(); }
  Context extended(std::string name, Term type) const {
    Context c = *this;
    c.entries.push_back({std::move(name), std::move(type)});
    return c;
  }
  // Type of Var(ix), shifted into the full telescope.
  Term var_type(int ix) const {
    assert(ix >= 0 && static_cast<size_t>(ix) < entries.size());
    const Term& ty = entries[entries.size() - 1 - static_cast<size_t>(ix)].type;
    return shift(ty, ix + 1);
  }
};

enum class JudgementForm { TypeJ, TypeEqJ, TermJ, TermEqJ };

struct Judgement {
  JudgementForm form;
  Context ctx;
  Term a, b, ty;  // TypeJ: a | TypeEqJ: a,b | TermJ: a,ty | TermEqJ: a,b,ty

  static Judgement type_j(Context c, Term a) { return {JudgementForm::TypeJ, std::move(c), std::move(a), nullptr, nullptr}; }
  static Judgement type_eq(Context c, Term a, Term b) { return {JudgementForm::TypeEqJ, std::move(c), std::move(a), std::move(b), nullptr}; }
  static Judgement term_j(Context c, Term a, Term ty) { return {JudgementForm::TermJ, std::move(c), std::move(a), nullptr, std::move(ty)}; }
  static Judgement term_eq(Context c, Term a, Term b, Term ty) { return {JudgementForm::TermEqJ, std::move(c), std::move(a), std::move(b), std::move(ty)}; }
};

// Debug dump; the frontend owns the real pretty-printer.
inline std::string dump(const Term& t) {
  if (!t) return "_";
  switch (t->tag) {
    case Tk::Var: return "#" + std::to_string(t->ix);
    case Tk::Const: return t->name;
    case Tk::Pi: return "(Pi " + dump(t->sub[0]) + " . " + dump(t->sub[1]) + ")";
    case Tk::Lam: return "(lam " + dump(t->sub[0]) + " . " + dump(t->sub[1]) + ")";
    case Tk::App: return "(app " + dump(t->sub[0]) + " " + dump(t->sub[1]) + ")";
    case Tk::Sigma: return "(Sg " + dump(t->sub[0]) + " . " + dump(t->sub[1]) + ")";
    case Tk::Pair: return "(pair " + dump(t->sub[0]) + " " + dump(t->sub[1]) + ")";
    case Tk::Split: return "(split " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + ")";
    case Tk::Id: return "(Id " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + ")";
    case Tk::Refl: return "(refl " + dump(t->sub[0]) + " " + dump(t->sub[1]) + ")";
    case Tk::J: return "(J " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + " " + dump(t->sub[3]) + " " + dump(t->sub[4]) + ")";
    case Tk::W: return "(W " + dump(t->sub[0]) + " . " + dump(t->sub[1]) + ")";
    case Tk::Sup: return "(sup " + dump(t->sub[0]) + " " + dump(t->sub[1]) + ")";
    case Tk::WRec: return "(wrec " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + ")";
    case Tk::Zero: return "Zero";
    case Tk::Case0: return "(case0 " + dump(t->sub[0]) + " " + dump(t->sub[1]) + ")";
    case Tk::One: return "One";
    case Tk::Star: return "star";
    case Tk::Rec1: return "(rec1 " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + ")";
    case Tk::Sum: return "(Sum " + dump(t->sub[0]) + " " + dump(t->sub[1]) + ")";
    case Tk::Inl: return "(inl " + dump(t->sub[0]) + ")";
    case Tk::Inr: return "(inr " + dump(t->sub[0]) + ")";
    case Tk::CaseSum: return "(case " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + " " + dump(t->sub[3]) + ")";
    case Tk::U: return "U";
    case Tk::El: return "(El " + dump(t->sub[0]) + ")";
    case Tk::CPi: return "(cpi " + dump(t->sub[0]) + " . " + dump(t->sub[1]) + ")";
    case Tk::CSigma: return "(csg " + dump(t->sub[0]) + " . " + dump(t->sub[1]) + ")";
    case Tk::CId: return "(cid " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + ")";
    case Tk::CZero: return "z";
    case Tk::COne: return "o";
    case Tk::CPlus: return "(" + dump(t->sub[0]) + " ++ " + dump(t->sub[1]) + ")";
    case Tk::CW: return "(cw " + dump(t->sub[0]) + " . " + dump(t->sub[1]) + ")";
    case Tk::Ext: return "(ext " + dump(t->sub[0]) + " " + dump(t->sub[1]) + " " + dump(t->sub[2]) + ")";
    case Tk::ExtComp: return "(extcomp " + dump(t->sub[0]) + ")";
  }
  return "?";
}

}  // namespace uf
