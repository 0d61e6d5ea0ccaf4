// Contextual categories as first-class operation records: the abstract
// interface, generic pullback/section helpers, law checkers used by the
// model tests, the contextualization C_U of a universe in a base category,
// the syntactic contextual category of a checked environment, and the
// induction of logical structure on C_U from structure on the universe.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uf/errors.hpp"
#include "uf/kernel.hpp"
#include "uf/term.hpp"

namespace uf {

// ---------------------------------------------------------------------------
// The abstract operation record.
//
// Objects are graded by a level; ft maps level n+1 to n and the unique
// level-0 object is terminal. proj(X) : X -> ft X is the canonical
// projection, and for f : Y -> ft X there is a chosen pullback f*X with
// q(f, X) : f*X -> X over f. `factor` is the universal property of that
// square made operational: it is what lets sections and over-maps be
// pulled back, so concrete instances must supply it.

template <class Obj, class Mor>
struct ContextualCategoryOps {
  std::function<int(const Obj&)> level;
  std::function<Obj(const Obj&)> ft;
  Obj terminal;
  std::function<bool(const Obj&, const Obj&)> obj_eq;

  std::function<Obj(const Mor&)> dom, cod;
  std::function<Mor(const Mor&, const Mor&)> compose;  // compose(g, f) = g . f
  std::function<Mor(const Obj&)> identity;
  std::function<bool(const Mor&, const Mor&)> mor_eq;

  std::function<Mor(const Obj&)> proj;                       // p_X : X -> ft X
  std::function<Obj(const Mor&, const Obj&)> pullback_object;  // f*X
  std::function<Mor(const Mor&, const Obj&)> pullback_map;     // q(f, X)

  // Unique h : W -> f*X with p_{f*X} . h = u and q(f, X) . h = s, given
  // f : Y -> ft X, u : W -> Y, s : W -> X such that p_X . s = f . u.
  std::function<Mor(const Mor&, const Obj&, const Mor&, const Mor&)> factor;

  // Full hom-set enumeration for finite instances; null when unavailable.
  std::function<std::vector<Mor>(const Obj&, const Obj&)> enum_hom;
};

// ---------------------------------------------------------------------------
// Generic helpers.

// Canonical pullback of an iterated extension: for f : Delta -> Gamma and X
// an object with ft^k X = Gamma, produce f*X (pulling back level by level)
// together with the canonical map q : f*X -> X.
template <class Obj, class Mor>
struct PulledExt {
  Obj obj;
  Mor q;
};

template <class Obj, class Mor>
PulledExt<Obj, Mor> pull_ext(const ContextualCategoryOps<Obj, Mor>& cc,
                             const Mor& f, const Obj& X) {
  if (cc.level(X) == cc.level(cc.cod(f))) return {cc.dom(f), f};
  PulledExt<Obj, Mor> below = pull_ext(cc, f, cc.ft(X));
  return {cc.pullback_object(below.q, X), cc.pullback_map(below.q, X)};
}

// Composite projection X -> ft^k X.
template <class Obj, class Mor>
Mor proj_to(const ContextualCategoryOps<Obj, Mor>& cc, const Obj& X, int target_level) {
  Mor m = cc.identity(X);
  Obj cur = X;
  while (cc.level(cur) > target_level) {
    m = cc.compose(cc.proj(cur), m);
    cur = cc.ft(cur);
  }
  return m;
}

// Pullback of a map over Gamma: given f : Delta -> Gamma, iterated
// extensions X, Y of Gamma, and g : X -> Y commuting with the projections
// to Gamma, produce f*g : f*X -> f*Y. A section of Y over Gamma is the
// special case X = Gamma.
template <class Obj, class Mor>
Mor pull_over(const ContextualCategoryOps<Obj, Mor>& cc, const Mor& f,
              const Mor& g, const Obj& X, const Obj& Y) {
  int base = cc.level(cc.cod(f));
  PulledExt<Obj, Mor> px = pull_ext(cc, f, X);
  if (cc.level(Y) == base)
    return proj_to(cc, px.obj, cc.level(cc.dom(f)));
  Mor u = pull_over(cc, f, cc.compose(cc.proj(Y), g), X, cc.ft(Y));
  PulledExt<Obj, Mor> py = pull_ext(cc, f, cc.ft(Y));
  return cc.factor(py.q, Y, u, cc.compose(g, px.q));
}

template <class Obj, class Mor>
Mor pull_section(const ContextualCategoryOps<Obj, Mor>& cc, const Mor& f,
                 const Obj& X, const Mor& s) {
  return pull_over(cc, f, s, cc.cod(f), X);
}

template <class Obj, class Mor>
bool is_section(const ContextualCategoryOps<Obj, Mor>& cc, const Mor& s, const Obj& X) {
  return cc.obj_eq(cc.cod(s), X) && cc.obj_eq(cc.dom(s), cc.ft(X)) &&
         cc.mor_eq(cc.compose(cc.proj(X), s), cc.identity(cc.ft(X)));
}

// ---------------------------------------------------------------------------
// Structure records, one per constructor.

template <class Obj, class Mor>
struct PiStructure {
  // GAB is (Gamma, A, B); Pi(GAB) = (Gamma, Pi(A, B)).
  std::function<Obj(const Obj&)> Pi;
  // b a section of GAB over (Gamma, A) |-> section of Pi(GAB) over Gamma.
  std::function<Mor(const Obj&, const Mor&)> lambda;
  // k a section of Pi(GAB), a a section of (Gamma, A):  Gamma -> GAB with
  // p_B . app(k, a) = a.
  std::function<Mor(const Obj&, const Mor&, const Mor&)> app;
};

template <class Obj, class Mor>
struct SigmaStructure {
  std::function<Obj(const Obj&)> Sigma;            // (Gamma, Sigma(A, B))
  std::function<Mor(const Obj&)> pair;             // GAB -> Sigma(GAB), over Gamma
  // C over Sigma(GAB), d : GAB -> (Sigma(GAB), C) with p_C . d = pair:
  // the section with split . pair = d.
  std::function<Mor(const Obj&, const Obj&, const Mor&)> split;
};

template <class Obj, class Mor>
struct IdStructure {
  std::function<Obj(const Obj&)> IdObj;            // (Gamma, A, p*A, Id_A)
  std::function<Mor(const Obj&)> refl;             // (Gamma, A) -> IdObj
  // C over IdObj, d : (Gamma, A) -> (IdObj, C) with p_C . d = refl:
  // the section with J . refl = d.
  std::function<Mor(const Obj&, const Obj&, const Mor&)> J;
};

template <class Obj, class Mor>
struct WStructure {
  std::function<Obj(const Obj&)> W;                // (Gamma, W(A, B))
  std::function<Obj(const Obj&)> sup_dom;          // (Gamma, A, Pi(B, p*p*W))
  std::function<Mor(const Obj&)> sup;              // sup_dom -> W, over Gamma
  // C over (Gamma, W), d over the recursion premises: the section wrec.
  std::function<Mor(const Obj&, const Obj&, const Mor&)> wrec;
};

template <class Obj, class Mor>
struct ZeroStructure {
  std::function<Obj(const Obj&)> Zero;             // (Gamma, 0)
  std::function<Mor(const Obj&, const Obj&)> kase; // section of C over (Gamma, 0)
};

template <class Obj, class Mor>
struct OneStructure {
  std::function<Obj(const Obj&)> One;              // (Gamma, 1)
  std::function<Mor(const Obj&)> star;             // section of (Gamma, 1)
  // C over (Gamma, 1), d : Gamma -> (One, C) with p_C . d = star.
  std::function<Mor(const Obj&, const Obj&, const Mor&)> rec;
};

template <class Obj, class Mor>
struct SumStructure {
  // GA, GB both one-level extensions of the same Gamma.
  std::function<Obj(const Obj&, const Obj&)> Sum;  // (Gamma, A + B)
  std::function<Mor(const Obj&, const Obj&)> inl;  // GA -> Sum, over Gamma
  std::function<Mor(const Obj&, const Obj&)> inr;  // GB -> Sum, over Gamma
  // C over Sum, dl : GA -> (Sum, C) over inl, dr likewise over inr.
  std::function<Mor(const Obj&, const Obj&, const Obj&, const Mor&, const Mor&)> kase;
};

// A type-theoretic universe inside the contextual category: the object
// (U, el) at level 2 together with the closure maps on names.
template <class Obj, class Mor>
struct UniverseStructure {
  Obj U;                                           // level 1
  Obj el;                                          // level 2, ft el = U
  std::function<Mor(const Mor&, const Mor&)> pi, sigma, w, plus;
  std::function<Mor(const Mor&)> id;
  std::function<Mor(const Obj&)> z, o;             // Gamma -> U
};

template <class Obj, class Mor>
struct LogicalStructureOps {
  std::optional<PiStructure<Obj, Mor>> pi;
  std::optional<SigmaStructure<Obj, Mor>> sigma;
  std::optional<IdStructure<Obj, Mor>> id;
  std::optional<WStructure<Obj, Mor>> w;
  std::optional<ZeroStructure<Obj, Mor>> zero;
  std::optional<OneStructure<Obj, Mor>> one;
  std::optional<SumStructure<Obj, Mor>> sum;
  std::optional<UniverseStructure<Obj, Mor>> universe;
};

// ---------------------------------------------------------------------------
// Law checking.
//
// A LawSample probes the strict-functoriality laws at one configuration:
// X an object of level >= 1, f into ft X, and optionally g into dom f for
// the composition laws. A StructureSample probes one constructor
// configuration: GAB = (Gamma, A, B), sections of A and B, and a
// substitution f : Delta -> Gamma; the optional eliminator inputs are
// instance-built because their domains involve the instance's own objects.

template <class Obj, class Mor>
struct LawSample {
  Obj X;
  Mor f;
  std::optional<Mor> g;
};

template <class Obj, class Mor>
struct StructureSample {
  Obj GAB;
  Mor f;
  std::optional<Mor> sectA;   // section of ft GAB over Gamma
  std::optional<Mor> sectB;   // section of GAB over ft GAB
  std::optional<Obj> GB;      // second extension of Gamma for sums

  std::optional<Obj> sigmaC;
  std::optional<Mor> sigmaD;
  std::optional<Obj> idC;
  std::optional<Mor> idD;
  std::optional<Obj> wC;
  std::optional<Mor> wD;
  std::optional<Obj> zeroC;
  std::optional<Obj> oneC;
  std::optional<Mor> oneD;
  std::optional<Obj> sumC;
  std::optional<Mor> sumDl, sumDr;
};

namespace law_detail {

template <class F>
void run_check(std::vector<std::string>& report, const std::string& where,
               const std::string& equation, F&& body) {
  try {
    if (!body()) report.push_back(where + ": " + equation);
  } catch (const std::exception& e) {
    report.push_back(where + ": " + equation + " (raised: " + e.what() + ")");
  }
}

}  // namespace law_detail

// Checks the strict contextual-category laws on each sample, and, when a
// structure record and structure samples are supplied, every equation of
// the per-constructor definitions that the sample's data reaches
// (section/over-Gamma conditions, computation equations, and all
// f*-stability equations). Returns one line per violated equation.
template <class Obj, class Mor>
std::vector<std::string> verify_contextual_laws(
    const ContextualCategoryOps<Obj, Mor>& cc,
    const std::vector<LawSample<Obj, Mor>>& samples,
    const LogicalStructureOps<Obj, Mor>* structure = nullptr,
    const std::vector<StructureSample<Obj, Mor>>& ssamples = {}) {
  using law_detail::run_check;
  std::vector<std::string> report;

  for (size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const std::string at = "sample " + std::to_string(i);
    run_check(report, at, "ft iterates to the terminal object", [&] {
      Obj cur = s.X;
      while (cc.level(cur) > 0) cur = cc.ft(cur);
      return cc.obj_eq(cur, cc.terminal);
    });
    run_check(report, at, "ft(f*X) = dom f", [&] {
      return cc.obj_eq(cc.ft(cc.pullback_object(s.f, s.X)), cc.dom(s.f));
    });
    run_check(report, at, "p_X . q(f,X) = f . p_{f*X}", [&] {
      Obj fX = cc.pullback_object(s.f, s.X);
      Mor lhs = cc.compose(cc.proj(s.X), cc.pullback_map(s.f, s.X));
      Mor rhs = cc.compose(s.f, cc.proj(fX));
      return cc.mor_eq(lhs, rhs);
    });
    run_check(report, at, "1* X = X", [&] {
      return cc.obj_eq(cc.pullback_object(cc.identity(cc.ft(s.X)), s.X), s.X);
    });
    run_check(report, at, "q(1, X) = 1", [&] {
      return cc.mor_eq(cc.pullback_map(cc.identity(cc.ft(s.X)), s.X),
                       cc.identity(s.X));
    });
    run_check(report, at, "factor(p_{f*X}, q(f,X)) = 1", [&] {
      Obj fX = cc.pullback_object(s.f, s.X);
      Mor h = cc.factor(s.f, s.X, cc.proj(fX), cc.pullback_map(s.f, s.X));
      return cc.mor_eq(h, cc.identity(fX));
    });
    if (s.g) {
      run_check(report, at, "(fg)* X = g*(f*X)", [&] {
        Obj lhs = cc.pullback_object(cc.compose(s.f, *s.g), s.X);
        Obj rhs = cc.pullback_object(*s.g, cc.pullback_object(s.f, s.X));
        return cc.obj_eq(lhs, rhs);
      });
      run_check(report, at, "q(fg, X) = q(f,X) . q(g, f*X)", [&] {
        Mor lhs = cc.pullback_map(cc.compose(s.f, *s.g), s.X);
        Mor rhs = cc.compose(cc.pullback_map(s.f, s.X),
                             cc.pullback_map(*s.g, cc.pullback_object(s.f, s.X)));
        return cc.mor_eq(lhs, rhs);
      });
    }
    if (cc.enum_hom) {
      run_check(report, at, "terminal object admits exactly one morphism", [&] {
        return cc.enum_hom(s.X, cc.terminal).size() == 1;
      });
      run_check(report, at, "pullback universality: unique factorization through f*X", [&] {
        Obj fX = cc.pullback_object(s.f, s.X);
        Obj W = s.g ? cc.dom(*s.g) : cc.dom(s.f);
        Mor pX = cc.proj(s.X), q = cc.pullback_map(s.f, s.X), pfX = cc.proj(fX);
        auto all_h = cc.enum_hom(W, fX);
        for (const Mor& sm : cc.enum_hom(W, s.X)) {
          Mor down = cc.compose(pX, sm);
          for (const Mor& u : cc.enum_hom(W, cc.dom(s.f))) {
            if (!cc.mor_eq(cc.compose(s.f, u), down)) continue;
            Mor h = cc.factor(s.f, s.X, u, sm);
            if (!cc.mor_eq(cc.compose(pfX, h), u)) return false;
            if (!cc.mor_eq(cc.compose(q, h), sm)) return false;
            size_t solutions = 0;
            for (const Mor& cand : all_h)
              if (cc.mor_eq(cc.compose(pfX, cand), u) &&
                  cc.mor_eq(cc.compose(q, cand), sm))
                ++solutions;
            if (solutions != 1) return false;
          }
        }
        return true;
      });
    }
  }

  if (!structure) return report;

  for (size_t i = 0; i < ssamples.size(); ++i) {
    const auto& s = ssamples[i];
    const std::string at = "structure sample " + std::to_string(i);
    const Obj GA = cc.ft(s.GAB);
    const Obj Gamma = cc.ft(GA);
    const Mor& f = s.f;
    const Obj Delta = cc.dom(f);

    // f* of the (Gamma, A, B) data, shared between constructors.
    auto fGAB = [&] { return pull_ext(cc, f, s.GAB).obj; };
    auto fGA = [&] { return pull_ext(cc, f, GA).obj; };

    if (structure->pi && s.sectA && s.sectB) {
      const auto& P = *structure->pi;
      run_check(report, at, "ft Pi(A,B) = Gamma", [&] {
        return cc.obj_eq(cc.ft(P.Pi(s.GAB)), Gamma);
      });
      run_check(report, at, "lambda(b) is a section of p_{Pi(A,B)}", [&] {
        return is_section(cc, P.lambda(s.GAB, *s.sectB), P.Pi(s.GAB));
      });
      run_check(report, at, "p_B . app(k,a) = a", [&] {
        Mor k = P.lambda(s.GAB, *s.sectB);
        Mor ap = P.app(s.GAB, k, *s.sectA);
        return cc.mor_eq(cc.compose(cc.proj(s.GAB), ap), *s.sectA);
      });
      run_check(report, at, "app(lambda(b), a) = b . a", [&] {
        Mor k = P.lambda(s.GAB, *s.sectB);
        Mor ap = P.app(s.GAB, k, *s.sectA);
        return cc.mor_eq(ap, cc.compose(*s.sectB, *s.sectA));
      });
      run_check(report, at, "f* Pi(A,B) = Pi(f*A, f*B)", [&] {
        return cc.obj_eq(pull_ext(cc, f, P.Pi(s.GAB)).obj, P.Pi(fGAB()));
      });
      run_check(report, at, "f* lambda(b) = lambda(f* b)", [&] {
        Mor lam = P.lambda(s.GAB, *s.sectB);
        Mor lhs = pull_section(cc, f, P.Pi(s.GAB), lam);
        Mor qA = pull_ext(cc, f, GA).q;
        Mor fb = pull_section(cc, qA, s.GAB, *s.sectB);
        return cc.mor_eq(lhs, P.lambda(fGAB(), fb));
      });
      run_check(report, at, "f* app(k,a) = app(f* k, f* a)", [&] {
        Mor k = P.lambda(s.GAB, *s.sectB);
        Mor ap = P.app(s.GAB, k, *s.sectA);
        Mor lhs = pull_over(cc, f, ap, Gamma, s.GAB);
        Mor fk = pull_section(cc, f, P.Pi(s.GAB), k);
        Mor fa = pull_section(cc, f, GA, *s.sectA);
        return cc.mor_eq(lhs, P.app(fGAB(), fk, fa));
      });
    }

    if (structure->sigma) {
      const auto& S = *structure->sigma;
      run_check(report, at, "pair lies over Gamma", [&] {
        Mor lhs = cc.compose(cc.proj(S.Sigma(s.GAB)), S.pair(s.GAB));
        return cc.mor_eq(lhs, proj_to(cc, s.GAB, cc.level(Gamma)));
      });
      run_check(report, at, "f* Sigma(A,B) = Sigma(f*A, f*B)", [&] {
        return cc.obj_eq(pull_ext(cc, f, S.Sigma(s.GAB)).obj, S.Sigma(fGAB()));
      });
      run_check(report, at, "f* pair = pair", [&] {
        Mor lhs = pull_over(cc, f, S.pair(s.GAB), s.GAB, S.Sigma(s.GAB));
        return cc.mor_eq(lhs, S.pair(fGAB()));
      });
      if (s.sigmaC && s.sigmaD) {
        run_check(report, at, "split_d is a section of p_C", [&] {
          return is_section(cc, S.split(s.GAB, *s.sigmaC, *s.sigmaD), *s.sigmaC);
        });
        run_check(report, at, "split_d . pair = d", [&] {
          Mor sp = S.split(s.GAB, *s.sigmaC, *s.sigmaD);
          return cc.mor_eq(cc.compose(sp, S.pair(s.GAB)), *s.sigmaD);
        });
        run_check(report, at, "f* split_d = split_{f*d}", [&] {
          Mor sp = S.split(s.GAB, *s.sigmaC, *s.sigmaD);
          Mor qS = pull_ext(cc, f, S.Sigma(s.GAB)).q;
          Mor lhs = pull_section(cc, qS, *s.sigmaC, sp);
          Obj fC = pull_ext(cc, f, *s.sigmaC).obj;
          Mor fd = pull_over(cc, f, *s.sigmaD, s.GAB, *s.sigmaC);
          return cc.mor_eq(lhs, S.split(fGAB(), fC, fd));
        });
      }
    }

    if (structure->id) {
      const auto& I = *structure->id;
      run_check(report, at, "ft Id_A = (Gamma, A, p*A)", [&] {
        return cc.obj_eq(cc.ft(I.IdObj(GA)), cc.pullback_object(cc.proj(GA), GA));
      });
      run_check(report, at, "p_{Id} . refl = (1,1)", [&] {
        Mor diag = cc.factor(cc.proj(GA), GA, cc.identity(GA), cc.identity(GA));
        Mor lhs = cc.compose(cc.proj(I.IdObj(GA)), I.refl(GA));
        return cc.mor_eq(lhs, diag);
      });
      run_check(report, at, "f* Id_A = Id_{f*A}", [&] {
        return cc.obj_eq(pull_ext(cc, f, I.IdObj(GA)).obj, I.IdObj(fGA()));
      });
      run_check(report, at, "f* refl = refl", [&] {
        Mor lhs = pull_over(cc, f, I.refl(GA), GA, I.IdObj(GA));
        return cc.mor_eq(lhs, I.refl(fGA()));
      });
      if (s.idC && s.idD) {
        run_check(report, at, "J_{C,d} is a section of p_C", [&] {
          return is_section(cc, I.J(GA, *s.idC, *s.idD), *s.idC);
        });
        run_check(report, at, "J_{C,d} . refl = d", [&] {
          Mor j = I.J(GA, *s.idC, *s.idD);
          return cc.mor_eq(cc.compose(j, I.refl(GA)), *s.idD);
        });
        run_check(report, at, "f* J_{C,d} = J_{f*C, f*d}", [&] {
          Mor j = I.J(GA, *s.idC, *s.idD);
          Mor qI = pull_ext(cc, f, I.IdObj(GA)).q;
          Mor lhs = pull_section(cc, qI, *s.idC, j);
          Obj fC = pull_ext(cc, f, *s.idC).obj;
          Mor fd = pull_over(cc, f, *s.idD, GA, *s.idC);
          return cc.mor_eq(lhs, I.J(fGA(), fC, fd));
        });
      }
    }

    if (structure->w) {
      const auto& W = *structure->w;
      run_check(report, at, "ft W(A,B) = Gamma", [&] {
        return cc.obj_eq(cc.ft(W.W(s.GAB)), Gamma);
      });
      run_check(report, at, "sup lies over Gamma", [&] {
        Mor lhs = cc.compose(cc.proj(W.W(s.GAB)), W.sup(s.GAB));
        return cc.mor_eq(lhs, proj_to(cc, W.sup_dom(s.GAB), cc.level(Gamma)));
      });
      run_check(report, at, "f* W(A,B) = W(f*A, f*B)", [&] {
        return cc.obj_eq(pull_ext(cc, f, W.W(s.GAB)).obj, W.W(fGAB()));
      });
      run_check(report, at, "f* sup = sup", [&] {
        Mor lhs = pull_over(cc, f, W.sup(s.GAB), W.sup_dom(s.GAB), W.W(s.GAB));
        return cc.mor_eq(lhs, W.sup(fGAB()));
      });
      if (s.wC && s.wD) {
        run_check(report, at, "wrec_{C,d} is a section of p_C", [&] {
          return is_section(cc, W.wrec(s.GAB, *s.wC, *s.wD), *s.wC);
        });
        run_check(report, at, "f* wrec_{C,d} = wrec_{f*C, f*d}", [&] {
          Mor wr = W.wrec(s.GAB, *s.wC, *s.wD);
          Mor qW = pull_ext(cc, f, W.W(s.GAB)).q;
          Mor lhs = pull_section(cc, qW, *s.wC, wr);
          Obj fC = pull_ext(cc, f, *s.wC).obj;
          Mor fd = pull_over(cc, f, *s.wD, cc.dom(*s.wD), *s.wC);
          return cc.mor_eq(lhs, W.wrec(fGAB(), fC, fd));
        });
      }
    }

    if (structure->zero) {
      const auto& Z = *structure->zero;
      run_check(report, at, "ft 0 = Gamma", [&] {
        return cc.obj_eq(cc.ft(Z.Zero(Gamma)), Gamma);
      });
      run_check(report, at, "f* 0 = 0", [&] {
        return cc.obj_eq(pull_ext(cc, f, Z.Zero(Gamma)).obj, Z.Zero(Delta));
      });
      if (s.zeroC) {
        run_check(report, at, "case_C is a section of p_C", [&] {
          return is_section(cc, Z.kase(Gamma, *s.zeroC), *s.zeroC);
        });
        run_check(report, at, "f* case_C = case_{f*C}", [&] {
          Mor k = Z.kase(Gamma, *s.zeroC);
          Mor qZ = pull_ext(cc, f, Z.Zero(Gamma)).q;
          Mor lhs = pull_section(cc, qZ, *s.zeroC, k);
          Obj fC = pull_ext(cc, f, *s.zeroC).obj;
          return cc.mor_eq(lhs, Z.kase(Delta, fC));
        });
      }
    }

    if (structure->one) {
      const auto& O = *structure->one;
      run_check(report, at, "star is a section of p_1", [&] {
        return is_section(cc, O.star(Gamma), O.One(Gamma));
      });
      run_check(report, at, "f* 1 = 1", [&] {
        return cc.obj_eq(pull_ext(cc, f, O.One(Gamma)).obj, O.One(Delta));
      });
      run_check(report, at, "f* star = star", [&] {
        Mor lhs = pull_section(cc, f, O.One(Gamma), O.star(Gamma));
        return cc.mor_eq(lhs, O.star(Delta));
      });
      if (s.oneC && s.oneD) {
        run_check(report, at, "rec_{C,d} is a section of p_C", [&] {
          return is_section(cc, O.rec(Gamma, *s.oneC, *s.oneD), *s.oneC);
        });
        run_check(report, at, "rec_{C,d} . star = d", [&] {
          Mor r = O.rec(Gamma, *s.oneC, *s.oneD);
          return cc.mor_eq(cc.compose(r, O.star(Gamma)), *s.oneD);
        });
        run_check(report, at, "f* rec_{C,d} = rec_{f*C, f*d}", [&] {
          Mor r = O.rec(Gamma, *s.oneC, *s.oneD);
          Mor qO = pull_ext(cc, f, O.One(Gamma)).q;
          Mor lhs = pull_section(cc, qO, *s.oneC, r);
          Obj fC = pull_ext(cc, f, *s.oneC).obj;
          Mor fd = pull_over(cc, f, *s.oneD, Gamma, *s.oneC);
          return cc.mor_eq(lhs, O.rec(Delta, fC, fd));
        });
      }
    }

    if (structure->sum) {
      const auto& S = *structure->sum;
      const Obj GB = s.GB ? *s.GB : GA;
      auto fGB = [&] { return pull_ext(cc, f, GB).obj; };
      run_check(report, at, "inl lies over Gamma", [&] {
        Mor lhs = cc.compose(cc.proj(S.Sum(GA, GB)), S.inl(GA, GB));
        return cc.mor_eq(lhs, cc.proj(GA));
      });
      run_check(report, at, "inr lies over Gamma", [&] {
        Mor lhs = cc.compose(cc.proj(S.Sum(GA, GB)), S.inr(GA, GB));
        return cc.mor_eq(lhs, cc.proj(GB));
      });
      run_check(report, at, "f* (A+B) = f*A + f*B", [&] {
        return cc.obj_eq(pull_ext(cc, f, S.Sum(GA, GB)).obj, S.Sum(fGA(), fGB()));
      });
      run_check(report, at, "f* inl = inl", [&] {
        Mor lhs = pull_over(cc, f, S.inl(GA, GB), GA, S.Sum(GA, GB));
        return cc.mor_eq(lhs, S.inl(fGA(), fGB()));
      });
      run_check(report, at, "f* inr = inr", [&] {
        Mor lhs = pull_over(cc, f, S.inr(GA, GB), GB, S.Sum(GA, GB));
        return cc.mor_eq(lhs, S.inr(fGA(), fGB()));
      });
      if (s.sumC && s.sumDl && s.sumDr) {
        run_check(report, at, "case_{C,dl,dr} is a section of p_C", [&] {
          return is_section(cc, S.kase(GA, GB, *s.sumC, *s.sumDl, *s.sumDr), *s.sumC);
        });
        run_check(report, at, "case . inl = dl", [&] {
          Mor k = S.kase(GA, GB, *s.sumC, *s.sumDl, *s.sumDr);
          return cc.mor_eq(cc.compose(k, S.inl(GA, GB)), *s.sumDl);
        });
        run_check(report, at, "case . inr = dr", [&] {
          Mor k = S.kase(GA, GB, *s.sumC, *s.sumDl, *s.sumDr);
          return cc.mor_eq(cc.compose(k, S.inr(GA, GB)), *s.sumDr);
        });
        run_check(report, at, "f* case = case_{f*dl, f*dr}", [&] {
          Mor k = S.kase(GA, GB, *s.sumC, *s.sumDl, *s.sumDr);
          Mor qS = pull_ext(cc, f, S.Sum(GA, GB)).q;
          Mor lhs = pull_section(cc, qS, *s.sumC, k);
          Obj fC = pull_ext(cc, f, *s.sumC).obj;
          Mor fdl = pull_over(cc, f, *s.sumDl, GA, *s.sumC);
          Mor fdr = pull_over(cc, f, *s.sumDr, GB, *s.sumC);
          return cc.mor_eq(lhs, S.kase(fGA(), fGB(), fC, fdl, fdr));
        });
      }
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// Contextualization: the contextual category C_U of a universe in a base
// category. Objects of level n are sequences (f_1, ..., f_n) of names,
// f_i : (pt; f_1, ..., f_{i-1}) -> U; realizations are the chosen pullback
// objects; hom-sets are the base category's.

template <class BObj, class BMor>
struct BaseCategoryOps {
  std::function<BMor(const BMor&, const BMor&)> compose;  // compose(g, f) = g . f
  std::function<BMor(const BObj&)> identity;
  std::function<bool(const BMor&, const BMor&)> mor_eq;
  std::function<bool(const BObj&, const BObj&)> obj_eq;
  std::function<BObj(const BMor&)> dom, cod;
  BObj terminal;
  std::function<BMor(const BObj&)> bang;  // unique map X -> terminal
  std::function<std::vector<BMor>(const BObj&, const BObj&)> enum_hom;  // may be null
};

template <class BObj, class BMor>
struct ChosenSquare {
  BObj obj;  // (X; f), the chosen pullback of p along the name f : X -> U
  BMor P;    // (X; f) -> X
  BMor Q;    // (X; f) -> Utilde
};

template <class BObj, class BMor>
struct UniverseInCategory {
  BaseCategoryOps<BObj, BMor> base;
  BObj U, Utilde;
  BMor p;  // Utilde -> U
  std::function<ChosenSquare<BObj, BMor>(const BMor&)> chosen;
  // Unique h : W -> (X; name) with P . h = u and Q . h = v, given
  // u : W -> X, v : W -> Utilde such that name . u = p . v.
  std::function<BMor(const BMor&, const BMor&, const BMor&)> factor;
};

template <class BMor>
struct CtxObj {
  std::vector<BMor> names;
};

template <class BObj, class BMor>
struct CtxMor {
  BMor m;
  CtxObj<BMor> dm, cd;
};

template <class BObj, class BMor>
BObj realize(const UniverseInCategory<BObj, BMor>& uni, const CtxObj<BMor>& X) {
  if (X.names.empty()) return uni.base.terminal;
  return uni.chosen(X.names.back()).obj;
}

template <class BObj, class BMor>
ContextualCategoryOps<CtxObj<BMor>, CtxMor<BObj, BMor>> contextualize(
    const UniverseInCategory<BObj, BMor>& universe) {
  using Obj = CtxObj<BMor>;
  using Mor = CtxMor<BObj, BMor>;
  auto uni = std::make_shared<UniverseInCategory<BObj, BMor>>(universe);

  ContextualCategoryOps<Obj, Mor> cc;
  cc.level = [](const Obj& X) { return static_cast<int>(X.names.size()); };
  cc.ft = [](const Obj& X) {
    Obj r = X;
    r.names.pop_back();
    return r;
  };
  cc.terminal = Obj{};
  cc.obj_eq = [uni](const Obj& X, const Obj& Y) {
    if (X.names.size() != Y.names.size()) return false;
    for (size_t i = 0; i < X.names.size(); ++i)
      if (!uni->base.mor_eq(X.names[i], Y.names[i])) return false;
    return true;
  };
  cc.dom = [](const Mor& f) { return f.dm; };
  cc.cod = [](const Mor& f) { return f.cd; };
  cc.compose = [uni](const Mor& g, const Mor& f) {
    return Mor{uni->base.compose(g.m, f.m), f.dm, g.cd};
  };
  cc.identity = [uni](const Obj& X) {
    return Mor{uni->base.identity(realize(*uni, X)), X, X};
  };
  cc.mor_eq = [uni, obj_eq = cc.obj_eq](const Mor& f, const Mor& g) {
    return obj_eq(f.dm, g.dm) && obj_eq(f.cd, g.cd) && uni->base.mor_eq(f.m, g.m);
  };
  cc.proj = [uni, ft = cc.ft](const Obj& X) {
    return Mor{uni->chosen(X.names.back()).P, X, ft(X)};
  };
  cc.pullback_object = [uni](const Mor& f, const Obj& X) {
    Obj r = f.dm;
    r.names.push_back(uni->base.compose(X.names.back(), f.m));
    return r;
  };
  cc.pullback_map = [uni, po = cc.pullback_object](const Mor& f, const Obj& X) {
    const BMor& n = X.names.back();
    BMor pulled_name = uni->base.compose(n, f.m);
    auto sq = uni->chosen(pulled_name);
    BMor u = uni->base.compose(f.m, sq.P);
    return Mor{uni->factor(n, u, sq.Q), po(f, X), X};
  };
  cc.factor = [uni, po = cc.pullback_object](const Mor& f, const Obj& X,
                                             const Mor& u, const Mor& s) {
    const BMor& n = X.names.back();
    BMor pulled_name = uni->base.compose(n, f.m);
    BMor v = uni->base.compose(uni->chosen(n).Q, s.m);
    return Mor{uni->factor(pulled_name, u.m, v), u.dm, po(f, X)};
  };
  if (universe.base.enum_hom) {
    cc.enum_hom = [uni](const Obj& X, const Obj& Y) {
      std::vector<Mor> out;
      for (const BMor& m : uni->base.enum_hom(realize(*uni, X), realize(*uni, Y)))
        out.push_back(Mor{m, X, Y});
      return out;
    };
  }
  return cc;
}

// ---------------------------------------------------------------------------
// Logical structure on C_U induced from structure on the universe.
//
// The universe-side data operationalizes the structure a universe carries
// in a category with enough limits: a representing object of (A, B) pairs
// with a former map out of it, the name-pairing into it, and the
// transposition/evaluation maps that concrete instances implement
// elementwise. Type formers on C_U become composites of names with the
// former maps, so their substitution stability is composition associativity;
// the term-level maps are pulled back from the data's universal ones.

template <class BObj, class BMor>
struct PiUniverseData {
  BObj UPi;  // object of pairs (A, B: El A -> U)
  BMor Pi;   // U^Pi -> U
  // <A,B> : X -> U^Pi for a : X -> U and b : (X; a) -> U.
  std::function<BMor(const BMor&, const BMor&)> name_pair;
  // t a section of (X; a; b) over (X; a) |-> section of (X; Pi.<a,b>);
  // the transpose under the realization isomorphism.
  std::function<BMor(const BMor&, const BMor&, const BMor&)> transpose;
  // k a section of (X; Pi.<a,b>), s a section of (X; a) |-> the map
  // X -> (X; a; b) with P_b-composite s; evaluation of the internal hom.
  std::function<BMor(const BMor&, const BMor&, const BMor&, const BMor&)> eval;
};

template <class BObj, class BMor>
struct SigmaUniverseData {
  BObj USigma;  // equals U^Pi: same premises
  BMor Sigma;   // U^Sigma -> U
  std::function<BMor(const BMor&, const BMor&)> name_pair;
  // (X; a; b) -> (X; Sigma.<a,b>) over X.
  std::function<BMor(const BMor&, const BMor&)> pair;
  // c : (X; Sigma.<a,b>) -> U, d : (X; a; b) -> (X; Sigma.<a,b>; c) over pair.
  std::function<BMor(const BMor&, const BMor&, const BMor&, const BMor&)> split;
};

template <class BObj, class BMor>
struct IdUniverseData {
  BObj UId;  // Utilde x_U Utilde
  BMor Id;   // U^Id -> U
  // (X; a; a.P*) -> U^Id classifying the two points of the fiber.
  std::function<BMor(const BMor&)> classify;
  // (X; a) -> realization of the Id tower, over the diagonal.
  std::function<BMor(const BMor&)> refl;
  // c over the Id tower, d over refl: the chosen section. Instances must
  // route this through one lifting operation fixed in the universal
  // context, instantiated here only by precomposition.
  std::function<BMor(const BMor&, const BMor&, const BMor&)> lift;
};

template <class BObj, class BMor>
struct WUniverseData {
  BObj UW;  // same premises object as U^Pi
  BMor W;   // U^W -> U
  std::function<BMor(const BMor&, const BMor&)> name_pair;
  // (X; a; Pi(b, w-name)) -> (X; W.<a,b>) over X.
  std::function<BMor(const BMor&, const BMor&)> sup;
  // c : (X; W.<a,b>) -> U plus d over the recursion premises.
  std::function<BMor(const BMor&, const BMor&, const BMor&, const BMor&)> wrec;
};

template <class BObj, class BMor>
struct GroundUniverseData {
  BMor zero, one;  // pt -> U
  std::function<BMor(const BMor&, const BMor&)> plus;  // names X -> U pointwise
  // Section of c over (X; zero-name); total because the fiber is empty.
  std::function<BMor(const BMor&, const BMor&)> case0;
  std::function<BMor(const BObj&)> star;  // X -> (X; one-name)
  std::function<BMor(const BMor&, const BMor&)> rec1;
  std::function<BMor(const BMor&, const BMor&)> inl, inr;
  std::function<BMor(const BMor&, const BMor&, const BMor&, const BMor&, const BMor&)>
      casesum;
};

template <class BObj, class BMor>
struct InternalUniverseData {
  BMor u0;  // pt -> U
  BMor i;   // (pt; u0) -> U
  std::function<BMor(const BMor&, const BMor&)> pi0, sigma0, w0, plus0;
  std::function<BMor(const BMor&)> id0;
  BMor z0, o0;  // pt -> (pt; u0)
};

template <class BObj, class BMor>
struct UniverseLogicalData {
  std::optional<PiUniverseData<BObj, BMor>> pi;
  std::optional<SigmaUniverseData<BObj, BMor>> sigma;
  std::optional<IdUniverseData<BObj, BMor>> id;
  std::optional<WUniverseData<BObj, BMor>> w;
  std::optional<GroundUniverseData<BObj, BMor>> ground;
  std::optional<InternalUniverseData<BObj, BMor>> inner;
};

template <class BObj, class BMor>
LogicalStructureOps<CtxObj<BMor>, CtxMor<BObj, BMor>> induce_logical_structure(
    const UniverseInCategory<BObj, BMor>& universe,
    const UniverseLogicalData<BObj, BMor>& data) {
  using Obj = CtxObj<BMor>;
  using Mor = CtxMor<BObj, BMor>;
  auto uni = std::make_shared<UniverseInCategory<BObj, BMor>>(universe);
  auto dat = std::make_shared<UniverseLogicalData<BObj, BMor>>(data);

  auto drop = [](Obj X, int k) {
    X.names.resize(X.names.size() - static_cast<size_t>(k));
    return X;
  };
  auto push = [](Obj X, const BMor& n) {
    X.names.push_back(n);
    return X;
  };
  // Last two names of (Gamma, A, B).
  auto nameA = [](const Obj& GAB) { return GAB.names[GAB.names.size() - 2]; };
  auto nameB = [](const Obj& GAB) { return GAB.names.back(); };

  LogicalStructureOps<Obj, Mor> out;

  if (dat->pi) {
    PiStructure<Obj, Mor> P;
    P.Pi = [uni, dat, drop, push, nameA, nameB](const Obj& GAB) {
      const auto& d = *dat->pi;
      BMor name = uni->base.compose(d.Pi, d.name_pair(nameA(GAB), nameB(GAB)));
      return push(drop(GAB, 2), name);
    };
    P.lambda = [dat, drop, nameA, nameB, Pi = P.Pi](const Obj& GAB, const Mor& b) {
      const auto& d = *dat->pi;
      Obj G = drop(GAB, 2);
      return Mor{d.transpose(nameA(GAB), nameB(GAB), b.m), G, Pi(GAB)};
    };
    P.app = [dat, nameA, nameB, drop](const Obj& GAB, const Mor& k, const Mor& a) {
      const auto& d = *dat->pi;
      return Mor{d.eval(nameA(GAB), nameB(GAB), k.m, a.m), drop(GAB, 2), GAB};
    };
    out.pi = std::move(P);
  }

  if (dat->sigma) {
    SigmaStructure<Obj, Mor> S;
    S.Sigma = [uni, dat, drop, push, nameA, nameB](const Obj& GAB) {
      const auto& d = *dat->sigma;
      BMor name = uni->base.compose(d.Sigma, d.name_pair(nameA(GAB), nameB(GAB)));
      return push(drop(GAB, 2), name);
    };
    S.pair = [dat, nameA, nameB, Sg = S.Sigma](const Obj& GAB) {
      const auto& d = *dat->sigma;
      return Mor{d.pair(nameA(GAB), nameB(GAB)), GAB, Sg(GAB)};
    };
    S.split = [dat, nameA, nameB, Sg = S.Sigma](const Obj& GAB, const Obj& C,
                                                const Mor& d0) {
      const auto& d = *dat->sigma;
      return Mor{d.split(nameA(GAB), nameB(GAB), C.names.back(), d0.m), Sg(GAB), C};
    };
    out.sigma = std::move(S);
  }

  if (dat->id) {
    IdStructure<Obj, Mor> I;
    I.IdObj = [uni, dat, push](const Obj& GA) {
      const auto& d = *dat->id;
      const BMor& a = GA.names.back();
      BMor doubled = uni->base.compose(a, uni->chosen(a).P);
      BMor idname = uni->base.compose(d.Id, d.classify(a));
      return push(push(GA, doubled), idname);
    };
    I.refl = [dat, IdO = I.IdObj](const Obj& GA) {
      return Mor{dat->id->refl(GA.names.back()), GA, IdO(GA)};
    };
    I.J = [dat, IdO = I.IdObj](const Obj& GA, const Obj& C, const Mor& d0) {
      return Mor{dat->id->lift(GA.names.back(), C.names.back(), d0.m), IdO(GA), C};
    };
    out.id = std::move(I);
  }

  if (dat->w) {
    if (!dat->pi) throw Unsupported{"W-structure on the universe needs Pi-structure"};
    WStructure<Obj, Mor> W;
    W.W = [uni, dat, drop, push, nameA, nameB](const Obj& GAB) {
      const auto& d = *dat->w;
      BMor name = uni->base.compose(d.W, d.name_pair(nameA(GAB), nameB(GAB)));
      return push(drop(GAB, 2), name);
    };
    W.sup_dom = [uni, dat, drop, push, nameA, nameB](const Obj& GAB) {
      const auto& dw = *dat->w;
      const auto& dp = *dat->pi;
      BMor a = nameA(GAB), b = nameB(GAB);
      BMor wname = uni->base.compose(dw.W, dw.name_pair(a, b));
      // W weakened to (X; a; b): compose with both projections.
      BMor Pa = uni->chosen(a).P;
      BMor Pb = uni->chosen(b).P;
      BMor wname_ab = uni->base.compose(wname, uni->base.compose(Pa, Pb));
      BMor pib = uni->base.compose(dp.Pi, dp.name_pair(b, wname_ab));
      return push(push(drop(GAB, 2), a), pib);
    };
    W.sup = [dat, nameA, nameB, dom = W.sup_dom, Wo = W.W](const Obj& GAB) {
      return Mor{dat->w->sup(nameA(GAB), nameB(GAB)), dom(GAB), Wo(GAB)};
    };
    W.wrec = [dat, nameA, nameB, Wo = W.W](const Obj& GAB, const Obj& C, const Mor& d0) {
      return Mor{dat->w->wrec(nameA(GAB), nameB(GAB), C.names.back(), d0.m), Wo(GAB), C};
    };
    out.w = std::move(W);
  }

  if (dat->ground) {
    auto ground_name = [uni, dat](const Obj& G, const BMor& point) {
      BObj X = realize(*uni, G);
      return uni->base.compose(point, uni->base.bang(X));
    };
    ZeroStructure<Obj, Mor> Z;
    Z.Zero = [dat, push, ground_name](const Obj& G) {
      return push(G, ground_name(G, dat->ground->zero));
    };
    Z.kase = [dat, Zo = Z.Zero](const Obj& G, const Obj& C) {
      Obj ZG = Zo(G);
      return Mor{dat->ground->case0(ZG.names.back(), C.names.back()), ZG, C};
    };
    out.zero = std::move(Z);

    OneStructure<Obj, Mor> O;
    O.One = [dat, push, ground_name](const Obj& G) {
      return push(G, ground_name(G, dat->ground->one));
    };
    O.star = [uni, dat, Oo = O.One](const Obj& G) {
      return Mor{dat->ground->star(realize(*uni, G)), G, Oo(G)};
    };
    O.rec = [dat, Oo = O.One](const Obj& G, const Obj& C, const Mor& d0) {
      return Mor{dat->ground->rec1(C.names.back(), d0.m), Oo(G), C};
    };
    out.one = std::move(O);

    SumStructure<Obj, Mor> S;
    S.Sum = [dat, drop, push](const Obj& GA, const Obj& GB) {
      return push(drop(GA, 1), dat->ground->plus(GA.names.back(), GB.names.back()));
    };
    S.inl = [dat, Sm = S.Sum](const Obj& GA, const Obj& GB) {
      return Mor{dat->ground->inl(GA.names.back(), GB.names.back()), GA, Sm(GA, GB)};
    };
    S.inr = [dat, Sm = S.Sum](const Obj& GA, const Obj& GB) {
      return Mor{dat->ground->inr(GA.names.back(), GB.names.back()), GB, Sm(GA, GB)};
    };
    S.kase = [dat, Sm = S.Sum](const Obj& GA, const Obj& GB, const Obj& C,
                               const Mor& dl, const Mor& dr) {
      return Mor{dat->ground->casesum(GA.names.back(), GB.names.back(),
                                      C.names.back(), dl.m, dr.m),
                 Sm(GA, GB), C};
    };
    out.sum = std::move(S);
  }

  if (dat->inner) {
    UniverseStructure<Obj, Mor> U;
    U.U = Obj{{dat->inner->u0}};
    U.el = Obj{{dat->inner->u0, dat->inner->i}};
    U.pi = [dat, Uo = U.U](const Mor& a, const Mor& b) {
      return Mor{dat->inner->pi0(a.m, b.m), a.dm, Uo};
    };
    U.sigma = [dat, Uo = U.U](const Mor& a, const Mor& b) {
      return Mor{dat->inner->sigma0(a.m, b.m), a.dm, Uo};
    };
    U.w = [dat, Uo = U.U](const Mor& a, const Mor& b) {
      return Mor{dat->inner->w0(a.m, b.m), a.dm, Uo};
    };
    U.plus = [dat, Uo = U.U](const Mor& a, const Mor& b) {
      return Mor{dat->inner->plus0(a.m, b.m), a.dm, Uo};
    };
    U.id = [dat, Uo = U.U](const Mor& a) {
      return Mor{dat->inner->id0(a.m), a.dm, Uo};
    };
    U.z = [uni, dat, Uo = U.U](const Obj& G) {
      BMor zg = uni->base.compose(dat->inner->z0, uni->base.bang(realize(*uni, G)));
      return Mor{zg, G, Uo};
    };
    U.o = [uni, dat, Uo = U.U](const Obj& G) {
      BMor og = uni->base.compose(dat->inner->o0, uni->base.bang(realize(*uni, G)));
      return Mor{og, G, Uo};
    };
    out.universe = std::move(U);
  }

  return out;
}

// ---------------------------------------------------------------------------
// The syntactic contextual category of a checked environment. Objects are
// checker-valid contexts; morphisms are term lists (f_1, ..., f_m) with
// f_i of the i-th target type under the earlier components, modulo
// componentwise definitional equality. Composition is substitution.

struct SynObj {
  Context ctx;
};

struct SynMor {
  Context dm, cd;
  std::vector<Term> terms;  // terms[i] matches cd entry i, outermost first
};

namespace syn_detail {

// Substitute a term living in `cod` along the morphism's term list: the
// innermost variable of `cod` maps to the last term.
inline Term subst_mor(const Term& t, const std::vector<Term>& terms) {
  std::vector<Term> sub(terms.rbegin(), terms.rend());
  return subst_sim(t, sub, 0, 0);
}

}  // namespace syn_detail

inline ContextualCategoryOps<SynObj, SynMor> syntactic_cc(const Environment& env) {
  auto e = std::make_shared<Environment>(env);

  ContextualCategoryOps<SynObj, SynMor> cc;
  cc.level = [](const SynObj& X) { return static_cast<int>(X.ctx.entries.size()); };
  cc.ft = [](const SynObj& X) {
    SynObj r = X;
    r.ctx.entries.pop_back();
    return r;
  };
  cc.terminal = SynObj{};
  cc.obj_eq = [e](const SynObj& X, const SynObj& Y) {
    if (X.ctx.entries.size() != Y.ctx.entries.size()) return false;
    Context prefix;
    for (size_t i = 0; i < X.ctx.entries.size(); ++i) {
      if (!defeq(*e, prefix, X.ctx.entries[i].type, Y.ctx.entries[i].type))
        return false;
      prefix.entries.push_back(X.ctx.entries[i]);
    }
    return true;
  };
  cc.dom = [](const SynMor& f) { return SynObj{f.dm}; };
  cc.cod = [](const SynMor& f) { return SynObj{f.cd}; };
  cc.compose = [](const SynMor& g, const SynMor& f) {
    SynMor r;
    r.dm = f.dm;
    r.cd = g.cd;
    for (const Term& t : g.terms) r.terms.push_back(syn_detail::subst_mor(t, f.terms));
    return r;
  };
  cc.identity = [](const SynObj& X) {
    SynMor r;
    r.dm = X.ctx;
    r.cd = X.ctx;
    int n = static_cast<int>(X.ctx.entries.size());
    for (int i = 0; i < n; ++i)
      r.terms.push_back(mk::var(n - 1 - i, X.ctx.entries[i].name));
    return r;
  };
  cc.mor_eq = [e, obj_eq = cc.obj_eq](const SynMor& f, const SynMor& g) {
    if (!obj_eq(SynObj{f.dm}, SynObj{g.dm})) return false;
    if (!obj_eq(SynObj{f.cd}, SynObj{g.cd})) return false;
    if (f.terms.size() != g.terms.size()) return false;
    for (size_t i = 0; i < f.terms.size(); ++i)
      if (!defeq(*e, f.dm, f.terms[i], g.terms[i])) return false;
    return true;
  };
  cc.proj = [identity = cc.identity, ft = cc.ft](const SynObj& X) {
    SynMor r = identity(X);
    r.terms.pop_back();
    r.cd = ft(X).ctx;
    return r;
  };
  cc.pullback_object = [](const SynMor& f, const SynObj& X) {
    const auto& entry = X.ctx.entries.back();
    SynObj r{f.dm};
    r.ctx.entries.push_back({entry.name, syn_detail::subst_mor(entry.type, f.terms)});
    return r;
  };
  cc.pullback_map = [po = cc.pullback_object](const SynMor& f, const SynObj& X) {
    SynMor r;
    r.dm = po(f, X).ctx;
    r.cd = X.ctx;
    for (const Term& t : f.terms) r.terms.push_back(shift(t, 1));
    r.terms.push_back(mk::var(0, X.ctx.entries.back().name));
    return r;
  };
  cc.factor = [po = cc.pullback_object](const SynMor& f, const SynObj& X,
                                        const SynMor& u, const SynMor& s) {
    SynMor r;
    r.dm = u.dm;
    r.cd = po(f, X).ctx;
    r.terms = u.terms;
    r.terms.push_back(s.terms.back());
    return r;
  };
  cc.enum_hom = nullptr;
  return cc;
}

}  // namespace uf
