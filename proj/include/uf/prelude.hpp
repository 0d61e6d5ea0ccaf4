#pragma once

// The homotopy-isomorphism tower and the univalence constant, built as raw
// de Bruijn terms and typechecked on load. Fun and idHIso are auxiliary
// definitions the later entries depend on.

#include "uf/kernel.hpp"

namespace uf {

namespace prelude_detail {

using namespace mk;

inline Term fun_def() {
  // Fun := \a:U. \b:U. cpi(a, _. b)
  return lam("a", u(), lam("b", u(), cpi(var(1), "_", var(1))));
}
inline Term fun_ty() { return pi("a", u(), pi("b", u(), u())); }

inline Term fun_bin_ty() {
  // Pi(a b : U) Pi(f : El(Fun a b)) U
  return pi("a", u(), pi("b", u(), pi("f", el(app(app(cst("Fun"), var(1)), var(0))), u())));
}

inline Term lhinv_def() {
  // \a b f. csigma(Fun b a, g. cpi(a, x. cid(a, g (f x), x)))
  return lam("a", u(),
         lam("b", u(),
         lam("f", el(app(app(cst("Fun"), var(1)), var(0))),
             csigma(app(app(cst("Fun"), var(1)), var(2)), "g",
                    cpi(var(3), "x",
                        cid(var(4), app(var(1), app(var(2), var(0))), var(0)))))));
}

inline Term rhinv_def() {
  // \a b f. csigma(Fun b a, h. cpi(b, y. cid(b, f (h y), y)))
  return lam("a", u(),
         lam("b", u(),
         lam("f", el(app(app(cst("Fun"), var(1)), var(0))),
             csigma(app(app(cst("Fun"), var(1)), var(2)), "h",
                    cpi(var(2), "y",
                        cid(var(3), app(var(2), app(var(1), var(0))), var(0)))))));
}

inline Term ishiso_def() {
  // \a b f. csigma(LHInv a b f, _. RHInv a b f)
  return lam("a", u(),
         lam("b", u(),
         lam("f", el(app(app(cst("Fun"), var(1)), var(0))),
             csigma(app(app(app(cst("LHInv"), var(2)), var(1)), var(0)), "_",
                    app(app(app(cst("RHInv"), var(3)), var(2)), var(1))))));
}

inline Term hiso_def() {
  // \a b. csigma(Fun a b, f. isHIso a b f)
  return lam("a", u(),
         lam("b", u(),
             csigma(app(app(cst("Fun"), var(1)), var(0)), "f",
                    app(app(app(cst("isHIso"), var(2)), var(1)), var(0)))));
}
inline Term hiso_ty() { return pi("a", u(), pi("b", u(), u())); }

inline Term idhiso_def() {
  // \b. (id, ((id, \x. refl x), (id, \x. refl x)))
  Term idfn = lam("x", el(var(0)), var(0));
  Term lamrefl = lam("x", el(var(0)), refl(el(var(1)), var(0)));
  return lam("b", u(), pair(idfn, pair(pair(idfn, lamrefl), pair(idfn, lamrefl))));
}
inline Term idhiso_ty() {
  return pi("b", u(), el(app(app(cst("HIso"), var(0)), var(0))));
}

inline Term w_def() {
  // \a bf x y p. J(x' y' q. El(HIso (bf x') (bf y')); z. idHIso (bf z); x, y, p)
  Term motive = el(app(app(cst("HIso"), app(var(6), var(2))), app(var(6), var(1))));
  Term branch = app(cst("idHIso"), app(var(4), var(0)));
  return lam("a", u(),
         lam("bf", pi("x", el(var(0)), u()),
         lam("x", el(var(1)),
         lam("y", el(var(2)),
         lam("p", idt(el(var(3)), var(1), var(0)),
             jelim("x'", "y'", "q", motive, "z", branch, var(2), var(1), var(0)))))));
}
inline Term w_ty() {
  return pi("a", u(),
         pi("bf", pi("x", el(var(0)), u()),
         pi("x", el(var(1)),
         pi("y", el(var(2)),
         pi("p", idt(el(var(3)), var(1), var(0)),
            el(app(app(cst("HIso"), app(var(3), var(2))), app(var(3), var(1)))))))));
}

inline Term isuniv_def() {
  // \a bf. cpi(a, x. cpi(a, y. isHIso (cid a x y) (HIso (bf x) (bf y)) (w a bf x y)))
  Term body =
      app(app(app(cst("isHIso"), cid(var(3), var(1), var(0))),
              app(app(cst("HIso"), app(var(2), var(1))), app(var(2), var(0)))),
          app(app(app(app(cst("w"), var(3)), var(2)), var(1)), var(0)));
  return lam("a", u(),
         lam("bf", pi("x", el(var(0)), u()),
             cpi(var(1), "x", cpi(var(2), "y", body))));
}
inline Term isuniv_ty() {
  return pi("a", u(), pi("bf", pi("x", el(var(0)), u()), u()));
}

// Type-level analogues of Fun/LHInv/RHInv/isHIso: needed to state univalence
// for the family El over U itself, since U carries no code.
inline Term funT(const Term& A, const Term& B) { return pi("_", A, shift(B, 1)); }

inline Term lhinvT(const Term& A, const Term& B, const Term& f) {
  return sigma("g", funT(B, A),
               pi("x", shift(A, 1),
                  idt(shift(A, 2), app(var(1), app(shift(f, 2), var(0))), var(0))));
}

inline Term rhinvT(const Term& A, const Term& B, const Term& f) {
  return sigma("h", funT(B, A),
               pi("y", shift(B, 1),
                  idt(shift(B, 2), app(shift(f, 2), app(var(1), var(0))), var(0))));
}

inline Term ishisoT(const Term& A, const Term& B, const Term& f) {
  return sigma("_", lhinvT(A, B, f), shift(rhinvT(A, B, f), 1));
}

inline Term uvt_ty() {
  // Pi(x y : U) isHIso-of (J-defined transport Id(U,x,y) -> El(HIso x y)),
  // stated at the type level.
  Term A = idt(u(), var(1), var(0));
  Term B = el(app(app(cst("HIso"), var(1)), var(0)));
  Term motive = el(app(app(cst("HIso"), var(2)), var(1)));
  Term wU = lam("p", idt(u(), var(1), var(0)),
                jelim("x'", "y'", "q", motive, "z", app(cst("idHIso"), var(0)),
                      var(2), var(1), var(0)));
  return pi("x", u(), pi("y", u(), ishisoT(A, B, wU)));
}

}  // namespace prelude_detail

inline void define_checked(Environment& env, const std::string& name, const Term& type, const Term& body) {
  if (env.find(name)) throw err_dup_var(name);
  check_type(env, Context{}, type);
  if (body) check(env, Context{}, body, type);
  env.defs.push_back(Def{name, type, body});
}

inline void load_prelude_into(Environment& env) {
  namespace p = prelude_detail;
  define_checked(env, "Fun", p::fun_ty(), p::fun_def());
  define_checked(env, "LHInv", p::fun_bin_ty(), p::lhinv_def());
  define_checked(env, "RHInv", p::fun_bin_ty(), p::rhinv_def());
  define_checked(env, "isHIso", p::fun_bin_ty(), p::ishiso_def());
  define_checked(env, "HIso", p::hiso_ty(), p::hiso_def());
  define_checked(env, "idHIso", p::idhiso_ty(), p::idhiso_def());
  define_checked(env, "w", p::w_ty(), p::w_def());
  define_checked(env, "isUnivalent", p::isuniv_ty(), p::isuniv_def());
  if (env.flags.univalence_axiom) define_checked(env, "uvt", p::uvt_ty(), nullptr);
}

inline Environment load_prelude(TheoryFlags flags) {
  Environment env;
  env.flags = flags;
  load_prelude_into(env);
  return env;
}

}  // namespace uf
