#pragma once

// The finite-set model. The base category is finite sets of canonical HF
// codes; the universe U is the (virtual) set of codes under a node budget N,
// with Utilde the codes-with-a-chosen-member and p the first projection. All
// structure maps are elementwise functions on codes, and the interpretation
// turns checked syntax into objects and sections of the contextualization.
//
// Objects come in three representations: materialized element lists, virtual
// objects (membership predicate only; U and the classifier objects live
// here), and fiber totals (X; name), the chosen-pullback objects. Fiber
// totals enumerate lazily and compare by base + pointwise name equality, so
// building a section of a large extension costs nothing until someone
// actually iterates it.

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uf/contextual.hpp"
#include "uf/errors.hpp"
#include "uf/hf.hpp"
#include "uf/kernel.hpp"
#include "uf/term.hpp"

namespace uf {

// ---------------------------------------------------------------------------
// Objects and morphisms.

struct SetObjData;

struct SetObj {
  std::shared_ptr<const SetObjData> d;
};

struct SetMor {
  SetObj dm, cd;
  std::function<HF(const HF&)> ap;
};

struct SetObjData {
  enum Kind { Mat, Virt, Fiber } kind = Mat;
  std::vector<HF> elems;                    // Mat; Fiber cache once forced
  std::string tag;                          // Virt identity
  std::function<bool(const HF&)> member;    // Virt membership
  std::optional<SetMor> fiber_name;         // Fiber: name : base -> U
  mutable std::once_flag forced;
  mutable std::vector<HF> cache;
};

inline SetObj mk_setobj(std::vector<HF> elems) {
  std::sort(elems.begin(), elems.end(), hf_lt);
  elems.erase(std::unique(elems.begin(), elems.end(),
                          [](const HF& x, const HF& y) { return hf_eq(x, y); }),
              elems.end());
  auto d = std::make_shared<SetObjData>();
  d->kind = SetObjData::Mat;
  d->elems = std::move(elems);
  return SetObj{std::move(d)};
}

inline SetObj virt_obj(std::string tag, std::function<bool(const HF&)> member) {
  auto d = std::make_shared<SetObjData>();
  d->kind = SetObjData::Virt;
  d->tag = std::move(tag);
  d->member = std::move(member);
  return SetObj{std::move(d)};
}

inline SetObj fiber_obj(SetMor name) {
  auto d = std::make_shared<SetObjData>();
  d->kind = SetObjData::Fiber;
  d->fiber_name = std::move(name);
  return SetObj{std::move(d)};
}

inline SetMor set_mor(SetObj dm, SetObj cd, std::function<HF(const HF&)> ap) {
  return SetMor{std::move(dm), std::move(cd), std::move(ap)};
}

inline const std::vector<HF>& setobj_elems(const SetObj& X);

namespace set_detail {

inline void force_fiber(const SetObjData& d) {
  std::call_once(d.forced, [&d] {
    std::vector<HF> out;
    for (const HF& x : setobj_elems(d.fiber_name->dm)) {
      HF code = d.fiber_name->ap(x);
      for (const HF& m : code->elems) out.push_back(kpair(x, m));
    }
    std::sort(out.begin(), out.end(), hf_lt);
    d.cache = std::move(out);
  });
}

}  // namespace set_detail

inline const std::vector<HF>& setobj_elems(const SetObj& X) {
  switch (X.d->kind) {
    case SetObjData::Mat:
      return X.d->elems;
    case SetObjData::Fiber:
      set_detail::force_fiber(*X.d);
      return X.d->cache;
    default:
      throw Unsupported("cannot enumerate the virtual object " + X.d->tag);
  }
}

inline bool setobj_mem(const SetObj& X, const HF& v) {
  switch (X.d->kind) {
    case SetObjData::Virt:
      return X.d->member(v);
    case SetObjData::Fiber:
      return is_kpair(v) && setobj_mem(X.d->fiber_name->dm, kfst(v)) &&
             hf_mem(ksnd(v), X.d->fiber_name->ap(kfst(v)));
    default: {
      const auto& es = X.d->elems;
      auto it = std::lower_bound(es.begin(), es.end(), v, hf_lt);
      return it != es.end() && hf_eq(*it, v);
    }
  }
}

inline bool setobj_eq(const SetObj& X, const SetObj& Y) {
  if (X.d == Y.d) return true;
  const auto kx = X.d->kind, ky = Y.d->kind;
  if (kx == SetObjData::Virt || ky == SetObjData::Virt)
    return kx == ky && X.d->tag == Y.d->tag;
  // Two fiber totals agree iff their bases agree and the names agree
  // pointwise; this never forces the fibers themselves.
  if (kx == SetObjData::Fiber && ky == SetObjData::Fiber) {
    const SetMor& nx = *X.d->fiber_name;
    const SetMor& ny = *Y.d->fiber_name;
    if (!setobj_eq(nx.dm, ny.dm)) return false;
    for (const HF& x : setobj_elems(nx.dm))
      if (!hf_eq(nx.ap(x), ny.ap(x))) return false;
    return true;
  }
  const auto& ex = setobj_elems(X);
  const auto& ey = setobj_elems(Y);
  if (ex.size() != ey.size()) return false;
  for (size_t i = 0; i < ex.size(); ++i)
    if (!hf_eq(ex[i], ey[i])) return false;
  return true;
}

inline BaseCategoryOps<SetObj, SetMor> finite_set_ops(long enum_cap = 1 << 20) {
  BaseCategoryOps<SetObj, SetMor> b;
  b.compose = [](const SetMor& g, const SetMor& f) {
    return set_mor(f.dm, g.cd, [ga = g.ap, fa = f.ap](const HF& x) { return ga(fa(x)); });
  };
  b.identity = [](const SetObj& X) {
    return set_mor(X, X, [](const HF& x) { return x; });
  };
  b.obj_eq = setobj_eq;
  b.mor_eq = [](const SetMor& f, const SetMor& g) {
    if (!setobj_eq(f.dm, g.dm) || !setobj_eq(f.cd, g.cd)) return false;
    for (const HF& x : setobj_elems(f.dm))
      if (!hf_eq(f.ap(x), g.ap(x))) return false;
    return true;
  };
  b.dom = [](const SetMor& f) { return f.dm; };
  b.cod = [](const SetMor& f) { return f.cd; };
  b.terminal = mk_setobj({hf_empty()});
  b.bang = [term = b.terminal](const SetObj& X) {
    return set_mor(X, term, [](const HF&) { return hf_empty(); });
  };
  b.enum_hom = [cap = enum_cap](const SetObj& X, const SetObj& Y) {
    const auto& dom = setobj_elems(X);
    const auto& cod = setobj_elems(Y);
    if (!dom.empty() && cod.empty()) return std::vector<SetMor>{};
    double total = 1;
    for (size_t i = 0; i < dom.size(); ++i) {
      total *= static_cast<double>(cod.size());
      if (total > static_cast<double>(cap))
        throw BudgetExceeded("enum_hom", static_cast<long>(cap) + 1, cap);
    }
    std::vector<SetMor> out;
    std::vector<size_t> assign(dom.size(), 0);
    while (true) {
      auto table = std::make_shared<std::vector<std::pair<HF, HF>>>();
      for (size_t i = 0; i < dom.size(); ++i) table->push_back({dom[i], cod[assign[i]]});
      out.push_back(set_mor(X, Y, [table](const HF& x) {
        for (auto& [k, v] : *table)
          if (hf_eq(k, x)) return v;
        throw std::runtime_error("enum_hom function applied outside its domain");
      }));
      size_t i = 0;
      for (; i < assign.size(); ++i) {
        if (++assign[i] < cod.size()) break;
        assign[i] = 0;
      }
      if (i == assign.size()) break;
    }
    return out;
  };
  return b;
}

// ---------------------------------------------------------------------------
// Code-level type formers. Every former takes the node budget and raises
// BudgetExceeded as soon as the accumulated result would overrun it, so no
// enumeration here can run away.

inline HF zero_code() { return hf_empty(); }
inline HF one_code() { return hf_singleton(hf_empty()); }

inline HF id_code(const HF& x, const HF& y) {
  return hf_eq(x, y) ? one_code() : zero_code();
}

// Dependent function space: the set of graphs picking one member of B(m) for
// every member m of A.
inline HF pi_code(const HF& A, const std::function<HF(const HF&)>& B, long budget) {
  std::vector<HF> fibers;
  for (const HF& m : A->elems) fibers.push_back(B(m));
  std::vector<HF> graphs;
  std::int64_t nodes = 1;
  std::vector<std::pair<HF, HF>> picked;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == A->elems.size()) {
      HF g = hf_graph(picked);
      nodes += g->nodes;
      if (nodes > budget) throw BudgetExceeded("pi", nodes, budget);
      graphs.push_back(std::move(g));
      return;
    }
    for (const HF& y : fibers[i]->elems) {
      picked.push_back({A->elems[i], y});
      self(self, i + 1);
      picked.pop_back();
    }
  };
  rec(rec, 0);
  return mk_hf(std::move(graphs));
}

inline HF sigma_code(const HF& A, const std::function<HF(const HF&)>& B, long budget) {
  std::vector<HF> out;
  std::int64_t nodes = 1;
  for (const HF& m : A->elems) {
    HF Bm = B(m);
    for (const HF& y : Bm->elems) {
      HF p = kpair(m, y);
      nodes += p->nodes;
      if (nodes > budget) throw BudgetExceeded("sigma", nodes, budget);
      out.push_back(std::move(p));
    }
  }
  return mk_hf(std::move(out));
}

inline HF plus_code(const HF& a, const HF& b, long budget) {
  std::vector<HF> out;
  std::int64_t nodes = 1;
  auto add = [&](const HF& tagv, const HF& m) {
    HF p = kpair(tagv, m);
    nodes += p->nodes;
    if (nodes > budget) throw BudgetExceeded("plus", nodes, budget);
    out.push_back(std::move(p));
  };
  for (const HF& m : a->elems) add(hf_nat(0), m);
  for (const HF& m : b->elems) add(hf_nat(1), m);
  return mk_hf(std::move(out));
}

// Least fixed point of S |-> { (m, g) : m in A, g : B(m) -> S }, grown stage
// by stage. The iteration either stabilizes on a finite tree set or some
// candidate overruns the budget; it never truncates.
inline HF w_code(const HF& A, const std::function<HF(const HF&)>& B, long budget) {
  std::vector<HF> fibers;
  for (const HF& m : A->elems) fibers.push_back(B(m));
  std::vector<HF> trees;
  while (true) {
    std::vector<HF> next = trees;
    std::int64_t nodes = 1;
    for (const HF& t : trees) nodes += t->nodes;
    bool grew = false;
    for (size_t i = 0; i < A->elems.size(); ++i) {
      std::vector<std::pair<HF, HF>> picked;
      auto rec = [&](auto&& self, size_t j) -> void {
        if (j == fibers[i]->elems.size()) {
          HF cand = kpair(A->elems[i], hf_graph(picked));
          for (const HF& t : next)
            if (hf_eq(t, cand)) return;
          nodes += cand->nodes;
          if (nodes > budget) throw BudgetExceeded("w", nodes, budget);
          next.push_back(std::move(cand));
          grew = true;
          return;
        }
        for (const HF& s : trees) {
          picked.push_back({fibers[i]->elems[j], s});
          self(self, j + 1);
          picked.pop_back();
        }
      };
      rec(rec, 0);
    }
    if (!grew) return mk_hf(std::move(next));
    trees = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// The universe and its structure data.

struct IdLiftQuery {
  SetMor top;     // Utilde -> (Utilde x U)
  SetMor bottom;  // Id*Utilde -> (U x U)
};

struct SetUniverse {
  long N = 64, N0 = 16;
  UniverseInCategory<SetObj, SetMor> uni;
  UniverseLogicalData<SetObj, SetMor> data;

  SetObj U, Utilde, UPi, UId, IdUtilde, UtxU, UxU;
  SetObj Agen, Bgen;  // generic family over the premises object, as pair sets
  SetMor p, alpha_gen, r, pxU;
  std::function<HF()> inner_code;  // the code of the inner universe, built once
};

namespace set_detail {

// Member access for points of the doubled extension (X; a; a.P): (((x,m),n)).
inline HF d_base(const HF& e) { return kfst(kfst(e)); }
inline HF d_left(const HF& e) { return ksnd(kfst(e)); }
inline HF d_right(const HF& e) { return ksnd(e); }

// Tree recursion for the W eliminator: e = (x, (m, g)), h collects the value
// of every subtree, d supplies the step.
inline HF wrec_run(const std::function<HF(const HF&)>& bname,
                   const std::function<HF(const HF&)>& dap, const HF& e) {
  HF x = kfst(e), t = ksnd(e);
  HF m = kfst(t), g = ksnd(t);
  std::vector<std::pair<HF, HF>> hyp;
  HF fiber = bname(kpair(x, m));
  for (const HF& bb : fiber->elems) {
    HF sub = kpair(x, hf_apply(g, bb));
    hyp.push_back({bb, ksnd(wrec_run(bname, dap, sub))});
  }
  HF arg = kpair(kpair(kpair(x, m), g), hf_graph(hyp));
  return kpair(e, ksnd(dap(arg)));
}

}  // namespace set_detail

inline SetUniverse build_set_universe(long N = 64, long N0 = 16) {
  if (!(0 < N0 && N0 < N)) throw Unsupported("budgets must satisfy 0 < N0 < N");
  // The code count below a node budget grows by roughly x2.3 per node, and
  // the inner universe is materialized by exhaustive enumeration.
  if (N0 > 20) throw Unsupported("inner budgets beyond 20 cannot be enumerated");

  SetUniverse M;
  M.N = N;
  M.N0 = N0;
  auto base = finite_set_ops();

  // The inner universe's own code is huge, so it is exempt from the outer
  // budget (it plays the role of a smaller inaccessible) and built on first
  // demand.
  {
    auto once = std::make_shared<std::once_flag>();
    auto slot = std::make_shared<HF>();
    M.inner_code = [once, slot, N0]() {
      std::call_once(*once, [&] { *slot = mk_hf(enumerate_hf(static_cast<int>(N0))); });
      return *slot;
    };
  }
  auto inner_code = M.inner_code;

  auto in_U = [N, inner_code](const HF& c) {
    return node_count(c) <= N || hf_eq(c, inner_code());
  };

  M.U = virt_obj("U@" + std::to_string(N), in_U);
  M.Utilde = virt_obj("Utilde@" + std::to_string(N), [in_U](const HF& e) {
    return is_kpair(e) && in_U(kfst(e)) && hf_mem(ksnd(e), kfst(e));
  });
  M.p = set_mor(M.Utilde, M.U, [](const HF& e) { return kfst(e); });

  // Premises object for the binder formers: pairs (A, table) with table a
  // family of codes indexed by the members of A.
  auto in_UPi = [in_U](const HF& c) {
    if (!is_kpair(c) || !in_U(kfst(c))) return false;
    const HF A = kfst(c), tbl = ksnd(c);
    if (!is_graph_on(tbl, A->elems)) return false;
    for (const HF& entry : tbl->elems)
      if (!in_U(ksnd(entry))) return false;
    return true;
  };
  M.UPi = virt_obj("UPi@" + std::to_string(N), in_UPi);
  M.UId = virt_obj("UId@" + std::to_string(N), [in_U](const HF& c) {
    if (!is_kpair(c) || !in_U(kfst(c)) || !is_kpair(ksnd(c))) return false;
    return hf_mem(kfst(ksnd(c)), kfst(c)) && hf_mem(ksnd(ksnd(c)), kfst(c));
  });
  M.Agen = virt_obj("Agen@" + std::to_string(N), [in_UPi](const HF& e) {
    return is_kpair(e) && in_UPi(kfst(e)) && hf_mem(ksnd(e), kfst(kfst(e)));
  });
  M.Bgen = virt_obj("Bgen@" + std::to_string(N), [in_UPi](const HF& e) {
    if (!is_kpair(e) || !is_kpair(kfst(e))) return false;
    const HF am = kfst(e);
    if (!in_UPi(kfst(am)) || !hf_mem(ksnd(am), kfst(kfst(am)))) return false;
    return hf_mem(ksnd(e), hf_apply(ksnd(kfst(am)), ksnd(am)));
  });
  M.alpha_gen = set_mor(M.UPi, M.U, [](const HF& c) { return kfst(c); });

  M.uni.base = base;
  M.uni.U = M.U;
  M.uni.Utilde = M.Utilde;
  M.uni.p = M.p;
  M.uni.chosen = [U = M.U, Ut = M.Utilde](const SetMor& name) {
    ChosenSquare<SetObj, SetMor> sq;
    sq.obj = fiber_obj(name);
    sq.P = set_mor(sq.obj, name.dm, [](const HF& e) { return kfst(e); });
    sq.Q = set_mor(sq.obj, Ut, [n = name.ap](const HF& e) {
      return kpair(n(kfst(e)), ksnd(e));
    });
    return sq;
  };
  M.uni.factor = [](const SetMor& name, const SetMor& u, const SetMor& v) {
    SetObj total = fiber_obj(name);
    return set_mor(u.dm, total, [n = name.ap, ua = u.ap, va = v.ap](const HF& w) {
      HF x = ua(w), e = va(w);
      if (!hf_eq(n(x), kfst(e)))
        throw NotCommuting("factor: the pair of legs does not sit over one name value");
      return kpair(x, ksnd(e));
    });
  };

  auto chosen = M.uni.chosen;
  auto compose = base.compose;

  // Names paired into the premises object; shared by the three binder formers.
  auto name_pair = [UPi = M.UPi, chosen](const SetMor& a, const SetMor& b) {
    return set_mor(a.dm, UPi, [aa = a.ap, ba = b.ap](const HF& x) {
      HF A = aa(x);
      std::vector<std::pair<HF, HF>> fam;
      for (const HF& m : A->elems) fam.push_back({m, ba(kpair(x, m))});
      return kpair(A, hf_graph(fam));
    });
  };

  PiUniverseData<SetObj, SetMor> P;
  P.UPi = M.UPi;
  P.Pi = set_mor(M.UPi, M.U, [N](const HF& c) {
    return pi_code(kfst(c), [tbl = ksnd(c)](const HF& m) { return hf_apply(tbl, m); }, N);
  });
  P.name_pair = name_pair;
  P.transpose = [chosen, compose, Pi = P.Pi, name_pair](const SetMor& a, const SetMor& b,
                                                        const SetMor& t) {
    SetMor pin = compose(Pi, name_pair(a, b));
    return set_mor(a.dm, fiber_obj(pin), [aa = a.ap, ta = t.ap](const HF& x) {
      std::vector<std::pair<HF, HF>> gr;
      HF A = aa(x);
      for (const HF& m : A->elems) gr.push_back({m, ksnd(ta(kpair(x, m)))});
      return kpair(x, hf_graph(gr));
    });
  };
  P.eval = [chosen](const SetMor& a, const SetMor& b, const SetMor& k, const SetMor& s) {
    return set_mor(a.dm, fiber_obj(b), [ka = k.ap, sa = s.ap](const HF& x) {
      HF m = ksnd(sa(x));
      return kpair(kpair(x, m), hf_apply(ksnd(ka(x)), m));
    });
  };
  M.data.pi = P;

  SigmaUniverseData<SetObj, SetMor> Sg;
  Sg.USigma = M.UPi;
  Sg.Sigma = set_mor(M.UPi, M.U, [N](const HF& c) {
    return sigma_code(kfst(c), [tbl = ksnd(c)](const HF& m) { return hf_apply(tbl, m); }, N);
  });
  Sg.name_pair = name_pair;
  Sg.pair = [compose, Sig = Sg.Sigma, name_pair](const SetMor& a, const SetMor& b) {
    SetMor sn = compose(Sig, name_pair(a, b));
    return set_mor(fiber_obj(b), fiber_obj(sn), [](const HF& e) {
      return kpair(kfst(kfst(e)), kpair(ksnd(kfst(e)), ksnd(e)));
    });
  };
  Sg.split = [compose, Sig = Sg.Sigma, name_pair](const SetMor& a, const SetMor& b,
                                                  const SetMor& c, const SetMor& d) {
    SetMor sn = compose(Sig, name_pair(a, b));
    return set_mor(fiber_obj(sn), fiber_obj(c), [da = d.ap](const HF& e) {
      HF x = kfst(e), my = ksnd(e);
      return da(kpair(kpair(x, kfst(my)), ksnd(my)));
    });
  };
  M.data.sigma = Sg;

  IdUniverseData<SetObj, SetMor> I;
  I.UId = M.UId;
  I.Id = set_mor(M.UId, M.U, [](const HF& c) {
    return id_code(kfst(ksnd(c)), ksnd(ksnd(c)));
  });
  I.classify = [UId = M.UId, chosen, compose](const SetMor& a) {
    SetMor doubled = compose(a, chosen(a).P);
    return set_mor(fiber_obj(doubled), UId, [aa = a.ap](const HF& e) {
      return kpair(aa(set_detail::d_base(e)),
                   kpair(set_detail::d_left(e), set_detail::d_right(e)));
    });
  };
  // The filler below is the one lifting operation of the model, fixed once
  // over the universal tower; every J instance precomposes it. Fibers of the
  // path object are empty or singleton, so its value is forced.
  auto universal_lift = [](const std::function<HF(const HF&)>& dap, const HF& e) {
    HF diag = kfst(kfst(e));  // ((x, m), m), witness forces both members equal
    return kpair(e, ksnd(dap(diag)));
  };
  I.refl = [chosen, compose, Id = I.Id, classify = I.classify](const SetMor& a) {
    SetMor doubled = compose(a, chosen(a).P);
    SetMor idn = compose(Id, classify(a));
    return set_mor(fiber_obj(a), fiber_obj(idn), [](const HF& e) {
      return kpair(kpair(e, ksnd(e)), hf_empty());
    });
  };
  I.lift = [chosen, compose, Id = I.Id, classify = I.classify, universal_lift](
               const SetMor& a, const SetMor& c, const SetMor& d) {
    SetMor idn = compose(Id, classify(a));
    return set_mor(fiber_obj(idn), fiber_obj(c), [universal_lift, da = d.ap](const HF& e) {
      return universal_lift(da, e);
    });
  };
  M.data.id = I;

  WUniverseData<SetObj, SetMor> Wd;
  Wd.UW = M.UPi;
  Wd.W = set_mor(M.UPi, M.U, [N](const HF& c) {
    return w_code(kfst(c), [tbl = ksnd(c)](const HF& m) { return hf_apply(tbl, m); }, N);
  });
  Wd.name_pair = name_pair;
  Wd.sup = [chosen, compose, W = Wd.W, Pi = P.Pi, name_pair](const SetMor& a, const SetMor& b) {
    SetMor wn = compose(W, name_pair(a, b));
    auto Pa = chosen(a).P;
    auto Pb = chosen(b).P;
    SetMor wn_ab = compose(wn, compose(Pa, Pb));
    SetMor pib = compose(Pi, name_pair(b, wn_ab));
    return set_mor(fiber_obj(pib), fiber_obj(wn), [](const HF& e) {
      HF ea = kfst(e);  // (x, m)
      return kpair(kfst(ea), kpair(ksnd(ea), ksnd(e)));
    });
  };
  Wd.wrec = [compose, W = Wd.W, name_pair](const SetMor& a, const SetMor& b,
                                           const SetMor& c, const SetMor& d) {
    SetMor wn = compose(W, name_pair(a, b));
    return set_mor(fiber_obj(wn), fiber_obj(c), [ba = b.ap, da = d.ap](const HF& e) {
      return set_detail::wrec_run(ba, da, e);
    });
  };
  M.data.w = Wd;

  GroundUniverseData<SetObj, SetMor> G;
  G.zero = set_mor(base.terminal, M.U, [](const HF&) { return zero_code(); });
  G.one = set_mor(base.terminal, M.U, [](const HF&) { return one_code(); });
  G.plus = [U = M.U, N](const SetMor& a, const SetMor& b) {
    return set_mor(a.dm, U, [aa = a.ap, ba = b.ap, N](const HF& x) {
      return plus_code(aa(x), ba(x), N);
    });
  };
  G.case0 = [](const SetMor& zname, const SetMor& cname) {
    return set_mor(fiber_obj(zname), fiber_obj(cname), [](const HF&) -> HF {
      throw std::logic_error("a section over the empty type was applied");
    });
  };
  G.star = [one = G.one, compose, bang = base.bang](const SetObj& X) {
    SetMor on = compose(one, bang(X));
    return set_mor(X, fiber_obj(on), [](const HF& x) { return kpair(x, hf_empty()); });
  };
  G.rec1 = [](const SetMor& cname, const SetMor& d) {
    return set_mor(cname.dm, fiber_obj(cname), [da = d.ap](const HF& e) {
      return da(kfst(e));
    });
  };
  G.inl = [plus = G.plus](const SetMor& a, const SetMor& b) {
    return set_mor(fiber_obj(a), fiber_obj(plus(a, b)), [](const HF& e) {
      return kpair(kfst(e), kpair(hf_nat(0), ksnd(e)));
    });
  };
  G.inr = [plus = G.plus](const SetMor& a, const SetMor& b) {
    return set_mor(fiber_obj(b), fiber_obj(plus(a, b)), [](const HF& e) {
      return kpair(kfst(e), kpair(hf_nat(1), ksnd(e)));
    });
  };
  G.casesum = [plus = G.plus](const SetMor& a, const SetMor& b, const SetMor& c,
                              const SetMor& dl, const SetMor& dr) {
    return set_mor(fiber_obj(plus(a, b)), fiber_obj(c),
                   [la = dl.ap, ra = dr.ap](const HF& e) {
                     HF x = kfst(e), tm = ksnd(e);
                     HF arg = kpair(x, ksnd(tm));
                     return hf_eq(kfst(tm), hf_nat(0)) ? la(arg) : ra(arg);
                   });
  };
  M.data.ground = G;

  InternalUniverseData<SetObj, SetMor> In;
  In.u0 = set_mor(base.terminal, M.U, [inner_code](const HF&) { return inner_code(); });
  SetObj U0ext = fiber_obj(In.u0);
  In.i = set_mor(U0ext, M.U, [](const HF& e) { return ksnd(e); });
  // Code formers act at the ambient budget: a section of the universe may
  // take values on any code the model can store, and the result is kept
  // under the same bound. Closure at the smaller budget N0 is a property of
  // the same formers restricted to codes below N0, checked by enumeration.
  auto small = [U0ext, N](const SetObj& dm, std::function<HF(const HF&)> code) {
    return set_mor(dm, U0ext, [code = std::move(code), N](const HF& x) {
      HF c = code(x);
      if (node_count(c) > N) throw BudgetExceeded("universe former", node_count(c), N);
      return kpair(hf_empty(), c);
    });
  };
  In.pi0 = [small, N](const SetMor& a, const SetMor& b) {
    return small(a.dm, [aa = a.ap, ba = b.ap, N](const HF& x) {
      return pi_code(ksnd(aa(x)), [&](const HF& m) { return ksnd(ba(kpair(x, m))); }, N);
    });
  };
  In.sigma0 = [small, N](const SetMor& a, const SetMor& b) {
    return small(a.dm, [aa = a.ap, ba = b.ap, N](const HF& x) {
      return sigma_code(ksnd(aa(x)), [&](const HF& m) { return ksnd(ba(kpair(x, m))); }, N);
    });
  };
  In.w0 = [small, N](const SetMor& a, const SetMor& b) {
    return small(a.dm, [aa = a.ap, ba = b.ap, N](const HF& x) {
      return w_code(ksnd(aa(x)), [&](const HF& m) { return ksnd(ba(kpair(x, m))); }, N);
    });
  };
  In.plus0 = [small, N](const SetMor& a, const SetMor& b) {
    return small(a.dm, [aa = a.ap, ba = b.ap, N](const HF& x) {
      return plus_code(ksnd(aa(x)), ksnd(ba(x)), N);
    });
  };
  // The argument classifies a code with two chosen members: (A, (m, n)).
  In.id0 = [small](const SetMor& v) {
    return small(v.dm, [va = v.ap](const HF& x) {
      HF c = va(x);
      return id_code(kfst(ksnd(c)), ksnd(ksnd(c)));
    });
  };
  In.z0 = set_mor(base.terminal, U0ext, [](const HF&) {
    return kpair(hf_empty(), zero_code());
  });
  In.o0 = set_mor(base.terminal, U0ext, [](const HF&) {
    return kpair(hf_empty(), one_code());
  });
  M.data.inner = In;

  // Ambient pieces for the lifting-operation interface.
  M.IdUtilde = fiber_obj(I.Id);
  M.UtxU = virt_obj("UtildexU@" + std::to_string(N), [Ut = M.Utilde, U = M.U](const HF& e) {
    return is_kpair(e) && setobj_mem(Ut, kfst(e)) && setobj_mem(U, ksnd(e));
  });
  M.UxU = virt_obj("UxU@" + std::to_string(N), [U = M.U](const HF& e) {
    return is_kpair(e) && setobj_mem(U, kfst(e)) && setobj_mem(U, ksnd(e));
  });
  M.r = set_mor(M.Utilde, M.IdUtilde, [](const HF& e) {
    return kpair(kpair(kfst(e), kpair(ksnd(e), ksnd(e))), hf_empty());
  });
  M.pxU = set_mor(M.UtxU, M.UxU, [](const HF& e) {
    return kpair(kfst(kfst(e)), ksnd(e));
  });

  return M;
}

// The chosen diagonal filler for a square from the path inclusion r to p x U.
// Every point of the path total is on the diagonal, so the filler's value is
// forced; commutation of the input square is checked at each point it is
// asked about and NotCommuting raised on failure.
inline SetMor id_lifting(const SetUniverse& M, const IdLiftQuery& q) {
  return set_mor(M.IdUtilde, q.top.cd,
                 [top = q.top.ap, bottom = q.bottom.ap, pxu = M.pxU.ap](const HF& e) {
                   HF u = kfst(e);                        // (A, (x, x))
                   HF pt = kpair(kfst(u), kfst(ksnd(u)));  // the diagonal point
                   HF val = top(pt);
                   if (!hf_eq(pxu(val), bottom(e)))
                     throw NotCommuting("id_lifting: square legs disagree at " + hf_to_string(e));
                   return val;
                 });
}

// The same universe with the other conventional pullback chooser: fibers are
// stored member-first. Used to exercise that the contextualization does not
// depend on the choice beyond canonical isomorphism.
inline UniverseInCategory<SetObj, SetMor> flipped_universe(const SetUniverse& M) {
  UniverseInCategory<SetObj, SetMor> u = M.uni;
  u.chosen = [Ut = M.Utilde](const SetMor& name) {
    ChosenSquare<SetObj, SetMor> sq;
    // Flipped fibers are only used on small objects in the comparison tests,
    // so a materialized copy is fine.
    std::vector<HF> elems;
    for (const HF& x : setobj_elems(name.dm)) {
      HF fib = name.ap(x);
      for (const HF& m : fib->elems) elems.push_back(kpair(m, x));
    }
    sq.obj = mk_setobj(std::move(elems));
    sq.P = set_mor(sq.obj, name.dm, [](const HF& e) { return ksnd(e); });
    sq.Q = set_mor(sq.obj, Ut, [n = name.ap](const HF& e) {
      return kpair(n(ksnd(e)), kfst(e));
    });
    return sq;
  };
  u.factor = [](const SetMor& name, const SetMor& u2, const SetMor& v) {
    std::vector<HF> elems;
    for (const HF& x : setobj_elems(name.dm)) {
      HF fib = name.ap(x);
      for (const HF& m : fib->elems) elems.push_back(kpair(m, x));
    }
    SetObj total = mk_setobj(std::move(elems));
    return set_mor(u2.dm, total, [n = name.ap, ua = u2.ap, va = v.ap](const HF& w) {
      HF x = ua(w), e = va(w);
      if (!hf_eq(n(x), kfst(e)))
        throw NotCommuting("factor: the pair of legs does not sit over one name value");
      return kpair(ksnd(e), x);
    });
  };
  return u;
}

}  // namespace uf
