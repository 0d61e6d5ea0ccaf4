#pragma once

#include "homology.hpp"
#include "kan.hpp"

namespace uf {

// ---------------------------------------------------------------------------
// Small helpers shared by the derived constructions.

// Canonical degenerate element of a vertex at a higher level.
inline std::string degenerate_tower(const SLevels& S, std::string v, int to) {
  for (int j = 0; j < to; ++j) v = S.degen(j, v, j);
  return v;
}

// Level-m key of the constant tuple (v,...,v) in delta(n).
inline std::string const_delta_key(int n, int v, int m) {
  return encode_dsimp(delta_dsimp(n, std::vector<int>(m + 1, v)));
}

// Key of the top nondegenerate simplex of delta(n).
inline std::string top_delta_key(int n) {
  std::vector<int> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = i;
  return encode_dsimp(delta_dsimp(n, t));
}

// Fiber of a map over a vertex of its base, with projections.
inline SpanResult fiber_over_vertex(const SSetMap& p, const std::string& vkey) {
  return pullback_span(p, simplex_as_map(p.cd, 0, vkey));
}

namespace detail {

// Value of a stored assignment at a possibly degenerate element.
inline std::string eval_asg(const std::vector<std::string>& vals, const FinSSet& A,
                            const SLevels& T, const DSimp& d) {
  std::string v = vals[d.id];
  int lv = A.cells[d.id].dim;
  for (auto it = d.word.rbegin(); it != d.word.rend(); ++it) {
    v = T.degen(lv, v, *it);
    ++lv;
  }
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Weak equivalences.  Decisions are tiered: component counting and homology
// give refutations, a levelwise bijection or explicit homotopy-equivalence
// data gives confirmations, and anything in between stays Unknown rather
// than being guessed.

enum class Verdict { Yes, No, Unknown };

struct WeakEqResult {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  int cert_dim = 0;
};

namespace detail {

inline bool pi0_bijective(const LevelMap& u, std::string* why) {
  auto dmc = pi0_classes(u.dm);
  auto cdc = pi0_classes(u.cd);
  std::set<std::string> dmreps, cdreps, image;
  for (auto& [k, r] : dmc) dmreps.insert(r);
  for (auto& [k, r] : cdc) cdreps.insert(r);
  for (auto& r : dmreps) image.insert(cdc.at(u.ap(0, r)));
  if (image.size() < dmreps.size()) {
    *why = "distinct components are identified";
    return false;
  }
  if (image.size() < cdreps.size()) {
    *why = "a component is not hit";
    return false;
  }
  return true;
}

inline bool same_homology(const SLevels& A, const SLevels& B, int top, std::string* why) {
  auto ha = homology_through(A, top);
  auto hb = homology_through(B, top);
  for (size_t i = 0; i < ha.size(); ++i) {
    auto ta = ha[i].torsion, tb = hb[i].torsion;
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    if (ha[i].betti != hb[i].betti || ta != tb) {
      *why = "homology differs in degree " + std::to_string(i);
      return false;
    }
  }
  return true;
}

inline bool levelwise_bijection(const LevelMap& u, int d) {
  for (int n = 0; n <= d; ++n) {
    auto dom = u.dm.level(n);
    auto cod = u.cd.level(n);
    std::set<std::string> image;
    for (auto& k : dom) image.insert(u.ap(n, k));
    if (image.size() != dom.size() || image.size() != cod.size()) return false;
  }
  return true;
}

}  // namespace detail

inline WeakEqResult weq_spaces(const LevelMap& u, int d) {
  std::string why;
  if (!detail::pi0_bijective(u, &why)) return {Verdict::No, why, d};
  if (!detail::same_homology(u.dm, u.cd, d, &why)) return {Verdict::No, why, d};
  if (detail::levelwise_bijection(u, d))
    return {Verdict::Yes, "levelwise bijection through dimension " + std::to_string(d), d};
  return {Verdict::Unknown, "necessary conditions hold, no certificate found", d};
}

// Search a simplicial homotopy from f to g: a map on the cylinder whose end
// slices restrict to the two maps.
inline bool homotopy_between(const SSetMap& f, const SSetMap& g, long budget) {
  auto Q = product_span(f.dm, std::make_shared<const FinSSet>(delta(1)));
  MapProblem mp;
  mp.A = Q.obj;
  mp.T = levels_of(f.cd);
  for (size_t c = 0; c < Q.obj->cells.size(); ++c) {
    auto tup = delta_tuple(1, Q.pr2.asg[c]);
    bool c0 = std::all_of(tup.begin(), tup.end(), [](int v) { return v == 0; });
    bool c1 = std::all_of(tup.begin(), tup.end(), [](int v) { return v == 1; });
    if (c0) mp.forced[(int)c] = encode_dsimp(map_apply(f, Q.pr1.asg[c]));
    if (c1) mp.forced[(int)c] = encode_dsimp(map_apply(g, Q.pr1.asg[c]));
  }
  bool found = false;
  enumerate_level_maps(mp, budget, [&](const std::vector<std::string>&) {
    found = true;
    return false;
  });
  return found;
}

inline WeakEqResult is_weak_equivalence(const SSetMap& u, int d, long budget = 1L << 26) {
  auto r = weq_spaces(level_map_of(u), d);
  if (r.verdict != Verdict::Unknown) return r;
  try {
    MapProblem inv{u.cd, levels_of(u.dm), {}, nullptr};
    bool witness = false;
    enumerate_level_maps(inv, budget, [&](const std::vector<std::string>& vals) {
      SSetMap g = map_from_keys(u.cd, u.dm, vals);
      auto gu = compose_map(g, u);
      auto ug = compose_map(u, g);
      auto idX = identity_map(u.dm);
      auto idY = identity_map(u.cd);
      if ((homotopy_between(gu, idX, budget) || homotopy_between(idX, gu, budget)) &&
          (homotopy_between(ug, idY, budget) || homotopy_between(idY, ug, budget))) {
        witness = true;
        return false;
      }
      return true;
    });
    if (witness) return {Verdict::Yes, "homotopy equivalence data found", d};
  } catch (const BudgetExceeded&) {
  }
  return {Verdict::Unknown, "no homotopy inverse within budget", d};
}

// ---------------------------------------------------------------------------
// Dependent product: the right adjoint to pulling back along i, computed
// levelwise.  An n-simplex over a base element b is a section over the
// pullback of i along the classifying map of b; operators act by
// precomposition with the mediating map of cylinders.

struct DepProduct {
  TruncatedSSet obj;
  LevelMap proj;
  std::function<SpanResult(int, const std::string&)> domain_of;
};

inline DepProduct dependent_product_over(const SSetMap& p, const SSetMap& i, int d,
                                         long budget = 1L << 26) {
  if (!sset_equal(*p.cd, *i.dm))
    throw BadIndex("dependent_product_over: p must land in the domain of i");
  auto B = i.cd;
  auto BL = levels_of(B);
  auto EL = levels_of(p.dm);
  SSetMap pc = p, ic = i;

  auto memo = std::make_shared<std::map<std::pair<int, std::string>, SpanResult>>();
  auto mu = std::make_shared<std::mutex>();
  std::function<SpanResult(int, const std::string&)> dom = [=](int n, const std::string& b) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = memo->find({n, b});
    if (it == memo->end())
      it = memo->emplace(std::make_pair(n, b), pullback_span(ic, simplex_as_map(B, n, b))).first;
    return it->second;
  };

  auto sections = [=](int n, const std::string& b) {
    SpanResult D = dom(n, b);
    MapProblem mp;
    mp.A = D.obj;
    mp.T = EL;
    SSetMap pr1 = D.pr1;
    mp.filter = [pr1, pc](int c, const std::string& cand) {
      return map_apply(pc, decode_dsimp(cand)) == pr1.asg[c];
    };
    return all_level_maps(mp, budget);
  };

  SLevels S;
  S.d_max = d;
  S.level = [=](int n) {
    std::vector<std::string> out;
    for (auto& b : BL.level(n))
      for (auto& sec : sections(n, b)) out.push_back(pair_key(b, list_key(sec)));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto transport = [=](int n, const std::string& key, const OrdMap& phi) {
    auto [b, packed] = unpair_key(key);
    auto sec = unlist_key(packed);
    std::string b2 = act(BL, n, b, phi);
    SpanResult D = dom(n, b);
    SpanResult D2 = dom(phi.dom, b2);
    SSetMap dmap = delta_map(phi);
    std::vector<std::string> out;
    for (size_t c = 0; c < D2.obj->cells.size(); ++c) {
      auto [cdim, ckey] = D2.R.cell_key[c];
      auto [ak, tk] = unpair_key(ckey);
      std::string tk2 = encode_dsimp(map_apply(dmap, decode_dsimp(tk)));
      DSimp im = D.R.dsimp_of(cdim, pair_key(ak, tk2));
      out.push_back(detail::eval_asg(sec, *D.obj, EL, im));
    }
    return pair_key(b2, list_key(out));
  };
  S.face = [transport](int n, const std::string& k, int idx) { return transport(n, k, ord_face(n, idx)); };
  S.degen = [transport](int n, const std::string& k, int j) { return transport(n, k, ord_degen(n, j)); };
  S = memoize_levels(S);

  DepProduct out;
  out.obj = S;
  out.proj = {S, BL, [](int, const std::string& k) { return unpair_key(k).first; }};
  out.domain_of = dom;
  return out;
}

// ---------------------------------------------------------------------------
// Extension of a trivial fibration along a levelwise-injective base map: push
// forward with the dependent product, then confirm the counit restricts the
// result back to the input, fiber by fiber.

struct Extension {
  DepProduct pi;
  bool restriction_exact = true;
};

inline Extension extend_trivial_fibration(const SSetMap& t, const SSetMap& j, int d,
                                          long budget = 1L << 26) {
  if (!sset_equal(*t.cd, *j.dm)) throw BadIndex("extend_trivial_fibration: base mismatch");
  if (!is_trivial_fibration(t, d, budget).yes)
    throw InputNotTrivialFibration("extend_trivial_fibration: input is not a trivial fibration through dimension " +
                                   std::to_string(d));
  auto XL = levels_of(j.dm);
  LevelMap jl = level_map_of(j);
  for (int n = 0; n <= d; ++n) {
    auto lv = XL.level(n);
    std::set<std::string> im;
    for (auto& k : lv) im.insert(jl.ap(n, k));
    if (im.size() != lv.size())
      throw BadIndex("extend_trivial_fibration: base map is not levelwise injective");
  }

  Extension out;
  out.pi = dependent_product_over(t, j, d, budget);
  auto YL = levels_of(t.dm);
  LevelMap tl = level_map_of(t);

  for (int n = 0; n <= d && out.restriction_exact; ++n) {
    std::map<std::string, std::set<std::string>> fib;
    for (auto& y : YL.level(n)) fib[tl.ap(n, y)].insert(y);
    std::map<std::string, std::string> inv;
    for (auto& x : XL.level(n)) inv[jl.ap(n, x)] = x;

    std::map<std::string, std::set<std::string>> got;
    std::map<std::string, size_t> cnt;
    std::string topk = top_delta_key(n);
    for (auto& k : out.pi.obj.level(n)) {
      auto [b, packed] = unpair_key(k);
      auto it = inv.find(b);
      if (it == inv.end()) continue;
      SpanResult D = out.pi.domain_of(n, b);
      DSimp at = D.R.dsimp_of(n, pair_key(it->second, topk));
      got[it->second].insert(detail::eval_asg(unlist_key(packed), *D.obj, YL, at));
      cnt[it->second] += 1;
    }
    for (auto& x : XL.level(n))
      if (got[x] != fib[x] || cnt[x] != fib[x].size()) out.restriction_exact = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fibered path object: maps from the cylinder over delta(n) into the total
// space whose projection to the base is constant in the path coordinate,
// with the constant-path section and the two endpoint evaluations.

struct PathObject {
  TruncatedSSet P;
  LevelMap r;   // total space -> paths
  LevelMap s;   // start
  LevelMap t;   // end
  LevelMap st;  // joint endpoints, into the fibered product
};

inline PathObject fibered_path_object(const SSetMap& p, int d, long budget = 1L << 26) {
  if (!is_kan_fibration(p, d, budget).yes)
    throw Unsupported("fibered_path_object: input is not a fibration through dimension " + std::to_string(d));
  auto BL = levels_of(p.cd);
  auto EL = levels_of(p.dm);
  LevelMap pl = level_map_of(p);
  auto D1 = std::make_shared<const FinSSet>(delta(1));

  auto memo = std::make_shared<std::map<int, SpanResult>>();
  auto mu = std::make_shared<std::mutex>();
  std::function<SpanResult(int)> square = [=](int n) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = memo->find(n);
    if (it == memo->end())
      it = memo->emplace(n, product_span(std::make_shared<const FinSSet>(delta(n)), D1)).first;
    return it->second;
  };

  auto paths = [=](int n, const std::string& b) {
    SpanResult Q = square(n);
    std::vector<std::string> basev(Q.obj->cells.size());
    for (size_t c = 0; c < basev.size(); ++c) {
      auto tup = delta_tuple(n, Q.pr1.asg[c]);
      basev[c] = act(BL, n, b, OrdMap{(int)tup.size() - 1, n, tup});
    }
    MapProblem mp;
    mp.A = Q.obj;
    mp.T = EL;
    auto pla = pl.ap;
    mp.filter = [Q, basev, pla](int c, const std::string& cand) {
      return pla(Q.obj->cells[c].dim, cand) == basev[c];
    };
    return all_level_maps(mp, budget);
  };

  SLevels S;
  S.d_max = d;
  S.level = [=](int n) {
    std::vector<std::string> out;
    for (auto& b : BL.level(n))
      for (auto& h : paths(n, b)) out.push_back(list_key(h));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto transport = [=](int n, const std::string& key, const OrdMap& phi) {
    auto h = unlist_key(key);
    SpanResult Qn = square(n);
    SpanResult Qm = square(phi.dom);
    SSetMap dmap = delta_map(phi);
    std::vector<std::string> out;
    for (size_t c = 0; c < Qm.obj->cells.size(); ++c) {
      auto [cdim, ckey] = Qm.R.cell_key[c];
      auto [tk, ek] = unpair_key(ckey);
      std::string tk2 = encode_dsimp(map_apply(dmap, decode_dsimp(tk)));
      DSimp im = Qn.R.dsimp_of(cdim, pair_key(tk2, ek));
      out.push_back(detail::eval_asg(h, *Qn.obj, EL, im));
    }
    return list_key(out);
  };
  S.face = [transport](int n, const std::string& k, int idx) { return transport(n, k, ord_face(n, idx)); };
  S.degen = [transport](int n, const std::string& k, int j) { return transport(n, k, ord_degen(n, j)); };
  S = memoize_levels(S);

  auto end_at = [=](int a) {
    return std::function<std::string(int, const std::string&)>([=](int n, const std::string& key) {
      auto h = unlist_key(key);
      SpanResult Q = square(n);
      DSimp im = Q.R.dsimp_of(n, pair_key(top_delta_key(n), const_delta_key(1, a, n)));
      return detail::eval_asg(h, *Q.obj, EL, im);
    });
  };
  auto e0 = end_at(0), e1 = end_at(1);

  PathObject out;
  out.P = S;
  out.r = {EL, S, [=](int n, const std::string& e) {
             SpanResult Q = square(n);
             std::vector<std::string> vals;
             for (size_t c = 0; c < Q.obj->cells.size(); ++c) {
               auto tup = delta_tuple(n, Q.pr1.asg[c]);
               vals.push_back(act(EL, n, e, OrdMap{(int)tup.size() - 1, n, tup}));
             }
             return list_key(vals);
           }};
  out.s = {S, EL, e0};
  out.t = {S, EL, e1};
  out.st = {S, pullback_levels(pl, pl),
            [e0, e1](int n, const std::string& k) { return pair_key(e0(n, k), e1(n, k)); }};
  return out;
}

// ---------------------------------------------------------------------------
// Fiberwise mapping space: an n-simplex is a base element b together with a
// map over delta(n) between the pullbacks of the two fibrations along its
// classifying map.

struct HomOver {
  TruncatedSSet H;
  LevelMap proj;
  std::function<SpanResult(int, const std::string&)> dom_of;
  std::function<SLevels(int, const std::string&)> target_of;
};

inline HomOver hom_over(const SSetMap& p1, const SSetMap& p2, int d, long budget = 1L << 26) {
  if (!sset_equal(*p1.cd, *p2.cd)) throw BadIndex("hom_over: bases differ");
  auto B = p1.cd;
  auto BL = levels_of(B);
  SSetMap q1 = p1, q2 = p2;
  LevelMap p2l = level_map_of(p2);

  auto dmemo = std::make_shared<std::map<std::pair<int, std::string>, SpanResult>>();
  auto tmemo = std::make_shared<std::map<std::pair<int, std::string>, SLevels>>();
  auto mu = std::make_shared<std::mutex>();
  std::function<SpanResult(int, const std::string&)> dom = [=](int n, const std::string& b) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = dmemo->find({n, b});
    if (it == dmemo->end())
      it = dmemo->emplace(std::make_pair(n, b), pullback_span(q1, simplex_as_map(B, n, b))).first;
    return it->second;
  };
  std::function<SLevels(int, const std::string&)> target = [=](int n, const std::string& b) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = tmemo->find({n, b});
    if (it == tmemo->end())
      it = tmemo->emplace(std::make_pair(n, b),
                          pullback_levels(p2l, level_map_of(simplex_as_map(B, n, b))))
               .first;
    return it->second;
  };

  auto maps_over = [=](int n, const std::string& b) {
    SpanResult D = dom(n, b);
    MapProblem mp;
    mp.A = D.obj;
    mp.T = target(n, b);
    SSetMap pr2 = D.pr2;
    mp.filter = [pr2](int c, const std::string& cand) {
      return unpair_key(cand).second == encode_dsimp(pr2.asg[c]);
    };
    return all_level_maps(mp, budget);
  };

  SLevels S;
  S.d_max = d;
  S.level = [=](int n) {
    std::vector<std::string> out;
    for (auto& b : BL.level(n))
      for (auto& u : maps_over(n, b)) out.push_back(pair_key(b, list_key(u)));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto transport = [=](int n, const std::string& key, const OrdMap& phi) {
    auto [b, packed] = unpair_key(key);
    auto u = unlist_key(packed);
    std::string b2 = act(BL, n, b, phi);
    SpanResult D = dom(n, b);
    SLevels T = target(n, b);
    SpanResult D2 = dom(phi.dom, b2);
    SSetMap dmap = delta_map(phi);
    std::vector<std::string> out;
    for (size_t c = 0; c < D2.obj->cells.size(); ++c) {
      auto [cdim, ckey] = D2.R.cell_key[c];
      auto [e1k, tk] = unpair_key(ckey);
      std::string tk2 = encode_dsimp(map_apply(dmap, decode_dsimp(tk)));
      DSimp im = D.R.dsimp_of(cdim, pair_key(e1k, tk2));
      std::string v = detail::eval_asg(u, *D.obj, T, im);
      out.push_back(pair_key(unpair_key(v).first, tk));
    }
    return pair_key(b2, list_key(out));
  };
  S.face = [transport](int n, const std::string& k, int idx) { return transport(n, k, ord_face(n, idx)); };
  S.degen = [transport](int n, const std::string& k, int j) { return transport(n, k, ord_degen(n, j)); };
  S = memoize_levels(S);

  HomOver out;
  out.H = S;
  out.proj = {S, BL, [](int, const std::string& k) { return unpair_key(k).first; }};
  out.dom_of = dom;
  out.target_of = target;
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence subobject: the fiberwise mapping space restricted to the maps
// whose fiber component at the leading vertex is a weak equivalence.  An
// undecided fiber comparison aborts rather than guessing.

namespace detail {

struct EqMembership {
  SSetMap q1, q2;
  SLevels BL;
  std::function<SpanResult(int, const std::string&)> dom;
  std::function<SLevels(int, const std::string&)> target;
  int d = 2;
  long budget = 1L << 26;
  std::shared_ptr<std::map<std::string, Verdict>> memo =
      std::make_shared<std::map<std::string, Verdict>>();
  std::shared_ptr<std::map<std::string, std::pair<SpanResult, SpanResult>>> fibers =
      std::make_shared<std::map<std::string, std::pair<SpanResult, SpanResult>>>();
  std::shared_ptr<std::mutex> mu = std::make_shared<std::mutex>();

  bool member(int n, const std::string& key) const {
    auto [b, packed] = unpair_key(key);
    auto u = unlist_key(packed);
    std::string bv = act(BL, n, b, OrdMap{0, n, {0}});
    std::pair<SpanResult, SpanResult> fs;
    {
      std::lock_guard<std::mutex> g(*mu);
      auto it = fibers->find(bv);
      if (it == fibers->end())
        it = fibers->emplace(bv, std::make_pair(fiber_over_vertex(q1, bv), fiber_over_vertex(q2, bv))).first;
      fs = it->second;
    }
    SpanResult D = dom(n, b);
    SLevels T = target(n, b);
    std::vector<std::string> vals;
    for (size_t c = 0; c < fs.first.obj->cells.size(); ++c) {
      auto [m, fkey] = fs.first.R.cell_key[c];
      auto [e1k, t0k] = unpair_key(fkey);
      DSimp at = D.R.dsimp_of(m, pair_key(e1k, const_delta_key(n, 0, m)));
      std::string v = eval_asg(u, *D.obj, T, at);
      vals.push_back(encode_dsimp(fs.second.R.dsimp_of(m, pair_key(unpair_key(v).first, t0k))));
    }
    std::string mk = pair_key(bv, list_key(vals));
    Verdict verdict;
    bool have = false;
    {
      std::lock_guard<std::mutex> g(*mu);
      if (auto it = memo->find(mk); it != memo->end()) {
        verdict = it->second;
        have = true;
      }
    }
    if (!have) {
      SSetMap fm = map_from_keys(fs.first.obj, fs.second.obj, vals);
      verdict = is_weak_equivalence(fm, d, budget).verdict;
      std::lock_guard<std::mutex> g(*mu);
      memo->emplace(mk, verdict);
    }
    if (verdict == Verdict::Unknown)
      throw OracleInconclusive("equivalence membership undecided over vertex " + bv);
    return verdict == Verdict::Yes;
  }
};

}  // namespace detail

inline HomOver eq_over(const SSetMap& p1, const SSetMap& p2, int d, long budget = 1L << 26) {
  if (!is_kan_fibration(p1, d, budget).yes || !is_kan_fibration(p2, d, budget).yes)
    throw Unsupported("eq_over: both maps must be fibrations through dimension " + std::to_string(d));
  HomOver h = hom_over(p1, p2, d, budget);
  detail::EqMembership mem;
  mem.q1 = p1;
  mem.q2 = p2;
  mem.BL = levels_of(p1.cd);
  mem.dom = h.dom_of;
  mem.target = h.target_of;
  mem.d = d;
  mem.budget = budget;

  SLevels H = h.H;
  SLevels S;
  S.d_max = d;
  S.level = [H, mem](int n) {
    std::vector<std::string> out;
    for (auto& k : H.level(n))
      if (mem.member(n, k)) out.push_back(k);
    return out;
  };
  S.face = H.face;
  S.degen = H.degen;
  S = memoize_levels(S);

  HomOver out = h;
  out.H = S;
  out.proj.dm = S;
  return out;
}

// Equivalence object of a single fibration: fiberwise equivalences between
// the two pullbacks to the square of the base, with endpoint projections and
// the diagonal through identities.

struct EqSelf {
  TruncatedSSet eq;
  LevelMap proj;  // into the levels of the base square
  LevelMap s, t;  // endpoint projections to the base
  LevelMap diag;  // base into eq
  SpanResult b2;  // the base square, kept for naming its elements
};

inline EqSelf eq_self(const SSetMap& p, int d, long budget = 1L << 26) {
  auto B = p.cd;
  auto B2 = product_span(B, B);
  auto E1 = pullback_span(p, B2.pr1);
  auto E2 = pullback_span(p, B2.pr2);
  HomOver h = eq_over(E1.pr2, E2.pr2, d, budget);

  EqSelf out;
  out.eq = h.H;
  out.proj = h.proj;
  out.b2 = B2;
  out.s = compose_level(level_map_of(B2.pr1), h.proj);
  out.t = compose_level(level_map_of(B2.pr2), h.proj);

  auto BL = levels_of(B);
  auto dom = h.dom_of;
  SpanResult B2c = B2, E1c = E1, E2c = E2;
  out.diag = {BL, h.H, [=](int n, const std::string& b) {
                std::string diagb = encode_dsimp(B2c.R.dsimp_of(n, pair_key(b, b)));
                SpanResult D = dom(n, diagb);
                std::vector<std::string> vals;
                for (size_t c = 0; c < D.obj->cells.size(); ++c) {
                  auto [m, ckey] = D.R.cell_key[c];
                  auto [e1k, tk] = unpair_key(ckey);
                  std::string prod = E1c.R.key_of(decode_dsimp(e1k));
                  vals.push_back(pair_key(encode_dsimp(E2c.R.dsimp_of(m, prod)), tk));
                }
                return pair_key(diagb, list_key(vals));
              }};
  return out;
}

// ---------------------------------------------------------------------------
// Univalence: the diagonal into the equivalence object is a weak
// equivalence.  Undecided fiber memberships surface as Unknown.

struct UnivalenceResult {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  int cert_dim = 0;
};

inline UnivalenceResult is_univalent(const SSetMap& p, int d, long budget = 1L << 26) {
  if (!is_kan_fibration(p, d, budget).yes)
    throw Unsupported("is_univalent: input is not a fibration through dimension " + std::to_string(d));
  try {
    EqSelf eq = eq_self(p, d, budget);
    WeakEqResult r = weq_spaces(eq.diag, d);
    return {r.verdict, r.reason, d};
  } catch (const OracleInconclusive& e) {
    return {Verdict::Unknown, e.what(), d};
  } catch (const BudgetExceeded& e) {
    return {Verdict::Unknown, e.what(), d};
  }
}

// ---------------------------------------------------------------------------
// Truncated map search on level views, used for bounded contractibility
// witnesses.  Degenerate elements follow their cores; nondegenerate ones
// branch over the target level.

inline bool truncated_map_exists(const SLevels& S, const SLevels& T, int top,
                                 const std::map<std::pair<int, std::string>, std::string>& forced,
                                 long budget) {
  struct Elt {
    int n;
    std::string key;
    int dj = -1;
    std::string below;
  };
  std::vector<Elt> elts;
  for (int n = 0; n <= top; ++n)
    for (auto& k : S.level(n)) {
      Elt e{n, k, -1, ""};
      for (int j = 0; j < n && e.dj < 0; ++j) {
        auto b = S.face(n, k, j);
        if (S.degen(n - 1, b, j) == k) {
          e.dj = j;
          e.below = b;
        }
      }
      elts.push_back(std::move(e));
    }

  std::map<std::pair<int, std::string>, std::string> val;
  long used = 0;
  std::function<bool(size_t)> go = [&](size_t pos) -> bool {
    if (pos == elts.size()) return true;
    auto& e = elts[pos];
    auto admissible = [&](const std::string& cand) {
      if (++used > budget) throw BudgetExceeded("truncated map search", used, budget);
      if (auto it = forced.find({e.n, e.key}); it != forced.end() && it->second != cand) return false;
      for (int i = 0; i <= e.n && e.n >= 1; ++i)
        if (T.face(e.n, cand, i) != val.at({e.n - 1, S.face(e.n, e.key, i)})) return false;
      return true;
    };
    auto attempt = [&](const std::string& cand) -> bool {
      if (!admissible(cand)) return false;
      val[{e.n, e.key}] = cand;
      if (go(pos + 1)) return true;
      val.erase({e.n, e.key});
      return false;
    };
    if (e.dj >= 0) return attempt(T.degen(e.n - 1, val.at({e.n - 1, e.below}), e.dj));
    if (auto it = forced.find({e.n, e.key}); it != forced.end()) return attempt(it->second);
    for (auto& cand : T.level(e.n))
      if (attempt(cand)) return true;
    return false;
  };
  return go(0);
}

// Bounded contractibility witness: a homotopy over delta(1) between the
// identity and a constant, on levels 0..top, tried at every basepoint and in
// both orientations.
inline bool truncated_contraction(const SLevels& P, int top, long budget) {
  auto verts = P.level(0);
  if (verts.empty()) return false;
  SLevels PD = product_levels(P, levels_of(delta(1)));
  try {
    for (auto& v : verts)
      for (int orient = 0; orient < 2; ++orient) {
        std::map<std::pair<int, std::string>, std::string> forced;
        for (int n = 0; n <= top; ++n)
          for (auto& k : PD.level(n)) {
            auto [pk, tk] = unpair_key(k);
            auto tup = delta_tuple(1, decode_dsimp(tk));
            bool c0 = std::all_of(tup.begin(), tup.end(), [](int x) { return x == 0; });
            bool c1 = std::all_of(tup.begin(), tup.end(), [](int x) { return x == 1; });
            if (!c0 && !c1) continue;
            bool idslice = (orient == 0) ? c0 : c1;
            forced[{n, k}] = idslice ? pk : degenerate_tower(P, v, n);
          }
        if (truncated_map_exists(PD, P, top, forced, budget)) return true;
      }
  } catch (const BudgetExceeded&) {
  }
  return false;
}

// ---------------------------------------------------------------------------
// Comparison space of two fibrations: an n-simplex is a base map on the
// cylinder over the first base together with a fiberwise equivalence from
// the second total space to the pulled-back first.  The verdict reports
// emptiness or bounded contractibility, with the evidence split out.

struct RepSpace {
  TruncatedSSet P;
  std::string status;  // "empty" | "contractible" | "inconclusive"
  int pi0 = 0;
  bool homology_trivial = false;
  bool contraction_witness = false;
  int cert_dim = 0;
};

inline RepSpace rep_space(const SSetMap& q, const SSetMap& p, int d, long budget = 1L << 26) {
  if (!is_kan_fibration(q, d, budget).yes || !is_kan_fibration(p, d, budget).yes)
    throw Unsupported("rep_space: both inputs must be fibrations through dimension " + std::to_string(d));
  auto X = q.cd;
  auto Y = q.dm;
  auto BL = levels_of(p.cd);
  SSetMap qc = q, pc = p;
  LevelMap pl = level_map_of(p);

  auto qx = std::make_shared<std::map<int, SpanResult>>();
  auto qy = std::make_shared<std::map<int, SpanResult>>();
  auto fq = std::make_shared<std::map<std::string, SpanResult>>();
  auto fp = std::make_shared<std::map<std::string, SpanResult>>();
  auto wmemo = std::make_shared<std::map<std::string, Verdict>>();
  auto mu = std::make_shared<std::mutex>();
  std::function<SpanResult(int)> QX = [=](int n) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = qx->find(n);
    if (it == qx->end())
      it = qx->emplace(n, product_span(std::make_shared<const FinSSet>(delta(n)), X)).first;
    return it->second;
  };
  std::function<SpanResult(int)> QY = [=](int n) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = qy->find(n);
    if (it == qy->end())
      it = qy->emplace(n, product_span(std::make_shared<const FinSSet>(delta(n)), Y)).first;
    return it->second;
  };
  auto fiber_q = [=](const std::string& xv) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = fq->find(xv);
    if (it == fq->end()) it = fq->emplace(xv, fiber_over_vertex(qc, xv)).first;
    return it->second;
  };
  auto fiber_p = [=](const std::string& bv) {
    std::lock_guard<std::mutex> g(*mu);
    auto it = fp->find(bv);
    if (it == fp->end()) it = fp->emplace(bv, fiber_over_vertex(pc, bv)).first;
    return it->second;
  };

  // the cylinder map induced by q, per level
  auto iq = [=](int n) {
    SpanResult Qx = QX(n), Qy = QY(n);
    std::vector<DSimp> img;
    for (size_t c = 0; c < Qy.obj->cells.size(); ++c) {
      auto [m, ckey] = Qy.R.cell_key[c];
      auto [tk, yk] = unpair_key(ckey);
      img.push_back(Qx.R.dsimp_of(m, pair_key(tk, encode_dsimp(map_apply(qc, decode_dsimp(yk))))));
    }
    return img;
  };

  auto xreps = [&] {
    auto cls = pi0_classes(levels_of(X));
    std::set<std::string> out;
    for (auto& [k, r] : cls) out.insert(r);
    return out;
  }();

  // fiberwise equivalence test of a candidate (f, w) at one component vertex
  auto member = [=](int n, const std::vector<std::string>& f, const std::vector<std::string>& w,
                    const SLevels& FE) {
    SpanResult Qx = QX(n), Qy = QY(n);
    for (auto& xv : xreps) {
      DSimp vx = Qx.R.dsimp_of(0, pair_key(const_delta_key(n, 0, 0), xv));
      std::string bv = f[vx.id];
      SpanResult F1 = fiber_q(xv);
      SpanResult F2 = fiber_p(bv);
      std::vector<std::string> vals;
      for (size_t c = 0; c < F1.obj->cells.size(); ++c) {
        auto [m, fkey] = F1.R.cell_key[c];
        auto [yk, t0k] = unpair_key(fkey);
        DSimp at = Qy.R.dsimp_of(m, pair_key(const_delta_key(n, 0, m), yk));
        std::string v = detail::eval_asg(w, *Qy.obj, FE, at);
        vals.push_back(encode_dsimp(F2.R.dsimp_of(m, pair_key(unpair_key(v).first, t0k))));
      }
      std::string mk = pair_key(pair_key(xv, bv), list_key(vals));
      Verdict verdict;
      bool have = false;
      {
        std::lock_guard<std::mutex> g(*mu);
        if (auto it = wmemo->find(mk); it != wmemo->end()) {
          verdict = it->second;
          have = true;
        }
      }
      if (!have) {
        verdict = is_weak_equivalence(map_from_keys(F1.obj, F2.obj, vals), d, budget).verdict;
        std::lock_guard<std::mutex> g(*mu);
        wmemo->emplace(mk, verdict);
      }
      if (verdict == Verdict::Unknown)
        throw OracleInconclusive("rep_space membership undecided over vertex " + xv);
      if (verdict == Verdict::No) return false;
    }
    return true;
  };

  auto flevel = [=](int n, const std::vector<std::string>& f) {
    SpanResult Qx = QX(n);
    LevelMap fl;
    fl.dm = levels_of(Qx.obj);
    fl.cd = BL;
    fl.ap = [=](int, const std::string& k) { return detail::eval_asg(f, *Qx.obj, BL, decode_dsimp(k)); };
    return fl;
  };

  SLevels S;
  S.d_max = d;
  S.level = [=](int n) {
    SpanResult Qx = QX(n), Qy = QY(n);
    auto img = iq(n);
    std::vector<std::string> out;
    MapProblem fprob{Qx.obj, BL, {}, nullptr};
    for (auto& f : all_level_maps(fprob, budget)) {
      SLevels FE = pullback_levels(pl, flevel(n, f));
      MapProblem wprob;
      wprob.A = Qy.obj;
      wprob.T = FE;
      wprob.filter = [img](int c, const std::string& cand) {
        return unpair_key(cand).second == encode_dsimp(img[c]);
      };
      for (auto& w : all_level_maps(wprob, budget))
        if (member(n, f, w, FE)) out.push_back(pair_key(list_key(f), list_key(w)));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto transport = [=](int n, const std::string& key, const OrdMap& phi) {
    auto [fpk, wpk] = unpair_key(key);
    auto f = unlist_key(fpk);
    auto w = unlist_key(wpk);
    int m = phi.dom;
    SpanResult Qx = QX(n), Qy = QY(n);
    SpanResult Qx2 = QX(m), Qy2 = QY(m);
    SLevels FE = pullback_levels(pl, flevel(n, f));
    SSetMap dmap = delta_map(phi);
    auto img2 = iq(m);
    std::vector<std::string> f2, w2;
    for (size_t c = 0; c < Qx2.obj->cells.size(); ++c) {
      auto [cdim, ckey] = Qx2.R.cell_key[c];
      auto [tk, xk] = unpair_key(ckey);
      std::string tk2 = encode_dsimp(map_apply(dmap, decode_dsimp(tk)));
      f2.push_back(detail::eval_asg(f, *Qx.obj, BL, Qx.R.dsimp_of(cdim, pair_key(tk2, xk))));
    }
    for (size_t c = 0; c < Qy2.obj->cells.size(); ++c) {
      auto [cdim, ckey] = Qy2.R.cell_key[c];
      auto [tk, yk] = unpair_key(ckey);
      std::string tk2 = encode_dsimp(map_apply(dmap, decode_dsimp(tk)));
      std::string v = detail::eval_asg(w, *Qy.obj, FE, Qy.R.dsimp_of(cdim, pair_key(tk2, yk)));
      w2.push_back(pair_key(unpair_key(v).first, encode_dsimp(img2[c])));
    }
    return pair_key(list_key(f2), list_key(w2));
  };
  S.face = [transport](int n, const std::string& k, int idx) { return transport(n, k, ord_face(n, idx)); };
  S.degen = [transport](int n, const std::string& k, int j) { return transport(n, k, ord_degen(n, j)); };
  S = memoize_levels(S);

  RepSpace out;
  out.P = S;
  out.cert_dim = d;
  if (S.level(0).empty()) {
    out.status = "empty";
    return out;
  }
  out.pi0 = pi0_count(S);
  if (out.pi0 != 1) {
    out.status = "inconclusive";
    return out;
  }
  out.homology_trivial = reduced_homology_trivial(S, d);
  if (out.homology_trivial) out.contraction_witness = truncated_contraction(S, d, budget);
  out.status = (out.homology_trivial && out.contraction_witness) ? "contractible" : "inconclusive";
  return out;
}

}  // namespace uf
