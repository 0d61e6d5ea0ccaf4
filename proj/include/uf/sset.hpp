#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ordmap.hpp"

namespace uf {

// ---------------------------------------------------------------------------
// Nondegenerate presentation.  A stored simplicial set is a list of
// nondegenerate cells; every other simplex is reached as a cell plus a
// degeneracy word, kept in Eilenberg-Zilber canonical form: word indices
// strictly decreasing, s_{j1} applied last.

struct DSimp {
  int id = 0;
  std::vector<int> word;
};

inline bool operator==(const DSimp& a, const DSimp& b) { return a.id == b.id && a.word == b.word; }
inline bool operator!=(const DSimp& a, const DSimp& b) { return !(a == b); }

struct Simplex {
  int dim = 0;
  std::vector<DSimp> faces;  // dim+1 entries for dim >= 1, empty for vertices
};

inline bool operator==(const Simplex& a, const Simplex& b) { return a.dim == b.dim && a.faces == b.faces; }

struct FinSSet {
  std::vector<Simplex> cells;  // id = index; constructors emit cells ordered by dimension
  int dim() const {
    int d = -1;
    for (auto& c : cells) d = std::max(d, c.dim);
    return d;
  }
};

inline bool sset_equal(const FinSSet& a, const FinSSet& b) { return a.cells == b.cells; }

// s_j in canonical form: push j through the word with s_i s_j = s_{j+1} s_i.
inline DSimp sset_degen(const DSimp& a, int j) {
  DSimp r = a;
  size_t p = 0;
  while (p < r.word.size() && j <= r.word[p]) {
    r.word[p] += 1;
    ++p;
  }
  r.word.insert(r.word.begin() + p, j);
  return r;
}

// d_i on a possibly degenerate simplex, peeling the word with the mixed
// identities and falling back to the stored faces of the cell.
inline DSimp sset_face(const FinSSet& X, const DSimp& a, int i) {
  if (a.word.empty()) return X.cells[a.id].faces[i];
  int j = a.word.front();
  DSimp rest{a.id, {a.word.begin() + 1, a.word.end()}};
  if (i == j || i == j + 1) return rest;
  if (i < j) return sset_degen(sset_face(X, rest, i), j - 1);
  return sset_degen(sset_face(X, rest, i - 1), j);
}

inline int dsimp_dim(const FinSSet& X, const DSimp& a) { return X.cells[a.id].dim + (int)a.word.size(); }

inline std::string encode_dsimp(const DSimp& d) {
  std::string s = std::to_string(d.id);
  for (size_t i = 0; i < d.word.size(); ++i) s += (i ? "." : "!") + std::to_string(d.word[i]);
  return s;
}

inline DSimp decode_dsimp(const std::string& s) {
  DSimp d;
  size_t p = 0;
  int cur = 0;
  while (p < s.size() && s[p] != '!') cur = cur * 10 + (s[p++] - '0');
  d.id = cur;
  while (p < s.size()) {
    ++p;  // skip '!' or '.'
    cur = 0;
    while (p < s.size() && s[p] != '.') cur = cur * 10 + (s[p++] - '0');
    d.word.push_back(cur);
  }
  return d;
}

// Structural checks: face arities, dimension bookkeeping, strictly decreasing
// words, and the d_i d_j identity on every cell.
inline std::vector<std::string> validate_sset(const FinSSet& X) {
  std::vector<std::string> bad;
  for (size_t c = 0; c < X.cells.size(); ++c) {
    const Simplex& s = X.cells[c];
    std::string at = "cell " + std::to_string(c);
    if (s.dim < 0) bad.push_back(at + ": negative dimension");
    size_t want = s.dim == 0 ? 0 : size_t(s.dim + 1);
    if (s.faces.size() != want) {
      bad.push_back(at + ": face count");
      continue;
    }
    for (auto& f : s.faces) {
      if (f.id < 0 || f.id >= (int)X.cells.size()) {
        bad.push_back(at + ": face id out of range");
        return bad;
      }
      for (size_t i = 0; i + 1 < f.word.size(); ++i)
        if (f.word[i] <= f.word[i + 1]) bad.push_back(at + ": degeneracy word not canonical");
      if (dsimp_dim(X, f) != s.dim - 1) bad.push_back(at + ": face dimension");
      if (X.cells[f.id].dim >= s.dim) bad.push_back(at + ": face core not lower-dimensional");
    }
  }
  if (!bad.empty()) return bad;
  for (size_t c = 0; c < X.cells.size(); ++c) {
    const Simplex& s = X.cells[c];
    if (s.dim < 2) continue;  // faces of faces only exist from dimension two up
    for (int i = 0; i < s.dim; ++i)
      for (int j = i + 1; j <= s.dim; ++j)
        if (sset_face(X, s.faces[j], i) != sset_face(X, s.faces[i], j - 1))
          bad.push_back("cell " + std::to_string(c) + ": d_" + std::to_string(i) + " d_" + std::to_string(j));
  }
  return bad;
}

inline void assert_sset(const FinSSet& X, const std::string& who) {
  auto bad = validate_sset(X);
  if (!bad.empty()) throw std::logic_error(who + ": " + bad.front());
}

// ---------------------------------------------------------------------------
// Level views.  Everything downstream (lifting checks, homology, the derived
// constructions) consumes simplicial sets through this interface: string-keyed
// level sets with face/degeneracy actions, valid up to d_max.

struct SLevels {
  int d_max = 1 << 20;
  std::function<std::vector<std::string>(int)> level;
  std::function<std::string(int, const std::string&, int)> face;
  std::function<std::string(int, const std::string&, int)> degen;
};

using TruncatedSSet = SLevels;

// Wraps all three accessors in per-object caches; fills are idempotent and
// guarded, so concurrent readers see each level computed once.
inline SLevels memoize_levels(SLevels raw) {
  struct Cache {
    std::mutex mu;
    std::map<int, std::vector<std::string>> lv;
    std::map<std::tuple<int, std::string, int>, std::string> fc, dg;
  };
  auto cache = std::make_shared<Cache>();
  SLevels out;
  out.d_max = raw.d_max;
  out.level = [raw, cache](int n) {
    {
      std::lock_guard<std::mutex> g(cache->mu);
      if (auto it = cache->lv.find(n); it != cache->lv.end()) return it->second;
    }
    auto v = raw.level(n);
    std::lock_guard<std::mutex> g(cache->mu);
    return cache->lv.emplace(n, std::move(v)).first->second;
  };
  out.face = [raw, cache](int n, const std::string& k, int i) {
    auto key = std::make_tuple(n, k, i);
    {
      std::lock_guard<std::mutex> g(cache->mu);
      if (auto it = cache->fc.find(key); it != cache->fc.end()) return it->second;
    }
    auto v = raw.face(n, k, i);
    std::lock_guard<std::mutex> g(cache->mu);
    return cache->fc.emplace(std::move(key), std::move(v)).first->second;
  };
  out.degen = [raw, cache](int n, const std::string& k, int j) {
    auto key = std::make_tuple(n, k, j);
    {
      std::lock_guard<std::mutex> g(cache->mu);
      if (auto it = cache->dg.find(key); it != cache->dg.end()) return it->second;
    }
    auto v = raw.degen(n, k, j);
    std::lock_guard<std::mutex> g(cache->mu);
    return cache->dg.emplace(std::move(key), std::move(v)).first->second;
  };
  return out;
}

// All strictly decreasing words of length len with entries in {0..hi}.
inline void decreasing_words(int hi, int len, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& emit) {
  if (len == 0) {
    emit(cur);
    return;
  }
  int start = cur.empty() ? hi : cur.back() - 1;
  for (int j = start; j >= len - 1; --j) {
    cur.push_back(j);
    decreasing_words(hi, len - 1, cur, emit);
    cur.pop_back();
  }
}

inline SLevels levels_of(std::shared_ptr<const FinSSet> X) {
  SLevels S;
  S.level = [X](int n) {
    std::vector<std::string> out;
    for (size_t c = 0; c < X->cells.size(); ++c) {
      int m = X->cells[c].dim;
      if (m > n) continue;
      std::vector<int> w;
      decreasing_words(n - 1, n - m, w, [&](const std::vector<int>& word) { out.push_back(encode_dsimp({(int)c, word})); });
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  S.face = [X](int, const std::string& k, int i) { return encode_dsimp(sset_face(*X, decode_dsimp(k), i)); };
  S.degen = [X](int, const std::string& k, int j) { return encode_dsimp(sset_degen(decode_dsimp(k), j)); };
  return memoize_levels(S);
}

inline SLevels levels_of(const FinSSet& X) { return levels_of(std::make_shared<const FinSSet>(X)); }

// Action of an arbitrary monotone operator phi: [m] -> [n] on a level-n
// element: strip the missing values as faces, then re-insert the repeats as
// degeneracies.
inline std::string act(const SLevels& S, int n, std::string key, const OrdMap& phi) {
  if (phi.cod != n) throw BadIndex("act: operator lands in [" + std::to_string(phi.cod) + "], element at level " + std::to_string(n));
  int cur = n;
  for (int i : ord_missing_desc(phi)) {
    key = S.face(cur, key, i);
    --cur;
  }
  for (int j : ord_repeats_asc(phi)) {
    key = S.degen(cur, key, j);
    ++cur;
  }
  return key;
}

// ---------------------------------------------------------------------------
// Maps.

struct SSetMap {
  std::shared_ptr<const FinSSet> dm, cd;
  std::vector<DSimp> asg;  // image of each cell of dm, same dimension
};

inline DSimp map_apply(const SSetMap& f, const DSimp& a) {
  DSimp r = f.asg[a.id];
  for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) r = sset_degen(r, *it);
  return r;
}

inline std::vector<std::string> validate_map(const SSetMap& f) {
  std::vector<std::string> bad;
  if (f.asg.size() != f.dm->cells.size()) return {"assignment size"};
  for (size_t c = 0; c < f.dm->cells.size(); ++c) {
    const Simplex& s = f.dm->cells[c];
    if (dsimp_dim(*f.cd, f.asg[c]) != s.dim) bad.push_back("cell " + std::to_string(c) + ": image dimension");
    for (int i = 0; i <= s.dim && s.dim >= 1; ++i)
      if (map_apply(f, s.faces[i]) != sset_face(*f.cd, f.asg[c], i))
        bad.push_back("cell " + std::to_string(c) + ": face " + std::to_string(i));
  }
  return bad;
}

inline SSetMap identity_map(std::shared_ptr<const FinSSet> X) {
  SSetMap f;
  f.dm = f.cd = X;
  for (size_t c = 0; c < X->cells.size(); ++c) f.asg.push_back({(int)c, {}});
  return f;
}

inline SSetMap compose_map(const SSetMap& g, const SSetMap& f) {
  SSetMap h;
  h.dm = f.dm;
  h.cd = g.cd;
  for (auto& v : f.asg) h.asg.push_back(map_apply(g, v));
  return h;
}

struct LevelMap {
  SLevels dm, cd;
  std::function<std::string(int, const std::string&)> ap;
};

inline LevelMap level_map_of(const SSetMap& f) {
  LevelMap m;
  m.dm = levels_of(f.dm);
  m.cd = levels_of(f.cd);
  SSetMap fc = f;
  m.ap = [fc](int, const std::string& k) { return encode_dsimp(map_apply(fc, decode_dsimp(k))); };
  return m;
}

inline LevelMap identity_level(const SLevels& S) {
  return {S, S, [](int, const std::string& k) { return k; }};
}

inline LevelMap compose_level(const LevelMap& g, const LevelMap& f) {
  auto ga = g.ap, fa = f.ap;
  return {f.dm, g.cd, [ga, fa](int n, const std::string& k) { return ga(n, fa(n, k)); }};
}

// ---------------------------------------------------------------------------
// Generators.

inline std::vector<std::vector<int>> delta_cells(int n) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= n + 1; ++size) {
    std::vector<int> cur;
    std::function<void(int)> go = [&](int low) {
      if ((int)cur.size() == size) {
        out.push_back(cur);
        return;
      }
      for (int v = low; v <= n; ++v) {
        cur.push_back(v);
        go(v + 1);
        cur.pop_back();
      }
    };
    go(0);
  }
  return out;
}

inline int delta_cell_id(int n, const std::vector<int>& t) {
  auto cells = delta_cells(n);
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == t) return (int)i;
  throw BadIndex("delta_cell_id: not a face tuple of delta(" + std::to_string(n) + ")");
}

inline FinSSet delta(int n) {
  if (n < 0) throw BadIndex("delta(" + std::to_string(n) + ")");
  FinSSet X;
  auto cells = delta_cells(n);
  std::map<std::vector<int>, int> id;
  for (size_t i = 0; i < cells.size(); ++i) id[cells[i]] = (int)i;
  for (auto& t : cells) {
    Simplex s;
    s.dim = (int)t.size() - 1;
    for (int i = 0; i <= s.dim && s.dim >= 1; ++i) {
      auto f = t;
      f.erase(f.begin() + i);
      s.faces.push_back({id[f], {}});
    }
    X.cells.push_back(std::move(s));
  }
  return X;
}

// The cell of delta(n) carrying a weakly increasing tuple, with its canonical
// degeneracy word.
inline DSimp delta_dsimp(int n, const std::vector<int>& weak) {
  std::vector<int> core;
  std::vector<int> repeats;
  for (size_t i = 0; i < weak.size(); ++i) {
    if (i + 1 < weak.size() && weak[i] == weak[i + 1]) repeats.push_back((int)i);
    if (core.empty() || core.back() != weak[i]) core.push_back(weak[i]);
  }
  DSimp d{delta_cell_id(n, core), {}};
  for (int j : repeats) d = sset_degen(d, j);
  return d;
}

inline std::vector<int> delta_tuple(int n, const DSimp& d) {
  auto t = delta_cells(n)[d.id];
  for (auto it = d.word.rbegin(); it != d.word.rend(); ++it) t.insert(t.begin() + *it, t[*it]);
  return t;
}

// Subcomplex of delta(n) keeping the cells that pass `keep`; used for horns
// and boundaries, so dropping a cell never orphans a kept one.  The inclusion
// into delta(n) is returned alongside the object.
struct SubcomplexResult {
  std::shared_ptr<const FinSSet> obj;
  SSetMap incl;
};

inline SubcomplexResult delta_subcomplex(int n, const std::function<bool(const std::vector<int>&)>& keep) {
  FinSSet D = delta(n);
  auto cells = delta_cells(n);
  std::vector<int> newid(cells.size(), -1);
  auto X = std::make_shared<FinSSet>();
  SSetMap incl;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!keep(cells[i])) continue;
    newid[i] = (int)X->cells.size();
    Simplex s = D.cells[i];
    for (auto& f : s.faces) {
      if (newid[f.id] < 0) throw BadIndex("delta_subcomplex: kept cell has dropped face");
      f.id = newid[f.id];
    }
    X->cells.push_back(std::move(s));
    incl.asg.push_back({(int)i, {}});
  }
  incl.dm = X;
  incl.cd = std::make_shared<const FinSSet>(std::move(D));
  return {X, std::move(incl)};
}

inline SubcomplexResult boundary_incl(int n) {
  if (n < 0) throw BadIndex("boundary(" + std::to_string(n) + ")");
  return delta_subcomplex(n, [n](const std::vector<int>& t) { return (int)t.size() < n + 1; });
}

inline SubcomplexResult horn_incl(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw BadIndex("horn(" + std::to_string(n) + "," + std::to_string(k) + ")");
  return delta_subcomplex(n, [n, k](const std::vector<int>& t) {
    for (int i = 0; i <= n; ++i)
      if (i != k && std::find(t.begin(), t.end(), i) == t.end()) return true;
    return false;
  });
}

inline FinSSet boundary(int n) { return *boundary_incl(n).obj; }
inline FinSSet horn(int n, int k) { return *horn_incl(n, k).obj; }

inline FinSSet discrete(int m) {
  if (m < 0) throw BadIndex("discrete(" + std::to_string(m) + ")");
  FinSSet X;
  for (int v = 0; v < m; ++v) X.cells.push_back({0, {}});
  return X;
}

// Map delta(a) -> delta(b) induced by a monotone vertex map.
inline SSetMap delta_map(const OrdMap& phi) {
  SSetMap f;
  f.dm = std::make_shared<const FinSSet>(delta(phi.dom));
  f.cd = std::make_shared<const FinSSet>(delta(phi.cod));
  for (auto& t : delta_cells(phi.dom)) {
    std::vector<int> img;
    for (int v : t) img.push_back(phi.at[v]);
    f.asg.push_back(delta_dsimp(phi.cod, img));
  }
  return f;
}

// The unique map to the point.
inline SSetMap terminal_map(std::shared_ptr<const FinSSet> X) {
  SSetMap f;
  f.dm = X;
  f.cd = std::make_shared<const FinSSet>(delta(0));
  for (auto& c : X->cells) {
    DSimp v{0, {}};
    for (int j = 0; j < c.dim; ++j) v = sset_degen(v, j);
    f.asg.push_back(v);
  }
  return f;
}

// Classifying map delta(n) -> X of a level-n element.
inline SSetMap simplex_as_map(std::shared_ptr<const FinSSet> X, int n, const std::string& key) {
  SLevels L = levels_of(X);
  SSetMap f;
  f.dm = std::make_shared<const FinSSet>(delta(n));
  f.cd = X;
  for (auto& t : delta_cells(n)) {
    OrdMap phi{(int)t.size() - 1, n, t};
    f.asg.push_back(decode_dsimp(act(L, n, key, phi)));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Canonical pairing of keys, used by products, pullbacks, and every derived
// construction that stores composite elements.

inline std::string esc_key(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '(' || c == ')' || c == '|' || c == '[' || c == ']' || c == ';') out += '\\';
    out += c;
  }
  return out;
}

inline std::string pair_key(const std::string& a, const std::string& b) { return "(" + esc_key(a) + "|" + esc_key(b) + ")"; }

inline std::pair<std::string, std::string> unpair_key(const std::string& s) {
  if (s.size() < 3 || s.front() != '(' || s.back() != ')') throw BadIndex("unpair_key: " + s);
  std::string a, b;
  std::string* cur = &a;
  for (size_t p = 1; p + 1 < s.size(); ++p) {
    char c = s[p];
    if (c == '\\' && p + 2 < s.size()) {
      *cur += s[++p];
    } else if (c == '|') {
      cur = &b;
    } else {
      *cur += c;
    }
  }
  return {a, b};
}

inline std::string list_key(const std::vector<std::string>& vals) {
  std::string out = "[";
  for (auto& v : vals) out += esc_key(v) + ";";  // every entry terminated, so [] and [;] differ
  return out + "]";
}

inline std::vector<std::string> unlist_key(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw BadIndex("unlist_key: " + s);
  std::vector<std::string> out;
  std::string cur;
  bool open = false;
  for (size_t p = 1; p + 1 < s.size(); ++p) {
    char c = s[p];
    if (c == '\\' && p + 2 < s.size()) {
      cur += s[++p];
      open = true;
    } else if (c == ';') {
      out.push_back(cur);
      cur.clear();
      open = false;
    } else {
      cur += c;
      open = true;
    }
  }
  if (open) throw BadIndex("unlist_key: unterminated entry in " + s);
  return out;
}

// ---------------------------------------------------------------------------
// Realizing a level view as a stored simplicial set: find the nondegenerate
// keys, give them ids, and express every face in canonical form.  `bound`
// must dominate the dimension of every nondegenerate simplex.

struct Realization {
  std::shared_ptr<const FinSSet> obj;
  std::vector<std::pair<int, std::string>> cell_key;  // per cell: (dim, source key)
  SLevels src;                                        // kept for decompositions above the bound
  int bound = 0;

  struct EzCache {
    std::mutex mu;
    std::map<std::pair<int, std::string>, DSimp> ez;
  };
  std::shared_ptr<EzCache> cache;

  // Canonical (cell, word) presentation of any source key.  Keys at levels
  // above the bound must be degenerate, so they decompose through the table.
  DSimp dsimp_of(int n, const std::string& key) const {
    {
      std::lock_guard<std::mutex> g(cache->mu);
      if (auto it = cache->ez.find({n, key}); it != cache->ez.end()) return it->second;
    }
    if (n <= bound) throw BadIndex("realization: unknown key " + key + " at level " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      auto below = src.face(n, key, j);
      if (src.degen(n - 1, below, j) == key) {
        DSimp d = sset_degen(dsimp_of(n - 1, below), j);
        std::lock_guard<std::mutex> g(cache->mu);
        cache->ez.emplace(std::make_pair(n, key), d);
        return d;
      }
    }
    throw BadIndex("realization: nondegenerate key above bound " + std::to_string(bound) + ": " + key);
  }

  // Source key of a stored element, pushing the word back through the levels.
  std::string key_of(const DSimp& d) const {
    auto [lv0, k] = cell_key[d.id];
    int lv = lv0;
    std::string v = k;
    for (auto it = d.word.rbegin(); it != d.word.rend(); ++it) {
      v = src.degen(lv, v, *it);
      ++lv;
    }
    return v;
  }
};

inline Realization from_levels(const SLevels& S, int bound) {
  Realization R;
  R.bound = bound;
  R.src = S;
  R.cache = std::make_shared<Realization::EzCache>();
  auto& ez = R.cache->ez;
  auto obj = std::make_shared<FinSSet>();
  for (int n = 0; n <= bound; ++n) {
    auto keys = S.level(n);
    for (auto& k : keys) {
      bool deg = false;
      for (int j = 0; j < n && !deg; ++j)
        if (S.degen(n - 1, S.face(n, k, j), j) == k) deg = true;
      if (deg) continue;
      Simplex s;
      s.dim = n;
      for (int i = 0; i <= n && n >= 1; ++i) {
        auto fk = S.face(n, k, i);
        s.faces.push_back(ez.at({n - 1, fk}));
      }
      ez[{n, k}] = {(int)obj->cells.size(), {}};
      R.cell_key.push_back({n, k});
      obj->cells.push_back(std::move(s));
    }
    for (auto& k : keys) {
      if (ez.count({n, k})) continue;
      for (int j = 0; j < n; ++j) {
        auto below = S.face(n, k, j);
        if (S.degen(n - 1, below, j) == k) {
          ez[{n, k}] = sset_degen(ez.at({n - 1, below}), j);
          break;
        }
      }
    }
  }
  R.obj = obj;
  assert_sset(*obj, "from_levels");
  return R;
}

// ---------------------------------------------------------------------------
// Products, pullbacks, pushouts.

inline SLevels product_levels(const SLevels& A, const SLevels& B) {
  SLevels S;
  S.d_max = std::min(A.d_max, B.d_max);
  S.level = [A, B](int n) {
    std::vector<std::string> out;
    for (auto& a : A.level(n))
      for (auto& b : B.level(n)) out.push_back(pair_key(a, b));
    std::sort(out.begin(), out.end());
    return out;
  };
  S.face = [A, B](int n, const std::string& k, int i) {
    auto [a, b] = unpair_key(k);
    return pair_key(A.face(n, a, i), B.face(n, b, i));
  };
  S.degen = [A, B](int n, const std::string& k, int j) {
    auto [a, b] = unpair_key(k);
    return pair_key(A.degen(n, a, j), B.degen(n, b, j));
  };
  return memoize_levels(S);
}

inline SLevels pullback_levels(const LevelMap& f, const LevelMap& g) {
  SLevels P = product_levels(f.dm, g.dm);
  auto fa = f.ap, ga = g.ap;
  SLevels S;
  S.d_max = std::min(f.dm.d_max, g.dm.d_max);
  S.level = [P, fa, ga](int n) {
    std::vector<std::string> out;
    for (auto& k : P.level(n)) {
      auto [a, b] = unpair_key(k);
      if (fa(n, a) == ga(n, b)) out.push_back(k);
    }
    return out;
  };
  S.face = P.face;
  S.degen = P.degen;
  return memoize_levels(S);
}

struct SpanResult {
  std::shared_ptr<const FinSSet> obj;
  SSetMap pr1, pr2;
  Realization R;
};

namespace detail {
inline SpanResult realize_pairs(const SLevels& S, int bound, std::shared_ptr<const FinSSet> X, std::shared_ptr<const FinSSet> Y) {
  SpanResult out;
  out.R = from_levels(S, bound);
  out.obj = out.R.obj;
  out.pr1.dm = out.pr2.dm = out.obj;
  out.pr1.cd = X;
  out.pr2.cd = Y;
  for (auto& [n, key] : out.R.cell_key) {
    auto [a, b] = unpair_key(key);
    out.pr1.asg.push_back(decode_dsimp(a));
    out.pr2.asg.push_back(decode_dsimp(b));
  }
  return out;
}
}  // namespace detail

inline SpanResult product_span(std::shared_ptr<const FinSSet> X, std::shared_ptr<const FinSSet> Y) {
  int bound = std::max(0, X->dim()) + std::max(0, Y->dim());
  if (X->dim() < 0 || Y->dim() < 0) bound = 0;
  return detail::realize_pairs(product_levels(levels_of(X), levels_of(Y)), bound, X, Y);
}

inline FinSSet product(const FinSSet& X, const FinSSet& Y) {
  return *product_span(std::make_shared<const FinSSet>(X), std::make_shared<const FinSSet>(Y)).obj;
}

inline SpanResult pullback_span(const SSetMap& f, const SSetMap& g) {
  if (!sset_equal(*f.cd, *g.cd)) throw BadIndex("pullback: targets differ");
  int bound = std::max(0, f.dm->dim()) + std::max(0, g.dm->dim());
  return detail::realize_pairs(pullback_levels(level_map_of(f), level_map_of(g)), bound, f.dm, g.dm);
}

inline FinSSet pullback(const SSetMap& f, const SSetMap& g) { return *pullback_span(f, g).obj; }

// Pushout of X <-f- A -g-> Y: levelwise quotient of the disjoint union by the
// relation f(a) ~ g(a), classes named by their least member.
struct PushoutResult {
  std::shared_ptr<const FinSSet> obj;
  SSetMap inj1, inj2;
  Realization R;
};

inline PushoutResult pushout_span(const SSetMap& f, const SSetMap& g) {
  auto LA = levels_of(f.dm);
  auto LX = level_map_of(f);
  auto LY = level_map_of(g);
  auto X = f.cd;
  auto Y = g.cd;
  auto XL = levels_of(X);
  auto YL = levels_of(Y);
  auto tag = [](char side, const std::string& k) { return pair_key(std::string(1, side), k); };

  // per-level class representative
  auto classes = std::make_shared<std::map<int, std::map<std::string, std::string>>>();
  auto mu = std::make_shared<std::mutex>();
  std::function<std::string(int, const std::string&)> rep = [=](int n, const std::string& tagged) {
    std::lock_guard<std::mutex> lock(*mu);
    auto& cls = (*classes)[n];
    if (cls.empty()) {
      std::map<std::string, std::string> parent;
      std::function<std::string(const std::string&)> find = [&](const std::string& a) {
        auto it = parent.find(a);
        if (it == parent.end() || it->second == a) return a;
        return it->second = find(it->second);
      };
      auto unite = [&](const std::string& a, const std::string& b) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      };
      for (auto& k : XL.level(n)) parent[tag('x', k)] = tag('x', k);
      for (auto& k : YL.level(n)) parent[tag('y', k)] = tag('y', k);
      for (auto& a : LA.level(n)) unite(tag('x', LX.ap(n, a)), tag('y', LY.ap(n, a)));
      for (auto& [k, _] : parent) cls[k] = find(k);
      for (auto& [k, v] : cls) cls[k] = find(v);
    }
    auto it = cls.find(tagged);
    if (it == cls.end()) throw BadIndex("pushout: unknown element " + tagged);
    return it->second;
  };

  auto side_op = [=](bool deg, int n, const std::string& rep_key, int i) {
    auto [side, k] = unpair_key(rep_key);
    const SLevels& L = side == "x" ? XL : YL;
    return rep(deg ? n + 1 : n - 1, tag(side[0], deg ? L.degen(n, k, i) : L.face(n, k, i)));
  };

  SLevels S;
  S.level = [=](int n) {
    std::set<std::string> reps;
    for (auto& k : XL.level(n)) reps.insert(rep(n, tag('x', k)));
    for (auto& k : YL.level(n)) reps.insert(rep(n, tag('y', k)));
    return std::vector<std::string>(reps.begin(), reps.end());
  };
  S.face = [=](int n, const std::string& k, int i) { return side_op(false, n, k, i); };
  S.degen = [=](int n, const std::string& k, int j) { return side_op(true, n, k, j); };
  S = memoize_levels(S);

  int bound = std::max(std::max(0, X->dim()), std::max(0, Y->dim()));
  PushoutResult out;
  out.R = from_levels(S, bound);
  out.obj = out.R.obj;
  out.inj1.dm = X;
  out.inj2.dm = Y;
  out.inj1.cd = out.inj2.cd = out.obj;
  for (size_t c = 0; c < X->cells.size(); ++c) {
    int n = X->cells[c].dim;
    out.inj1.asg.push_back(out.R.dsimp_of(n, rep(n, tag('x', encode_dsimp({(int)c, {}})))));
  }
  for (size_t c = 0; c < Y->cells.size(); ++c) {
    int n = Y->cells[c].dim;
    out.inj2.asg.push_back(out.R.dsimp_of(n, rep(n, tag('y', encode_dsimp({(int)c, {}})))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Map enumeration: all simplicial maps from a stored source into a level
// view, by backtracking over cells in dimension order.  A candidate for a
// cell must reproduce the already-assigned images of its faces; `forced` pins
// cells, `filter` imposes extra per-cell conditions.  The budget counts
// candidate admissibility tests.

struct MapProblem {
  std::shared_ptr<const FinSSet> A;
  SLevels T;
  std::map<int, std::string> forced;
  std::function<bool(int, const std::string&)> filter;
};

inline void enumerate_level_maps(const MapProblem& P, long budget,
                                 const std::function<bool(const std::vector<std::string>&)>& emit) {
  const FinSSet& A = *P.A;
  std::vector<int> order(A.cells.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return A.cells[a].dim < A.cells[b].dim; });

  std::vector<std::string> asg(A.cells.size());
  long used = 0;
  bool stop = false;

  // value of a possibly degenerate face under the partial assignment
  auto eval = [&](const DSimp& d) {
    std::string v = asg[d.id];
    int lv = A.cells[d.id].dim;
    for (auto it = d.word.rbegin(); it != d.word.rend(); ++it) {
      v = P.T.degen(lv, v, *it);
      ++lv;
    }
    return v;
  };

  std::function<void(size_t)> go = [&](size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (!emit(asg)) stop = true;
      return;
    }
    int c = order[pos];
    const Simplex& s = A.cells[c];
    auto admissible = [&](const std::string& cand) {
      if (++used > budget) throw BudgetExceeded("map enumeration", used, budget);
      if (P.filter && !P.filter(c, cand)) return false;
      for (int i = 0; i <= s.dim && s.dim >= 1; ++i)
        if (P.T.face(s.dim, cand, i) != eval(s.faces[i])) return false;
      return true;
    };
    auto attempt = [&](const std::string& cand) {
      if (!admissible(cand)) return;
      asg[c] = cand;
      go(pos + 1);
    };
    if (auto it = P.forced.find(c); it != P.forced.end()) {
      attempt(it->second);
      return;
    }
    for (auto& cand : P.T.level(s.dim)) {
      attempt(cand);
      if (stop) return;
    }
  };
  go(0);
}

inline std::vector<std::vector<std::string>> all_level_maps(const MapProblem& P, long budget, size_t cap = SIZE_MAX) {
  std::vector<std::vector<std::string>> out;
  enumerate_level_maps(P, budget, [&](const std::vector<std::string>& a) {
    out.push_back(a);
    return out.size() < cap;
  });
  return out;
}

// Rebuild a stored map from an assignment of level keys into a stored target.
inline SSetMap map_from_keys(std::shared_ptr<const FinSSet> A, std::shared_ptr<const FinSSet> X, const std::vector<std::string>& vals) {
  SSetMap f;
  f.dm = A;
  f.cd = X;
  for (auto& v : vals) f.asg.push_back(decode_dsimp(v));
  return f;
}

}  // namespace uf
