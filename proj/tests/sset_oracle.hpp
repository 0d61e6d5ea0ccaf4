#pragma once

// Reference model for the simplicial-set layer, kept deliberately dumb: a
// simplicial set truncated at level `top` is a dense table of named level
// elements with explicit face/degeneracy index maps, and every question is
// answered by exhaustive search over those tables.  Nothing here shares code
// with include/uf/sset*.hpp; agreement between the two is what the tests
// check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace uf::test {

struct TableSSet {
  int top = 0;  // levels 0..top are tabulated
  std::vector<std::vector<std::string>> lv;
  // fc[n][i][x] = index in lv[n-1] of the i-th face of lv[n][x], for 1 <= n <= top, 0 <= i <= n
  std::vector<std::vector<std::vector<int>>> fc;
  // dg[n][j][x] = index in lv[n+1] of the j-th degeneracy of lv[n][x], for 0 <= n < top, 0 <= j <= n
  std::vector<std::vector<std::vector<int>>> dg;

  int index(int n, const std::string& name) const {
    auto& v = lv[n];
    auto it = std::lower_bound(v.begin(), v.end(), name);
    if (it == v.end() || *it != name) throw std::logic_error("table: no element " + name + " at level " + std::to_string(n));
    return int(it - v.begin());
  }
};

inline std::string tuple_name(const std::vector<int>& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(t[i]);
  }
  return s;
}

inline std::vector<int> tuple_parse(const std::string& s) {
  std::vector<int> t;
  int cur = 0;
  bool any = false;
  for (char c : s) {
    if (c == '.') {
      t.push_back(cur);
      cur = 0;
      any = false;
    } else {
      cur = cur * 10 + (c - '0');
      any = true;
    }
  }
  if (any) t.push_back(cur);
  return t;
}

// All weakly increasing (n+1)-tuples with entries in {0..m}.
inline std::vector<std::vector<int>> weak_tuples(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> go = [&](int low) {
    if ((int)cur.size() == n + 1) {
      out.push_back(cur);
      return;
    }
    for (int v = low; v <= m; ++v) {
      cur.push_back(v);
      go(v);
      cur.pop_back();
    }
  };
  go(0);
  return out;
}

// Builds a table from a set of "shape" levels named by weakly increasing
// tuples, where face i drops position i and degeneracy j repeats position j.
// `keep` filters which tuples belong (must be closed under faces and
// degeneracies within the tabulated range).
inline TableSSet tuple_table(int m, int topdim, const std::function<bool(const std::vector<int>&)>& keep) {
  TableSSet T;
  T.top = topdim;
  T.lv.resize(topdim + 1);
  T.fc.resize(topdim + 1);
  T.dg.resize(topdim + 1);
  for (int n = 0; n <= topdim; ++n) {
    for (auto& t : weak_tuples(n, m))
      if (keep(t)) T.lv[n].push_back(tuple_name(t));
    std::sort(T.lv[n].begin(), T.lv[n].end());
  }
  for (int n = 1; n <= topdim; ++n) {
    T.fc[n].assign(n + 1, std::vector<int>(T.lv[n].size(), -1));
    for (size_t x = 0; x < T.lv[n].size(); ++x) {
      auto t = tuple_parse(T.lv[n][x]);
      for (int i = 0; i <= n; ++i) {
        auto f = t;
        f.erase(f.begin() + i);
        T.fc[n][i][x] = T.index(n - 1, tuple_name(f));
      }
    }
  }
  for (int n = 0; n < topdim; ++n) {
    T.dg[n].assign(n + 1, std::vector<int>(T.lv[n].size(), -1));
    for (size_t x = 0; x < T.lv[n].size(); ++x) {
      auto t = tuple_parse(T.lv[n][x]);
      for (int j = 0; j <= n; ++j) {
        auto s = t;
        s.insert(s.begin() + j, t[j]);
        T.dg[n][j][x] = T.index(n + 1, tuple_name(s));
      }
    }
  }
  return T;
}

inline TableSSet table_delta(int m, int topdim) {
  return tuple_table(m, topdim, [](const std::vector<int>&) { return true; });
}

inline TableSSet table_boundary(int m, int topdim) {
  return tuple_table(m, topdim, [m](const std::vector<int>& t) {
    std::set<int> img(t.begin(), t.end());
    return (int)img.size() < m + 1;
  });
}

inline TableSSet table_horn(int m, int k, int topdim) {
  // generated by the faces d_i(top simplex) for i != k: the complement of the
  // tuple's image must contain some vertex other than k
  return tuple_table(m, topdim, [m, k](const std::vector<int>& t) {
    std::set<int> img(t.begin(), t.end());
    for (int i = 0; i <= m; ++i)
      if (i != k && !img.count(i)) return true;
    return false;
  });
}

inline TableSSet table_discrete(int m, int topdim) {
  TableSSet T;
  T.top = topdim;
  T.lv.resize(topdim + 1);
  T.fc.resize(topdim + 1);
  T.dg.resize(topdim + 1);
  for (int n = 0; n <= topdim; ++n) {
    for (int v = 0; v < m; ++v) T.lv[n].push_back("p" + std::to_string(v));
    std::sort(T.lv[n].begin(), T.lv[n].end());
    if (n >= 1) T.fc[n].assign(n + 1, [&] {
      std::vector<int> id(T.lv[n].size());
      for (size_t x = 0; x < id.size(); ++x) id[x] = (int)x;
      return id;
    }());
  }
  for (int n = 0; n < topdim; ++n) {
    std::vector<int> id(T.lv[n].size());
    for (size_t x = 0; x < id.size(); ++x) id[x] = (int)x;
    T.dg[n].assign(n + 1, id);
  }
  return T;
}

inline TableSSet table_product(const TableSSet& A, const TableSSet& B) {
  TableSSet T;
  T.top = std::min(A.top, B.top);
  T.lv.resize(T.top + 1);
  T.fc.resize(T.top + 1);
  T.dg.resize(T.top + 1);
  auto nm = [](const std::string& a, const std::string& b) { return a + "*" + b; };
  std::vector<std::vector<std::pair<int, int>>> parts(T.top + 1);
  for (int n = 0; n <= T.top; ++n) {
    std::vector<std::pair<std::string, std::pair<int, int>>> named;
    for (size_t x = 0; x < A.lv[n].size(); ++x)
      for (size_t y = 0; y < B.lv[n].size(); ++y)
        named.push_back({nm(A.lv[n][x], B.lv[n][y]), {(int)x, (int)y}});
    std::sort(named.begin(), named.end());
    for (auto& p : named) {
      T.lv[n].push_back(p.first);
      parts[n].push_back(p.second);
    }
  }
  for (int n = 1; n <= T.top; ++n) {
    T.fc[n].assign(n + 1, std::vector<int>(T.lv[n].size(), -1));
    for (size_t z = 0; z < T.lv[n].size(); ++z)
      for (int i = 0; i <= n; ++i) {
        int fx = A.fc[n][i][parts[n][z].first], fy = B.fc[n][i][parts[n][z].second];
        T.fc[n][i][z] = T.index(n - 1, nm(A.lv[n - 1][fx], B.lv[n - 1][fy]));
      }
  }
  for (int n = 0; n < T.top; ++n) {
    T.dg[n].assign(n + 1, std::vector<int>(T.lv[n].size(), -1));
    for (size_t z = 0; z < T.lv[n].size(); ++z)
      for (int j = 0; j <= n; ++j) {
        int sx = A.dg[n][j][parts[n][z].first], sy = B.dg[n][j][parts[n][z].second];
        T.dg[n][j][z] = T.index(n + 1, nm(A.lv[n + 1][sx], B.lv[n + 1][sy]));
      }
  }
  return T;
}

// Checks every simplicial identity expressible inside the tabulated range.
inline std::vector<std::string> table_violations(const TableSSet& T) {
  std::vector<std::string> bad;
  auto note = [&](int n, size_t x, const std::string& eq) {
    bad.push_back("level " + std::to_string(n) + " elem " + T.lv[n][x] + ": " + eq);
  };
  for (int n = 2; n <= T.top; ++n)
    for (size_t x = 0; x < T.lv[n].size(); ++x)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j <= n; ++j)
          if (T.fc[n - 1][i][T.fc[n][j][x]] != T.fc[n - 1][j - 1][T.fc[n][i][x]]) note(n, x, "d_i d_j");
  for (int n = 0; n + 1 < T.top; ++n)
    for (size_t x = 0; x < T.lv[n].size(); ++x)
      for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
          if (T.dg[n + 1][j + 1][T.dg[n][i][x]] != T.dg[n + 1][i][T.dg[n][j][x]]) note(n, x, "s_i s_j");
  for (int n = 0; n < T.top; ++n)
    for (size_t x = 0; x < T.lv[n].size(); ++x)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n + 1; ++i) {
          int sx = T.dg[n][j][x];
          int got = T.fc[n + 1][i][sx];
          if (i == j || i == j + 1) {
            if (got != (int)x) note(n, x, "d_i s_j = id");
          } else if (i < j) {
            if (n == 0) continue;
            if (got != T.dg[n - 1][j - 1][T.fc[n][i][x]]) note(n, x, "d_i s_j (i<j)");
          } else {
            if (n == 0) continue;
            if (got != T.dg[n - 1][j][T.fc[n][i - 1][x]]) note(n, x, "d_i s_j (i>j+1)");
          }
        }
  return bad;
}

inline bool table_nondeg(const TableSSet& T, int n, int x) {
  if (n == 0) return true;
  for (int j = 0; j < n; ++j)
    if (T.dg[n - 1][j][T.fc[n][j][x]] == x) return false;
  return true;
}

inline int table_nondeg_count(const TableSSet& T, int n) {
  if (n > T.top) return 0;
  int c = 0;
  for (size_t x = 0; x < T.lv[n].size(); ++x) c += table_nondeg(T, n, (int)x) ? 1 : 0;
  return c;
}

struct TableMap {
  const TableSSet* dm = nullptr;
  const TableSSet* cd = nullptr;
  std::vector<std::vector<int>> asg;  // asg[n][x] = index in cd->lv[n]
};

inline bool table_map_ok(const TableMap& f, int upto) {
  for (int n = 1; n <= upto; ++n)
    for (size_t x = 0; x < f.dm->lv[n].size(); ++x)
      for (int i = 0; i <= n; ++i)
        if (f.cd->fc[n][i][f.asg[n][x]] != f.asg[n - 1][f.dm->fc[n][i][x]]) return false;
  for (int n = 0; n < upto; ++n)
    for (size_t x = 0; x < f.dm->lv[n].size(); ++x)
      for (int j = 0; j <= n; ++j)
        if (f.cd->dg[n][j][f.asg[n][x]] != f.asg[n + 1][f.dm->dg[n][j][x]]) return false;
  return true;
}

// Enumerates all truncated simplicial maps A -> Y on levels 0..upto by
// backtracking: degenerate elements have forced images, nondegenerate ones
// are tried against every candidate whose faces match.  `forced` pins chosen
// images ((n, index) -> index), `ok` is an extra per-element filter, `emit`
// receives each complete map and returns false to stop the search.
inline void enumerate_tmaps(const TableSSet& A, const TableSSet& Y, int upto,
                            const std::map<std::pair<int, int>, int>& forced,
                            const std::function<bool(int, int, int)>& ok,
                            const std::function<bool(const TableMap&)>& emit) {
  TableMap f;
  f.dm = &A;
  f.cd = &Y;
  f.asg.assign(upto + 1, {});
  for (int n = 0; n <= upto; ++n) f.asg[n].assign(A.lv[n].size(), -1);
  bool stop = false;
  std::function<void(int, int)> go = [&](int n, int x) {
    if (stop) return;
    if (n > upto) {
      if (!emit(f)) stop = true;
      return;
    }
    if (x >= (int)A.lv[n].size()) {
      go(n + 1, 0);
      return;
    }
    auto next = [&](int y) {
      f.asg[n][x] = y;
      go(n, x + 1);
      f.asg[n][x] = -1;
    };
    auto admissible = [&](int y) {
      if (ok && !ok(n, x, y)) return false;
      if (auto it = forced.find({n, x}); it != forced.end() && it->second != y) return false;
      for (int i = 0; n >= 1 && i <= n; ++i)
        if (Y.fc[n][i][y] != f.asg[n - 1][A.fc[n][i][x]]) return false;
      return true;
    };
    // an element that is a degeneracy has a forced image
    for (int j = 0; n >= 1 && j < n; ++j) {
      int below = A.fc[n][j][x];
      if (A.dg[n - 1][j][below] == x) {
        int y = Y.dg[n - 1][j][f.asg[n - 1][below]];
        if (admissible(y)) next(y);
        return;
      }
    }
    for (int y = 0; y < (int)Y.lv[n].size(); ++y)
      if (admissible(y)) next(y);
  };
  go(0, 0);
}

struct OracleKan {
  bool yes = true;
  long squares = 0;
  std::string witness;  // description of the first unfillable square
};

// Brute-force horn-filling check for a map of tables: enumerate every
// commuting square from (horn(n,k) -> delta(n)) into f with n <= d and search
// for a diagonal.  `against_boundary` swaps the horn for the boundary, which
// is the trivial-fibration condition.
inline OracleKan oracle_lifting(const TableMap& f, int d, bool against_boundary) {
  OracleKan res;
  const TableSSet& Y = *f.dm;
  const TableSSet& X = *f.cd;
  int n0 = against_boundary ? 0 : 1;
  for (int n = n0; n <= d && res.yes; ++n) {
    int kmax = against_boundary ? 0 : n;
    for (int k = 0; k <= kmax && res.yes; ++k) {
      TableSSet D = table_delta(n, d);
      TableSSet H = against_boundary ? table_boundary(n, d) : table_horn(n, k, d);
      // positions of H's elements inside D
      std::vector<std::vector<int>> inj(d + 1);
      for (int p = 0; p <= d; ++p)
        for (auto& name : H.lv[p]) inj[p].push_back(D.index(p, name));
      enumerate_tmaps(H, Y, d, {}, nullptr, [&](const TableMap& top) {
        std::map<std::pair<int, int>, int> base;
        for (int p = 0; p <= d; ++p)
          for (size_t x = 0; x < H.lv[p].size(); ++x) base[{p, inj[p][x]}] = f.asg[p][top.asg[p][x]];
        enumerate_tmaps(D, X, d, base, nullptr, [&](const TableMap& bot) {
          ++res.squares;
          std::map<std::pair<int, int>, int> pin;
          for (int p = 0; p <= d; ++p)
            for (size_t x = 0; x < H.lv[p].size(); ++x) pin[{p, inj[p][x]}] = top.asg[p][x];
          bool filled = false;
          enumerate_tmaps(
              D, Y, d, pin, [&](int p, int x, int y) { return f.asg[p][y] == bot.asg[p][x]; },
              [&](const TableMap&) {
                filled = true;
                return false;
              });
          if (!filled) {
            res.yes = false;
            res.witness = (against_boundary ? "boundary(" : "horn(") + std::to_string(n) +
                          (against_boundary ? ")" : "," + std::to_string(k) + ")") + " square #" + std::to_string(res.squares);
            return false;
          }
          return true;
        });
        return res.yes;
      });
    }
  }
  return res;
}

inline OracleKan oracle_is_kan(const TableMap& f, int d) { return oracle_lifting(f, d, false); }
inline OracleKan oracle_is_trivial(const TableMap& f, int d) { return oracle_lifting(f, d, true); }

// Connected components of the 1-skeleton; returns the class of each vertex.
inline std::vector<int> table_pi0(const TableSSet& T) {
  std::vector<int> cls(T.lv[0].size());
  for (size_t i = 0; i < cls.size(); ++i) cls[i] = (int)i;
  std::function<int(int)> find = [&](int a) { return cls[a] == a ? a : cls[a] = find(cls[a]); };
  if (T.top >= 1)
    for (size_t e = 0; e < T.lv[1].size(); ++e) cls[find(T.fc[1][0][e])] = find(T.fc[1][1][e]);
  for (size_t i = 0; i < cls.size(); ++i) cls[i] = find((int)i);
  return cls;
}

}  // namespace uf::test
