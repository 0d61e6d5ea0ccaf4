#pragma once

#include <vector>

#include "errors.hpp"

namespace uf {

// Weakly monotone map of finite ordinals [dom] -> [cod], where [n] = {0..n}.
// These index the simplicial operators: faces are the injections skipping one
// value, degeneracies the surjections repeating one value, and every operator
// factors as degeneracies followed by faces.
struct OrdMap {
  int dom = 0, cod = 0;
  std::vector<int> at;  // size dom+1
};

inline bool ord_ok(const OrdMap& f) {
  if ((int)f.at.size() != f.dom + 1) return false;
  for (int i = 0; i <= f.dom; ++i) {
    if (f.at[i] < 0 || f.at[i] > f.cod) return false;
    if (i > 0 && f.at[i] < f.at[i - 1]) return false;
  }
  return true;
}

inline OrdMap ord_id(int n) {
  OrdMap f{n, n, {}};
  for (int i = 0; i <= n; ++i) f.at.push_back(i);
  return f;
}

// delta_i: [n-1] -> [n], the injection missing i
inline OrdMap ord_face(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw BadIndex("ord_face(" + std::to_string(n) + "," + std::to_string(i) + ")");
  OrdMap f{n - 1, n, {}};
  for (int v = 0; v <= n; ++v)
    if (v != i) f.at.push_back(v);
  return f;
}

// sigma_j: [n+1] -> [n], the surjection hitting j twice
inline OrdMap ord_degen(int n, int j) {
  if (j < 0 || j > n) throw BadIndex("ord_degen(" + std::to_string(n) + "," + std::to_string(j) + ")");
  OrdMap f{n + 1, n, {}};
  for (int v = 0; v <= n; ++v) {
    f.at.push_back(v);
    if (v == j) f.at.push_back(v);
  }
  return f;
}

inline OrdMap ord_compose(const OrdMap& g, const OrdMap& f) {
  if (f.cod != g.dom) throw BadIndex("ord_compose: cod/dom mismatch");
  OrdMap h{f.dom, g.cod, {}};
  for (int i = 0; i <= f.dom; ++i) h.at.push_back(g.at[f.at[i]]);
  return h;
}

// Values of [cod] skipped by f, descending: the face part of the epi-mono
// factorization, in the order the faces must be applied to a simplex.
inline std::vector<int> ord_missing_desc(const OrdMap& f) {
  std::vector<int> miss;
  std::vector<bool> hit(f.cod + 1, false);
  for (int v : f.at) hit[v] = true;
  for (int v = f.cod; v >= 0; --v)
    if (!hit[v]) miss.push_back(v);
  return miss;
}

// Positions j with f(j) = f(j+1), ascending: the degeneracy part, in the
// order the degeneracies must be applied after the faces.
inline std::vector<int> ord_repeats_asc(const OrdMap& f) {
  std::vector<int> rep;
  for (int j = 0; j < f.dom; ++j)
    if (f.at[j] == f.at[j + 1]) rep.push_back(j);
  return rep;
}

}  // namespace uf
