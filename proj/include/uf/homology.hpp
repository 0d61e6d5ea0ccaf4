#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "sset.hpp"

namespace uf {

using IMat = std::vector<std::vector<long long>>;

// Diagonal of the Smith normal form.  Entries are made nonnegative; zeros
// are dropped, so the result length is the rank.
inline std::vector<long long> smith_diagonal(IMat m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<long long> diag;
  size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    size_t pr = r0, pc = c0;
    long long best = 0;
    for (size_t r = r0; r < rows; ++r)
      for (size_t c = c0; c < cols; ++c)
        if (m[r][c] != 0 && (best == 0 || std::llabs(m[r][c]) < best)) {
          best = std::llabs(m[r][c]);
          pr = r;
          pc = c;
        }
    if (best == 0) break;
    std::swap(m[r0], m[pr]);
    for (size_t r = 0; r < rows; ++r) std::swap(m[r][c0], m[r][pc]);
    bool clean = true;
    for (size_t r = r0 + 1; r < rows; ++r)
      if (m[r][c0] != 0) {
        long long q = m[r][c0] / m[r0][c0];
        for (size_t c = c0; c < cols; ++c) m[r][c] -= q * m[r0][c];
        if (m[r][c0] != 0) clean = false;
      }
    for (size_t c = c0 + 1; c < cols; ++c)
      if (m[r0][c] != 0) {
        long long q = m[r0][c] / m[r0][c0];
        for (size_t r = r0; r < rows; ++r) m[r][c] -= q * m[r][c0];
        if (m[r0][c] != 0) clean = false;
      }
    if (!clean) continue;  // smaller remainder appeared; pick a new pivot
    diag.push_back(std::llabs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  // enforce the divisibility chain d1 | d2 | ...
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      long long a = diag[i], b = diag[j];
      while (b) {
        long long t = a % b;
        a = b;
        b = t;
      }
      long long g = a;  // gcd
      long long l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

inline bool is_degenerate_key(const SLevels& S, int n, const std::string& k) {
  for (int j = 0; j < n; ++j)
    if (S.degen(n - 1, S.face(n, k, j), j) == k) return true;
  return false;
}

inline std::vector<std::string> nondeg_level(const SLevels& S, int n) {
  std::vector<std::string> out;
  for (auto& k : S.level(n))
    if (!is_degenerate_key(S, n, k)) out.push_back(k);
  return out;
}

// Boundary matrix of the normalized chain complex from level n to n-1:
// degenerate faces vanish in the quotient.
inline IMat boundary_matrix(const SLevels& S, int n, const std::vector<std::string>& below, const std::vector<std::string>& here) {
  std::map<std::string, size_t> row;
  for (size_t i = 0; i < below.size(); ++i) row[below[i]] = i;
  IMat m(below.size(), std::vector<long long>(here.size(), 0));
  for (size_t c = 0; c < here.size(); ++c)
    for (int i = 0; i <= n; ++i) {
      auto fk = S.face(n, here[c], i);
      auto it = row.find(fk);
      if (it != row.end()) m[it->second][c] += (i % 2 == 0) ? 1 : -1;
    }
  return m;
}

struct HGroup {
  long long betti = 0;
  std::vector<long long> torsion;  // invariant factors > 1
};

// H_0 .. H_{top-1} of the normalized chains, exact within the given levels:
// computing H_n needs the boundaries arriving from level n+1.
inline std::vector<HGroup> homology_through(const SLevels& S, int top) {
  std::vector<std::vector<std::string>> nd(top + 1);
  for (int n = 0; n <= top; ++n) nd[n] = nondeg_level(S, n);
  std::vector<std::vector<long long>> snf(top + 1);
  for (int n = 1; n <= top; ++n) snf[n] = smith_diagonal(boundary_matrix(S, n, nd[n - 1], nd[n]));
  std::vector<HGroup> H;
  for (int n = 0; n < top; ++n) {
    long long rank_in = n == 0 ? 0 : (long long)snf[n].size();
    long long rank_out = (long long)snf[n + 1].size();
    HGroup h;
    h.betti = (long long)nd[n].size() - rank_in - rank_out;
    for (long long d : snf[n + 1])
      if (d > 1) h.torsion.push_back(d);
    H.push_back(std::move(h));
  }
  return H;
}

// Vanishing reduced homology in degrees 0..top-1.
inline bool reduced_homology_trivial(const SLevels& S, int top) {
  auto H = homology_through(S, top);
  if (H.empty()) return false;
  if (H[0].betti != 1 || !H[0].torsion.empty()) return false;
  for (size_t n = 1; n < H.size(); ++n)
    if (H[n].betti != 0 || !H[n].torsion.empty()) return false;
  return true;
}

// Connected components of the 1-skeleton: representative key per vertex.
inline std::map<std::string, std::string> pi0_classes(const SLevels& S) {
  std::map<std::string, std::string> parent;
  for (auto& v : S.level(0)) parent[v] = v;
  std::function<std::string(const std::string&)> find = [&](const std::string& a) {
    if (parent.at(a) == a) return a;
    return parent[a] = find(parent.at(a));
  };
  for (auto& e : S.level(1)) {
    auto a = find(S.face(1, e, 0)), b = find(S.face(1, e, 1));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::string, std::string> out;
  for (auto& [v, _] : parent) out[v] = find(v);
  return out;
}

inline int pi0_count(const SLevels& S) {
  auto cls = pi0_classes(S);
  std::set<std::string> reps;
  for (auto& [_, r] : cls) reps.insert(r);
  return (int)reps.size();
}

}  // namespace uf
