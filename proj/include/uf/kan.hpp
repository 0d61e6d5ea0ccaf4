#pragma once

#include <string>

#include "sset.hpp"

namespace uf {

struct LiftResult {
  bool yes = true;
  int cert_dim = 0;
  long squares = 0;
  // set when yes = false: the shape and the two legs of the unfillable square
  int witness_n = -1, witness_k = -1;
  std::vector<std::string> witness_top, witness_bottom;
};

namespace detail {

// Right-lifting property of f against the inclusions shape(n) into delta(n)
// for n <= d: enumerate commuting squares, demand a diagonal for each.
inline LiftResult lifting_check(const LevelMap& f, int d, bool against_boundary, long budget) {
  LiftResult res;
  res.cert_dim = d;
  int n0 = against_boundary ? 0 : 1;
  for (int n = n0; n <= d && res.yes; ++n) {
    int kmax = against_boundary ? 0 : n;
    for (int k = 0; k <= kmax && res.yes; ++k) {
      auto sub = against_boundary ? boundary_incl(n) : horn_incl(n, k);
      auto H = sub.obj;
      auto D = sub.incl.cd;
      std::vector<int> inj;
      for (auto& v : sub.incl.asg) inj.push_back(v.id);
      MapProblem tops{H, f.dm, {}, nullptr};
      enumerate_level_maps(tops, budget, [&](const std::vector<std::string>& top) {
        MapProblem bots{D, f.cd, {}, nullptr};
        for (size_t c = 0; c < top.size(); ++c) bots.forced[inj[c]] = f.ap(H->cells[c].dim, top[c]);
        enumerate_level_maps(bots, budget, [&](const std::vector<std::string>& bot) {
          ++res.squares;
          bool filled = false;
          MapProblem fill{D, f.dm, {}, nullptr};
          for (size_t c = 0; c < top.size(); ++c) fill.forced[inj[c]] = top[c];
          fill.filter = [&](int cell, const std::string& cand) { return f.ap(D->cells[cell].dim, cand) == bot[cell]; };
          enumerate_level_maps(fill, budget, [&](const std::vector<std::string>&) {
            filled = true;
            return false;
          });
          if (!filled) {
            res.yes = false;
            res.witness_n = n;
            res.witness_k = against_boundary ? -1 : k;
            res.witness_top = top;
            res.witness_bottom = bot;
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

}  // namespace detail

inline LiftResult is_kan_fibration(const LevelMap& f, int d, long budget = 1L << 26) {
  if (d < 1) throw BadIndex("is_kan_fibration: d must be at least 1");
  return detail::lifting_check(f, d, false, budget);
}

inline LiftResult is_kan_fibration(const SSetMap& f, int d, long budget = 1L << 26) {
  return is_kan_fibration(level_map_of(f), d, budget);
}

inline LiftResult is_trivial_fibration(const LevelMap& f, int d, long budget = 1L << 26) {
  return detail::lifting_check(f, d, true, budget);
}

inline LiftResult is_trivial_fibration(const SSetMap& f, int d, long budget = 1L << 26) {
  return is_trivial_fibration(level_map_of(f), d, budget);
}

// Kan complex = fibrant over the point.
inline LiftResult is_kan_complex(std::shared_ptr<const FinSSet> X, int d, long budget = 1L << 26) {
  return is_kan_fibration(terminal_map(X), d, budget);
}

}  // namespace uf
