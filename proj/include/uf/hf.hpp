#pragma once

// Hereditarily finite sets in canonical form. A value is a finite set of
// values; the representation keeps element lists sorted and deduplicated, so
// structural equality is extensional equality and each set has exactly one
// code. The node count (total number of set-formers in the tree, so |{}| = 1)
// is the size measure the model's budgets are stated in.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace uf {

struct HFNode;
using HF = std::shared_ptr<const HFNode>;

struct HFNode {
  std::vector<HF> elems;  // sorted by hf_cmp, no duplicates
  std::int64_t nodes = 1;
};

// Total order: by node count, then by element count, then lexicographic on
// elements. Any total order would do; this one makes small sets compare fast.
inline int hf_cmp(const HF& a, const HF& b) {
  if (a.get() == b.get()) return 0;
  if (a->nodes != b->nodes) return a->nodes < b->nodes ? -1 : 1;
  if (a->elems.size() != b->elems.size())
    return a->elems.size() < b->elems.size() ? -1 : 1;
  for (size_t i = 0; i < a->elems.size(); ++i) {
    int c = hf_cmp(a->elems[i], b->elems[i]);
    if (c != 0) return c;
  }
  return 0;
}

inline bool hf_eq(const HF& a, const HF& b) { return hf_cmp(a, b) == 0; }
inline bool hf_lt(const HF& a, const HF& b) { return hf_cmp(a, b) < 0; }

inline std::int64_t node_count(const HF& a) { return a->nodes; }

// The only constructor: sorts, deduplicates, counts nodes.
inline HF mk_hf(std::vector<HF> elems) {
  std::sort(elems.begin(), elems.end(), hf_lt);
  elems.erase(std::unique(elems.begin(), elems.end(),
                          [](const HF& x, const HF& y) { return hf_eq(x, y); }),
              elems.end());
  auto n = std::make_shared<HFNode>();
  n->nodes = 1;
  for (auto& e : elems) n->nodes += e->nodes;
  n->elems = std::move(elems);
  return n;
}

inline const HF& hf_empty() {
  static const HF e = mk_hf({});
  return e;
}

inline HF hf_singleton(HF a) { return mk_hf({std::move(a)}); }

inline bool hf_mem(const HF& x, const HF& s) {
  for (auto& e : s->elems)
    if (hf_eq(e, x)) return true;
  return false;
}

// Von Neumann naturals: 0 = {}, n+1 = n u {n}.
inline HF hf_nat(int n) {
  HF v = hf_empty();
  std::vector<HF> acc;
  for (int i = 0; i < n; ++i) {
    acc.push_back(v);
    v = mk_hf(acc);
  }
  return v;
}

// Kuratowski pairs: (a,b) = {{a},{a,b}}. Everything structured the model
// builds (graphs, disjoint unions, display-map fibers) is made of these.
inline HF kpair(const HF& a, const HF& b) {
  return mk_hf({hf_singleton(a), mk_hf({a, b})});
}

inline bool is_kpair(const HF& p) {
  if (p->elems.size() == 1) {
    return p->elems[0]->elems.size() == 1;
  }
  if (p->elems.size() == 2) {
    const HF& s = p->elems[0];  // sorted, so the singleton comes first
    const HF& d = p->elems[1];
    return s->elems.size() == 1 && d->elems.size() == 2 &&
           hf_mem(s->elems[0], d);
  }
  return false;
}

inline HF kfst(const HF& p) {
  assert(is_kpair(p));
  return p->elems[0]->elems[0];
}

inline HF ksnd(const HF& p) {
  assert(is_kpair(p));
  if (p->elems.size() == 1) return p->elems[0]->elems[0];  // (a,a)
  const HF& a = p->elems[0]->elems[0];
  const HF& d = p->elems[1];
  return hf_eq(d->elems[0], a) ? d->elems[1] : d->elems[0];
}

// Function graphs as sets of pairs.
inline HF hf_graph(const std::vector<std::pair<HF, HF>>& entries) {
  std::vector<HF> ps;
  ps.reserve(entries.size());
  for (auto& [k, v] : entries) ps.push_back(kpair(k, v));
  return mk_hf(std::move(ps));
}

inline HF hf_apply(const HF& graph, const HF& arg) {
  for (auto& e : graph->elems) {
    if (is_kpair(e) && hf_eq(kfst(e), arg)) return ksnd(e);
  }
  throw std::runtime_error("hf_apply: argument not in the graph's domain");
}

inline bool is_graph_on(const HF& graph, const std::vector<HF>& domain) {
  if (graph->elems.size() != domain.size()) return false;
  for (auto& e : graph->elems)
    if (!is_kpair(e)) return false;
  for (auto& d : domain) {
    bool hit = false;
    for (auto& e : graph->elems)
      if (hf_eq(kfst(e), d)) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

inline std::string hf_to_string(const HF& a) {
  if (is_kpair(a) && a->elems.size() == 2)
    return "(" + hf_to_string(kfst(a)) + "," + hf_to_string(ksnd(a)) + ")";
  std::string s = "{";
  for (size_t i = 0; i < a->elems.size(); ++i) {
    if (i) s += ",";
    s += hf_to_string(a->elems[i]);
  }
  return s + "}";
}

// All canonical codes with at most max_nodes nodes, sorted by hf_cmp. Grows
// fast (25732 codes at 16 nodes) but is only ever run once per budget.
inline std::vector<HF> enumerate_hf(int max_nodes) {
  std::vector<HF> all;  // kept sorted: hf_cmp orders by node count first
  if (max_nodes < 1) return all;
  all.push_back(hf_empty());
  for (int n = 2; n <= max_nodes; ++n) {
    // Sets with exactly n nodes: element multisets are strictly increasing
    // index sequences into `all` (restricted to codes with < n nodes) whose
    // node counts sum to n - 1.
    size_t limit = all.size();
    std::vector<HF> picked;
    std::vector<HF> batch;
    auto rec = [&](auto&& self, size_t from, std::int64_t left) -> void {
      if (left == 0) {
        batch.push_back(mk_hf(picked));
        return;
      }
      for (size_t i = from; i < limit; ++i) {
        if (all[i]->nodes > left) break;
        picked.push_back(all[i]);
        self(self, i + 1, left - all[i]->nodes);
        picked.pop_back();
      }
    };
    rec(rec, 0, n - 1);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  std::sort(all.begin(), all.end(), hf_lt);
  return all;
}

}  // namespace uf
