#pragma once

// Brute-force reference implementations used by the tests. None of these
// share code with the library beyond the plain data types.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "modalcoh/diagram.hpp"

namespace oracle {

using modalcoh::Elem;
using modalcoh::RelDiagram;
using modalcoh::SplitEq;

// Boolean matrix product.
inline RelDiagram rel_compose(const RelDiagram& g, const RelDiagram& f) {
  std::vector<std::vector<bool>> a(f.src, std::vector<bool>(f.tgt)),
      b(g.src, std::vector<bool>(g.tgt));
  for (auto [i, j] : f.pairs) a[i][j] = true;
  for (auto [i, j] : g.pairs) b[i][j] = true;
  RelDiagram r{f.src, g.tgt, {}, {}, {}};
  for (int i = 0; i < f.src; ++i)
    for (int k = 0; k < g.tgt; ++k)
      for (int j = 0; j < f.tgt; ++j)
        if (a[i][j] && b[j][k]) r.pairs.insert({i, k});
  return r;
}

// Connected components of the glued graph by depth-first search.
inline SplitEq spliteq_compose(const SplitEq& g, const SplitEq& f) {
  // Vertices: 0..f.src-1 sources, then middle, then targets.
  const int n = f.src + f.tgt + g.tgt;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  auto fv = [&](Elem e) { return e.target ? f.src + e.idx : e.idx; };
  auto gv = [&](Elem e) { return e.target ? f.src + f.tgt + e.idx : f.src + e.idx; };
  auto link = [&](const std::vector<Elem>& cls, auto vert) {
    for (std::size_t k = 1; k < cls.size(); ++k) {
      adj[vert(cls[0])].push_back(vert(cls[k]));
      adj[vert(cls[k])].push_back(vert(cls[0]));
    }
  };
  for (const auto& c : f.classes) link(c, fv);
  for (const auto& c : g.classes) link(c, gv);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    std::vector<int> stack{v};
    comp[v] = next;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (comp[y] < 0) comp[y] = next, stack.push_back(y);
    }
    ++next;
  }
  std::map<int, std::vector<Elem>> by;
  for (int i = 0; i < f.src; ++i) by[comp[i]].push_back({false, i});
  for (int j = 0; j < g.tgt; ++j) by[comp[f.src + f.tgt + j]].push_back({true, j});
  SplitEq r{f.src, g.tgt, {}, {}, {}};
  for (auto& [k, cls] : by) {
    std::sort(cls.begin(), cls.end());
    r.classes.push_back(cls);
  }
  std::sort(r.classes.begin(), r.classes.end());
  return r;
}

// Every total function [dom] -> [cod] as a value vector.
inline std::vector<std::vector<int>> all_functions(int dom, int cod) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(dom), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == dom) {
      out.push_back(v);
      return;
    }
    for (int y = 0; y < cod; ++y) v[i] = y, rec(i + 1);
  };
  rec(0);
  return out;
}

// Every nondecreasing map [dom] -> [cod].
inline std::vector<std::vector<int>> monotone_functions(int dom, int cod) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(dom), 0);
  std::function<void(int, int)> rec = [&](int i, int lo) {
    if (i == dom) {
      out.push_back(v);
      return;
    }
    for (int y = lo; y < cod; ++y) v[i] = y, rec(i + 1, y);
  };
  rec(0, 0);
  return out;
}

inline bool is_monotone(const std::vector<int>& v) {
  return std::is_sorted(v.begin(), v.end());
}
inline bool is_injective(const std::vector<int>& v) {
  return std::set<int>(v.begin(), v.end()).size() == v.size();
}
inline bool is_surjective(const std::vector<int>& v, int cod) {
  return static_cast<int>(std::set<int>(v.begin(), v.end()).size()) == cod;
}

inline std::vector<int> compose(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> r;
  for (int x : f) r.push_back(g[x]);
  return r;
}

// Every relation [m] x [n] as a pair set.
inline std::vector<std::set<std::pair<int, int>>> all_relations(int m, int n) {
  std::vector<std::set<std::pair<int, int>>> out;
  const int cells = m * n;
  for (long mask = 0; mask < (1L << cells); ++mask) {
    std::set<std::pair<int, int>> r;
    for (int c = 0; c < cells; ++c)
      if (mask >> c & 1) r.insert({c / n, c % n});
    out.push_back(r);
  }
  return out;
}

// Every partition of [0, k) as restricted-growth block labels.
inline std::vector<std::vector<int>> all_partitions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == k) {
      out.push_back(v);
      return;
    }
    for (int b = 0; b <= blocks; ++b) v[i] = b, rec(i + 1, std::max(blocks, b + 1));
  };
  rec(0, 0);
  return out;
}

// Four-point crossing test on the boundary circle: sources left to right
// (descending index), then targets right to left.
inline bool noncrossing(const modalcoh::SplitEq& d) {
  const int total = d.src + d.tgt;
  std::vector<int> block(static_cast<std::size_t>(total));
  for (std::size_t c = 0; c < d.classes.size(); ++c)
    for (const auto& e : d.classes[c])
      block[e.target ? d.src + e.idx : d.src - 1 - e.idx] = static_cast<int>(c);
  for (int a = 0; a < total; ++a)
    for (int b = a + 1; b < total; ++b)
      for (int c = b + 1; c < total; ++c)
        for (int e = c + 1; e < total; ++e)
          if (block[a] == block[c] && block[b] == block[e] && block[a] != block[b])
            return false;
  return true;
}

// Split equivalence from restricted-growth labels over sources then targets.
inline modalcoh::SplitEq from_labels(int src, int tgt, const std::vector<int>& lab) {
  std::map<int, std::vector<Elem>> by;
  for (int i = 0; i < src + tgt; ++i)
    by[lab[i]].push_back(i < src ? Elem{false, i} : Elem{true, i - src});
  std::vector<std::vector<Elem>> cls;
  for (auto& [k, c] : by) cls.push_back(c);
  return modalcoh::make_spliteq(src, tgt, cls);
}

}  // namespace oracle
