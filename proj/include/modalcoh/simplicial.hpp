#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modalcoh/chain.hpp"
#include "modalcoh/diagram.hpp"

namespace modalcoh {

struct FinMapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Total function dom -> cod between finite ordinals; values[i] is the image
// of i. Composition is applicative: compose(g, f) runs f first.
struct FinMap {
  int dom = 0, cod = 0;
  std::vector<int> values;

  int operator()(int i) const { return values.at(static_cast<std::size_t>(i)); }

  bool valid() const {
    if (dom < 0 || cod < 0 || static_cast<int>(values.size()) != dom)
      return false;
    return std::all_of(values.begin(), values.end(),
                       [&](int v) { return v >= 0 && v < cod; });
  }
  bool monotone() const {
    return std::is_sorted(values.begin(), values.end());
  }
  bool injective() const {
    std::vector<int> v = values;
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  }
  bool surjective() const {
    std::vector<bool> hit(static_cast<std::size_t>(cod), false);
    for (int v : values) hit[static_cast<std::size_t>(v)] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }
  bool bijective() const { return dom == cod && injective(); }
  int image_size() const {
    std::vector<int> v = values;
    std::sort(v.begin(), v.end());
    return static_cast<int>(std::unique(v.begin(), v.end()) - v.begin());
  }

  friend bool operator==(const FinMap&, const FinMap&) = default;
  friend auto operator<=>(const FinMap&, const FinMap&) = default;
};

inline FinMap finmap(int cod, std::vector<int> values) {
  FinMap h{static_cast<int>(values.size()), cod, std::move(values)};
  if (!h.valid()) throw FinMapError("value out of range for codomain");
  return h;
}

inline FinMap identity_map(int n) {
  FinMap h{n, n, std::vector<int>(static_cast<std::size_t>(n))};
  std::iota(h.values.begin(), h.values.end(), 0);
  return h;
}

inline FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.cod != g.dom) throw FinMapError("compose: codomain/domain mismatch");
  FinMap r{f.dom, g.cod, {}};
  for (int v : f.values) r.values.push_back(g(v));
  return r;
}

inline int inversions(const FinMap& p) {
  int n = 0;
  for (int i = 0; i < p.dom; ++i)
    for (int j = i + 1; j < p.dom; ++j)
      if (p(i) > p(j)) ++n;
  return n;
}

inline RelDiagram graph(const FinMap& h) {
  RelDiagram d{h.dom, h.cod, {}, std::nullopt, std::nullopt};
  for (int i = 0; i < h.dom; ++i) d.pairs.insert({i, h(i)});
  return d;
}

// Inverse of graph(); nullopt unless every source has exactly one partner.
inline std::optional<FinMap> function_of(const RelDiagram& d) {
  FinMap h{d.src, d.tgt, std::vector<int>(static_cast<std::size_t>(d.src), -1)};
  for (auto [i, j] : d.pairs) {
    if (h.values[static_cast<std::size_t>(i)] != -1) return std::nullopt;
    h.values[static_cast<std::size_t>(i)] = j;
  }
  if (!h.valid()) return std::nullopt;
  return h;
}

// "0,0,2" with codomain inferred as max+1 unless given.
inline FinMap parse_finmap(const std::string& text, int cod = -1) {
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) {
      if (text.find_first_not_of(" \t,") == std::string::npos) break;
      throw FinMapError("empty entry in map '" + text + "'");
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item.substr(b), &used);
    } catch (const std::exception&) {
      throw FinMapError("bad entry '" + item + "' in map");
    }
    if (item.find_first_not_of(" \t", b + used) != std::string::npos)
      throw FinMapError("bad entry '" + item + "' in map");
    vals.push_back(v);
  }
  int inferred = vals.empty() ? 0 : *std::max_element(vals.begin(), vals.end()) + 1;
  if (cod < 0) cod = inferred;
  if (cod < inferred) throw FinMapError("codomain smaller than a value");
  return finmap(cod, std::move(vals));
}

inline nlohmann::json to_json_value(const FinMap& h) {
  return {{"dom", h.dom}, {"cod", h.cod}, {"values", h.values}};
}

inline FinMap finmap_from_json(const nlohmann::json& j) {
  FinMap h{j.at("dom").get<int>(), j.at("cod").get<int>(),
           j.at("values").get<std::vector<int>>()};
  if (!h.valid()) throw FinMapError("invalid FinMap JSON");
  return h;
}

// h = h2 . h1 with h1 a monotone surjection onto the image, h2 a monotone
// injection.
inline std::pair<FinMap, FinMap> decompose_surj_inj(const FinMap& h) {
  if (!h.monotone()) throw FinMapError("decompose_surj_inj: map not monotone");
  std::vector<int> img = h.values;
  img.erase(std::unique(img.begin(), img.end()), img.end());
  const int k = static_cast<int>(img.size());
  FinMap h1{h.dom, k, {}}, h2{k, h.cod, img};
  for (int v : h.values)
    h1.values.push_back(
        static_cast<int>(std::lower_bound(img.begin(), img.end(), v) - img.begin()));
  return {h1, h2};
}

// h = h2 . h1 through dom + cod - |image| points: h1 a monotone injection,
// h2 a monotone surjection. Each target outside the image gets its own point.
inline std::pair<FinMap, FinMap> decompose_inj_surj(const FinMap& h) {
  if (!h.monotone()) throw FinMapError("decompose_inj_surj: map not monotone");
  const int k = h.dom + h.cod - h.image_size();
  FinMap h1{h.dom, k, {}}, h2{k, h.cod, {}};
  int i = 0;
  for (int y = 0; y < h.cod; ++y) {
    if (i < h.dom && h(i) == y) {
      while (i < h.dom && h(i) == y) {
        h1.values.push_back(static_cast<int>(h2.values.size()));
        h2.values.push_back(y);
        ++i;
      }
    } else {
      h2.values.push_back(y);
    }
  }
  return {h1, h2};
}

// h = h' . p with p ranking i by (h(i), i); p has the fewest inversions among
// all such factorizations.
inline std::pair<FinMap, FinMap> decompose_bij_monotone(const FinMap& h) {
  std::vector<int> order(static_cast<std::size_t>(h.dom));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return h(a) < h(b); });
  FinMap p{h.dom, h.dom, std::vector<int>(static_cast<std::size_t>(h.dom))};
  FinMap hm{h.dom, h.cod, std::vector<int>(static_cast<std::size_t>(h.dom))};
  for (int r = 0; r < h.dom; ++r) {
    p.values[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
    hm.values[static_cast<std::size_t>(r)] = h(order[static_cast<std::size_t>(r)]);
  }
  return {p, hm};
}

namespace detail {

inline Modality letters(char c, int n) {
  return Modality(static_cast<std::size_t>(std::max(n, 0)), c);
}

// Factor acting on the single-letter word c^len whose generator sits at
// position `pos` (its index has length pos).
inline Factor at_pos(char c, int len, GenKind k, int pos) {
  const int width = static_cast<int>(info(k).src.size());
  return {letters(c, len - pos - width), k, letters(c, pos)};
}

// Monotone surjection by merges, largest position first.
inline void surj_chain(Chain& c, const FinMap& s) {
  for (int i = s.dom - 2; i >= 0; --i)
    if (s(i) == s(i + 1))
      c.fs.push_back(at_pos(kDia, static_cast<int>(c.tgt().size()),
                            GenKind::DeltaDD, i));
}

// Monotone injection by inserting the missed targets, lowest first.
inline void inj_chain(Chain& c, const FinMap& g) {
  std::vector<bool> hit(static_cast<std::size_t>(g.cod), false);
  for (int v : g.values) hit[static_cast<std::size_t>(v)] = true;
  for (int y = 0; y < g.cod; ++y)
    if (!hit[static_cast<std::size_t>(y)])
      c.fs.push_back(at_pos(kDia, static_cast<int>(c.tgt().size()),
                            GenKind::EpsDia, y));
}

// Bijection by adjacent transpositions, each at the highest inverted
// position (insertion-sort order).
inline void bij_chain(Chain& c, const FinMap& p) {
  const int n = p.dom;
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 0);
  for (;;) {
    int pos = -1;
    for (int q = n - 2; q >= 0; --q)
      if (p(at[static_cast<std::size_t>(q)]) > p(at[static_cast<std::size_t>(q + 1)])) {
        pos = q;
        break;
      }
    if (pos < 0) break;
    std::swap(at[static_cast<std::size_t>(pos)], at[static_cast<std::size_t>(pos + 1)]);
    c.fs.push_back(at_pos(kDia, n, GenKind::ChiDD, pos));
  }
}

inline Chain monotone_chain(const FinMap& h) {
  Chain c{letters(kDia, h.dom), {}};
  auto [s, g] = decompose_surj_inj(h);
  surj_chain(c, s);
  inj_chain(c, g);
  return c;
}

inline Chain function_chain(const FinMap& h) {
  Chain c{letters(kDia, h.dom), {}};
  auto [p, hm] = decompose_bij_monotone(h);
  bij_chain(c, p);
  auto [s, g] = decompose_surj_inj(hm);
  surj_chain(c, s);
  inj_chain(c, g);
  return c;
}

}  // namespace detail

inline ArrowTerm embed_monotone(const FinMap& h) {
  if (!h.valid() || !h.monotone())
    throw FinMapError("embed_monotone: map is not monotone");
  return chain_term(detail::monotone_chain(h));
}

inline ArrowTerm embed_injection(const FinMap& h) {
  if (!h.valid() || !h.injective())
    throw FinMapError("embed_injection: map is not injective");
  return chain_term(detail::function_chain(h));
}

inline ArrowTerm embed_surjection(const FinMap& h) {
  if (!h.valid() || !h.surjective())
    throw FinMapError("embed_surjection: map is not surjective");
  return chain_term(detail::function_chain(h));
}

inline ArrowTerm embed_function(const FinMap& h) {
  if (!h.valid()) throw FinMapError("embed_function: invalid map");
  return chain_term(detail::function_chain(h));
}

// Theory in which each embedding lives.
inline std::string embed_theory(const std::string& kind) {
  if (kind == "monotone") return "s4_dia";
  if (kind == "injection" || kind == "surjection" || kind == "function")
    return "s4_dia_chi";
  throw FinMapError("unknown embedding kind '" + kind + "'");
}

inline ArrowTerm embed(const std::string& kind, const FinMap& h) {
  if (kind == "monotone") return embed_monotone(h);
  if (kind == "injection") return embed_injection(h);
  if (kind == "surjection") return embed_surjection(h);
  if (kind == "function") return embed_function(h);
  throw FinMapError("unknown embedding kind '" + kind + "'");
}

}  // namespace modalcoh
