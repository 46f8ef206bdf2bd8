#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modalcoh/chain.hpp"
#include "modalcoh/diagram.hpp"
#include "modalcoh/enumerate.hpp"
#include "modalcoh/interp.hpp"
#include "modalcoh/mirror.hpp"
#include "modalcoh/simplicial.hpp"
#include "modalcoh/theory.hpp"

namespace modalcoh {

struct DecideError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotRealizable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How realizability and synthesis are decided for a theory.
enum class Method {
  ThinRel,     // Rel theories without chi: peel eps/delta stages
  ChiFunction, // single-letter chi theories: bijection then monotone
  ClassShape,  // s5: class-shape peeling
  Mirror,      // fives: through s5
  Search,      // bounded witness search only
};

inline Method method_of(const Theory& th) {
  const Theory& b = base_of(th);
  if (b.target == Target::Gen) return b.id == "fives" ? Method::Mirror : Method::ClassShape;
  bool chi = std::any_of(b.gens.begin(), b.gens.end(), is_chi);
  if (!chi) return Method::ThinRel;
  if (b.alphabet.size() == 1) return Method::ChiFunction;
  return Method::Search;
}

// True when realizable/enum_hom are exact rather than bounded.
inline bool structural(const Theory& th) { return method_of(th) != Method::Search; }

namespace detail {

inline std::pair<Modality, Modality> words_of(const Diagram& d) {
  return std::visit(
      [](const auto& x) {
        if (!x.src_word || !x.tgt_word)
          throw DecideError("diagram needs source and target word labels");
        if (static_cast<int>(x.src_word->size()) != x.src ||
            static_cast<int>(x.tgt_word->size()) != x.tgt)
          throw DecideError("word labels do not match diagram sizes");
        return std::make_pair(*x.src_word, *x.tgt_word);
      },
      d);
}

// Letter at right-to-left position p of w.
inline char at(const Modality& w, int p) {
  return w[w.size() - 1 - static_cast<std::size_t>(p)];
}

inline bool matches(const Theory& th, const Chain& c, const Diagram& d) {
  if (!chain_in_theory(c, th)) return false;
  return interp_chain(base_of(th), Variant::Gstd, c) == d;
}

// Element of the peeling state: its letter and the set of partners (target
// positions for the source side, source positions for the target side).
struct Slot {
  char letter;
  std::set<int> partners;
};

inline std::vector<Slot> slots(const Modality& w, const RelDiagram& d, bool source) {
  std::vector<Slot> out;
  const int n = static_cast<int>(w.size());
  for (int k = 0; k < n; ++k) out.push_back({w[static_cast<std::size_t>(k)], {}});
  for (auto [i, j] : d.pairs) {
    int p = source ? i : j;
    out[static_cast<std::size_t>(n - 1 - p)].partners.insert(source ? j : i);
  }
  return out;
}

inline Modality word_of(const std::vector<Slot>& s) {
  Modality w;
  for (const auto& x : s) w.push_back(x.letter);
  return w;
}

// Factor at string index k of w whose generator spans `width` letters.
inline Factor factor_at(const Modality& w, std::size_t k, GenKind g, std::size_t width) {
  return {w.substr(0, k), g, w.substr(k + width)};
}

// Thin staging [eps_box, delta_dd, delta_bb, eps_dia]; within a stage the
// leftmost (largest position) candidate goes first.
inline std::optional<Chain> peel_rel(const RelDiagram& d, const Modality& a,
                                     const Modality& b) {
  using G = GenKind;
  Chain c{a, {}};
  auto src = slots(a, d, true);
  auto tgt = slots(b, d, false);

  for (std::size_t k = 0; k < src.size();) {
    if (src[k].letter == kBox && src[k].partners.empty()) {
      c.fs.push_back(factor_at(word_of(src), k, G::EpsBox, 1));
      src.erase(src.begin() + static_cast<long>(k));
      k = 0;
    } else {
      ++k;
    }
  }
  for (std::size_t k = 0; k + 1 < src.size();) {
    if (src[k].letter == kDia && src[k + 1].letter == kDia &&
        src[k].partners.size() == 1 && src[k].partners == src[k + 1].partners) {
      c.fs.push_back(factor_at(word_of(src), k, G::DeltaDD, 2));
      src.erase(src.begin() + static_cast<long>(k));
      k = 0;
    } else {
      ++k;
    }
  }
  // Target side is peeled backwards: eps_dia first, then delta_bb.
  std::vector<Factor> back;
  for (std::size_t k = 0; k < tgt.size();) {
    if (tgt[k].letter == kDia && tgt[k].partners.empty()) {
      Modality w = word_of(tgt);
      back.push_back({w.substr(0, k), G::EpsDia, w.substr(k + 1)});
      tgt.erase(tgt.begin() + static_cast<long>(k));
      k = 0;
    } else {
      ++k;
    }
  }
  for (std::size_t k = 0; k + 1 < tgt.size();) {
    if (tgt[k].letter == kBox && tgt[k + 1].letter == kBox &&
        tgt[k].partners.size() == 1 && tgt[k].partners == tgt[k + 1].partners) {
      Modality w = word_of(tgt);
      back.push_back({w.substr(0, k), G::DeltaBB, w.substr(k + 2)});
      tgt.erase(tgt.begin() + static_cast<long>(k));
      k = 0;
    } else {
      ++k;
    }
  }
  if (word_of(src) != word_of(tgt)) return std::nullopt;
  c.fs.insert(c.fs.end(), back.rbegin(), back.rend());
  return c;
}

// Single-letter chi theories. The diamond side factors the function through
// a bijection; the box side is the dual of the diamond side.
inline std::optional<Chain> peel_chi_dia(const RelDiagram& d) {
  auto h = function_of(d);
  if (!h) return std::nullopt;
  return function_chain(*h);
}

inline Chain dual_chain(const Chain& c) {
  return develop_chain(dualize(chain_term(c)));
}

// Class of every element; source i is i, target j is src + j.
inline std::vector<int> class_ids(const SplitEq& d) {
  std::vector<int> cls(static_cast<std::size_t>(d.src + d.tgt), -1);
  for (std::size_t c = 0; c < d.classes.size(); ++c)
    for (Elem e : d.classes[c])
      cls[static_cast<std::size_t>(e.target ? d.src + e.idx : e.idx)] =
          static_cast<int>(c);
  return cls;
}

// s5 thin form f2 . f1: f1 uses eps_box and delta^{dia M}, f2 uses eps_dia
// and delta^{box M}.
inline std::optional<Chain> peel_s5(const SplitEq& d, const Modality& a,
                                    const Modality& b) {
  using G = GenKind;
  const auto cls = class_ids(d);
  const std::size_t ncls = d.classes.size();
  std::vector<int> src_left(ncls, 0), tgt_left(ncls, 0);
  struct Cell {
    char letter;
    int cls;
  };
  std::vector<Cell> src, tgt;
  for (std::size_t k = 0; k < a.size(); ++k) {
    int c = cls[a.size() - 1 - k];
    src.push_back({a[k], c});
    ++src_left[static_cast<std::size_t>(c)];
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    int c = cls[a.size() + b.size() - 1 - k];
    tgt.push_back({b[k], c});
    ++tgt_left[static_cast<std::size_t>(c)];
  }
  auto word = [](const std::vector<Cell>& v) {
    Modality w;
    for (const auto& x : v) w.push_back(x.letter);
    return w;
  };

  Chain c{a, {}};
  for (std::size_t k = 0; k < src.size();) {
    const Cell x = src[k];
    const auto xc = static_cast<std::size_t>(x.cls);
    if (x.letter == kDia && k + 1 < src.size() && src[k + 1].cls == x.cls) {
      GenKind g = src[k + 1].letter == kBox ? G::DeltaDB : G::DeltaDD;
      c.fs.push_back(factor_at(word(src), k, g, 2));
    } else if (x.letter == kBox && tgt_left[xc] == 0 && src_left[xc] == 1) {
      c.fs.push_back(factor_at(word(src), k, G::EpsBox, 1));
    } else {
      ++k;
      continue;
    }
    --src_left[xc];
    src.erase(src.begin() + static_cast<long>(k));
    k = 0;
  }
  std::vector<Factor> back;
  for (std::size_t k = 0; k < tgt.size();) {
    const Cell x = tgt[k];
    const auto xc = static_cast<std::size_t>(x.cls);
    Modality w = word(tgt);
    if (x.letter == kBox && k + 1 < tgt.size() && tgt[k + 1].cls == x.cls) {
      GenKind g = tgt[k + 1].letter == kBox ? G::DeltaBB : G::DeltaBD;
      back.push_back({w.substr(0, k), g, w.substr(k + 2)});
    } else if (x.letter == kDia && src_left[xc] == 0 && tgt_left[xc] == 1) {
      back.push_back({w.substr(0, k), G::EpsDia, w.substr(k + 1)});
    } else {
      ++k;
      continue;
    }
    --tgt_left[xc];
    tgt.erase(tgt.begin() + static_cast<long>(k));
    k = 0;
  }
  if (src.size() != tgt.size()) return std::nullopt;
  for (std::size_t k = 0; k < src.size(); ++k)
    if (src[k].letter != tgt[k].letter || src[k].cls != tgt[k].cls)
      return std::nullopt;
  c.fs.insert(c.fs.end(), back.rbegin(), back.rend());
  return c;
}

inline RelDiagram dual_diagram(const RelDiagram& d) {
  RelDiagram r = converse(d);
  if (r.src_word) r.src_word = swap_ops(*r.src_word);
  if (r.tgt_word) r.tgt_word = swap_ops(*r.tgt_word);
  return r;
}

// State of the bounded search: current object and image so far.
using SearchKey = std::pair<Modality, Diagram>;

struct SearchSpace {
  std::map<SearchKey, Chain> seen;
  bool truncated = false;
};

// Breadth-first closure from `src` over single factors, deduplicated by
// image; objects longer than max_len are not entered.
inline SearchSpace explore(const Theory& th, const Modality& src, int max_gens,
                           std::size_t max_len, std::size_t max_states = 400000) {
  const Theory& base = base_of(th);
  SearchSpace sp;
  Chain start{src, {}};
  Diagram id0 = interp_chain(base, Variant::Gstd, start);
  sp.seen.emplace(SearchKey{src, id0}, start);
  std::vector<SearchKey> frontier{{src, id0}};
  for (int depth = 0; depth < max_gens && !frontier.empty(); ++depth) {
    std::vector<SearchKey> next;
    for (const auto& key : frontier) {
      const Chain here = sp.seen.at(key);
      for (auto& f : steps_from(base, key.first)) {
        Modality w = f.tgt();
        if (w.size() > max_len) continue;
        Diagram img = compose(factor_diagram(base, Variant::Gstd, f), key.second);
        SearchKey nk{w, std::move(img)};
        if (sp.seen.count(nk)) continue;
        if (sp.seen.size() >= max_states) {
          sp.truncated = true;
          return sp;
        }
        Chain c = here;
        c.fs.push_back(f);
        sp.seen.emplace(nk, std::move(c));
        next.push_back(std::move(nk));
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty()) sp.truncated = true;
  return sp;
}

inline int default_budget(const Modality& a, const Modality& b) {
  const int l = static_cast<int>(std::max(a.size(), b.size()));
  return static_cast<int>(a.size() + b.size()) + l * (l - 1) / 2 + 2;
}

inline std::optional<Chain> search_chain(const Theory& th, const Diagram& d,
                                         const Modality& a, const Modality& b,
                                         int budget = 0) {
  if (budget <= 0) budget = default_budget(a, b);
  auto sp = explore(th, a, budget, std::max(a.size(), b.size()) + 1);
  Diagram key = d;
  set_labels(key, a, b);
  auto it = sp.seen.find({b, key});
  if (it == sp.seen.end()) return std::nullopt;
  return it->second;
}

inline std::optional<Chain> synthesize_chain(const Theory& th, const Diagram& d) {
  auto [a, b] = words_of(d);
  const Theory& base = base_of(th);
  if (!base.legal_word(a) || !base.legal_word(b))
    throw DecideError("word labels use operators outside " + th.id);
  if ((base.target == Target::Rel) != std::holds_alternative<RelDiagram>(d))
    throw DecideError("diagram kind does not match the target of " + th.id);
  std::optional<Chain> c;
  switch (method_of(base)) {
    case Method::ThinRel:
      c = peel_rel(std::get<RelDiagram>(d), a, b);
      break;
    case Method::ChiFunction: {
      const auto& r = std::get<RelDiagram>(d);
      if (base.alphabet == "d") {
        c = peel_chi_dia(r);
      } else if (auto dc = peel_chi_dia(dual_diagram(r))) {
        c = dual_chain(*dc);
      }
      break;
    }
    case Method::ClassShape:
      c = peel_s5(std::get<SplitEq>(d), a, b);
      break;
    case Method::Mirror: {
      Diagram m = mirror(d);
      auto [ma, mb] = words_of(m);
      auto sc = peel_s5(std::get<SplitEq>(m), ma, mb);
      if (sc) c = develop_chain(mirror_term(chain_term(*sc), "s5"));
      break;
    }
    case Method::Search:
      c = search_chain(base, d, a, b);
      break;
  }
  if (!c || !matches(base, *c, d)) return std::nullopt;
  return c;
}

}  // namespace detail

// Whether some arrow of the theory has image d under Gstd. Exact for
// structural theories; for the others a bounded witness search.
inline bool realizable(const Theory& th, const Diagram& d) {
  return detail::synthesize_chain(th, d).has_value();
}

// Term in the theory's staged normal form whose Gstd image is d.
inline ArrowTerm synthesize(const Theory& th, const Diagram& d) {
  auto c = detail::synthesize_chain(th, d);
  if (!c) throw NotRealizable("diagram not realizable in " + th.id);
  return chain_term(*c);
}

struct HomQuery {
  std::string theory;
  Modality src, tgt;
  // Maximal generator count for the bounded search; 0 uses the exact
  // enumeration when the theory has one.
  int witness_budget = 0;
};

struct HomEntry {
  Diagram diagram;
  std::optional<ArrowTerm> witness;
};

struct HomResult {
  std::vector<HomEntry> entries;
  // False when the set came from a bounded search and may be incomplete.
  bool exact = true;
};

namespace detail {

// Rel candidates: every source diamond and every target box has exactly one
// partner of its own letter.
inline std::vector<RelDiagram> rel_candidates(const Modality& a, const Modality& b) {
  const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  std::vector<std::vector<std::pair<int, int>>> choices;
  for (int i = 0; i < m; ++i)
    if (at(a, i) == kDia) {
      std::vector<std::pair<int, int>> opt;
      for (int j = 0; j < n; ++j)
        if (at(b, j) == kDia) opt.push_back({i, j});
      choices.push_back(std::move(opt));
    }
  for (int j = 0; j < n; ++j)
    if (at(b, j) == kBox) {
      std::vector<std::pair<int, int>> opt;
      for (int i = 0; i < m; ++i)
        if (at(a, i) == kBox) opt.push_back({i, j});
      choices.push_back(std::move(opt));
    }
  std::vector<RelDiagram> out;
  RelDiagram cur{m, n, {}, a, b};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == choices.size()) {
      out.push_back(cur);
      return;
    }
    for (auto pr : choices[k]) {
      cur.pairs.insert(pr);
      self(self, k + 1);
      cur.pairs.erase(pr);
    }
  };
  rec(rec, 0);
  return out;
}

// Set partitions of the m + n elements with exactly `blocks` classes.
inline std::vector<SplitEq> gen_candidates(const Modality& a, const Modality& b) {
  const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  int blocks = 0;
  for (int i = 0; i < m; ++i) blocks += at(a, i) == kBox;
  for (int j = 0; j < n; ++j) blocks += at(b, j) == kDia;
  const int total = m + n;
  std::vector<SplitEq> out;
  std::vector<int> rgs(static_cast<std::size_t>(total), 0);
  auto emit = [&]() {
    std::vector<std::vector<Elem>> cls(static_cast<std::size_t>(blocks));
    for (int e = 0; e < total; ++e)
      cls[static_cast<std::size_t>(rgs[static_cast<std::size_t>(e)])].push_back(
          e < m ? S(e) : T(e - m));
    SplitEq d{m, n, std::move(cls), a, b};
    canonicalize(d);
    if (is_noncrossing(d)) out.push_back(std::move(d));
  };
  auto rec = [&](auto&& self, int e, int used) -> void {
    if (total - e < blocks - used) return;
    if (e == total) {
      if (used == blocks) emit();
      return;
    }
    for (int c = 0; c <= used && c < blocks; ++c) {
      rgs[static_cast<std::size_t>(e)] = c;
      self(self, e + 1, std::max(used, c + 1));
    }
  };
  if (total == 0) {
    if (blocks == 0) out.push_back({0, 0, {}, a, b});
    return out;
  }
  rec(rec, 0, 0);
  return out;
}

inline constexpr int kMaxGenCandidates = 12;

}  // namespace detail

// Hom-set images. Exact for structural theories (coherence makes the image
// set the hom-set); otherwise the images found by bounded search.
inline HomResult enum_hom(const HomQuery& q) {
  const Theory& th = theory(q.theory);
  const Theory& base = base_of(th);
  detail::check_word(base, q.src);
  detail::check_word(base, q.tgt);
  HomResult r;
  const bool gen = base.target == Target::Gen;
  const bool exact_ok =
      q.witness_budget <= 0 && structural(base) &&
      (!gen || static_cast<int>(q.src.size() + q.tgt.size()) <= detail::kMaxGenCandidates);
  if (exact_ok) {
    std::vector<Diagram> cands;
    if (gen)
      for (auto& d : detail::gen_candidates(q.src, q.tgt)) cands.push_back(std::move(d));
    else
      for (auto& d : detail::rel_candidates(q.src, q.tgt)) cands.push_back(std::move(d));
    for (auto& d : cands)
      if (auto c = detail::synthesize_chain(base, d))
        r.entries.push_back({std::move(d), chain_term(*c)});
  } else {
    int budget = q.witness_budget > 0 ? q.witness_budget
                                      : detail::default_budget(q.src, q.tgt);
    auto sp = detail::explore(base, q.src, budget,
                              std::max(q.src.size(), q.tgt.size()) + 1);
    for (auto& [key, c] : sp.seen)
      if (key.first == q.tgt) {
        Diagram d = key.second;
        detail::set_labels(d, q.src, q.tgt);
        r.entries.push_back({std::move(d), chain_term(c)});
      }
    r.exact = false;
  }
  std::sort(r.entries.begin(), r.entries.end(),
            [](const HomEntry& x, const HomEntry& y) { return x.diagram < y.diagram; });
  // A preorder keeps at most one arrow; the sharp quotient identifies images
  // with equal G#.
  if (th.quotient == Quotient::Triv && r.entries.size() > 1) r.entries.resize(1);
  if (th.quotient == Quotient::Sharp) {
    std::vector<HomEntry> out;
    std::set<RelDiagram> seen;
    for (auto& e : r.entries) {
      RelDiagram s = interp_sharp(th, *e.witness);
      if (seen.insert(s).second) out.push_back({s, e.witness});
    }
    std::sort(out.begin(), out.end(),
              [](const HomEntry& x, const HomEntry& y) { return x.diagram < y.diagram; });
    r.entries = std::move(out);
  }
  return r;
}

}  // namespace modalcoh
