#pragma once

#include <functional>
#include <string>
#include <vector>

#include "modalcoh/term.hpp"

namespace modalcoh {

// One factor of a developed term: wrap(prefix, kind{index}).
struct Factor {
  Modality prefix;
  GenKind kind;
  Modality index;

  Modality src() const { return prefix + std::string(info(kind).src) + index; }
  Modality tgt() const { return prefix + std::string(info(kind).tgt) + index; }
  // Letters [lo, hi) counted from the left that the generator touches,
  // before (src) and after (tgt) application.
  std::size_t lo() const { return prefix.size(); }
  std::size_t src_hi() const { return prefix.size() + info(kind).src.size(); }
  std::size_t tgt_hi() const { return prefix.size() + info(kind).tgt.size(); }

  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor& a, const Factor& b) {
    if (auto c = a.prefix <=> b.prefix; c != 0) return c;
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0)
      return c;
    return a.index <=> b.index;
  }
};

// Developed term: factors in application order (fs[0] is applied first).
struct Chain {
  Modality src;
  std::vector<Factor> fs;

  Modality tgt() const { return fs.empty() ? src : fs.back().tgt(); }
  int size() const { return static_cast<int>(fs.size()); }

  friend bool operator==(const Chain&, const Chain&) = default;
  friend auto operator<=>(const Chain&, const Chain&) = default;
};

inline Chain develop_chain(const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return {t.mod(), {}};
    case ArrowTerm::Tag::Gen:
      return {gen_type(t.kind(), t.mod()).src, {{"", t.kind(), t.mod()}}};
    case ArrowTerm::Tag::App: {
      Chain c = develop_chain(t.body());
      c.src.insert(c.src.begin(), t.op());
      for (auto& f : c.fs) f.prefix.insert(f.prefix.begin(), t.op());
      return c;
    }
    case ArrowTerm::Tag::Comp: {
      Chain f = develop_chain(t.inner());
      Chain g = develop_chain(t.outer());
      if (f.tgt() != g.src)
        throw TypeError("composition mismatch: inner target " + show(f.tgt()) +
                        ", outer source " + show(g.src));
      f.fs.insert(f.fs.end(), g.fs.begin(), g.fs.end());
      return f;
    }
  }
  return {};
}

inline ArrowTerm factor_term(const Factor& f) {
  return wrap(f.prefix, ArrowTerm::gen(f.kind, f.index));
}

inline ArrowTerm chain_term(const Chain& c) {
  if (c.fs.empty()) return ArrowTerm::id(c.src);
  std::vector<ArrowTerm> ts;
  for (auto it = c.fs.rbegin(); it != c.fs.rend(); ++it)
    ts.push_back(factor_term(*it));
  return compose_all(ts.begin(), ts.end());
}

inline bool well_typed(const Chain& c) {
  Modality cur = c.src;
  for (const auto& f : c.fs) {
    if (f.src() != cur) return false;
    cur = f.tgt();
  }
  return true;
}

// Second factor b follows a; true if they touch disjoint letters, so that
// they may be exchanged by naturality.
inline bool disjoint(const Factor& a, const Factor& b) {
  return b.lo() >= a.tgt_hi() || a.lo() >= b.src_hi();
}

// Exchange adjacent disjoint factors a (first) and b (second). Returns the
// pair in new application order.
inline std::pair<Factor, Factor> exchange(const Factor& a, const Factor& b) {
  if (b.lo() >= a.tgt_hi()) {
    // b acts inside a's index.
    std::size_t cut = a.tgt_hi();
    Factor b2{a.prefix + std::string(info(a.kind).src) + b.prefix.substr(cut),
              b.kind, b.index};
    Factor a2{a.prefix, a.kind, b2.tgt().substr(a.src_hi())};
    return {b2, a2};
  }
  // a acts inside b's index.
  std::size_t cut = b.src_hi();
  Factor b2{b.prefix, b.kind, a.src().substr(cut)};
  Factor a2{b.prefix + std::string(info(b.kind).tgt) + a.prefix.substr(cut),
            a.kind, a.index};
  return {b2, a2};
}

// All exchanges of adjacent disjoint factors. Two results only when an
// eps_box is followed by an eps_dia at the same gap: the new letter can go
// on either side of the erased one.
inline std::vector<std::pair<Factor, Factor>> exchanges(const Factor& a,
                                                        const Factor& b) {
  std::vector<std::pair<Factor, Factor>> out;
  if (b.lo() >= a.tgt_hi()) out.push_back(exchange(a, b));
  if (a.lo() >= b.src_hi()) {
    std::size_t cut = b.src_hi();
    Factor b2{b.prefix, b.kind, a.src().substr(cut)};
    Factor a2{b.prefix + std::string(info(b.kind).tgt) + a.prefix.substr(cut),
              a.kind, a.index};
    if (out.empty() || !(out[0].first == b2 && out[0].second == a2))
      out.push_back({b2, a2});
  }
  return out;
}

struct ChainHash {
  std::size_t operator()(const Chain& c) const {
    std::size_t h = std::hash<std::string>{}(c.src);
    for (const auto& f : c.fs) {
      h = h * 1000003u ^ std::hash<std::string>{}(f.prefix);
      h = h * 1000003u ^ static_cast<std::size_t>(f.kind);
      h = h * 1000003u ^ std::hash<std::string>{}(f.index);
    }
    return h;
  }
};

}  // namespace modalcoh
