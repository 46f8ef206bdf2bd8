#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "modalcoh/modality.hpp"

namespace modalcoh {

struct RelDiagram {
  int src = 0, tgt = 0;
  std::set<std::pair<int, int>> pairs;
  std::optional<Modality> src_word, tgt_word;

  // Labels are not part of identity.
  friend bool operator==(const RelDiagram& a, const RelDiagram& b) {
    return a.src == b.src && a.tgt == b.tgt && a.pairs == b.pairs;
  }
  friend bool operator<(const RelDiagram& a, const RelDiagram& b) {
    return std::tie(a.src, a.tgt, a.pairs) < std::tie(b.src, b.tgt, b.pairs);
  }
};

// Element of a split equivalence: source i or target j.
struct Elem {
  bool target;
  int idx;
  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

inline Elem S(int i) { return {false, i}; }
inline Elem T(int j) { return {true, j}; }

struct SplitEq {
  int src = 0, tgt = 0;
  // Canonical: each class sorted, classes sorted by least element.
  std::vector<std::vector<Elem>> classes;
  std::optional<Modality> src_word, tgt_word;

  friend bool operator==(const SplitEq& a, const SplitEq& b) {
    return a.src == b.src && a.tgt == b.tgt && a.classes == b.classes;
  }
  friend bool operator<(const SplitEq& a, const SplitEq& b) {
    return std::tie(a.src, a.tgt, a.classes) <
           std::tie(b.src, b.tgt, b.classes);
  }
};

using Diagram = std::variant<RelDiagram, SplitEq>;

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void canonicalize(SplitEq& d) {
  for (auto& c : d.classes) std::sort(c.begin(), c.end());
  d.classes.erase(std::remove_if(d.classes.begin(), d.classes.end(),
                                 [](const auto& c) { return c.empty(); }),
                  d.classes.end());
  std::sort(d.classes.begin(), d.classes.end());
}

// Build from classes, checking that they partition src ⊎ tgt.
inline SplitEq make_spliteq(int src, int tgt,
                            std::vector<std::vector<Elem>> classes) {
  SplitEq d{src, tgt, std::move(classes), std::nullopt, std::nullopt};
  std::vector<int> seen(src + tgt, 0);
  for (const auto& c : d.classes)
    for (const auto& e : c) {
      int lim = e.target ? tgt : src;
      if (e.idx < 0 || e.idx >= lim) throw DiagramError("element out of range");
      if (seen[(e.target ? src : 0) + e.idx]++)
        throw DiagramError("element in two classes");
    }
  for (int s : seen)
    if (!s) throw DiagramError("classes do not cover all elements");
  canonicalize(d);
  return d;
}

inline RelDiagram rel_identity(int n) {
  RelDiagram d{n, n, {}, std::nullopt, std::nullopt};
  for (int i = 0; i < n; ++i) d.pairs.insert({i, i});
  return d;
}

inline SplitEq spliteq_identity(int n) {
  SplitEq d{n, n, {}, std::nullopt, std::nullopt};
  for (int i = 0; i < n; ++i) d.classes.push_back({S(i), T(i)});
  canonicalize(d);
  return d;
}

inline RelDiagram rel_compose(const RelDiagram& g, const RelDiagram& f) {
  if (f.tgt != g.src) throw DiagramError("rel_compose: length mismatch");
  RelDiagram r{f.src, g.tgt, {}, f.src_word, g.tgt_word};
  for (auto [i, j] : f.pairs)
    for (auto it = g.pairs.lower_bound({j, -1});
         it != g.pairs.end() && it->first == j; ++it)
      r.pairs.insert({i, it->second});
  return r;
}

namespace detail {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace detail

// g after f: transitive closure of the union, middle elements deleted.
inline SplitEq spliteq_compose(const SplitEq& g, const SplitEq& f) {
  if (f.tgt != g.src) throw DiagramError("spliteq_compose: length mismatch");
  const int n = f.src, mid = f.tgt, k = g.tgt;
  // Layout: [0,n) sources of f, [n,n+mid) middle, [n+mid, n+mid+k) targets.
  detail::UnionFind uf(n + mid + k);
  auto code_f = [&](Elem e) { return e.target ? n + e.idx : e.idx; };
  auto code_g = [&](Elem e) { return e.target ? n + mid + e.idx : n + e.idx; };
  for (const auto& c : f.classes)
    for (std::size_t i = 1; i < c.size(); ++i)
      uf.unite(code_f(c[0]), code_f(c[i]));
  for (const auto& c : g.classes)
    for (std::size_t i = 1; i < c.size(); ++i)
      uf.unite(code_g(c[0]), code_g(c[i]));
  std::vector<std::vector<Elem>> byroot(n + mid + k);
  for (int i = 0; i < n; ++i) byroot[uf.find(i)].push_back(S(i));
  for (int j = 0; j < k; ++j) byroot[uf.find(n + mid + j)].push_back(T(j));
  SplitEq r{n, k, {}, f.src_word, g.tgt_word};
  for (auto& c : byroot)
    if (!c.empty()) r.classes.push_back(std::move(c));
  canonicalize(r);
  return r;
}

inline Diagram compose(const Diagram& g, const Diagram& f) {
  if (g.index() != f.index()) throw DiagramError("mixed carriers");
  if (auto* gr = std::get_if<RelDiagram>(&g))
    return rel_compose(*gr, std::get<RelDiagram>(f));
  return spliteq_compose(std::get<SplitEq>(g), std::get<SplitEq>(f));
}

inline RelDiagram converse(const RelDiagram& d) {
  RelDiagram r{d.tgt, d.src, {}, d.tgt_word, d.src_word};
  for (auto [i, j] : d.pairs) r.pairs.insert({j, i});
  return r;
}

inline SplitEq converse(const SplitEq& d) {
  SplitEq r{d.tgt, d.src, d.classes, d.tgt_word, d.src_word};
  for (auto& c : r.classes)
    for (auto& e : c) e.target = !e.target;
  canonicalize(r);
  return r;
}

inline Diagram converse(const Diagram& d) {
  return std::visit([](const auto& x) -> Diagram { return converse(x); }, d);
}

inline std::optional<Modality> rev_label(const std::optional<Modality>& w) {
  if (!w) return w;
  return reversed(*w);
}

inline RelDiagram mirror(const RelDiagram& d) {
  RelDiagram r{d.src, d.tgt, {}, rev_label(d.src_word), rev_label(d.tgt_word)};
  for (auto [i, j] : d.pairs) r.pairs.insert({d.src - 1 - i, d.tgt - 1 - j});
  return r;
}

inline SplitEq mirror(const SplitEq& d) {
  SplitEq r{d.src, d.tgt, d.classes, rev_label(d.src_word),
            rev_label(d.tgt_word)};
  for (auto& c : r.classes)
    for (auto& e : c) e.idx = (e.target ? d.tgt : d.src) - 1 - e.idx;
  canonicalize(r);
  return r;
}

inline Diagram mirror(const Diagram& d) {
  return std::visit([](const auto& x) -> Diagram { return mirror(x); }, d);
}

// Boundary walk: sources left to right (descending index), then targets
// right to left (ascending index).
inline bool is_noncrossing(const SplitEq& d) {
  const int total = d.src + d.tgt;
  std::vector<int> lab(total, -1);
  auto pos = [&](Elem e) {
    return e.target ? d.src + e.idx : d.src - 1 - e.idx;
  };
  for (std::size_t c = 0; c < d.classes.size(); ++c)
    for (const auto& e : d.classes[c]) lab[pos(e)] = static_cast<int>(c);
  for (std::size_t x = 0; x < d.classes.size(); ++x) {
    // Gap number of each position relative to class x; gaps 0 and |x| wrap.
    std::vector<int> gap(total);
    int seen = 0;
    for (int p = 0; p < total; ++p) {
      if (lab[p] == static_cast<int>(x)) ++seen;
      gap[p] = seen;
    }
    const int sz = static_cast<int>(d.classes[x].size());
    for (std::size_t y = 0; y < d.classes.size(); ++y) {
      if (y == x) continue;
      int g0 = -1;
      for (const auto& e : d.classes[y]) {
        int g = gap[pos(e)] % sz;
        if (g0 < 0) g0 = g;
        else if (g != g0) return false;
      }
    }
  }
  return true;
}

namespace detail {

inline std::string label_row(const std::optional<Modality>& w, int n,
                             int width) {
  std::string row(static_cast<std::size_t>(width - n) * 3, ' ');
  for (int i = n - 1; i >= 0; --i) {
    char c = w ? letter_at(*w, i) : 'o';
    row += ' ';
    row += c;
    row += ' ';
  }
  return row;
}

inline std::string index_row(int n, int width) {
  std::string row(static_cast<std::size_t>(width - n) * 3, ' ');
  for (int i = n - 1; i >= 0; --i) {
    std::string s = std::to_string(i);
    while (s.size() < 2) s = " " + s;
    row += s + ' ';
  }
  return row;
}

inline std::string rtrim(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace detail

// Columns are right-aligned so that position 0 of source and target share a
// column. Rel: '|' joins (i,i); other pairs are listed. Gen: every node gets
// its class tag; '-' between adjacent same-class nodes marks a cup or cap.
inline std::string render_ascii(const RelDiagram& d) {
  const int w = std::max(d.src, d.tgt);
  std::ostringstream os;
  os << detail::rtrim(detail::label_row(d.src_word, d.src, w)) << '\n';
  os << detail::rtrim(detail::index_row(d.src, w)) << '\n';
  std::string bars(static_cast<std::size_t>(w) * 3, ' ');
  std::vector<std::pair<int, int>> other;
  for (auto [i, j] : d.pairs) {
    if (i == j) bars[static_cast<std::size_t>(w - 1 - i) * 3 + 1] = '|';
    else other.push_back({i, j});
  }
  os << detail::rtrim(bars) << '\n';
  os << detail::rtrim(detail::index_row(d.tgt, w)) << '\n';
  os << detail::rtrim(detail::label_row(d.tgt_word, d.tgt, w)) << '\n';
  if (!other.empty()) {
    os << "links:";
    for (auto [i, j] : other) os << " " << i << "-" << j;
    os << '\n';
  }
  return os.str();
}

inline std::string render_ascii(const SplitEq& d) {
  const int w = std::max(d.src, d.tgt);
  std::vector<char> stag(d.src), ttag(d.tgt);
  for (std::size_t c = 0; c < d.classes.size(); ++c) {
    char tag = c < 26 ? static_cast<char>('A' + c) : '*';
    for (const auto& e : d.classes[c]) (e.target ? ttag : stag)[e.idx] = tag;
  }
  auto tag_row = [&](const std::vector<char>& tags, int n) {
    std::string row(static_cast<std::size_t>(w - n) * 3, ' ');
    for (int i = n - 1; i >= 0; --i) {
      row += ' ';
      row += tags[i];
      row += (i > 0 && tags[i] == tags[i - 1]) ? '-' : ' ';
    }
    return row;
  };
  std::string bars(static_cast<std::size_t>(w) * 3, ' ');
  for (int i = 0; i < std::min(d.src, d.tgt); ++i)
    if (stag[i] == ttag[i]) bars[static_cast<std::size_t>(w - 1 - i) * 3 + 1] = '|';
  std::ostringstream os;
  os << detail::rtrim(detail::label_row(d.src_word, d.src, w)) << '\n';
  os << detail::rtrim(detail::index_row(d.src, w)) << '\n';
  os << detail::rtrim(tag_row(stag, d.src)) << '\n';
  os << detail::rtrim(bars) << '\n';
  os << detail::rtrim(tag_row(ttag, d.tgt)) << '\n';
  os << detail::rtrim(detail::index_row(d.tgt, w)) << '\n';
  os << detail::rtrim(detail::label_row(d.tgt_word, d.tgt, w)) << '\n';
  return os.str();
}

inline std::string render_ascii(const Diagram& d) {
  return std::visit([](const auto& x) { return render_ascii(x); }, d);
}

inline nlohmann::json to_json_value(const Diagram& d) {
  nlohmann::json j;
  std::visit(
      [&](const auto& x) {
        j["src"] = x.src;
        j["tgt"] = x.tgt;
        if (x.src_word) j["src_word"] = show(*x.src_word);
        if (x.tgt_word) j["tgt_word"] = show(*x.tgt_word);
      },
      d);
  if (auto* r = std::get_if<RelDiagram>(&d)) {
    j["kind"] = "rel";
    j["pairs"] = nlohmann::json::array();
    for (auto [a, b] : r->pairs) j["pairs"].push_back({a, b});
  } else {
    const auto& s = std::get<SplitEq>(d);
    j["kind"] = "spliteq";
    j["classes"] = nlohmann::json::array();
    for (const auto& c : s.classes) {
      auto jc = nlohmann::json::array();
      for (const auto& e : c) jc.push_back({e.target ? "t" : "s", e.idx});
      j["classes"].push_back(jc);
    }
  }
  return j;
}

inline std::string to_json(const Diagram& d) { return to_json_value(d).dump(); }

inline Diagram from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    int src = j.at("src").get<int>();
    int tgt = j.at("tgt").get<int>();
    std::optional<Modality> sw, tw;
    if (j.contains("src_word")) sw = read_modality(j["src_word"].get<std::string>());
    if (j.contains("tgt_word")) tw = read_modality(j["tgt_word"].get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rel") {
      RelDiagram r{src, tgt, {}, sw, tw};
      for (const auto& p : j.at("pairs")) {
        int a = p.at(0).get<int>(), b = p.at(1).get<int>();
        if (a < 0 || a >= src || b < 0 || b >= tgt)
          throw DiagramError("pair out of range");
        r.pairs.insert({a, b});
      }
      return r;
    }
    if (kind == "spliteq") {
      std::vector<std::vector<Elem>> cls;
      for (const auto& c : j.at("classes")) {
        std::vector<Elem> v;
        for (const auto& e : c) {
          std::string side = e.at(0).get<std::string>();
          if (side != "s" && side != "t") throw DiagramError("bad element tag");
          v.push_back({side == "t", e.at(1).get<int>()});
        }
        cls.push_back(std::move(v));
      }
      SplitEq s = make_spliteq(src, tgt, std::move(cls));
      s.src_word = sw;
      s.tgt_word = tw;
      return s;
    }
    throw DiagramError("unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DiagramError(std::string("malformed diagram JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DiagramError(std::string("malformed diagram JSON: ") + e.what());
  }
}

inline bool same_labels(const Diagram& a, const Diagram& b) {
  return std::visit(
      [&](const auto& x) {
        return std::visit(
            [&](const auto& y) {
              return x.src_word == y.src_word && x.tgt_word == y.tgt_word;
            },
            b);
      },
      a);
}

}  // namespace modalcoh
