#pragma once

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "modalcoh/chain.hpp"
#include "modalcoh/enumerate.hpp"
#include "modalcoh/interp.hpp"
#include "modalcoh/schema.hpp"
#include "modalcoh/theory.hpp"

namespace modalcoh {

// Development: a composite of factors, each one generator under functor
// applications. Identities disappear unless the term is an identity.
inline ArrowTerm develop(const ArrowTerm& t) { return chain_term(develop_chain(t)); }

// ---------------------------------------------------------------------------
// Oriented naturality. An exchange is taken when it makes the sequence of
// factor keys lexicographically smaller; for t_box this is exactly the
// (xi M^l) rule, which moves the factor with the shorter prefix first.

namespace detail {

inline auto factor_key(const Factor& f) {
  return std::tuple(f.lo(), static_cast<int>(f.kind), f.index, f.prefix);
}

}  // namespace detail

// One oriented exchange at the leftmost possible place.
inline bool nat_step(Chain& c) {
  for (std::size_t i = 0; i + 1 < c.fs.size(); ++i) {
    const Factor& a = c.fs[i];
    const Factor& b = c.fs[i + 1];
    if (!disjoint(a, b)) continue;
    auto old = std::pair(detail::factor_key(a), detail::factor_key(b));
    std::optional<std::pair<Factor, Factor>> best;
    for (auto& e : exchanges(a, b)) {
      auto k = std::pair(detail::factor_key(e.first), detail::factor_key(e.second));
      if (k < old && (!best || k < std::pair(detail::factor_key(best->first),
                                             detail::factor_key(best->second))))
        best = e;
    }
    if (best) {
      c.fs[i] = best->first;
      c.fs[i + 1] = best->second;
      return true;
    }
  }
  return false;
}

inline Chain nat_normal(Chain c) {
  while (nat_step(c)) {
  }
  return c;
}

// ---------------------------------------------------------------------------
// Dependency between the factors of a chain. Letters are tracked as strands:
// a factor depends on an earlier one if it consumes a strand the earlier one
// produced, or if it inserts a letter strictly inside the earlier one's
// output. Two adjacent factors are independent exactly when `disjoint`.

namespace detail {

using Mask = std::uint64_t;

inline std::vector<Mask> dependencies(const Chain& c) {
  const std::size_t n = c.fs.size();
  if (n > 64) throw std::length_error("chain too long for dependency masks");
  std::vector<int> strand(c.src.size(), -1);  // producer of each letter
  std::vector<Mask> dep(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const Factor& f = c.fs[j];
    const std::size_t lo = f.lo(), shi = f.src_hi();
    Mask d = 0;
    for (std::size_t p = lo; p < shi; ++p)
      if (strand[p] >= 0) d |= Mask{1} << strand[p];
    if (lo == shi && lo > 0 && lo < strand.size() && strand[lo - 1] >= 0 &&
        strand[lo - 1] == strand[lo])
      d |= Mask{1} << strand[lo];
    for (std::size_t i = 0; i < j; ++i)
      if (d >> i & 1) d |= dep[i];
    dep[j] = d;
    std::vector<int> out(f.tgt_hi() - lo, static_cast<int>(j));
    strand.erase(strand.begin() + lo, strand.begin() + shi);
    strand.insert(strand.begin() + lo, out.begin(), out.end());
  }
  return dep;  // transitive: dep[j] holds every earlier factor j waits for
}

// Reorder c so the factors `pick` (ascending indices) become adjacent, in
// their original order. Returns the chain and the window start.
inline std::optional<std::pair<Chain, std::size_t>> gather(
    const Chain& c, const std::vector<std::size_t>& pick,
    const std::vector<Mask>& dep) {
  const std::size_t first = pick.front(), last = pick.back();
  if (last - first + 1 == pick.size()) return std::pair(c, first);
  Mask in = 0;
  for (auto i : pick) in |= Mask{1} << i;
  std::vector<std::size_t> left, right;
  for (std::size_t k = first + 1; k < last; ++k) {
    if (in >> k & 1) continue;
    if (dep[k] & in) {
      // Must stay after the window; then no later pick may wait for it.
      for (auto i : pick)
        if (i > k && (dep[i] >> k & 1)) return std::nullopt;
      right.push_back(k);
    } else {
      left.push_back(k);
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < first; ++k) order.push_back(k);
  order.insert(order.end(), left.begin(), left.end());
  order.insert(order.end(), pick.begin(), pick.end());
  order.insert(order.end(), right.begin(), right.end());
  for (std::size_t k = last + 1; k < c.fs.size(); ++k) order.push_back(k);
  // Bubble sort towards `order`, exchanging only independent neighbours.
  std::vector<std::size_t> rank(c.fs.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  Chain x = c;
  std::vector<std::size_t> who(c.fs.size());
  for (std::size_t i = 0; i < who.size(); ++i) who[i] = i;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = first; i + 1 <= last; ++i) {
      if (rank[who[i]] < rank[who[i + 1]]) continue;
      if (!disjoint(x.fs[i], x.fs[i + 1])) return std::nullopt;
      auto [b2, a2] = exchange(x.fs[i], x.fs[i + 1]);
      x.fs[i] = b2;
      x.fs[i + 1] = a2;
      std::swap(who[i], who[i + 1]);
      moved = true;
    }
  }
  return std::pair(x, first + left.size());
}

}  // namespace detail

// A schema application found modulo naturality. `before` is the
// representative in which the window is contiguous.
struct Move {
  Chain before, after;
  std::string schema;
  bool forward;
  std::size_t at, len;
  Modality q, a;
};

// All single schema applications to the class of c, up to max_len factors
// in the result.
inline std::vector<Move> moves(const Theory& th, const Chain& c,
                               const std::vector<Schema>& eqs,
                               std::size_t max_len) {
  std::vector<Move> out;
  const auto dep = detail::dependencies(c);
  const std::size_t n = c.fs.size();
  std::set<std::size_t> lens;
  for (const auto& s : eqs) {
    lens.insert(s.l.fs.size());
    lens.insert(s.r.fs.size());
  }
  auto emit = [&](const Chain& rep, std::size_t k, std::size_t len,
                  const Schema& s, bool fwd) {
    const Chain& from = fwd ? s.l : s.r;
    const Chain& to = fwd ? s.r : s.l;
    if (n - len + to.fs.size() > max_len) return;
    Modality q, a;
    if (len > 0) {
      if (!detail::match_window(from, rep, k, q, a)) return;
      Chain r = detail::splice(rep, k, len, instantiate(to, q, a));
      if (!chain_in_theory(r, th)) return;
      out.push_back({rep, std::move(r), s.id, fwd, k, len, q, a});
      return;
    }
    const Modality w = detail::object_at(rep, k);
    const Modality& w0 = from.src;
    for (std::size_t p = 0; p + w0.size() <= w.size(); ++p) {
      if (w.compare(p, w0.size(), w0) != 0) continue;
      q = w.substr(0, p);
      a = w.substr(p + w0.size());
      Chain r = detail::splice(rep, k, 0, instantiate(to, q, a));
      if (!chain_in_theory(r, th)) continue;
      out.push_back({rep, std::move(r), s.id, fwd, k, 0, q, a});
    }
  };
  for (std::size_t len : lens) {
    if (len == 0) {
      for (std::size_t g = 0; g <= n; ++g)
        for (const auto& s : eqs)
          for (bool fwd : {true, false})
            if ((fwd ? s.l : s.r).fs.empty()) emit(c, g, 0, s, fwd);
      continue;
    }
    if (len > n) continue;
    std::vector<std::size_t> pick(len);
    // Enumerate increasing index tuples.
    std::vector<std::size_t> idx(len);
    for (std::size_t i = 0; i < len; ++i) idx[i] = i;
    while (true) {
      std::vector<GenKind> kinds;
      for (auto i : idx) kinds.push_back(c.fs[i].kind);
      bool any = false;
      for (const auto& s : eqs)
        for (bool fwd : {true, false}) {
          const Chain& from = fwd ? s.l : s.r;
          if (from.fs.size() != len) continue;
          bool same = true;
          for (std::size_t i = 0; i < len && same; ++i)
            same = from.fs[i].kind == kinds[i];
          any = any || same;
        }
      if (any) {
        if (auto g = detail::gather(c, idx, dep)) {
          for (const auto& s : eqs)
            for (bool fwd : {true, false})
              if ((fwd ? s.l : s.r).fs.size() == len)
                emit(g->first, g->second, len, s, fwd);
        }
      }
      // next combination
      std::size_t i = len;
      while (i > 0 && idx[i - 1] == n - len + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < len; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounded bidirectional proof search.

struct DerivationStep {
  std::string schema;  // "nat" for a block of exchanges
  std::size_t at = 0, len = 0;
  bool forward = true;
  Modality q, a;
  Chain result;
};

struct ProofResult {
  enum Kind { Proved, Unknown } kind = Unknown;
  std::vector<DerivationStep> steps;
  std::size_t nodes = 0;

  int schema_steps() const {
    int k = 0;
    for (const auto& s : steps) k += s.schema != "nat";
    return k;
  }
};

struct SearchOptions {
  int depth = 12;               // schema applications in total
  int extra_factors = 2;        // intermediate size above max(|f|, |g|)
  std::size_t node_budget = 200000;
  bool without_redundant = false;
};

inline int default_depth() {
  if (const char* e = std::getenv("MODALCOHERENCE_DEPTH")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && *end == '\0' && v >= 0 && v < 1000) return static_cast<int>(v);
  }
  return 12;
}

struct SoundnessViolation : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

struct Edge {
  Chain parent;  // canonical key of the previous node
  Move move;
};

using Visited = std::unordered_map<Chain, std::optional<Edge>, ChainHash>;

// Concrete chains from the root of one side to `key`.
inline std::vector<DerivationStep> trace(const Visited& vis, const Chain& key,
                                         const Chain& root_concrete) {
  std::vector<const Move*> ms;
  Chain cur = key;
  while (true) {
    const auto& e = vis.at(cur);
    if (!e) break;
    ms.push_back(&e->move);
    cur = e->parent;
  }
  std::vector<DerivationStep> out;
  Chain at = root_concrete;
  for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
    const Move& m = **it;
    if (!(at == m.before)) out.push_back({"nat", 0, 0, true, "", "", m.before});
    out.push_back({m.schema, m.at, m.len, m.forward, m.q, m.a, m.after});
    at = m.after;
  }
  return out;
}

}  // namespace detail

// Search for a derivation f = g from the theory's schemas and naturality.
// Every generated node is checked against the coherence image of f; a
// mismatch is a bug in a schema or clause and aborts the search.
inline ProofResult prove_equal_bounded(const Theory& th, const ArrowTerm& f,
                                       const ArrowTerm& g, SearchOptions opt = {}) {
  if (th.quotient != Quotient::None)
    throw std::invalid_argument("no proof search for quotient theory " + th.id);
  ProofResult res;
  if (!(typecheck(f, th) == typecheck(g, th))) return res;
  const Variant var = Variant::Gstd;
  const Chain cf = develop_chain(f), cg = develop_chain(g);
  const Diagram image[2] = {interp_chain(th, var, cf), interp_chain(th, var, cg)};
  const Chain kf = nat_normal(cf), kg = nat_normal(cg);
  const auto& eqs = schemas(th, {opt.without_redundant});
  if (kf == kg) {
    res.kind = ProofResult::Proved;
    if (!(cf == cg)) res.steps.push_back({"nat", 0, 0, true, "", "", cg});
    return res;
  }
  const std::size_t base = std::max(cf.fs.size(), cg.fs.size());
  for (int extra = 0; extra <= opt.extra_factors; ++extra) {
    const std::size_t cap = base + static_cast<std::size_t>(extra);
    detail::Visited vis[2];
    vis[0].emplace(kf, std::nullopt);
    vis[1].emplace(kg, std::nullopt);
    std::vector<Chain> frontier[2] = {{kf}, {kg}};
    int used[2] = {0, 0};
    bool budget_hit = false;
    while (used[0] + used[1] < opt.depth && !(frontier[0].empty() && frontier[1].empty())) {
      int side = frontier[0].empty() ? 1
                 : frontier[1].empty() ? 0
                 : (frontier[0].size() <= frontier[1].size() ? 0 : 1);
      std::vector<Chain> next;
      for (const auto& node : frontier[side]) {
        for (auto& m : moves(th, node, eqs, cap)) {
          Chain key = nat_normal(m.after);
          if (vis[side].count(key)) continue;
          if (!(interp_chain(th, var, m.after) == image[side]))
            throw SoundnessViolation("schema " + m.schema + " changed the image: " +
                                     print(chain_term(m.before)) + " => " +
                                     print(chain_term(m.after)));
          vis[side].emplace(key, detail::Edge{node, m});
          ++res.nodes;
          if (vis[1 - side].count(key)) {
            // Meet: f-side path, then the g-side path reversed.
            const detail::Visited& vf = vis[0];
            const detail::Visited& vg = vis[1];
            res.kind = ProofResult::Proved;
            res.steps = detail::trace(vf, key, cf);
            std::vector<DerivationStep> back;
            {
              std::vector<const Move*> ms;
              Chain cur = key;
              while (vg.at(cur)) {
                ms.push_back(&vg.at(cur)->move);
                cur = vg.at(cur)->parent;
              }
              Chain at = res.steps.empty() ? cf : res.steps.back().result;
              for (const Move* mp : ms) {
                if (!(at == mp->after))
                  res.steps.push_back({"nat", 0, 0, true, "", "", mp->after});
                std::size_t to_len = mp->after.fs.size() + mp->len - mp->before.fs.size();
                res.steps.push_back({mp->schema, mp->at, to_len, !mp->forward, mp->q,
                                     mp->a, mp->before});
                at = mp->before;
              }
              if (!(at == cg)) res.steps.push_back({"nat", 0, 0, true, "", "", cg});
            }
            return res;
          }
          next.push_back(std::move(key));
          if (res.nodes > opt.node_budget) {
            budget_hit = true;
            break;
          }
        }
        if (budget_hit) break;
      }
      if (budget_hit) return res;
      frontier[side] = std::move(next);
      ++used[side];
    }
  }
  return res;
}

inline nlohmann::json derivation_json(const ProofResult& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : r.steps) {
    nlohmann::json j;
    j["schema"] = s.schema;
    j["path"] = {s.at, s.at + s.len};
    j["direction"] = s.forward ? "lr" : "rl";
    j["instantiation"] = {{"Q", show(s.q)}, {"A", show(s.a)}};
    j["term"] = print(chain_term(s.result));
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace modalcoh
