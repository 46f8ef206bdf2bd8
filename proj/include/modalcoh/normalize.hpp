#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalcoh/decide.hpp"
#include "modalcoh/enumerate.hpp"
#include "modalcoh/rewrite.hpp"

namespace modalcoh {

struct NormalizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Theories normalized by oriented naturality alone (t_box, s_plus): the
// only generator is eps_box, and nat_normal is the (xi M^l) normal form.
// Under the same key order t_dia is not confluent, so it goes through
// synthesis instead.
inline bool oriented_only(const Theory& th) {
  const Theory& b = base_of(th);
  return b.gens == std::vector<GenKind>{GenKind::EpsBox};
}

inline bool has_normal_form(const Theory& th) {
  return th.quotient == Quotient::None && th.id != "k";
}

// Staged normal form. Oriented rewriting for the t_box family, synthesis
// from the image elsewhere; theories without an exact synthesis get the
// first witness of the bounded search.
inline ArrowTerm normalize(const Theory& th, const ArrowTerm& t) {
  if (!has_normal_form(th))
    throw NormalizeError("no normal form declared for " + th.id);
  typecheck(t, th);
  if (oriented_only(th)) return chain_term(nat_normal(develop_chain(t)));
  return synthesize(th, interp(th, Variant::Gstd, t));
}

// All chains one oriented exchange away.
inline std::vector<Chain> nat_successors(const Chain& c) {
  std::vector<Chain> out;
  for (std::size_t i = 0; i + 1 < c.fs.size(); ++i) {
    const Factor& a = c.fs[i];
    const Factor& b = c.fs[i + 1];
    if (!disjoint(a, b)) continue;
    auto old = std::pair(detail::factor_key(a), detail::factor_key(b));
    for (auto& e : exchanges(a, b)) {
      if (std::pair(detail::factor_key(e.first), detail::factor_key(e.second)) >= old)
        continue;
      Chain n = c;
      n.fs[i] = e.first;
      n.fs[i + 1] = e.second;
      out.push_back(std::move(n));
    }
  }
  return out;
}

struct ConfluenceReport {
  std::string theory;
  int size_bound = 0;
  long terms = 0;
  long normal_forms = 0;
  // Terms with more than one irreducible descendant.
  std::vector<std::pair<Chain, std::vector<Chain>>> divergent;
  bool ok() const { return divergent.empty(); }
};

// Irreducible descendants of c under every rewrite order.
inline std::set<Chain> irreducible_descendants(const Chain& c) {
  std::set<Chain> seen{c}, out;
  std::vector<Chain> todo{c};
  while (!todo.empty()) {
    Chain x = std::move(todo.back());
    todo.pop_back();
    auto next = nat_successors(x);
    if (next.empty()) out.insert(x);
    for (auto& n : next)
      if (seen.insert(n).second) todo.push_back(std::move(n));
  }
  return out;
}

// Every developed term with at most size_bound generators, over sources of
// length <= size_bound + 1, has exactly one normal form.
inline ConfluenceReport confluence_check(const Theory& th, int size_bound) {
  if (!oriented_only(th))
    throw NormalizeError("no oriented rule set for " + th.id);
  ConfluenceReport r{th.id, size_bound, 0, 0, {}};
  std::set<Chain> nfs;
  for (const auto& src : words_upto(th.alphabet, static_cast<std::size_t>(size_bound) + 1)) {
    for (const auto& c : enumerate_chains(th, src, size_bound)) {
      ++r.terms;
      auto ds = irreducible_descendants(c);
      nfs.insert(ds.begin(), ds.end());
      if (ds.size() != 1) r.divergent.push_back({c, {ds.begin(), ds.end()}});
    }
  }
  r.normal_forms = static_cast<long>(nfs.size());
  return r;
}

}  // namespace modalcoh
