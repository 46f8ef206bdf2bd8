#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalcoh/chain.hpp"
#include "modalcoh/enumerate.hpp"
#include "modalcoh/interp.hpp"
#include "modalcoh/mirror.hpp"
#include "modalcoh/theory.hpp"

namespace modalcoh {

// An equation written at A = e with no outer context. Instances whisker
// both sides with a prefix Q and append a tail A to every index.
struct Schema {
  std::string id;
  ArrowTerm lhs, rhs;
  Chain l, r;
};

struct SchemaOptions {
  // Drop the associativity laws that the s5 axioms already derive.
  bool without_redundant = false;
};

namespace detail {

inline Schema make_schema(std::string id, const ArrowTerm& lhs,
                          const ArrowTerm& rhs) {
  Type tl = infer(lhs), tr = infer(rhs);
  if (!(tl == tr))
    throw std::logic_error("schema " + id + " has sides of different type");
  return {std::move(id), lhs, rhs, develop_chain(lhs), develop_chain(rhs)};
}

inline Schema eq(std::string id, std::string_view lhs, std::string_view rhs) {
  return make_schema(std::move(id), parse_term(lhs), parse_term(rhs));
}

inline Schema dual_schema(const Schema& s) {
  return make_schema("op:" + s.id, dualize(s.lhs), dualize(s.rhs));
}

inline Schema mirror_schema(const Schema& s) {
  return make_schema("mirror:" + s.id, mirror_rec(s.lhs), mirror_rec(s.rhs));
}

using List = std::vector<Schema>;

inline void append(List& a, const List& b) { a.insert(a.end(), b.begin(), b.end()); }

inline List k4_box_eqs() {
  return {eq("assoc_bb", "box(delta_bb{e}) . delta_bb{e}", "delta_bb{b} . delta_bb{e}")};
}

inline List k4_dia_eqs() {
  return {eq("assoc_dd", "delta_dd{e} . dia(delta_dd{e})", "delta_dd{e} . delta_dd{d}")};
}

inline List s4_box_eqs() {
  List l = k4_box_eqs();
  l.push_back(eq("beta_bb", "eps_box{b} . delta_bb{e}", "id{b}"));
  l.push_back(eq("eta_bb", "box(eps_box{e}) . delta_bb{e}", "id{b}"));
  return l;
}

inline List s4_dia_eqs() {
  List l = k4_dia_eqs();
  l.push_back(eq("beta_dd", "delta_dd{e} . eps_dia{d}", "id{d}"));
  l.push_back(eq("eta_dd", "delta_dd{e} . dia(eps_dia{e})", "id{d}"));
  return l;
}

inline List s4_boxdia_eqs() {
  List l = s4_box_eqs();
  append(l, s4_dia_eqs());
  return l;
}

inline Schema chichi() { return eq("chichi", "chi_bb{e} . chi_bb{e}", "id{bb}"); }

inline Schema braid() {
  return eq("braid", "chi_bb{b} . box(chi_bb{e}) . chi_bb{b}",
            "box(chi_bb{e}) . chi_bb{b} . box(chi_bb{e})");
}

inline Schema eps_chi() { return eq("eps_chi", "eps_box{b} . chi_bb{e}", "box(eps_box{e})"); }

inline Schema delta_chi() {
  return eq("delta_chi", "delta_bb{b} . chi_bb{e}",
            "box(chi_bb{e}) . chi_bb{b} . box(delta_bb{e})");
}

inline Schema chi_delta() { return eq("chi_delta", "chi_bb{e} . delta_bb{e}", "delta_bb{e}"); }

inline List box_chi_eqs() { return {chichi(), braid(), eps_chi(), delta_chi(), chi_delta()}; }

inline List duals(const List& l) {
  List out;
  for (const auto& s : l) out.push_back(dual_schema(s));
  return out;
}

inline List s42_extra() {
  return {
      eq("eps_chi_db", "eps_box{d} . chi_db{e}", "dia(eps_box{e})"),
      eq("chi_eps_db", "chi_db{e} . eps_dia{b}", "box(eps_dia{e})"),
      eq("delta_chi_db", "delta_bb{d} . chi_db{e}",
         "box(chi_db{e}) . chi_db{b} . dia(delta_bb{e})"),
      eq("chi_delta_db", "chi_db{e} . delta_dd{b}",
         "box(delta_dd{e}) . chi_db{d} . dia(chi_db{e})"),
  };
}

// The same laws read with chi_bd as the formal inverse of chi_db.
inline List s41_extra() {
  return {
      eq("eps_chi_bd", "eps_box{d}", "dia(eps_box{e}) . chi_bd{e}"),
      eq("chi_eps_bd", "eps_dia{b}", "chi_bd{e} . box(eps_dia{e})"),
      eq("delta_chi_bd", "chi_bd{b} . box(chi_bd{e}) . delta_bb{d}",
         "dia(delta_bb{e}) . chi_bd{e}"),
      eq("chi_delta_bd", "delta_dd{b} . dia(chi_bd{e}) . chi_bd{d}",
         "chi_bd{e} . box(delta_dd{e})"),
  };
}

inline std::string op_name(char m) { return m == kBox ? "box" : "dia"; }

inline List s5_extra(bool without_redundant) {
  List l;
  for (char m : {kBox, kDia}) {
    const std::string M(1, m), Mop = op_name(m), tag = "[M=" + M + "]";
    const std::string dbM = m == kBox ? "delta_bb" : "delta_bd";
    const std::string ddM = m == kDia ? "delta_dd" : "delta_db";
    if (!without_redundant) {
      l.push_back(eq("assoc_bM" + tag, "box(" + dbM + "{e}) . " + dbM + "{e}",
                     "delta_bb{" + M + "} . " + dbM + "{e}"));
      l.push_back(eq("assoc_dM" + tag, ddM + "{e} . dia(" + ddM + "{e})",
                     ddM + "{e} . delta_dd{" + M + "}"));
    }
    l.push_back(eq("beta_bM" + tag, "eps_box{" + M + "} . " + dbM + "{e}", "id{" + M + "}"));
    l.push_back(eq("beta_dM" + tag, ddM + "{e} . eps_dia{" + M + "}", "id{" + M + "}"));
    l.push_back(eq("dN" + tag, "box(" + ddM + "{e}) . delta_bd{" + M + "}",
                   dbM + "{e} . " + ddM + "{e}"));
    l.push_back(eq("dI" + tag, "delta_db{" + M + "} . dia(" + dbM + "{e})",
                   dbM + "{e} . " + ddM + "{e}"));
  }
  return l;
}

inline std::string replace_all(std::string s, const std::string& from,
                               const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos;
       p = s.find(from, p + to.size()))
    s.replace(p, from.size(), to);
  return s;
}

inline List fives_eqs() {
  List l;
  for (const auto& s : s4_boxdia_eqs()) {
    auto sig = [](const ArrowTerm& t) {
      std::string p = replace_all(replace_all(print(t), "delta_bb", "sigma_bb"),
                                  "delta_dd", "sigma_dd");
      return parse_term(p);
    };
    l.push_back(make_schema("sigma:" + s.id, sig(s.lhs), sig(s.rhs)));
  }
  for (char m : {kBox, kDia}) {
    const std::string M(1, m), Mop = op_name(m), tag = "[M=" + M + "]";
    const std::string sMb = m == kBox ? "sigma_bb" : "sigma_db";
    const std::string sMd = m == kDia ? "sigma_dd" : "sigma_bd";
    l.push_back(eq("eta_bM" + tag, Mop + "(eps_box{e}) . " + sMb + "{e}", "id{" + M + "}"));
    l.push_back(eq("eta_dM" + tag, sMd + "{e} . " + Mop + "(eps_dia{e})", "id{" + M + "}"));
    l.push_back(eq("sN" + tag, Mop + "(sigma_bd{e}) . " + sMb + "{d}",
                   sMb + "{e} . " + sMd + "{e}"));
    l.push_back(eq("sI" + tag, sMd + "{b} . " + Mop + "(sigma_db{e})",
                   sMb + "{e} . " + sMd + "{e}"));
  }
  return l;
}

inline List eps_triv() {
  return {eq("eps_box_triv", "box(eps_box{e})", "eps_box{b}"),
          eq("eps_dia_triv", "eps_dia{d}", "dia(eps_dia{e})")};
}

inline Schema box_dia_eq() {
  return eq("box_dia", "dia(box(eps_dia{e})) . eps_box{db}",
            "eps_dia{bd} . box(dia(eps_box{e}))");
}

}  // namespace detail

// The six equations each of which collapses s5 to a preorder, at A = e.
inline std::vector<Schema> preordering_schemas(const std::string& th) {
  using detail::eq;
  std::vector<Schema> l{
      eq("preorder1", "box(eps_box{e})", "eps_box{b}"),
      eq("preorder2", "box(eps_dia{e})", "delta_bd{e} . eps_dia{e} . eps_box{e}"),
      eq("preorder3", "box(eps_dia{d}) . delta_bd{e} . eps_dia{e}",
         "delta_bd{d} . eps_dia{d} . eps_dia{e}"),
      eq("preorder4", "eps_box{e} . eps_box{b} . delta_db{b}",
         "eps_box{e} . delta_db{e} . dia(eps_box{b})"),
      eq("preorder5", "eps_dia{e} . eps_box{e} . delta_db{e}", "dia(eps_box{e})"),
      eq("preorder6", "eps_dia{d}", "dia(eps_dia{e})"),
  };
  if (th == "s5") return l;
  if (th != "fives")
    throw std::invalid_argument("preordering equations exist for s5 and fives only");
  std::vector<Schema> m;
  for (const auto& s : l) m.push_back(detail::mirror_schema(s));
  return m;
}

namespace detail {

inline List build_schemas(const std::string& id, bool without_redundant) {
  List l;
  if (id == "k" || id == "t_box" || id == "t_dia" || id == "t_boxdia" ||
      id == "s_plus")
    return l;
  if (id == "k4_box") return k4_box_eqs();
  if (id == "k4_dia") return k4_dia_eqs();
  if (id == "k4_boxdia") {
    l = k4_box_eqs();
    append(l, k4_dia_eqs());
    return l;
  }
  if (id == "s_chi") return {chichi(), braid(), eps_chi()};
  if (id == "splus_chi_op")
    return {k4_box_eqs()[0], chichi(), braid(), delta_chi(), chi_delta()};
  if (id == "s4_box") return s4_box_eqs();
  if (id == "s4_dia") return s4_dia_eqs();
  if (id == "s4_boxdia") return s4_boxdia_eqs();
  if (id == "s4_box_chi" || id == "s4_dia_chi" || id == "s4_boxdia_chi") {
    List box = s4_box_eqs();
    append(box, box_chi_eqs());
    if (id == "s4_box_chi") return box;
    if (id == "s4_dia_chi") return duals(box);
    l = s4_boxdia_eqs();
    append(l, box_chi_eqs());
    append(l, duals(box_chi_eqs()));
    return l;
  }
  if (id == "s42" || id == "s41" || id == "s42_iso") {
    l = s4_boxdia_eqs();
    if (id != "s41") append(l, s42_extra());
    if (id != "s42") append(l, s41_extra());
    if (id == "s42_iso") {
      l.push_back(eq("inv_db", "chi_bd{e} . chi_db{e}", "id{db}"));
      l.push_back(eq("inv_bd", "chi_db{e} . chi_bd{e}", "id{bd}"));
    }
    return l;
  }
  if (id == "s5") {
    // Without the redundant laws, the S4 associativity goes as well.
    l = s4_boxdia_eqs();
    if (without_redundant)
      std::erase_if(l, [](const Schema& s) { return s.id.starts_with("assoc"); });
    append(l, s5_extra(without_redundant));
    return l;
  }
  if (id == "fives") return fives_eqs();
  if (id == "s4_boxdia_sharp" || id == "s42_sharp") {
    l = build_schemas(id.substr(0, id.size() - 6), false);
    append(l, eps_triv());
    return l;
  }
  if (id == "s4_boxdia_triv" || id == "s42_triv") {
    l = build_schemas(id.substr(0, id.size() - 5), false);
    append(l, eps_triv());
    l.push_back(box_dia_eq());
    return l;
  }
  if (id == "s5_triv" || id == "fives_triv") {
    std::string base = id.substr(0, id.size() - 5);
    l = build_schemas(base, false);
    append(l, preordering_schemas(base));
    return l;
  }
  throw std::invalid_argument("no equation schemas for theory '" + id + "'");
}

}  // namespace detail

// Equation schemas of a theory. Naturality is not listed: in developed form
// it is the exchange of adjacent disjoint factors.
inline const std::vector<Schema>& schemas(const Theory& th,
                                          SchemaOptions opts = {}) {
  static const auto table = [] {
    std::map<std::pair<std::string, bool>, std::vector<Schema>> t;
    for (const auto& id : theory_ids())
      for (bool red : {false, true})
        t.emplace(std::pair{id, red}, detail::build_schemas(id, red));
    return t;
  }();
  return table.at({th.id, opts.without_redundant && th.id == "s5"});
}

inline const Schema& schema_by_id(const Theory& th, const std::string& id) {
  for (const auto& s : schemas(th))
    if (s.id == id) return s;
  throw std::invalid_argument("theory " + th.id + " has no schema '" + id + "'");
}

// Whisker a side with outer prefix q and tail a.
inline Chain instantiate(const Chain& side, const Modality& q, const Modality& a) {
  Chain c{q + side.src + a, {}};
  for (const auto& f : side.fs) c.fs.push_back({q + f.prefix, f.kind, f.index + a});
  return c;
}

// One application of a schema to a chain.
struct Rewrite {
  Chain result;
  std::string schema;
  bool forward;        // lhs replaced by rhs
  int at;              // first factor of the window (or the gap index)
  int len;             // factors removed
  Modality q, a;
};

namespace detail {

// Match side `s` against c.fs[k..k+len); on success fills q and a.
inline bool match_window(const Chain& s, const Chain& c, std::size_t k,
                         Modality& q, Modality& a) {
  const std::size_t len = s.fs.size();
  if (len == 0 || k + len > c.fs.size()) return false;
  const Factor& f0 = c.fs[k];
  const Factor& s0 = s.fs[0];
  if (f0.kind != s0.kind || f0.prefix.size() < s0.prefix.size() ||
      f0.index.size() < s0.index.size())
    return false;
  if (!f0.prefix.ends_with(s0.prefix) || !f0.index.starts_with(s0.index))
    return false;
  q = f0.prefix.substr(0, f0.prefix.size() - s0.prefix.size());
  a = f0.index.substr(s0.index.size());
  for (std::size_t i = 0; i < len; ++i) {
    const Factor& si = s.fs[i];
    const Factor& ci = c.fs[k + i];
    if (ci.kind != si.kind || ci.prefix != q + si.prefix || ci.index != si.index + a)
      return false;
  }
  return true;
}

inline Chain splice(const Chain& c, std::size_t k, std::size_t len,
                    const Chain& with) {
  Chain out{c.src, {}};
  out.fs.insert(out.fs.end(), c.fs.begin(), c.fs.begin() + k);
  out.fs.insert(out.fs.end(), with.fs.begin(), with.fs.end());
  out.fs.insert(out.fs.end(), c.fs.begin() + k + len, c.fs.end());
  return out;
}

inline Modality object_at(const Chain& c, std::size_t gap) {
  return gap == 0 ? c.src : c.fs[gap - 1].tgt();
}

}  // namespace detail

// All single schema applications at contiguous windows, both directions.
// Empty sides are inserted at every gap whose object contains the schema's
// object word.
inline std::vector<Rewrite> rewrites(const Theory& th, const Chain& c,
                                     const std::vector<Schema>& eqs,
                                     std::size_t max_len = SIZE_MAX) {
  std::vector<Rewrite> out;
  for (const auto& s : eqs) {
    for (bool fwd : {true, false}) {
      const Chain& from = fwd ? s.l : s.r;
      const Chain& to = fwd ? s.r : s.l;
      if (c.fs.size() + to.fs.size() > max_len + from.fs.size()) continue;
      if (!from.fs.empty()) {
        for (std::size_t k = 0; k + from.fs.size() <= c.fs.size(); ++k) {
          Modality q, a;
          if (!detail::match_window(from, c, k, q, a)) continue;
          Chain r = detail::splice(c, k, from.fs.size(), instantiate(to, q, a));
          if (!chain_in_theory(r, th)) continue;
          out.push_back({std::move(r), s.id, fwd, static_cast<int>(k),
                         static_cast<int>(from.fs.size()), q, a});
        }
        continue;
      }
      const Modality& w0 = from.src;
      for (std::size_t g = 0; g <= c.fs.size(); ++g) {
        Modality w = detail::object_at(c, g);
        for (std::size_t p = 0; p + w0.size() <= w.size(); ++p) {
          if (w.compare(p, w0.size(), w0) != 0) continue;
          Modality q = w.substr(0, p), a = w.substr(p + w0.size());
          Chain r = detail::splice(c, g, 0, instantiate(to, q, a));
          if (!chain_in_theory(r, th)) continue;
          out.push_back({std::move(r), s.id, fwd, static_cast<int>(g), 0, q, a});
        }
      }
    }
  }
  return out;
}

struct SoundnessBound {
  std::size_t idx = 3;  // |Q| + |A| for schemas, |P| + |I| for naturality
  int f = 2;            // generators in the naturality arrow
};

struct SoundnessFailure {
  std::string schema, lhs, rhs, left, right;
};

struct SoundnessReport {
  std::string theory;
  Variant variant = Variant::Gstd;
  std::size_t instances = 0;
  std::vector<SoundnessFailure> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline void check_pair(const Theory& th, Variant v, const std::string& id,
                       const Chain& l, const Chain& r, const FactorHook& hook,
                       SoundnessReport& rep) {
  ++rep.instances;
  if (th.quotient == Quotient::Triv) {
    // A preorder: sides agree as soon as their types do.
    if (l.src != r.src || l.tgt() != r.tgt())
      rep.failures.push_back({id, print(chain_term(l)), print(chain_term(r)),
                              "type " + show(l.src) + "|-" + show(l.tgt()),
                              "type " + show(r.src) + "|-" + show(r.tgt())});
    return;
  }
  Diagram dl = interp_chain(th, v, l, hook);
  Diagram dr = interp_chain(th, v, r, hook);
  if (!(dl == dr))
    rep.failures.push_back({id, print(chain_term(l)), print(chain_term(r)),
                            to_json(dl), to_json(dr)});
}

inline Chain lift(const Chain& c, const Modality& prefix, const Modality& tail = "") {
  return instantiate(c, prefix, tail);
}

}  // namespace detail

// Every schema instance with small context, and every naturality square for
// a generator against arrows of at most bound.f generators inside its index.
inline SoundnessReport check_soundness(const Theory& th, Variant v,
                                       SoundnessBound bound = {},
                                       const FactorHook& hook = {}) {
  if (!th.admits(v))
    throw InterpError("variant " + variant_name(v) + " not admissible for " + th.id);
  SoundnessReport rep{th.id, v, 0, {}};
  const auto words = words_upto(th.alphabet, bound.idx);
  for (const auto& s : schemas(th)) {
    for (const auto& q : words)
      for (const auto& a : words) {
        if (q.size() + a.size() > bound.idx) continue;
        Chain l = instantiate(s.l, q, a), r = instantiate(s.r, q, a);
        if (!chain_in_theory(l, th) || !chain_in_theory(r, th)) continue;
        detail::check_pair(th, v, s.id, l, r, hook, rep);
      }
  }
  for (GenKind k : th.gens) {
    const std::string gs(info(k).src), gt(info(k).tgt);
    for (const auto& p : words)
      for (const auto& idx : words) {
        if (p.size() + idx.size() > bound.idx) continue;
        Factor g0{p, k, idx};
        std::size_t need = is_chi(k) ? th.chi_min_index : th.min_index;
        if (idx.size() < need || !th.legal_word(g0.src()) || !th.legal_word(g0.tgt()))
          continue;
        for (const auto& f : enumerate_chains(th, idx, bound.f)) {
          if (f.fs.empty()) continue;
          Chain l{g0.src(), {g0}};
          Chain fl = detail::lift(f, p + gt);
          l.fs.insert(l.fs.end(), fl.fs.begin(), fl.fs.end());
          Chain r = detail::lift(f, p + gs);
          r.fs.push_back({p, k, f.tgt()});
          if (!chain_in_theory(l, th) || !chain_in_theory(r, th)) continue;
          detail::check_pair(th, v, std::string("nat:") + std::string(info(k).name),
                             l, r, hook, rep);
        }
      }
  }
  return rep;
}

}  // namespace modalcoh
