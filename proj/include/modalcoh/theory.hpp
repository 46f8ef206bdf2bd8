#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalcoh/chain.hpp"
#include "modalcoh/term.hpp"

namespace modalcoh {

enum class Target { Rel, Gen };
enum class Quotient { None, Sharp, Triv };
enum class Variant { Geps, Gdelta, Gstd, Gdual, Gsharp };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Geps: return "eps";
    case Variant::Gdelta: return "delta";
    case Variant::Gstd: return "std";
    case Variant::Gdual: return "dual";
    case Variant::Gsharp: return "sharp";
  }
  return {};
}

inline std::optional<Variant> variant_by_name(const std::string& s) {
  for (Variant v : {Variant::Geps, Variant::Gdelta, Variant::Gstd, Variant::Gdual,
                    Variant::Gsharp})
    if (variant_name(v) == s) return v;
  return std::nullopt;
}

struct Theory {
  std::string id;
  std::vector<GenKind> gens;
  // Letters allowed in objects; single-operator theories use one letter.
  std::string alphabet = "bd";
  // Minimal index length for non-chi generators (raw S+ needs 1).
  std::size_t min_index = 0;
  std::size_t chi_min_index = 0;
  Target target = Target::Rel;
  Quotient quotient = Quotient::None;
  // Underlying theory of a quotient; empty otherwise.
  std::string base;
  std::vector<Variant> variants{Variant::Gstd};

  bool has(GenKind k) const {
    return std::find(gens.begin(), gens.end(), k) != gens.end();
  }
  bool admits(Variant v) const {
    return std::find(variants.begin(), variants.end(), v) != variants.end();
  }
  bool legal_word(const Modality& m) const {
    return std::all_of(m.begin(), m.end(), [&](char c) {
      return alphabet.find(c) != std::string::npos;
    });
  }
};

namespace detail {

inline std::map<std::string, Theory> build_registry() {
  using G = GenKind;
  using V = Variant;
  std::map<std::string, Theory> r;
  auto add = [&](Theory t) { r.emplace(t.id, std::move(t)); };
  auto rel = [](std::string id, std::vector<G> gens, std::string alpha = "bd") {
    Theory t;
    t.id = std::move(id);
    t.gens = std::move(gens);
    t.alphabet = std::move(alpha);
    return t;
  };
  const std::vector<V> sec2{V::Gstd, V::Geps, V::Gdelta};

  add({"k", {}, "bd", 0, 0, Target::Rel, Quotient::None, "", sec2});
  add({"t_box", {G::EpsBox}, "b", 0, 0, Target::Rel, Quotient::None, "", sec2});
  add({"t_dia", {G::EpsDia}, "d", 0, 0, Target::Rel, Quotient::None, "", sec2});
  add({"k4_box", {G::DeltaBB}, "b", 0, 0, Target::Rel, Quotient::None, "",
       sec2});
  add({"k4_dia", {G::DeltaDD}, "d", 0, 0, Target::Rel, Quotient::None, "",
       sec2});
  add({"s_plus", {G::EpsBox}, "b", 1, 0, Target::Rel, Quotient::None, "",
       sec2});
  // The two operators do not interact; only G^eps is a functor here.
  add({"t_boxdia", {G::EpsBox, G::EpsDia}, "bd", 0, 0, Target::Rel,
       Quotient::None, "", {V::Gstd, V::Geps}});
  add({"k4_boxdia", {G::DeltaBB, G::DeltaDD}, "bd", 0, 0, Target::Rel,
       Quotient::None, "", sec2});
  add(rel("s_chi", {G::EpsBox, G::ChiBB}, "b"));
  add(rel("splus_chi_op", {G::DeltaBB, G::ChiBB}, "b"));
  add(rel("s4_box", {G::EpsBox, G::DeltaBB}, "b"));
  add(rel("s4_dia", {G::EpsDia, G::DeltaDD}, "d"));
  const std::vector<G> s4{G::EpsBox, G::EpsDia, G::DeltaBB, G::DeltaDD};
  add(rel("s4_boxdia", s4));
  add(rel("s4_box_chi", {G::EpsBox, G::DeltaBB, G::ChiBB}, "b"));
  add(rel("s4_dia_chi", {G::EpsDia, G::DeltaDD, G::ChiDD}, "d"));
  auto plus = [&](std::vector<G> extra) {
    std::vector<G> v = s4;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  add(rel("s4_boxdia_chi", plus({G::ChiBB, G::ChiDD})));
  add(rel("s42", plus({G::ChiDB})));
  add(rel("s41", plus({G::ChiBD})));
  add(rel("s42_iso", plus({G::ChiDB, G::ChiBD})));
  add({"s5",
       {G::EpsBox, G::EpsDia, G::DeltaBB, G::DeltaDD, G::DeltaBD, G::DeltaDB},
       "bd", 0, 0, Target::Gen, Quotient::None, "", {V::Gstd, V::Gdual}});
  add({"fives",
       {G::EpsBox, G::EpsDia, G::SigmaBoxB, G::SigmaDiaD, G::SigmaDiaB,
        G::SigmaBoxD},
       "bd", 0, 0, Target::Gen, Quotient::None, "", {V::Gstd, V::Gdual}});

  auto quot = [&](std::string id, std::string base, Quotient q) {
    Theory t = r.at(base);
    t.id = std::move(id);
    t.base = std::move(base);
    t.quotient = q;
    t.variants = q == Quotient::Sharp ? std::vector<V>{V::Gsharp}
                                      : std::vector<V>{V::Gstd};
    add(std::move(t));
  };
  quot("s4_boxdia_sharp", "s4_boxdia", Quotient::Sharp);
  quot("s42_sharp", "s42", Quotient::Sharp);
  quot("s4_boxdia_triv", "s4_boxdia", Quotient::Triv);
  quot("s42_triv", "s42", Quotient::Triv);
  quot("s5_triv", "s5", Quotient::Triv);
  quot("fives_triv", "fives", Quotient::Triv);
  return r;
}

}  // namespace detail

inline const std::map<std::string, Theory>& registry() {
  static const std::map<std::string, Theory> r = detail::build_registry();
  return r;
}

inline const Theory& theory(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end())
    throw std::invalid_argument("unknown theory '" + id + "'");
  return it->second;
}

inline std::vector<std::string> theory_ids() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

// Theory whose equations and functor a quotient is built on.
inline const Theory& base_of(const Theory& t) {
  return t.base.empty() ? t : theory(t.base);
}

namespace detail {

inline void check_word(const Theory& th, const Modality& m) {
  if (!th.legal_word(m))
    throw TypeError("modality " + show(m) + " uses an operator outside " +
                    th.id);
}

inline void check_node(const Theory& th, const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: check_word(th, t.mod()); break;
    case ArrowTerm::Tag::Gen: {
      if (!th.has(t.kind()))
        throw TypeError(std::string("generator ") +
                        std::string(info(t.kind()).name) + " not in " + th.id);
      std::size_t need = is_chi(t.kind()) ? th.chi_min_index : th.min_index;
      if (t.mod().size() < need)
        throw TypeError(std::string("index constraint violated: ") +
                        std::string(info(t.kind()).name) + "{" + show(t.mod()) +
                        "} in " + th.id);
      Type ty = gen_type(t.kind(), t.mod());
      check_word(th, ty.src);
      check_word(th, ty.tgt);
      break;
    }
    case ArrowTerm::Tag::App:
      if (th.alphabet.find(t.op()) == std::string::npos)
        throw TypeError(std::string("operator ") + t.op() + " not in " + th.id);
      check_node(th, t.body());
      break;
    case ArrowTerm::Tag::Comp:
      check_node(th, t.outer());
      check_node(th, t.inner());
      break;
  }
}

}  // namespace detail

inline Type typecheck(const ArrowTerm& t, const Theory& th) {
  detail::check_node(th, t);
  return infer(t);
}

inline bool typechecks(const ArrowTerm& t, const Theory& th) {
  try {
    typecheck(t, th);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

inline bool chain_in_theory(const Chain& c, const Theory& th) {
  if (!th.legal_word(c.src)) return false;
  for (const auto& f : c.fs) {
    if (!th.has(f.kind)) return false;
    std::size_t need = is_chi(f.kind) ? th.chi_min_index : th.min_index;
    if (f.index.size() < need) return false;
    if (!th.legal_word(f.tgt())) return false;
  }
  return true;
}

}  // namespace modalcoh
