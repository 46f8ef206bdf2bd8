#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modalcoh/interp.hpp"
#include "modalcoh/schema.hpp"
#include "modalcoh/sharp.hpp"
#include "modalcoh/term.hpp"
#include "modalcoh/theory.hpp"

namespace modalcoh {

struct SkeletonArrow {
  Modality src, tgt;
  ArrowTerm label;
};

struct SkeletonDiagram {
  std::string theory;
  std::vector<Modality> objects;
  std::vector<SkeletonArrow> arrows;
  // closure[i][j]: objects[j] is reachable from objects[i].
  std::vector<std::vector<bool>> closure;

  int index_of(const Modality& m) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == m) return static_cast<int>(i);
    return -1;
  }
  bool reaches(const Modality& a, const Modality& b) const {
    int i = index_of(a), j = index_of(b);
    return i >= 0 && j >= 0 &&
           closure[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

namespace detail {

inline void close(SkeletonDiagram& s) {
  const std::size_t n = s.objects.size();
  s.closure.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) s.closure[i][i] = true;
  for (const auto& a : s.arrows)
    s.closure[static_cast<std::size_t>(s.index_of(a.src))]
             [static_cast<std::size_t>(s.index_of(a.tgt))] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s.closure[i][k] && s.closure[k][j]) s.closure[i][j] = true;
}

inline SkeletonDiagram make_skeleton(
    const std::string& id, std::vector<Modality> objects,
    const std::vector<std::pair<std::string, std::string>>& arrows) {
  SkeletonDiagram s{id, std::move(objects), {}, {}};
  const Theory& th = theory(id);
  for (const auto& [name, text] : arrows) {
    (void)name;
    ArrowTerm t = parse_term(text);
    Type ty = typecheck(t, th);
    if (s.index_of(ty.src) < 0 || s.index_of(ty.tgt) < 0)
      throw std::logic_error("skeleton arrow leaves the object set");
    s.arrows.push_back({ty.src, ty.tgt, t});
  }
  close(s);
  return s;
}

}  // namespace detail

// Skeletons of the preorder quotients, as drawn in the classification
// diagrams.
inline SkeletonDiagram skeleton(const std::string& id) {
  if (id == "s4_boxdia_triv")
    return detail::make_skeleton(
        id, {"b", "bdb", "db", "bd", "dbd", "d", ""},
        {{"b-bdb", "box(eps_dia{b}) . delta_bb{e}"},
         {"bdb-db", "eps_box{db}"},
         {"bdb-bd", "box(dia(eps_box{e}))"},
         {"db-dbd", "dia(box(eps_dia{e}))"},
         {"bd-dbd", "eps_dia{bd}"},
         {"dbd-d", "delta_dd{e} . dia(eps_box{d})"},
         {"b-e", "eps_box{e}"},
         {"e-d", "eps_dia{e}"}});
  if (id == "s42_triv")
    return detail::make_skeleton(id, {"b", "db", "bd", "d", ""},
                                 {{"b-db", "eps_dia{b}"},
                                  {"db-bd", "chi_db{e}"},
                                  {"bd-d", "eps_box{d}"},
                                  {"b-e", "eps_box{e}"},
                                  {"e-d", "eps_dia{e}"}});
  if (id == "s5_triv" || id == "fives_triv")
    return detail::make_skeleton(id, {"b", "", "d"},
                                 {{"b-e", "eps_box{e}"}, {"e-d", "eps_dia{e}"}});
  throw std::invalid_argument("no skeleton for theory '" + id + "'");
}

inline nlohmann::json to_json_value(const SkeletonDiagram& s) {
  nlohmann::json objs = nlohmann::json::array(), arrs = nlohmann::json::array();
  for (const auto& o : s.objects) objs.push_back(show(o));
  for (const auto& a : s.arrows)
    arrs.push_back({{"src", show(a.src)}, {"tgt", show(a.tgt)}, {"label", print(a.label)}});
  nlohmann::json reach = nlohmann::json::object();
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < s.objects.size(); ++j)
      if (s.closure[i][j]) row.push_back(show(s.objects[j]));
    reach[show(s.objects[i])] = row;
  }
  return {{"theory", s.theory}, {"objects", objs}, {"arrows", arrs}, {"reaches", reach}};
}

struct NamedEquation {
  std::string name;
  ArrowTerm lhs, rhs;
};

// The six preordering equations at index A; the fives list is the mirror
// image of the s5 list.
inline std::vector<NamedEquation> preordering_catalog(const std::string& id,
                                                      const Modality& a = "") {
  std::vector<NamedEquation> out;
  for (const auto& s : preordering_schemas(id))
    out.push_back({s.id, append_context(s.lhs, a), append_context(s.rhs, a)});
  return out;
}

// The equation whose adjunction collapses s4_boxdia_sharp to a preorder.
inline NamedEquation box_dia_equation(const Modality& a = "") {
  Schema s = detail::box_dia_eq();
  return {s.id, append_context(s.lhs, a), append_context(s.rhs, a)};
}

// Equations that fail in s42_sharp but hold once box_dia is added.
inline std::vector<NamedEquation> s42_sharp_failures(const Modality& a = "") {
  auto at = [&](const char* t) { return append_context(parse_term(t), a); };
  return {
      {"box_eps_chi", at("box(dia(eps_box{e}))"), at("chi_db{e} . eps_box{db}")},
      {"dia_eps_chi", at("dia(box(eps_dia{e}))"), at("eps_dia{bd} . chi_db{e}")},
      {"box_eps_chi_delta", at("chi_db{b} . dia(delta_bb{e}) . eps_box{db}"),
       at("id{bdb}")},
      {"dia_eps_chi_delta", at("eps_dia{bd} . box(delta_dd{e}) . chi_db{d}"),
       at("id{dbd}")},
  };
}

}  // namespace modalcoh
