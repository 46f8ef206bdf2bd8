#pragma once

#include <stdexcept>
#include <string>

#include "modalcoh/term.hpp"
#include "modalcoh/theory.hpp"

namespace modalcoh {

namespace detail {

// delta^{M1M2} <-> sigma^{M2M1}; the pair of kinds is exchanged both ways.
inline GenKind mirror_gen(GenKind k) {
  using G = GenKind;
  switch (k) {
    case G::EpsBox:
    case G::EpsDia: return k;
    case G::DeltaBB: return G::SigmaBoxB;
    case G::DeltaDD: return G::SigmaDiaD;
    case G::DeltaBD: return G::SigmaDiaB;
    case G::DeltaDB: return G::SigmaBoxD;
    case G::SigmaBoxB: return G::DeltaBB;
    case G::SigmaDiaD: return G::DeltaDD;
    case G::SigmaDiaB: return G::DeltaBD;
    case G::SigmaBoxD: return G::DeltaDB;
    default: break;
  }
  throw std::invalid_argument(std::string("mirror: no image for ") +
                              std::string(info(k).name));
}

inline ArrowTerm mirror_rec(const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return ArrowTerm::id(reversed(t.mod()));
    case ArrowTerm::Tag::Gen:
      return wrap(reversed(t.mod()), ArrowTerm::gen(mirror_gen(t.kind()), ""));
    case ArrowTerm::Tag::App:
      return append_context(mirror_rec(t.body()), std::string(1, t.op()));
    case ArrowTerm::Tag::Comp:
      return ArrowTerm::comp(mirror_rec(t.outer()), mirror_rec(t.inner()));
  }
  return t;
}

}  // namespace detail

// Right-to-left reading: s5 terms to fives terms and back. Types reverse.
inline ArrowTerm mirror_term(const ArrowTerm& t, const std::string& from = "s5") {
  if (from != "s5" && from != "fives")
    throw std::invalid_argument("mirror_term: source theory must be s5 or fives");
  typecheck(t, theory(from));
  return detail::mirror_rec(t);
}

}  // namespace modalcoh
