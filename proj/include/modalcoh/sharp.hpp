#pragma once

#include <stdexcept>

#include "modalcoh/term.hpp"

namespace modalcoh {

// j_A : A |- A#. Defined for non-empty A.
inline ArrowTerm j_arrow(const Modality& a) {
  if (a.empty()) throw std::invalid_argument("j_arrow: empty modality");
  if (a.size() == 1) return ArrowTerm::id(a);
  const char m1 = a[0], m2 = a[1];
  const Modality rest = a.substr(1);  // M2·A'
  if (m1 != m2) return ArrowTerm::app(m1, j_arrow(rest));
  if (m1 == kBox)
    return ArrowTerm::comp(j_arrow(rest), ArrowTerm::gen(GenKind::EpsBox, rest));
  return ArrowTerm::comp(j_arrow(rest),
                         ArrowTerm::gen(GenKind::DeltaDD, a.substr(2)));
}

// j^A : A# |- A. Defined for non-empty A.
inline ArrowTerm j_inv(const Modality& a) {
  if (a.empty()) throw std::invalid_argument("j_inv: empty modality");
  if (a.size() == 1) return ArrowTerm::id(a);
  const char m1 = a[0], m2 = a[1];
  const Modality rest = a.substr(1);
  if (m1 != m2) return ArrowTerm::app(m1, j_inv(rest));
  if (m1 == kBox)
    return ArrowTerm::comp(ArrowTerm::gen(GenKind::DeltaBB, a.substr(2)),
                           j_inv(rest));
  return ArrowTerm::comp(ArrowTerm::gen(GenKind::EpsDia, rest), j_inv(rest));
}

}  // namespace modalcoh
