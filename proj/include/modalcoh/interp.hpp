#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

#include "modalcoh/chain.hpp"
#include "modalcoh/diagram.hpp"
#include "modalcoh/sharp.hpp"
#include "modalcoh/theory.hpp"

namespace modalcoh {

struct InterpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Optional per-factor rewrite of a clause; used by fault-injection tests.
using FactorHook = std::function<void(const Factor&, Diagram&)>;

namespace detail {

inline bool cap_shape(GenKind k) {
  return k == GenKind::DeltaBB || k == GenKind::DeltaBD ||
         k == GenKind::SigmaBoxB || k == GenKind::SigmaDiaB;
}

inline bool cup_shape(GenKind k) {
  return k == GenKind::DeltaDD || k == GenKind::DeltaDB ||
         k == GenKind::SigmaDiaD || k == GenKind::SigmaBoxD;
}

// Rel clause for a generator with index length n.
inline RelDiagram rel_gen(GenKind k, int n, Variant v) {
  RelDiagram d;
  auto diag = [&](int upto) {
    for (int i = 0; i < upto; ++i) d.pairs.insert({i, i});
  };
  switch (k) {
    case GenKind::EpsBox:
      d.src = n + 1, d.tgt = n;
      diag(n);
      if (v == Variant::Gdelta && n >= 1) d.pairs.insert({n, n - 1});
      break;
    case GenKind::EpsDia:
      d.src = n, d.tgt = n + 1;
      diag(n);
      if (v == Variant::Gdelta && n >= 1) d.pairs.insert({n - 1, n});
      break;
    case GenKind::DeltaBB:
      d.src = n + 1, d.tgt = n + 2;
      diag(n + 1);
      if (v != Variant::Geps) d.pairs.insert({n, n + 1});
      break;
    case GenKind::DeltaDD:
      d.src = n + 2, d.tgt = n + 1;
      diag(n + 1);
      if (v != Variant::Geps) d.pairs.insert({n + 1, n});
      break;
    case GenKind::ChiBB:
    case GenKind::ChiDD:
    case GenKind::ChiDB:
    case GenKind::ChiBD:
      d.src = n + 2, d.tgt = n + 2;
      diag(n);
      d.pairs.insert({n, n + 1});
      d.pairs.insert({n + 1, n});
      break;
    default:
      throw InterpError(std::string("no relational clause for ") +
                        std::string(info(k).name));
  }
  return d;
}

inline SplitEq gen_base(int src, int tgt, int through) {
  SplitEq d;
  d.src = src, d.tgt = tgt;
  for (int i = 0; i < through; ++i) d.classes.push_back({S(i), T(i)});
  return d;
}

inline SplitEq gen_gen(GenKind k, int n) {
  SplitEq d;
  if (k == GenKind::EpsBox) {
    d = gen_base(n + 1, n, n);
    d.classes.push_back({S(n)});
  } else if (k == GenKind::EpsDia) {
    d = gen_base(n, n + 1, n);
    d.classes.push_back({T(n)});
  } else if (cap_shape(k)) {
    d = gen_base(n + 1, n + 2, n);
    d.classes.push_back({S(n), T(n), T(n + 1)});
  } else if (cup_shape(k)) {
    d = gen_base(n + 2, n + 1, n);
    d.classes.push_back({S(n), S(n + 1), T(n)});
  } else {
    throw InterpError(std::string("no split-equivalence clause for ") +
                      std::string(info(k).name));
  }
  canonicalize(d);
  return d;
}

// Dual functor: every object gains one element; epsilon and delta trade
// roles.
inline SplitEq gen_dual(GenKind k, int n) {
  SplitEq d;
  if (k == GenKind::EpsBox) return gen_gen(GenKind::DeltaDD, n);
  if (k == GenKind::EpsDia) return gen_gen(GenKind::DeltaBB, n);
  if (cap_shape(k)) {
    // M eps_dia_{MA}
    d = gen_base(n + 2, n + 3, n + 1);
    d.classes.push_back({T(n + 1)});
    d.classes.push_back({S(n + 1), T(n + 2)});
  } else if (cup_shape(k)) {
    // M eps_box_{MA}
    d = gen_base(n + 3, n + 2, n + 1);
    d.classes.push_back({S(n + 1)});
    d.classes.push_back({S(n + 2), T(n + 1)});
  } else {
    throw InterpError(std::string("no dual clause for ") +
                      std::string(info(k).name));
  }
  canonicalize(d);
  return d;
}

// Add `count` strands on top (functor application clause).
inline void add_top(RelDiagram& d, int count) {
  for (int c = 0; c < count; ++c) d.pairs.insert({d.src++, d.tgt++});
}

inline void add_top(SplitEq& d, int count) {
  for (int c = 0; c < count; ++c) d.classes.push_back({S(d.src++), T(d.tgt++)});
  canonicalize(d);
}

inline Diagram factor_diagram(const Theory& th, Variant v, const Factor& f) {
  const int n = static_cast<int>(f.index.size());
  const int p = static_cast<int>(f.prefix.size());
  if (th.target == Target::Rel) {
    RelDiagram d = rel_gen(f.kind, n, v);
    add_top(d, p);
    return d;
  }
  SplitEq d = v == Variant::Gdual ? gen_dual(f.kind, n) : gen_gen(f.kind, n);
  add_top(d, p);
  return d;
}

inline Diagram identity_diagram(const Theory& th, Variant v, int n) {
  if (th.target == Target::Rel) return rel_identity(n);
  return spliteq_identity(v == Variant::Gdual ? n + 1 : n);
}

inline void set_labels(Diagram& d, const Modality& s, const Modality& t) {
  std::visit(
      [&](auto& x) {
        x.src_word = s;
        x.tgt_word = t;
      },
      d);
}

inline Diagram chain_diagram(const Theory& th, Variant v, const Chain& c,
                             const FactorHook& hook) {
  Diagram acc = identity_diagram(th, v, static_cast<int>(c.src.size()));
  for (const auto& f : c.fs) {
    Diagram d = factor_diagram(th, v, f);
    if (hook) hook(f, d);
    acc = compose(d, acc);
  }
  if (v != Variant::Gdual) set_labels(acc, c.src, c.tgt());
  return acc;
}

}  // namespace detail

// Coherence functor applied to a developed term. The theory supplies the
// target carrier; quotients are evaluated through their base theory.
inline Diagram interp_chain(const Theory& th, Variant v, const Chain& c,
                            const FactorHook& hook = {}) {
  if (!th.admits(v))
    throw InterpError("variant " + variant_name(v) + " not admissible for " +
                      th.id);
  if (!chain_in_theory(c, th)) throw InterpError("term not in " + th.id);
  const Theory& base = base_of(th);
  if (v != Variant::Gsharp) return detail::chain_diagram(base, v, c, hook);
  // G#f = G(j_B . f . j^A).
  const Modality a = c.src, b = c.tgt();
  Chain full = c;
  if (!a.empty()) {
    Chain ja = develop_chain(j_inv(a));
    full.src = ja.src;
    full.fs.insert(full.fs.begin(), ja.fs.begin(), ja.fs.end());
  }
  if (!b.empty()) {
    Chain jb = develop_chain(j_arrow(b));
    full.fs.insert(full.fs.end(), jb.fs.begin(), jb.fs.end());
  }
  return detail::chain_diagram(base, Variant::Gstd, full, hook);
}

inline Diagram interp(const Theory& th, Variant v, const ArrowTerm& t) {
  typecheck(t, th);
  return interp_chain(th, v, develop_chain(t));
}

// Sharp-quotient image G#f = G(j_B . f . j^A).
inline RelDiagram interp_sharp(const Theory& th, const ArrowTerm& t) {
  if (th.quotient != Quotient::Sharp)
    throw InterpError("interp_sharp: " + th.id + " is not a sharp quotient");
  return std::get<RelDiagram>(interp(th, Variant::Gsharp, t));
}

inline Variant default_variant(const Theory& th) {
  return th.quotient == Quotient::Sharp ? Variant::Gsharp : Variant::Gstd;
}

struct Verdict {
  enum Kind { Equal, NotEqual, TypeMismatch } kind;
  std::optional<Diagram> left, right;
  Type ltype, rtype;
};

inline std::string verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    case Verdict::TypeMismatch: return "TypeMismatch";
  }
  return {};
}

// Equality of deductions by comparing coherence images.
inline Verdict decide_equal(const Theory& th, const ArrowTerm& f,
                            const ArrowTerm& g) {
  Verdict v{Verdict::Equal, std::nullopt, std::nullopt, typecheck(f, th),
            typecheck(g, th)};
  if (!(v.ltype == v.rtype)) {
    v.kind = Verdict::TypeMismatch;
    return v;
  }
  if (th.quotient == Quotient::Triv) return v;
  Variant var = default_variant(th);
  v.left = interp(th, var, f);
  v.right = interp(th, var, g);
  if (!(*v.left == *v.right)) v.kind = Verdict::NotEqual;
  return v;
}

inline bool equal_in(const Theory& th, const ArrowTerm& f, const ArrowTerm& g) {
  return decide_equal(th, f, g).kind == Verdict::Equal;
}

}  // namespace modalcoh
