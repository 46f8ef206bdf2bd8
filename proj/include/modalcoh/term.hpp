#pragma once

#include <array>
#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "modalcoh/modality.hpp"

namespace modalcoh {

enum class GenKind {
  EpsBox,
  EpsDia,
  DeltaBB,
  DeltaDD,
  DeltaBD,
  DeltaDB,
  SigmaBoxB,
  SigmaBoxD,
  SigmaDiaB,
  SigmaDiaD,
  ChiBB,
  ChiDD,
  ChiDB,
  ChiBD,
};

inline constexpr int kGenKinds = 14;

struct GenInfo {
  GenKind kind;
  std::string_view name;
  // Type is src·A |- tgt·A for index A.
  std::string_view src;
  std::string_view tgt;
};

inline constexpr std::array<GenInfo, kGenKinds> kGenTable{{
    {GenKind::EpsBox, "eps_box", "b", ""},
    {GenKind::EpsDia, "eps_dia", "", "d"},
    {GenKind::DeltaBB, "delta_bb", "b", "bb"},
    {GenKind::DeltaDD, "delta_dd", "dd", "d"},
    {GenKind::DeltaBD, "delta_bd", "d", "bd"},
    {GenKind::DeltaDB, "delta_db", "db", "b"},
    {GenKind::SigmaBoxB, "sigma_bb", "b", "bb"},
    {GenKind::SigmaBoxD, "sigma_bd", "bd", "b"},
    {GenKind::SigmaDiaB, "sigma_db", "d", "db"},
    {GenKind::SigmaDiaD, "sigma_dd", "dd", "d"},
    {GenKind::ChiBB, "chi_bb", "bb", "bb"},
    {GenKind::ChiDD, "chi_dd", "dd", "dd"},
    {GenKind::ChiDB, "chi_db", "db", "bd"},
    {GenKind::ChiBD, "chi_bd", "bd", "db"},
}};

inline const GenInfo& info(GenKind k) { return kGenTable[static_cast<int>(k)]; }

inline std::optional<GenKind> gen_by_name(std::string_view name) {
  for (const auto& g : kGenTable)
    if (g.name == name) return g.kind;
  return std::nullopt;
}

inline bool is_chi(GenKind k) {
  return k == GenKind::ChiBB || k == GenKind::ChiDD || k == GenKind::ChiDB ||
         k == GenKind::ChiBD;
}

// Generator of the dual theory: box and diamond swapped, arrows reversed.
inline GenKind dual_gen(GenKind k) {
  switch (k) {
    case GenKind::EpsBox: return GenKind::EpsDia;
    case GenKind::EpsDia: return GenKind::EpsBox;
    case GenKind::DeltaBB: return GenKind::DeltaDD;
    case GenKind::DeltaDD: return GenKind::DeltaBB;
    case GenKind::DeltaBD: return GenKind::DeltaDB;
    case GenKind::DeltaDB: return GenKind::DeltaBD;
    case GenKind::SigmaBoxB: return GenKind::SigmaDiaD;
    case GenKind::SigmaDiaD: return GenKind::SigmaBoxB;
    case GenKind::SigmaDiaB: return GenKind::SigmaBoxD;
    case GenKind::SigmaBoxD: return GenKind::SigmaDiaB;
    case GenKind::ChiBB: return GenKind::ChiDD;
    case GenKind::ChiDD: return GenKind::ChiBB;
    case GenKind::ChiDB: return GenKind::ChiDB;
    case GenKind::ChiBD: return GenKind::ChiBD;
  }
  return k;
}

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

class ArrowTerm {
 public:
  enum class Tag { Id, Gen, App, Comp };

  static ArrowTerm id(Modality a) {
    return ArrowTerm(Node{Tag::Id, std::move(a), GenKind::EpsBox, 0, {}, {}});
  }
  static ArrowTerm gen(GenKind k, Modality a) {
    return ArrowTerm(Node{Tag::Gen, std::move(a), k, 0, {}, {}});
  }
  static ArrowTerm app(char op, const ArrowTerm& body) {
    return ArrowTerm(Node{Tag::App, {}, GenKind::EpsBox, op, body.n_, {}});
  }
  // g after f.
  static ArrowTerm comp(const ArrowTerm& g, const ArrowTerm& f) {
    return ArrowTerm(Node{Tag::Comp, {}, GenKind::EpsBox, 0, g.n_, f.n_});
  }

  Tag tag() const { return n_->tag; }
  // Index of a generator, object of an identity.
  const Modality& mod() const { return n_->mod; }
  GenKind kind() const { return n_->kind; }
  char op() const { return n_->op; }
  ArrowTerm body() const { return ArrowTerm(n_->a); }
  ArrowTerm outer() const { return ArrowTerm(n_->a); }
  ArrowTerm inner() const { return ArrowTerm(n_->b); }

  friend bool operator==(const ArrowTerm& x, const ArrowTerm& y) {
    if (x.n_ == y.n_) return true;
    const Node& a = *x.n_;
    const Node& b = *y.n_;
    if (a.tag != b.tag) return false;
    switch (a.tag) {
      case Tag::Id: return a.mod == b.mod;
      case Tag::Gen: return a.kind == b.kind && a.mod == b.mod;
      case Tag::App: return a.op == b.op && ArrowTerm(a.a) == ArrowTerm(b.a);
      case Tag::Comp:
        return ArrowTerm(a.a) == ArrowTerm(b.a) &&
               ArrowTerm(a.b) == ArrowTerm(b.b);
    }
    return false;
  }
  friend bool operator!=(const ArrowTerm& x, const ArrowTerm& y) {
    return !(x == y);
  }

 private:
  struct Node {
    Tag tag;
    Modality mod;
    GenKind kind;
    char op;
    std::shared_ptr<const Node> a, b;
  };
  explicit ArrowTerm(Node n) : n_(std::make_shared<const Node>(std::move(n))) {}
  explicit ArrowTerm(std::shared_ptr<const Node> p) : n_(std::move(p)) {}
  std::shared_ptr<const Node> n_;
};

// Number of generator occurrences.
inline int size(const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return 0;
    case ArrowTerm::Tag::Gen: return 1;
    case ArrowTerm::Tag::App: return size(t.body());
    case ArrowTerm::Tag::Comp: return size(t.outer()) + size(t.inner());
  }
  return 0;
}

// Apply the operators of w to t, outermost first: wrap("bd", f) = box(dia(f)).
inline ArrowTerm wrap(const Modality& w, ArrowTerm t) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) t = ArrowTerm::app(*it, t);
  return t;
}

inline std::string print(const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return "id{" + show(t.mod()) + "}";
    case ArrowTerm::Tag::Gen:
      return std::string(info(t.kind()).name) + "{" + show(t.mod()) + "}";
    case ArrowTerm::Tag::App:
      return std::string(t.op() == kBox ? "box(" : "dia(") + print(t.body()) +
             ")";
    case ArrowTerm::Tag::Comp: {
      std::string g = print(t.outer());
      if (t.outer().tag() == ArrowTerm::Tag::Comp) g = "(" + g + ")";
      return g + " . " + print(t.inner());
    }
  }
  return {};
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ArrowTerm parse() {
    ArrowTerm t = term();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  ArrowTerm term() {
    ArrowTerm head = unit();
    if (eat('.')) return ArrowTerm::comp(head, term());
    return head;
  }

  ArrowTerm unit() {
    if (eat('(')) {
      ArrowTerm t = term();
      expect(')');
      return t;
    }
    return atom();
  }

  std::string word() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      ++i_;
    return std::string(s_.substr(b, i_ - b));
  }

  Modality mod() {
    expect('{');
    skip();
    std::size_t at = i_;
    std::string w = word();
    if (w.empty()) fail("expected modality");
    if (w != "e" && !valid_modality(w)) {
      i_ = at;
      fail("bad modality '" + w + "'");
    }
    expect('}');
    return w == "e" ? Modality{} : w;
  }

  ArrowTerm atom() {
    skip();
    std::size_t at = i_;
    std::string name = word();
    if (name.empty()) fail("expected term");
    if (name == "box" || name == "dia") {
      expect('(');
      ArrowTerm body = term();
      expect(')');
      return ArrowTerm::app(name == "box" ? kBox : kDia, body);
    }
    if (name == "id") return ArrowTerm::id(mod());
    auto k = gen_by_name(name);
    if (!k) {
      i_ = at;
      fail("unknown generator '" + name + "'");
    }
    return ArrowTerm::gen(*k, mod());
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline ArrowTerm parse_term(std::string_view text) {
  return detail::Parser(text).parse();
}

struct Type {
  Modality src, tgt;
  friend bool operator==(const Type&, const Type&) = default;
};

inline Type gen_type(GenKind k, const Modality& a) {
  const auto& g = info(k);
  return {std::string(g.src) + a, std::string(g.tgt) + a};
}

// Theory-independent type inference.
inline Type infer(const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return {t.mod(), t.mod()};
    case ArrowTerm::Tag::Gen: return gen_type(t.kind(), t.mod());
    case ArrowTerm::Tag::App: {
      Type b = infer(t.body());
      return {t.op() + b.src, t.op() + b.tgt};
    }
    case ArrowTerm::Tag::Comp: {
      Type f = infer(t.inner());
      Type g = infer(t.outer());
      if (f.tgt != g.src)
        throw TypeError("composition mismatch: inner target " + show(f.tgt) +
                        ", outer source " + show(g.src));
      return {f.src, g.tgt};
    }
  }
  return {};
}

// I^ctx: append ctx to every index and identity object.
inline ArrowTerm append_context(const ArrowTerm& t, const Modality& ctx) {
  if (ctx.empty()) return t;
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return ArrowTerm::id(t.mod() + ctx);
    case ArrowTerm::Tag::Gen: return ArrowTerm::gen(t.kind(), t.mod() + ctx);
    case ArrowTerm::Tag::App:
      return ArrowTerm::app(t.op(), append_context(t.body(), ctx));
    case ArrowTerm::Tag::Comp:
      return ArrowTerm::comp(append_context(t.outer(), ctx),
                             append_context(t.inner(), ctx));
  }
  return t;
}

inline ArrowTerm dualize(const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return ArrowTerm::id(swap_ops(t.mod()));
    case ArrowTerm::Tag::Gen:
      return ArrowTerm::gen(dual_gen(t.kind()), swap_ops(t.mod()));
    case ArrowTerm::Tag::App:
      return ArrowTerm::app(swap_op(t.op()), dualize(t.body()));
    case ArrowTerm::Tag::Comp:
      return ArrowTerm::comp(dualize(t.inner()), dualize(t.outer()));
  }
  return t;
}

// Right-nested composite of a non-empty list given outermost first.
template <class It>
ArrowTerm compose_all(It first, It last) {
  ArrowTerm acc = *--last;
  while (last != first) acc = ArrowTerm::comp(*--last, acc);
  return acc;
}

}  // namespace modalcoh
