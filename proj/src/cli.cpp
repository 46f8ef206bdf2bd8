#include "cli.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modalcoh/modalcoh.hpp"

namespace modalcoh::cli {

namespace {

using nlohmann::json;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json term_json(const ArrowTerm& t) {
  switch (t.tag()) {
    case ArrowTerm::Tag::Id: return {{"id", show(t.mod())}};
    case ArrowTerm::Tag::Gen:
      return {{"gen", std::string(info(t.kind()).name)}, {"index", show(t.mod())}};
    case ArrowTerm::Tag::App:
      return {{"app", t.op() == kBox ? "box" : "dia"}, {"body", term_json(t.body())}};
    case ArrowTerm::Tag::Comp:
      return {{"comp", {term_json(t.outer()), term_json(t.inner())}}};
  }
  return {};
}

std::string type_str(const Type& ty) { return show(ty.src) + " |- " + show(ty.tgt); }

void print_diagram(std::ostream& out, const Diagram& d, const std::string& fmt) {
  if (fmt == "json")
    out << to_json(d) << "\n";
  else
    out << render_ascii(d) << "\n";
}

// Hand-rolled binomial; exact for the small sizes the suite uses.
long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int suite_soundness(const Theory& th, int bound, std::ostream& out) {
  bool ok = true;
  for (Variant v : th.variants) {
    auto rep = check_soundness(th, v, {static_cast<std::size_t>(bound), 2});
    out << th.id << " " << variant_name(v) << ": " << rep.instances << " instances, "
        << rep.failures.size() << " failures\n";
    for (const auto& f : rep.failures)
      out << "  " << f.schema << ": " << f.lhs << " = " << f.rhs << "\n    " << f.left
          << "\n    " << f.right << "\n";
    ok = ok && rep.ok();
  }
  return ok ? 0 : 1;
}

int suite_confluence(const Theory& th, int bound, std::ostream& out) {
  auto rep = confluence_check(th, bound);
  out << th.id << ": " << rep.terms << " terms, " << rep.normal_forms << " normal forms, "
      << rep.divergent.size() << " divergent\n";
  for (const auto& [c, nfs] : rep.divergent) {
    out << "  " << print(chain_term(c)) << " ->";
    for (const auto& n : nfs) out << " [" << print(chain_term(n)) << "]";
    out << "\n";
  }
  return rep.ok() ? 0 : 1;
}

// interp . synthesize . interp agrees with interp on every enumerated term.
int suite_roundtrip(const Theory& th, int bound, std::ostream& out) {
  if (th.quotient != Quotient::None)
    throw DomainError("roundtrip needs a theory without quotient");
  long terms = 0, bad = 0;
  for (const auto& w : words_upto(th.alphabet, static_cast<std::size_t>(bound)))
    for (const auto& c : enumerate_chains(th, w, bound)) {
      ++terms;
      ArrowTerm t = chain_term(c);
      if (parse_term(print(t)) != t) {
        ++bad;
        out << "  print/parse: " << print(t) << "\n";
        continue;
      }
      Diagram d = interp(th, Variant::Gstd, t);
      ArrowTerm s = synthesize(th, d);
      if (!(interp(th, Variant::Gstd, s) == d)) {
        ++bad;
        out << "  synthesize: " << print(t) << " -> " << print(s) << "\n";
      }
    }
  out << th.id << ": " << terms << " terms, " << bad << " mismatches\n";
  return bad == 0 ? 0 : 1;
}

int suite_counting(const Theory& th, int bound, std::ostream& out) {
  const bool mono = th.id == "s4_dia";
  if (!mono && th.id != "s4_dia_chi")
    throw DomainError("counting suite is defined for s4_dia and s4_dia_chi");
  long bad = 0;
  for (int m = 0; m <= bound; ++m)
    for (int n = 0; n <= bound; ++n) {
      long want = mono ? (m == 0 ? 1 : choose(m + n - 1, m))
                       : static_cast<long>(std::llround(std::pow(n, m)));
      auto r = enum_hom({th.id, Modality(static_cast<std::size_t>(m), kDia),
                         Modality(static_cast<std::size_t>(n), kDia), 0});
      long got = static_cast<long>(r.entries.size());
      out << m << " -> " << n << ": " << got << (got == want ? "" : " (expected ")
          << (got == want ? "" : std::to_string(want) + ")") << "\n";
      bad += got != want;
    }
  return bad == 0 ? 0 : 1;
}

const Theory& theory_arg(const std::string& id) {
  try {
    return theory(id);
  } catch (const std::invalid_argument& e) {
    throw DomainError(e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deductions between positive modalities: typing, coherence images, "
               "normal forms and proof search"};
  app.require_subcommand(1);

  std::string th_id, fmt = "ascii", functor, term1, term2, from, to, kind, map_text,
                     suite, mirror_from = "s5";
  int depth = default_depth(), budget = 0, bound = 3, cod = -1;

  auto* c_parse = app.add_subcommand("parse", "Parse and print a term");
  c_parse->add_option("term", term1)->required();
  c_parse->add_option("--format", fmt)->check(CLI::IsMember({"ascii", "json"}));

  auto* c_type = app.add_subcommand("type", "Type of a term");
  c_type->add_option("--theory", th_id)->required();
  c_type->add_option("term", term1)->required();

  auto* c_interp = app.add_subcommand("interp", "Coherence image of a term");
  c_interp->add_option("--theory", th_id)->required();
  c_interp->add_option("--functor", functor)
      ->check(CLI::IsMember({"std", "eps", "delta", "dual", "sharp"}));
  c_interp->add_option("--format", fmt)->check(CLI::IsMember({"ascii", "json"}));
  c_interp->add_option("term", term1)->required();

  auto* c_eq = app.add_subcommand("eq", "Decide equality of two terms");
  c_eq->add_option("--theory", th_id)->required();
  c_eq->add_option("--format", fmt)->check(CLI::IsMember({"ascii", "json"}));
  c_eq->add_option("lhs", term1)->required();
  c_eq->add_option("rhs", term2)->required();

  auto* c_nf = app.add_subcommand("nf", "Normal form of a term");
  c_nf->add_option("--theory", th_id)->required();
  c_nf->add_option("term", term1)->required();

  auto* c_prove = app.add_subcommand("prove", "Bounded equational proof search");
  c_prove->add_option("--theory", th_id)->required();
  c_prove->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
  c_prove->add_option("--format", fmt)->check(CLI::IsMember({"ascii", "json"}));
  c_prove->add_option("lhs", term1)->required();
  c_prove->add_option("rhs", term2)->required();

  auto* c_hom = app.add_subcommand("hom", "Enumerate a hom-set");
  c_hom->add_option("--theory", th_id)->required();
  c_hom->add_option("--from", from)->required();
  c_hom->add_option("--to", to)->required();
  c_hom->add_option("--budget", budget)->check(CLI::NonNegativeNumber);
  c_hom->add_option("--format", fmt)->check(CLI::IsMember({"ascii", "json"}));

  auto* c_embed = app.add_subcommand("embed", "Term for a finite-ordinal function");
  c_embed->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"monotone", "injection", "surjection", "function"}));
  c_embed->add_option("--map", map_text)->required();
  c_embed->add_option("--cod", cod, "codomain size (default: max value + 1)");
  c_embed->add_option("--format", fmt)->check(CLI::IsMember({"ascii", "json"}));

  auto* c_mirror = app.add_subcommand("mirror", "Mirror a term between s5 and fives");
  c_mirror->add_option("--from", mirror_from)->check(CLI::IsMember({"s5", "fives"}));
  c_mirror->add_option("term", term1)->required();

  auto* c_skel = app.add_subcommand("skeleton", "Skeleton of a preorder quotient");
  c_skel->add_option("--theory", th_id)->required();
  c_skel->add_option("--format", fmt)->check(CLI::IsMember({"ascii", "json"}));

  auto* c_check = app.add_subcommand("check", "Run a verification suite");
  c_check->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"soundness", "confluence", "roundtrip", "counting"}));
  c_check->add_option("--theory", th_id)->required();
  c_check->add_option("--bound", bound)->check(CLI::Range(0, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (c_parse->parsed()) {
      ArrowTerm t = parse_term(term1);
      if (fmt == "json")
        out << term_json(t).dump() << "\n";
      else
        out << print(t) << "\n";
      return 0;
    }
    if (c_type->parsed()) {
      out << type_str(typecheck(parse_term(term1), theory_arg(th_id))) << "\n";
      return 0;
    }
    if (c_interp->parsed()) {
      const Theory& th = theory_arg(th_id);
      Variant v = default_variant(th);
      if (!functor.empty()) v = *variant_by_name(functor);
      print_diagram(out, interp(th, v, parse_term(term1)), fmt);
      return 0;
    }
    if (c_eq->parsed()) {
      const Theory& th = theory_arg(th_id);
      Verdict v = decide_equal(th, parse_term(term1), parse_term(term2));
      if (fmt == "json") {
        json j{{"verdict", verdict_name(v.kind)},
               {"ltype", {show(v.ltype.src), show(v.ltype.tgt)}},
               {"rtype", {show(v.rtype.src), show(v.rtype.tgt)}}};
        if (v.left) j["left"] = to_json_value(*v.left);
        if (v.right) j["right"] = to_json_value(*v.right);
        out << j.dump() << "\n";
      } else {
        out << verdict_name(v.kind) << "\n";
        if (v.kind == Verdict::TypeMismatch)
          out << "  " << type_str(v.ltype) << "  vs  " << type_str(v.rtype) << "\n";
        if (v.kind == Verdict::NotEqual)
          out << render_ascii(*v.left) << "\n--\n" << render_ascii(*v.right) << "\n";
      }
      return v.kind == Verdict::Equal ? 0 : v.kind == Verdict::NotEqual ? 1 : 2;
    }
    if (c_nf->parsed()) {
      out << print(normalize(theory_arg(th_id), parse_term(term1))) << "\n";
      return 0;
    }
    if (c_prove->parsed()) {
      const Theory& th = theory_arg(th_id);
      SearchOptions opt;
      opt.depth = depth;
      ProofResult r = prove_equal_bounded(th, parse_term(term1), parse_term(term2), opt);
      const bool proved = r.kind == ProofResult::Proved;
      if (fmt == "json") {
        out << json{{"result", proved ? "Proved" : "Unknown"},
                    {"nodes", r.nodes},
                    {"derivation", derivation_json(r)}}
                   .dump()
            << "\n";
      } else {
        out << (proved ? "Proved" : "Unknown") << " (" << r.schema_steps()
            << " schema steps, " << r.nodes << " nodes)\n";
        for (const auto& s : r.steps) {
          out << "  " << s.schema;
          if (s.schema != "nat")
            out << " [" << s.at << "," << s.at + s.len << ") "
                << (s.forward ? "lr" : "rl") << " Q=" << show(s.q) << " A=" << show(s.a);
          out << "\n    " << print(chain_term(s.result)) << "\n";
        }
      }
      return proved ? 0 : 1;
    }
    if (c_hom->parsed()) {
      HomQuery q{th_id, read_modality(from), read_modality(to), budget};
      theory_arg(th_id);
      HomResult r = enum_hom(q);
      if (fmt == "json") {
        json arr = json::array();
        for (const auto& e : r.entries) {
          json j{{"diagram", to_json_value(e.diagram)}};
          if (e.witness) j["witness"] = print(*e.witness);
          arr.push_back(j);
        }
        out << json{{"theory", th_id}, {"exact", r.exact}, {"arrows", arr}}.dump() << "\n";
      } else {
        out << r.entries.size() << " diagrams" << (r.exact ? "" : " (bounded search)")
            << "\n";
        for (const auto& e : r.entries) {
          out << "\n" << render_ascii(e.diagram) << "\n";
          if (e.witness) out << "  " << print(*e.witness) << "\n";
        }
      }
      return 0;
    }
    if (c_embed->parsed()) {
      FinMap h = parse_finmap(map_text, cod);
      ArrowTerm t = embed(kind, h);
      const Theory& th = theory(embed_theory(kind));
      Diagram d = interp(th, Variant::Gstd, t);
      if (fmt == "json") {
        out << json{{"map", to_json_value(h)},
                    {"theory", th.id},
                    {"term", print(t)},
                    {"diagram", to_json_value(d)}}
                   .dump()
            << "\n";
      } else {
        out << print(t) << "\n" << type_str(typecheck(t, th)) << "\n" << render_ascii(d)
            << "\n";
      }
      return 0;
    }
    if (c_mirror->parsed()) {
      ArrowTerm t = mirror_term(parse_term(term1), mirror_from);
      out << print(t) << "\n";
      return 0;
    }
    if (c_skel->parsed()) {
      SkeletonDiagram s = skeleton(th_id);
      if (fmt == "json") {
        out << to_json_value(s).dump() << "\n";
      } else {
        out << "objects:";
        for (const auto& o : s.objects) out << " " << show(o);
        out << "\n";
        for (const auto& a : s.arrows)
          out << "  " << show(a.src) << " -> " << show(a.tgt) << "  " << print(a.label)
              << "\n";
      }
      return 0;
    }
    if (c_check->parsed()) {
      const Theory& th = theory_arg(th_id);
      if (suite == "soundness") return suite_soundness(th, bound, out);
      if (suite == "confluence") return suite_confluence(th, bound, out);
      if (suite == "roundtrip") return suite_roundtrip(th, bound, out);
      return suite_counting(th, bound, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace modalcoh::cli
