// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "modalcoh/modalcoh.hpp"
#include "oracles.hpp"

using namespace modalcoh;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ArrowTerm P(const std::string& s) { return parse_term(s); }

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (pass) note.str("");
    if (pass) note << why;
    pass = false;
  }
};

long binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Maps between finite ordinals are the s4_dia / s4_dia_chi embeddings of
// value vectors.
FinMap fm(int cod, const std::vector<int>& v) {
  return FinMap{static_cast<int>(v.size()), cod, v};
}

Modality dias(int n) { return Modality(static_cast<std::size_t>(n), kDia); }

void criterion1(Outcome& o) {
  auto t0 = Clock::now();
  long instances = 0, failures = 0, runs = 0;
  for (const auto& id : theory_ids()) {
    const Theory& th = theory(id);
    for (Variant v : th.variants) {
      auto rep = check_soundness(th, v, {3, 2});
      ++runs;
      instances += rep.instances;
      failures += static_cast<long>(rep.failures.size());
      for (const auto& f : rep.failures)
        o.fail(id + "/" + variant_name(v) + " " + f.schema + ": " + f.lhs + " = " + f.rhs);
    }
  }
  double dt = since(t0);
  if (dt > 120) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.pass)
    o.note << runs << " theory/functor pairs, " << instances << " instances, " << failures
           << " failures, " << static_cast<int>(dt) << " s";
}

void criterion2(Outcome& o) {
  const Theory& th = theory("s5");
  ArrowTerm t = P("box(delta_db{e}) . delta_bd{b}");
  Diagram d = interp(th, Variant::Gstd, t);
  SplitEq want = make_spliteq(2, 2, {{S(0), S(1), T(0), T(1)}});
  if (!(std::get<SplitEq>(d) == want)) o.fail("image " + to_json(d));
  if (typecheck(t, th) != Type{"db", "bb"}) o.fail("type");
  if (o.pass) o.note << "{{s0,s1,t0,t1}} : 2 |- 2 (db |- bb)";
}

void criterion3(Outcome& o) {
  const Theory& th = theory("s5");
  SearchOptions opt;
  opt.depth = 8;
  opt.without_redundant = true;
  int proofs = 0, max_steps = 0, equations = 0;
  auto eq = [&](const ArrowTerm& l, const ArrowTerm& r, const std::string& what) {
    ++equations;
    if (decide_equal(th, l, r).kind != Verdict::Equal) o.fail(what + " not equal under Gstd");
  };
  for (const auto& a : words_upto("bd", 2))
    for (char m : std::string("bd")) {
      const std::string M(1, m);
      const std::string dbM = m == kBox ? "delta_bb" : "delta_bd";
      const std::string ddM = m == kDia ? "delta_dd" : "delta_db";
      ArrowTerm bl = append_context(P("box(" + dbM + "{e}) . " + dbM + "{e}"), a);
      ArrowTerm br = append_context(P("delta_bb{" + M + "} . " + dbM + "{e}"), a);
      ArrowTerm dl = append_context(P(ddM + "{e} . dia(" + ddM + "{e})"), a);
      ArrowTerm dr = append_context(P(ddM + "{e} . delta_dd{" + M + "}"), a);
      const std::string tag = "[M=" + M + ",A=" + show(a) + "]";
      eq(bl, br, "box-M assoc " + tag);
      eq(dl, dr, "dia-M assoc " + tag);
      for (auto [l, r, name] : {std::tuple{bl, br, "box-M assoc "}, std::tuple{dl, dr, "dia-M assoc "}}) {
        ProofResult p = prove_equal_bounded(th, l, r, opt);
        if (p.kind != ProofResult::Proved) {
          o.fail(std::string(name) + tag + " not derived within depth 8");
          continue;
        }
        ++proofs;
        max_steps = std::max(max_steps, p.schema_steps());
      }
    }
  for (const auto& a : words_upto("bd", 2)) {
    auto at = [&](const char* s) { return append_context(P(s), a); };
    // Lawvere's replacements for the two interaction laws.
    eq(at("box(eps_box{e}) . box(delta_db{e}) . delta_bd{b}"), at("delta_db{e}"), "lawvere 1a");
    eq(at("eps_box{b} . delta_db{b} . dia(delta_bb{e})"), at("delta_db{e}"), "lawvere 1b");
    eq(at("delta_db{d} . dia(delta_bd{e}) . dia(eps_dia{e})"), at("delta_bd{e}"), "lawvere 2a");
    eq(at("box(delta_dd{e}) . delta_bd{d} . eps_dia{d}"), at("delta_bd{e}"), "lawvere 2b");
    // delta_bb and delta_dd from the mixed comultiplications.
    eq(at("delta_bb{e}"), at("box(delta_db{e}) . delta_bd{b} . eps_dia{b}"), "delta_bb defined");
    eq(at("delta_dd{e}"), at("eps_box{d} . delta_db{d} . dia(delta_bd{e})"), "delta_dd defined");
  }
  if (o.pass)
    o.note << proofs << " associativity instances derived without them (max " << max_steps
           << " schema steps), " << equations << " equations equal";
}

void criterion4(Outcome& o) {
  const Theory& th = theory("s5");
  int n = 0;
  for (const auto& a : words_upto("bd", 3)) {
    // gamma_A = delta_bd{A} . eps_dia{A}, phi_A = eps_box{A} . delta_db{A}.
    auto ix = [&](const char* p) { return "{" + show(p + a) + "}"; };
    const std::string A = show(a);
    ArrowTerm left = P("eps_box" + ix("d") + " . delta_db" + ix("d") + " . dia(delta_bd" +
                       ix("") + " . eps_dia" + ix("") + ")");
    ArrowTerm right = P("box(eps_box" + ix("") + " . delta_db" + ix("") + ") . delta_bd" +
                        ix("b") + " . eps_dia" + ix("b"));
    if (decide_equal(th, left, P("id" + ix("d"))).kind != Verdict::Equal)
      o.fail("first triangle at A=" + A);
    if (decide_equal(th, right, P("id" + ix("b"))).kind != Verdict::Equal)
      o.fail("second triangle at A=" + A);
    n += 2;
  }
  if (o.pass) o.note << n << " triangle instances equal";
}

void criterion5(Outcome& o) {
  auto t0 = Clock::now();
  long checked = 0;
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      auto r = enum_hom({"s4_dia", dias(m), dias(n), 0});
      long want = m == 0 ? 1 : binom(m + n - 1, m);
      if (static_cast<long>(r.entries.size()) != want)
        o.fail("s4_dia " + std::to_string(m) + "->" + std::to_string(n) + ": " +
               std::to_string(r.entries.size()) + " != " + std::to_string(want));
      // Each image is the graph of a monotone map whose embedding returns it.
      std::set<FinMap> maps;
      for (const auto& e : r.entries) {
        auto h = function_of(std::get<RelDiagram>(e.diagram));
        if (!h || !h->monotone()) {
          o.fail("s4_dia image is not a monotone graph");
          continue;
        }
        maps.insert(*h);
        if (!(interp(theory("s4_dia"), Variant::Gstd, embed_monotone(*h)) == e.diagram))
          o.fail("monotone embedding round trip");
        ++checked;
      }
      long mono = 0;
      for (const auto& v : oracle::all_functions(m, n)) mono += oracle::is_monotone(v);
      if (static_cast<long>(maps.size()) != mono) o.fail("s4_dia images are not all monotone maps");
    }
  const Theory& chi = theory("s4_dia_chi");
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      auto r = enum_hom({"s4_dia_chi", dias(m), dias(n), 0});
      long want = 1;
      for (int i = 0; i < m; ++i) want *= n;
      if (static_cast<long>(r.entries.size()) != want)
        o.fail("s4_dia_chi " + std::to_string(m) + "->" + std::to_string(n) + ": " +
               std::to_string(r.entries.size()) + " != " + std::to_string(want));
      for (const auto& v : oracle::all_functions(m, n)) {
        FinMap h = fm(n, v);
        for (const char* kind : {"injection", "surjection"}) {
          bool fits = std::string(kind) == "injection" ? h.injective() : h.surjective();
          if (!fits) continue;
          ArrowTerm t = embed(kind, h);
          Diagram d = interp(chi, Variant::Gstd, t);
          if (!(std::get<RelDiagram>(d) == graph(h)) || function_of(std::get<RelDiagram>(d)) != h)
            o.fail(std::string(kind) + " embedding round trip");
          ++checked;
        }
      }
    }
  double dt = since(t0);
  if (dt > 120) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.pass) o.note << checked << " round trips, all counts exact, " << dt << " s";
}

void criterion6(Outcome& o) {
  long maps = 0;
  for (int dom = 0; dom <= 5; ++dom)
    for (int cod = 0; cod <= 5; ++cod)
      for (const auto& v : oracle::all_functions(dom, cod)) {
        if (!oracle::is_monotone(v)) continue;
        ++maps;
        FinMap h = fm(cod, v);
        // Brute force over every pair of monotone maps through every
        // interpolant size.
        std::vector<std::pair<FinMap, FinMap>> si, is;
        for (int k = 0; k <= dom + cod; ++k)
          for (const auto& a : oracle::monotone_functions(dom, k))
            for (const auto& b : oracle::monotone_functions(k, cod)) {
              if (oracle::compose(b, a) != v) continue;
              if (oracle::is_surjective(a, k) && oracle::is_injective(b))
                si.push_back({fm(k, a), fm(cod, b)});
              if (oracle::is_injective(a) && oracle::is_surjective(b, cod) &&
                  k == dom + cod - h.image_size())
                is.push_back({fm(k, a), fm(cod, b)});
            }
        if (si.size() != 1 || decompose_surj_inj(h) != si.front())
          o.fail("surjection-injection factorization of " + to_json_value(h).dump());
        auto ij = decompose_inj_surj(h);
        if (ij.first.cod != dom + cod - h.image_size())
          o.fail("interpolant size for " + to_json_value(h).dump());
        if (is.size() != 1 || ij != is.front())
          o.fail("injection-surjection factorization of " + to_json_value(h).dump());
      }
  if (o.pass) o.note << maps << " monotone maps, both factorizations unique and matched";
}

void criterion7(Outcome& o) {
  const Theory& th = theory("t_box");
  auto rep = confluence_check(th, 5);
  if (!rep.ok())
    o.fail(std::to_string(rep.divergent.size()) + " terms with several normal forms");
  // Normal forms against G^eps images, per hom-set.
  std::map<std::pair<Modality, Modality>, std::map<Chain, Diagram>> nf_image;
  std::map<std::pair<Modality, Modality>, std::set<Diagram>> images;
  for (const auto& src : words_upto("b", 6))
    for (const auto& c : enumerate_chains(th, src, 5)) {
      Chain n = nat_normal(c);
      Diagram d = interp_chain(th, Variant::Geps, c);
      nf_image[{c.src, c.tgt()}].emplace(n, d);
      images[{c.src, c.tgt()}].insert(d);
    }
  long homs = 0;
  for (const auto& [key, m] : nf_image) {
    ++homs;
    std::set<Diagram> hit;
    for (const auto& [n, d] : m) hit.insert(d);
    if (hit.size() != m.size()) o.fail("two normal forms share an image on " + show(key.first) + " |- " + show(key.second));
    if (hit != images[key]) o.fail("image without a normal form");
  }
  if (o.pass)
    o.note << rep.terms << " terms, " << rep.normal_forms << " normal forms, bijective on "
           << homs << " hom-sets";
}

void criterion8(Outcome& o) {
  auto t0 = Clock::now();
  struct Bound {
    const char* id;
    std::size_t src_len;
  };
  long total_pairs = 0, guard_pairs = 0;
  std::ostringstream per;
  for (auto [id, len] : {Bound{"t_box", 6}, Bound{"s4_box", 3}, Bound{"s4_dia", 3},
                         Bound{"s4_boxdia", 2}, Bound{"s42", 2}, Bound{"s5", 2}}) {
    const Theory& th = theory(id);
    std::map<std::pair<Modality, Modality>, std::map<Diagram, std::vector<Chain>>> groups;
    std::set<Chain> seen;
    for (const auto& w : words_upto(th.alphabet, len))
      for (const auto& c : enumerate_chains(th, w, 4))
        if (seen.insert(c).second)
          groups[{c.src, c.tgt()}][interp_chain(th, Variant::Gstd, c)].push_back(c);
    long pairs = 0, unknown = 0;
    std::mt19937 rng(8);
    long guard = 0;
    try {
      for (const auto& [type, by_image] : groups) {
        for (const auto& [img, cs] : by_image)
          for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
              ++pairs;
              auto r = prove_equal_bounded(th, chain_term(cs[i]), chain_term(cs[j]));
              if (r.kind != ProofResult::Proved && ++unknown <= 3)
                o.fail(std::string(id) + ": no proof for " + print(chain_term(cs[i])) + " = " +
                       print(chain_term(cs[j])));
            }
        // Guard sample: parallel pairs with different images.
        if (by_image.size() >= 2 && guard < 12 && rng() % 4 == 0) {
          const auto& a = by_image.begin()->second.front();
          const auto& b = std::next(by_image.begin())->second.front();
          ++guard;
          if (prove_equal_bounded(th, chain_term(a), chain_term(b)).kind == ProofResult::Proved)
            o.fail(std::string(id) + ": proved unequal images");
        }
      }
    } catch (const SoundnessViolation& e) {
      o.fail(std::string(id) + ": " + e.what());
    }
    total_pairs += pairs;
    guard_pairs += guard;
    per << " " << id << "=" << pairs;
  }
  if (o.pass)
    o.note << total_pairs << " equal-image pairs proved (" << per.str().substr(1) << "), "
           << guard_pairs << " unequal pairs left unproved, " << static_cast<int>(since(t0)) << " s";
}

void criterion9(Outcome& o) {
  NamedEquation bd = box_dia_equation();
  const Theory& sb = theory("s4_boxdia_sharp");
  if (interp_sharp(sb, bd.lhs) == interp_sharp(sb, bd.rhs)) o.fail("box_dia sides agree under G#");
  const Theory& s42 = theory("s42_sharp");
  for (const auto& e : s42_sharp_failures())
    if (interp_sharp(s42, e.lhs) == interp_sharp(s42, e.rhs)) o.fail(e.name + " sides agree under G#");
  int n = 0;
  for (const auto& id : {"s5", "fives"}) {
    const Theory& th = theory(id);
    for (const auto& e : preordering_catalog(id)) {
      ++n;
      if (interp(th, Variant::Gstd, e.lhs) == interp(th, Variant::Gstd, e.rhs))
        o.fail(std::string(id) + " " + e.name + " sides agree");
    }
  }
  if (o.pass) o.note << "1 + 4 sharp contrasts, " << n << " preordering equations, all unequal";
}

void criterion10(Outcome& o) {
  SkeletonDiagram k = skeleton("s4_boxdia_triv");
  if (k.objects.size() != 7) o.fail("s4_boxdia_triv has " + std::to_string(k.objects.size()) + " objects");
  // Transitive closure of the drawn arrows, by repeated relaxation.
  const std::size_t n = k.objects.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& a : k.arrows)
        if (reach[i][static_cast<std::size_t>(k.index_of(a.src))] &&
            !reach[i][static_cast<std::size_t>(k.index_of(a.tgt))])
          reach[i][static_cast<std::size_t>(k.index_of(a.tgt))] = changed = true;
  }
  if (reach != k.closure) o.fail("reachability differs from the closure");
  int searched = 0;
  for (const auto& a : k.objects)
    for (const auto& b : k.objects) {
      auto r = enum_hom({"s4_boxdia", a, b, 12});
      ++searched;
      std::size_t want_max = (a == "bdb" && b == "dbd") ? 2 : 1;
      if ((a == "bdb" && b == "dbd" && r.entries.size() != 2) || r.entries.size() > want_max)
        o.fail(show(a) + " |- " + show(b) + ": " + std::to_string(r.entries.size()) + " diagrams");
      if (k.reaches(a, b) != !r.entries.empty())
        o.fail(show(a) + " |- " + show(b) + " disagrees with the skeleton");
    }
  if (skeleton("s42_triv").objects.size() != 5) o.fail("s42_triv object count");
  if (skeleton("s5_triv").objects.size() != 3) o.fail("s5_triv object count");
  if (skeleton("fives_triv").objects.size() != 3) o.fail("fives_triv object count");
  if (!enum_hom({"fives", "", "b", 0}).entries.empty()) o.fail("Hom_fives(e, b) not empty");
  if (!enum_hom({"fives", "d", "", 0}).entries.empty()) o.fail("Hom_fives(d, e) not empty");
  if (o.pass) o.note << "7/5/3/3 objects, " << searched << " skeleton hom-sets searched, bdb |- dbd has 2";
}

void criterion11(Outcome& o) {
  const Theory& s5 = theory("s5");
  const Theory& fives = theory("fives");
  std::mt19937 rng(11);
  auto words = words_upto("bd", 3);
  int n = 0;
  while (n < 500) {
    Chain c = random_chain(s5, rng, words[rng() % words.size()], 1 + static_cast<int>(rng() % 6));
    ArrowTerm t = chain_term(c);
    ArrowTerm m = mirror_term(t, "s5");
    ++n;
    if (typecheck(m, fives) != Type{reversed(c.src), reversed(c.tgt())}) {
      o.fail("type of mirror of " + print(t));
      continue;
    }
    if (!(interp(fives, Variant::Gstd, m) == mirror(interp(s5, Variant::Gstd, t))))
      o.fail("interp does not commute with mirror for " + print(t));
    if (decide_equal(s5, mirror_term(m, "fives"), t).kind != Verdict::Equal)
      o.fail("double mirror of " + print(t));
  }
  if (o.pass) o.note << n << " random terms";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"soundness sweep", criterion1},
      {"worked composition", criterion2},
      {"redundancy derivations", criterion3},
      {"adjunction triangles", criterion4},
      {"counting and embeddings", criterion5},
      {"decomposition uniqueness", criterion6},
      {"confluence and normal forms", criterion7},
      {"desk-scale completeness", criterion8},
      {"quotient contrasts", criterion9},
      {"skeleton validation", criterion10},
      {"mirror isomorphism", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): "
              << (o.pass ? "PASS" : "FAIL") << " - " << o.note.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
