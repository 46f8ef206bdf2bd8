#include "catch_amalgamated.hpp"
#include "modalcoh/modalcoh.hpp"

using namespace modalcoh;

namespace {

// Reachability by breadth-first search from each object.
std::vector<std::vector<bool>> bfs_closure(const SkeletonDiagram& s) {
  const std::size_t n = s.objects.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> todo{i};
    r[i][i] = true;
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      for (const auto& a : s.arrows)
        if (a.src == s.objects[x]) {
          auto y = static_cast<std::size_t>(s.index_of(a.tgt));
          if (!r[i][y]) r[i][y] = true, todo.push_back(y);
        }
    }
  }
  return r;
}

}  // namespace

TEST_CASE("skeleton shapes") {
  CHECK(skeleton("s4_boxdia_triv").objects.size() == 7);
  CHECK(skeleton("s42_triv").objects.size() == 5);
  CHECK(skeleton("s5_triv").objects.size() == 3);
  CHECK(skeleton("fives_triv").objects.size() == 3);
  CHECK_THROWS(skeleton("s5"));
}

TEST_CASE("skeleton closure and hom-set nonemptiness agree") {
  for (const auto& [id, base] : std::vector<std::pair<std::string, std::string>>{
           {"s4_boxdia_triv", "s4_boxdia"},
           {"s42_triv", "s42"},
           {"s5_triv", "s5"},
           {"fives_triv", "fives"}}) {
    SkeletonDiagram s = skeleton(id);
    CHECK(s.closure == bfs_closure(s));
    for (const auto& a : s.arrows) CHECK(typechecks(a.label, theory(id)));
    for (const auto& x : s.objects)
      for (const auto& y : s.objects) {
        CAPTURE(id, show(x), show(y));
        bool nonempty = !enum_hom({base, x, y, 0}).entries.empty();
        CHECK(s.reaches(x, y) == nonempty);
        CHECK(enum_hom({id, x, y, 0}).entries.size() == (nonempty ? 1u : 0u));
      }
  }
}

TEST_CASE("skeleton json") {
  auto j = to_json_value(skeleton("s42_triv"));
  CHECK(j["objects"].size() == 5);
  CHECK(j["arrows"].size() == 5);
  CHECK(j["reaches"]["b"].size() == 5);
  CHECK(j["reaches"]["d"].size() == 1);
}

TEST_CASE("preordering equations separate s5 from its preorder") {
  for (const auto& id : {"s5", "fives"}) {
    const Theory& th = theory(id);
    const Theory& tv = theory(std::string(id) + "_triv");
    for (const auto& ctx : words_upto("bd", 2))
      for (const auto& e : preordering_catalog(id, ctx)) {
        CAPTURE(id, e.name, show(ctx));
        CHECK(decide_equal(th, e.lhs, e.rhs).kind == Verdict::NotEqual);
        CHECK(decide_equal(tv, e.lhs, e.rhs).kind == Verdict::Equal);
      }
  }
}

TEST_CASE("sharp contrasts") {
  NamedEquation bd = box_dia_equation();
  CHECK(decide_equal(theory("s4_boxdia_sharp"), bd.lhs, bd.rhs).kind == Verdict::NotEqual);
  CHECK(decide_equal(theory("s4_boxdia_triv"), bd.lhs, bd.rhs).kind == Verdict::Equal);
  for (const auto& e : s42_sharp_failures()) {
    CAPTURE(e.name);
    CHECK(decide_equal(theory("s42_sharp"), e.lhs, e.rhs).kind == Verdict::NotEqual);
    CHECK(decide_equal(theory("s42_triv"), e.lhs, e.rhs).kind == Verdict::Equal);
  }
}

TEST_CASE("the sharp quotient identifies repeated operators") {
  const Theory& q = theory("s4_boxdia_sharp");
  const Theory& b = theory("s4_boxdia");
  ArrowTerm f = parse_term("box(eps_box{e})"), g = parse_term("eps_box{b}");
  CHECK(decide_equal(b, f, g).kind == Verdict::NotEqual);
  CHECK(decide_equal(q, f, g).kind == Verdict::Equal);
  // G# lands on the sharp words.
  RelDiagram d = interp_sharp(q, parse_term("id{bbdd}"));
  CHECK(d.src == 2);
  CHECK(d.tgt == 2);
}
