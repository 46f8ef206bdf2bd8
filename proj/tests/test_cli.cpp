#include <sstream>
#include <vector>

#include "catch_amalgamated.hpp"
#include "cli.hpp"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "modalcoh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = modalcoh::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse and type") {
  auto r = run({"parse", "box( eps_box{e} )"});
  CHECK(r.code == 0);
  CHECK(r.out == "box(eps_box{e})\n");
  r = run({"parse", "--format", "json", "eps_box{b}"});
  CHECK(nlohmann::json::parse(r.out)["gen"] == "eps_box");
  r = run({"type", "--theory", "s5", "box(delta_db{e}) . delta_bd{b}"});
  CHECK(r.out == "db |- bb\n");
}

TEST_CASE("interp formats") {
  auto r = run({"interp", "--theory", "s5", "--format", "json", "box(delta_db{e}) . delta_bd{b}"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "spliteq");
  CHECK(j["classes"].size() == 1);
  r = run({"interp", "--theory", "t_box", "--functor", "delta", "eps_box{b}"});
  CHECK(r.code == 0);
  CHECK(r.out.find("links: 1-0") != std::string::npos);
}

TEST_CASE("eq exit codes") {
  CHECK(run({"eq", "--theory", "s5", "box(delta_db{e}) . delta_bd{b}", "delta_bb{e} . delta_db{e}"})
            .code == 0);
  CHECK(run({"eq", "--theory", "s4_boxdia", "box(eps_box{e})", "eps_box{b}"}).code == 1);
  CHECK(run({"eq", "--theory", "s4_boxdia", "eps_box{e}", "id{b}"}).code == 2);
  auto r = run({"eq", "--theory", "s4_boxdia", "--format", "json", "box(eps_box{e})", "eps_box{b}"});
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "NotEqual");
}

TEST_CASE("nf and prove") {
  auto r = run({"nf", "--theory", "t_box", "eps_box{b} . box(eps_box{b})"});
  CHECK(r.out == "eps_box{b} . eps_box{bb}\n");
  r = run({"prove", "--theory", "s4_boxdia", "--depth", "4", "box(eps_box{e}) . delta_bb{e}", "id{b}"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("Proved", 0) == 0);
  r = run({"prove", "--theory", "s4_boxdia", "box(eps_box{e})", "eps_box{b}"});
  CHECK(r.code == 1);
  r = run({"prove", "--theory", "s4_boxdia", "--format", "json", "box(eps_box{e}) . delta_bb{e}",
           "id{b}"});
  CHECK(nlohmann::json::parse(r.out)["result"] == "Proved");
}

TEST_CASE("hom, embed, mirror, skeleton") {
  auto r = run({"hom", "--theory", "s4_boxdia", "--from", "bdb", "--to", "dbd"});
  CHECK(r.out.rfind("2 diagrams\n", 0) == 0);
  r = run({"hom", "--theory", "s4_boxdia", "--from", "bdb", "--to", "dbd", "--budget", "12",
           "--format", "json"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["exact"] == false);
  CHECK(j["arrows"].size() == 2);
  r = run({"embed", "--kind", "monotone", "--map", "0,0,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ddd |- ddd") != std::string::npos);
  r = run({"embed", "--kind", "injection", "--map", "0,0"});
  CHECK(r.code == 65);
  r = run({"mirror", "--from", "s5", "delta_bd{e}"});
  CHECK(r.out == "sigma_db{e}\n");
  r = run({"skeleton", "--theory", "s4_boxdia_triv", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["objects"].size() == 7);
}

TEST_CASE("check suites") {
  CHECK(run({"check", "--suite", "soundness", "--theory", "s4_box", "--bound", "2"}).code == 0);
  CHECK(run({"check", "--suite", "confluence", "--theory", "t_box", "--bound", "3"}).code == 0);
  CHECK(run({"check", "--suite", "roundtrip", "--theory", "s5", "--bound", "2"}).code == 0);
  CHECK(run({"check", "--suite", "counting", "--theory", "s4_dia_chi", "--bound", "3"}).code == 0);
  CHECK(run({"check", "--suite", "confluence", "--theory", "s5", "--bound", "2"}).code == 65);
}

TEST_CASE("usage and domain errors") {
  CHECK(run({}).code == 64);
  CHECK(run({"bogus"}).code == 64);
  CHECK(run({"eq", "--theory", "s5", "id{b}"}).code == 64);
  CHECK(run({"interp", "--theory", "s5", "--functor", "nope", "id{b}"}).code == 64);
  CHECK(run({"--help"}).code == 0);
  auto r = run({"type", "--theory", "s5", "eps_box{e} . eps_dia{e}"});
  CHECK(r.code == 65);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(run({"type", "--theory", "nope", "id{b}"}).code == 65);
  CHECK(run({"parse", "box("}).code == 65);
  CHECK(run({"hom", "--theory", "s4_box", "--from", "d", "--to", "b"}).code == 65);
}

TEST_CASE("output is deterministic") {
  auto a = run({"hom", "--theory", "s5", "--from", "db", "--to", "bd", "--format", "json"});
  auto b = run({"hom", "--theory", "s5", "--from", "db", "--to", "bd", "--format", "json"});
  CHECK(a.out == b.out);
}
