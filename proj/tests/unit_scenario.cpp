#include <fstream>

#include "ci0/scenario.hpp"
#include "doctest.h"

using namespace ci0;
namespace fs = std::filesystem;

#ifndef CI0_CORPUS_DIR
#define CI0_CORPUS_DIR "corpus"
#endif

namespace {

const fs::path corpus = CI0_CORPUS_DIR;

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ci0_scenario_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

Evaluator ewi_eval() {
  RingSpec r = ring_spec_from_json(read_json_file(corpus / "rings" / "ewi.json"));
  return Evaluator(build_algebra(r), corpus / "scenarios", 0);
}

}  // namespace

TEST_CASE("ring specs") {
  RingSpec r = ring_spec_from_json(read_json_file(corpus / "rings" / "eouf.json"));
  CHECK(r.vars == std::vector<std::string>{"x", "y"});
  CHECK(ring_spec_from_json(to_json(r)).relations == r.relations);
  auto A = build_algebra(r);
  CHECK(A->dim() == 9);
  auto B = build_algebra(r, "GF(5)");
  CHECK(B->field() == Field::prime(5));
  CHECK_THROWS_AS(ring_spec_from_json(Json{{"vars", {"x"}}}), InputError);
  CHECK_THROWS_AS(build_algebra(r, "GF(6)"), Error);
}

TEST_CASE("ideal expressions") {
  Evaluator ev = ewi_eval();
  auto A = ev.algebra();
  CHECK(ev.ideal("M") == maximal_ideal(A));
  CHECK(ev.ideal("0").is_zero());
  CHECK(ev.ideal(Json{{"socle", Json::object()}}) == ev.ideal(Json{{"power", 3}}));
  CHECK(ev.ideal(Json{{"ann", "x"}}) == ev.ideal(Json::array({"x"})));
  Json col = {{"colon", {{"of", "0"}, {"by", {"x", "y"}}}}};
  CHECK(ev.ideal(col) == ev.ideal(Json{{"gens", {"x*y"}}}));
  CHECK(ev.ideal(Json{{"sum", {{"x"}, {"y"}}}}) == ev.ideal(Json{{"gens", {"x", "y"}}}));
  CHECK(ev.ideal(Json{{"product", {{"x"}, {"y"}}}}) == ev.ideal("x*y"));
  CHECK(ev.ideal(Json{{"intersection", {{"x"}, {"y"}}}}) == ev.ideal("x*y"));
  CHECK(ev.ideal(Json{{"J", "../matrices/ewi_phi1.json"}}) == ev.ideal(Json::array({"x"})));
  CHECK_THROWS_AS(ev.ideal(Json{{"bogus", 1}}), InputError);
  CHECK_THROWS_AS(ev.element(Json(1.5)), InputError);
}

TEST_CASE("values compare by meaning") {
  Evaluator ev = ewi_eval();
  Value s = ev.run("socle", Json::object());
  CHECK(ev.matches(s, Json::array({"x*y*z"})));
  CHECK(ev.matches(s, Json{{"power", 3}}));
  CHECK_FALSE(ev.matches(s, "M"));
  CHECK(s.to_json() == Json{{"gens", {"x*y*z"}}});

  Value n = ev.run("nice", Json{{"matrix", "../matrices/ewi_phi1.json"}});
  CHECK(ev.matches(n, true));
  CHECK(ev.matches(n, Json{{"ideal", {"x"}}}));
  CHECK(ev.matches(n, Json{{"det", "y*z"}}));
  CHECK_FALSE(ev.matches(n, Json{{"missing", 1}}));
  CHECK(n.verdict() == true);

  Value d = ev.run("det", Json{{"matrix", Json::array({Json::array({"x", "y"}), Json::array({"z", "1"})})}});
  CHECK(ev.matches(d, "x - y*z"));
  CHECK(ev.matches(d, "-y*z + x"));

  Value h = ev.run("hilbert", Json::object());
  CHECK(ev.matches(h, Json::array({1, 3, 3, 1})));
  CHECK_FALSE(h.verdict().has_value());
  CHECK_THROWS_AS(ev.run("nonsense", Json::object()), InputError);
}

TEST_CASE("nested quotient assertions") {
  Evaluator ev = ewi_eval();
  Json args = {{"ideal", {{"ann", "x+y+z"}}}, {"assert", {{"op", "embedding_dim"}}}};
  CHECK(ev.run("quotient", args).to_json() == 3);
  Json soc = {{"ideal", {"x"}}, {"assert", {{"op", "socle"}}}};
  CHECK(ev.matches(ev.run("quotient", soc), Json::array({"y*z"})));
}

TEST_CASE("example suite passes and is deterministic") {
  Report a = run_suite(corpus / "scenarios", 1);
  CHECK(a.ok());
  CHECK(a.passed() > 90);
  Report b = run_suite(corpus / "scenarios", 3);
  CHECK(to_json(a).dump() == to_json(b).dump());
  Report c = report_from_json(Json::parse(to_json(a).dump()));
  CHECK(to_json(c) == to_json(a));
  CHECK(render_text(a).find("0 failed") != std::string::npos);
}

TEST_CASE("suite edge cases") {
  auto empty = scratch("empty");
  Report r = run_suite(empty);
  CHECK(r.ok());
  CHECK(r.scenarios.empty());
  CHECK(r.warnings.size() == 1);

  auto bad = scratch("bad");
  write(bad / "broken.json", "{\n  \"ring\": \"x\",\n  \"assertions\": [\n    {\"op\": \"dim\" \"expect\": 1}\n  ]\n}\n");
  try {
    run_suite(bad);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("broken.json:4") != std::string::npos);
  }

  auto unk = scratch("unknown");
  fs::path ring = fs::absolute(corpus / "rings" / "ewi.json");
  write(unk / "s.json", Json{{"ring", ring.string()}, {"assertions", {{{"op", "frobnicate"}, {"expect", 1}}}}}.dump());
  CHECK_THROWS_AS(run_suite(unk), InputError);

  auto failing = scratch("failing");
  Json sc = {{"ring", ring.string()},
             {"assertions",
              {{{"op", "exponent"}, {"expect", 5}},
               {{"op", "exponent"}, {"expect", 4}},
               {{"op", "chain_triangular"},
                {"args", {{"z", "vars"}, {"matrix", {{"1", "0", "0"}, {"0", "y", "0"}, {"0", "0", "z"}}}}},
                {"expect", {{"error", "precondition"}}}}}}};
  write(failing / "s.json", sc.dump());
  Report f = run_suite(failing);
  CHECK_FALSE(f.ok());
  CHECK(f.failed() == 1);
  CHECK(f.scenarios[0].assertions[2].pass);
}
