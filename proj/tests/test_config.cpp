#include <fstream>

#include "doctest.h"
#include "support.hpp"
#include "twistlab/commands.hpp"

using namespace twl;
using namespace twl::testing;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json parse_out(const CommandOutput& out) { return ordered_json::parse(out.text); }

}  // namespace

TEST_CASE("config JSON round trip and defaults") {
  const RingConfig def;
  CHECK(def.d == 2);
  CHECK(def.max_degree == 10);
  CHECK(def.trailing == 3);
  const ordered_json j = config_to_json(def);
  CHECK(j["automorphism"]["diag"] == ordered_json({2, 3}));
  CHECK(j["field"] == "rational");
  const RingConfig back = config_from_json(json::parse(j.dump()));
  CHECK(config_to_json(back) == j);

  const RingConfig c = config_from_json(json::parse(
      R"({"d": 3, "automorphism": {"diag": [2, "1/3", 5]}, "point": [1, 2, 3, 4], "field": "prime:101"})"));
  CHECK(c.d == 3);
  CHECK((*c.diag)[1] == mpq_class(1, 3));
  CHECK(c.field == Field::prime(101));
  CHECK(c.segre_max_degree <= segre_degree_limit(3));
  validate(c);
  CHECK(config_to_json(c)["automorphism"]["diag"][1] == "1/3");
}

TEST_CASE("config errors are reported as ConfigError") {
  auto bad = [](const char* text) { return config_from_json(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"maxDegre": 4})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"field": "complex"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"field": "prime:100"})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"automorphism": {"diag": [2], "matrix": [[1]]}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"point": [1, "x", 1]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"([1, 2])"), ConfigError);

  auto invalid = [](const char* text) { validate(config_from_json(json::parse(text))); };
  CHECK_THROWS_AS(invalid(R"({"d": 1, "automorphism": {"diag": [2]}, "point": [1, 1]})"), ConfigError);
  CHECK_THROWS_AS(invalid(R"({"automorphism": {"diag": [0, 3]}})"), ConfigError);
  CHECK_THROWS_AS(invalid(R"({"point": [1, 1]})"), ConfigError);
  CHECK_THROWS_AS(invalid(R"({"point": [0, 0, 0]})"), ConfigError);
  CHECK_THROWS_AS(invalid(R"({"automorphism": {"matrix": [[1, 2, 0], [2, 4, 0], [0, 0, 1]]}})"), ConfigError);
  CHECK_THROWS_AS(invalid(R"({"segreMaxDegree": 40})"), ConfigError);
  CHECK_THROWS_AS(invalid(R"({"maxDegree": 0})"), ConfigError);
  // 101 divides nothing here, but 7 = 0 mod 7
  CHECK_THROWS_AS(invalid(R"({"automorphism": {"diag": [2, 7]}, "field": "prime:7"})"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("field, list and format parsing") {
  CHECK(parse_field("rational") == Field::rationals());
  CHECK(parse_field("prime:2147483629") == Field::prime(2147483629u));
  CHECK_THROWS_AS(parse_field("prime:abc"), ConfigError);
  CHECK(parse_rational_list("[1, 1/2, -3]") == std::vector<mpq_class>{1, mpq_class(1, 2), -3});
  CHECK(parse_rational_list("2,3") == std::vector<mpq_class>{2, 3});
  CHECK_THROWS_AS(parse_rational_list("2,,3"), ConfigError);
  CHECK(parse_format("csv") == Format::kCsv);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("matrix automorphisms and the diagonal multipliers") {
  RingConfig c = config_from_json(json::parse(R"({"automorphism": {"matrix": [[2, 0, 0], [0, 4, 0], [0, 0, 6]]}})"));
  validate(c);
  // normalized so A_00 = 1
  CHECK(diagonal_multipliers(c) == std::vector<mpq_class>{2, 3});
  c = config_from_json(json::parse(R"({"automorphism": {"matrix": [[1, 1, 0], [0, 2, 0], [0, 0, 3]]}})"));
  validate(c);
  CHECK(diagonal_multipliers(c).empty());
}

TEST_CASE("ideal spec grammar") {
  const RingConfig c;
  const Instance in(c);
  const TwistRing& r = in.ring();
  CHECK(parse_ideal_spec("0", r, in.t.ideal()).piece(3).dim() == 0);
  CHECK(parse_ideal_spec("I", r, in.t.ideal()).piece(2) == in.t.I_piece(2));
  CHECK(parse_ideal_spec("U+", r, in.t.ideal()).piece(2).codim() == 0);
  CHECK(*parse_ideal_spec("phi^1(I)", r, in.t.ideal()).vanishing_point() == point_of({6, 3, 2}));
  CHECK(*parse_ideal_spec("point:1,5,7", r, in.t.ideal()).vanishing_point() == point_of({1, 5, 7}));
  CHECK(parse_ideal_spec("gens:x0;x1^2", r, in.t.ideal()).generators().size() == 2);
  CHECK_THROWS_AS(parse_ideal_spec("phi^x(I)", r, in.t.ideal()), ConfigError);
  CHECK_THROWS_AS(parse_ideal_spec("point:1,2", r, in.t.ideal()), ConfigError);
  CHECK_THROWS_AS(parse_ideal_spec("gens:x7", r, in.t.ideal()), ConfigError);
  CHECK_THROWS_AS(parse_ideal_spec("banana", r, in.t.ideal()), ConfigError);
}

TEST_CASE("report envelope, statuses and CSV quoting") {
  Report rep("demo", ordered_json{{"d", 2}}, false);
  CheckRecord a;
  a.name = "a";
  a.status = Status::kPass;
  a.anchor = "x, y";
  a.seconds = 12.5;
  rep.add(a);
  CHECK(rep.exit_code() == 0);
  CheckRecord b;
  b.name = "b";
  b.status = Status::kFail;
  rep.add(b);
  CHECK(rep.exit_code() == 1);
  const ordered_json j = rep.to_json();
  CHECK(j["schema"] == kSchema);
  CHECK(j["command"] == "demo");
  CHECK(j["result"]["summary"]["fail"] == 1);
  CHECK(j.dump().find("12.5") == std::string::npos);  // timings stay out
  const std::string csv = rep.to_csv();
  CHECK(csv.rfind("# schema: twl-report/1\n", 0) == 0);
  CHECK(csv.find("a,pass,\"x, y\",") != std::string::npos);
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("hilbert series examples") {
  const RingConfig c;
  const auto s = parse_out(cmd_hilbert(c, "S", Format::kJson));
  CHECK(s["result"]["dims"] == ordered_json({1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66}));
  const auto t = parse_out(cmd_hilbert(c, "T", Format::kJson));
  CHECK(t["result"]["dims"] == ordered_json({1, 2, 5, 9, 14, 20, 27, 35, 44, 54, 65}));
  const auto smt = parse_out(cmd_hilbert(c, "S_mod_T", Format::kJson));
  CHECK(smt["result"]["dims"] == ordered_json({0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK_THROWS_AS(cmd_hilbert(c, "R", Format::kJson), ConfigError);
  const std::string csv = cmd_hilbert(c, "S", Format::kCsv).text;
  CHECK(csv.find("degree,dim\n0,1\n1,3\n2,6\n") != std::string::npos);
}

TEST_CASE("probe, critdense and ext-table commands") {
  const RingConfig c;
  const auto p = parse_out(cmd_probe(c, "x0 - 2*x1 + x2", Format::kJson));
  CHECK(p["result"]["support"] == ordered_json({1, 2}));
  CHECK(p["result"]["totals"]["coker"] == 2);
  CHECK(p["config"] == config_to_json(c));
  CHECK_THROWS_AS(cmd_probe(c, "x0", Format::kJson), ConfigError);
  CHECK_THROWS_AS(cmd_probe(c, "x0 +", Format::kJson), ConfigError);

  CHECK(parse_out(cmd_critdense(c, Format::kJson))["result"]["verdict"] == "independent");
  RingConfig dep = c;
  dep.diag = std::vector<mpq_class>{2, 4};
  const auto cd = parse_out(cmd_critdense(dep, Format::kJson));
  CHECK(cd["result"]["verdict"] == "dependent");
  CHECK(cd["result"]["certified"]["relation"] == ordered_json({2, -1}));

  const auto e = parse_out(cmd_ext_table(c, "0", Format::kJson));
  const auto& row2 = e["result"]["rows"][2]["values"];
  for (int n = 0; n <= 10; ++n) CHECK(row2[n + 10] == 1);
}

TEST_CASE("verify-suite modes: generic, dependent multipliers, identity") {
  RingConfig c;
  c.max_degree = 6;
  c.segre_max_degree = 3;
  c.opposite_max_degree = 3;
  c.veronese_max_degree = 4;
  const Report generic = run_verify_suite(c);
  CHECK(generic.exit_code() == 0);
  for (const auto& r : generic.checks()) CHECK(r.status != Status::kSkipped);

  RingConfig dep = c;
  dep.diag = std::vector<mpq_class>{2, 4};
  const Report d = run_verify_suite(dep);
  CHECK(d.exit_code() == 0);
  CHECK(d.find("critdense-certificate")->data["relation"] == ordered_json({2, -1}));
  for (const char* name : {"s-mod-is", "chi-sample", "left-noeth-hom", "right-noeth-probes", "segre-witness-dims",
                           "veronese-idealizer"}) {
    CHECK(d.find(name)->status == Status::kSkipped);
  }

  RingConfig id = c;
  id.diag = std::vector<mpq_class>{1, 1};
  const Report r = run_verify_suite(id);
  CHECK(r.exit_code() == 0);
  CHECK(r.find("idealizer-structure")->data["mode"] == "degenerate");
  CHECK(r.find("idealizer-structure")->data["TEqualsS"] == true);
  CHECK(r.find("veronese-generation")->data["degrees"][0]["genInDegreeOne"] == true);
}

TEST_CASE("verify-suite output is deterministic") {
  RingConfig c;
  c.max_degree = 5;
  c.segre_max_degree = 2;
  const std::string a = cmd_verify_suite(c, Format::kJson).text;
  const std::string b = cmd_verify_suite(c, Format::kJson).text;
  CHECK(a == b);
  CHECK(cmd_verify_suite(c, Format::kCsv).text == cmd_verify_suite(c, Format::kCsv).text);
}
