#include <doctest.h>

#include "kchow/cli.hpp"
#include "kchow/errors.hpp"

using namespace kchow;
using namespace kchow::cli;
using exact::make_rat;

namespace {

const std::string kCollinear = R"({"ambient":{"projective":2},
  "points":[{"coords":["1","0","0"],"mult":1},{"coords":["0","1","0"],"mult":1},{"coords":["1","1","0"],"mult":1}],
  "weights":[1,1,-2]})";

JobSpec job(Command c, Format f = Format::json) {
  JobSpec j;
  j.command = c;
  j.format = f;
  return j;
}

}  // namespace

TEST_CASE("parse_input") {
  auto one = parse_input(R"({"ambient":{"projective":2},"points":[{"coords":["1","0","0"],"mult":1}]})");
  CHECK(one.cycle.points.size() == 1);
  CHECK_FALSE(one.weights);
  auto w = parse_input(R"({"ambient":{"projective":2},"points":[],"weights":"[1,1,-2]"})");
  REQUIRE(w.weights);
  CHECK(w.weights->weights == std::vector<std::int64_t>{1, 1, -2});
  auto half = parse_input(R"({"ambient":{"projective":1},"points":[{"coords":["1","0.5"],"mult":1}]})");
  CHECK(half.cycle.points[0].point()[1] == make_rat(1, 2));
  auto frac = parse_input(R"({"ambient":{"projective":1},"points":[{"coords":["2","3/2"]}]})");
  CHECK(frac.cycle.points[0].point()[1] == make_rat(3, 4));
  CHECK(frac.cycle.points[0].mult == 1);
}

TEST_CASE("parse_input errors") {
  CHECK_THROWS_AS(parse_input("{"), SchemaError);
  CHECK_THROWS_AS(parse_input(R"({"points":[]})"), SchemaError);
  CHECK_THROWS_AS(parse_input(R"({"ambient":{"projective":1},"points":[{"coords":["1","x"]}]})"),
                  NonRationalCoordinate);
  CHECK_THROWS_AS(parse_input(R"({"ambient":{"projective":1},"points":[{"coords":["0","0"]}]})"), ZeroPoint);
  CHECK_THROWS_AS(parse_input(R"({"ambient":{"projective":2},"points":[{"coords":["1","0"]}]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(parse_input(R"({"ambient":{"projective":2},"points":[],"weights":[1,2]})"), DimensionMismatch);
  CHECK_THROWS_AS(parse_input(R"({"ambient":{"projective":1},"points":[{"coords":[[1,0],[0,1]]}]})"),
                  NonRationalCoordinate);
  auto c = parse_input(R"({"ambient":{"projective":1},"points":[{"coords":[[1,0],[0,1]]}]})", true);
  CHECK(c.complex_points);
}

TEST_CASE("emit_cycle round-trips") {
  auto in = parse_input(kCollinear);
  auto again = parse_input(emit_cycle(in.cycle, in.weights).dump());
  CHECK(again.cycle == in.cycle);
  CHECK(again.weights == in.weights);
  auto prod = parse_input(R"({"ambient":{"product":[1,2]},
    "points":[{"coords":[["1","0"],["1","1/3","0"]],"mult":2}]})");
  CHECK(parse_input(emit_cycle(prod.cycle).dump()).cycle == prod.cycle);
}

TEST_CASE("parse_range and parse_command") {
  CHECK(parse_range("2..7") == Range{2, 7});
  CHECK_THROWS_AS(parse_range("7..2"), InputError);
  CHECK_THROWS_AS(parse_range("2-7"), InputError);
  CHECK(parse_command("chow-weight") == Command::chow_weight);
  CHECK_THROWS_AS(parse_command("nope"), InputError);
}

TEST_CASE("run check") {
  auto r = run(job(Command::check), kCollinear);
  CHECK(r.exit_code == 1);
  auto j = Json::parse(r.output);
  CHECK(j["status"] == "unstable");
  CHECK(j["certificate"]["ratio"] == "3/2");
  CHECK(j["certificate"]["destabilizer"]["weights"] == Json::array({1, 1, -2}));
  CHECK(j["certificate"]["destabilizer"]["chow_weight"] == "3");
  CHECK(verify_certificate(j["certificate"]));
  auto tampered = j["certificate"];
  tampered["mass_on_V"] = 2;
  CHECK_FALSE(verify_certificate(tampered));

  auto stable = run(job(Command::check), R"({"ambient":{"projective":2},"points":[
    {"coords":["1","0","0"]},{"coords":["0","1","0"]},{"coords":["0","0","1"]},{"coords":["1","1","1"]}]})");
  CHECK(stable.exit_code == 0);
  CHECK(Json::parse(stable.output)["status"] == "stable");
}

TEST_CASE("run chow-weight and df") {
  auto trivial = run(job(Command::chow_weight),
                     R"({"ambient":{"projective":2},"points":[{"coords":["1","0","0"]}],"weights":[0,0,0]})");
  CHECK(trivial.exit_code == 0);
  CHECK(Json::parse(trivial.output)["value"] == "0");

  auto df = job(Command::df);
  df.gamma = 4;
  auto r = run(df, kCollinear);
  CHECK(r.exit_code == 0);
  CHECK(Json::parse(r.output)["F"] == "-75/26");
}

TEST_CASE("run errors map to exit codes") {
  CHECK(run(job(Command::check), "not json").exit_code == 2);
  auto df = job(Command::df);
  CHECK(run(df, R"({"ambient":{"projective":2},"points":[]})").exit_code == 2);
  auto text = run(job(Command::check, Format::text), "[]");
  CHECK(text.exit_code == 2);
  CHECK(text.output.find("error") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  for (auto c : {Command::check, Command::destabilize, Command::chow_weight}) {
    auto a = run(job(c), kCollinear);
    auto b = run(job(c), kCollinear);
    CHECK(a.output == b.output);
    CHECK(a.exit_code == b.exit_code);
  }
}
