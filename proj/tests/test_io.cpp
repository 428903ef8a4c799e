#include <doctest.h>

#include "arum/engine.hpp"
#include "arum/model_json.hpp"

using namespace arum;

namespace {

const char* kReferenceModel = R"({
  "class": "arum_cs",
  "K": 2,
  "atoms": [
    {"eps": ["0.5", "0"], "S": [0, 1], "w": "0.6"},
    {"eps": ["0.5", "0"], "S": [1], "w": "0.4"}
  ]
})";

}  // namespace

TEST_CASE("model json: decimal strings parse exactly in rational mode") {
  auto m = model_from_json<Rational>(parse_json_text(kReferenceModel, "test"));
  const auto& nu = std::get<ArumCsDistribution<Rational>>(m);
  CHECK(nu.atoms()[0].weight == Rational(3, 5));
  CHECK(nu.atoms()[0].eps[0] == Rational(1, 2));
  CHECK(nu.atoms()[1].consideration == std::vector<int>{1});
}

TEST_CASE("model json: the same text loads in float mode") {
  auto m = model_from_json<double>(parse_json_text(kReferenceModel, "test"));
  const auto& nu = std::get<ArumCsDistribution<double>>(m);
  CHECK(nu.atoms()[0].weight == 0.6);
  CHECK(nu.atoms()[1].weight == 0.4);
}

TEST_CASE("model json: -inf literal only for arum_e") {
  const char* etext = R"({"class":"arum_e","K":2,"atoms":[{"eps":["-inf",0],"w":1}]})";
  auto m = model_from_json<Rational>(parse_json_text(etext, "test"));
  const auto& mu = std::get<ArumEDistribution<Rational>>(m);
  CHECK(!mu.atoms()[0].eps[0].is_finite());

  const char* bad = R"({"class":"arum","K":2,"atoms":[{"eps":["-inf",0],"w":1}]})";
  CHECK_THROWS_AS(model_from_json<Rational>(parse_json_text(bad, "test")), ValidationError);
}

TEST_CASE("model json: structural errors") {
  CHECK_THROWS_AS(model_from_json<Rational>(parse_json_text(R"({"K":2,"atoms":[]})", "t")),
                  ParseError);
  CHECK_THROWS_AS(
      model_from_json<Rational>(parse_json_text(R"({"class":"arum","K":2,"atoms":[]})", "t")),
      ParseError);
  // S on a non-CS class
  CHECK_THROWS_AS(model_from_json<Rational>(parse_json_text(
                      R"({"class":"arum","K":2,"atoms":[{"eps":[0,1],"S":[0],"w":1}]})", "t")),
                  ValidationError);
  // wrong eps arity
  CHECK_THROWS_AS(model_from_json<Rational>(parse_json_text(
                      R"({"class":"arum","K":3,"atoms":[{"eps":[0,1],"w":1}]})", "t")),
                  ValidationError);
  // unknown class
  CHECK_THROWS_AS(model_from_json<Rational>(parse_json_text(
                      R"({"class":"logit","K":2,"atoms":[{"eps":[0,1],"w":1}]})", "t")),
                  ParseError);
}

TEST_CASE("model json round-trip preserves the field") {
  auto m = model_from_json<Rational>(parse_json_text(kReferenceModel, "test"));
  Json j = model_to_json(m);
  auto back = model_from_json<Rational>(j);
  auto grid = UtilityGrid<Rational>::rectangular({{Rational(-1), Rational(1)},
                                                  {Rational(-1), Rational(1)}});
  CHECK(choice_prob_field(m, grid) == choice_prob_field(back, grid));
  CHECK(j["schema_version"] == 1);
  CHECK(j["class"] == "arum_cs");
}

TEST_CASE("arum_e json round-trip keeps -inf coordinates") {
  const char* etext = R"({"class":"arum_e","K":3,"atoms":[
    {"eps":["-inf","1/3",0],"w":"1/4"},
    {"eps":[2,"-inf","-inf"],"w":"3/4"}]})";
  auto m = model_from_json<Rational>(parse_json_text(etext, "t"));
  auto back = model_from_json<Rational>(model_to_json(m));
  const auto& a = std::get<ArumEDistribution<Rational>>(m);
  const auto& b = std::get<ArumEDistribution<Rational>>(back);
  for (std::size_t i = 0; i < a.atoms().size(); ++i) {
    CHECK(a.atoms()[i].weight == b.atoms()[i].weight);
    for (std::size_t j = 0; j < 3; ++j) CHECK(a.atoms()[i].eps[j] == b.atoms()[i].eps[j]);
  }
}

TEST_CASE("grid json: explicit points and rect specs") {
  auto g1 = grid_from_json<Rational>(
      parse_json_text(R"({"points":[[0,0],["1/2",1]]})", "t"));
  CHECK(g1.size() == 2);
  CHECK(g1[1][0] == Rational(1, 2));

  auto g2 = grid_from_json<Rational>(parse_json_text(
      R"({"rect":[{"lo":-1,"hi":1,"step":2},{"lo":-1,"hi":1,"step":1}]})", "t"));
  CHECK(g2.size() == 6);
  CHECK(g2.is_cartesian_product());

  CHECK_THROWS_AS(grid_from_json<Rational>(parse_json_text(R"({"rect":[]})", "t")), ParseError);
  CHECK_THROWS_AS(grid_from_json<Rational>(parse_json_text(
                      R"({"rect":[{"lo":1,"hi":-1,"step":1}]})", "t")),
                  ValidationError);
  CHECK_THROWS_AS(grid_from_json<Rational>(parse_json_text(R"({})", "t")), ParseError);
}

TEST_CASE("grid json round-trip") {
  auto g = grid_from_json<Rational>(parse_json_text(
      R"({"rect":[{"lo":"-1","hi":"1","step":"0.5"}, {"lo":0,"hi":1,"step":1}]})", "t"));
  auto back = grid_from_json<Rational>(grid_to_json(g));
  CHECK(g.points() == back.points());
}

TEST_CASE("field json: rows must be simplex vectors over the grid") {
  const char* text = R"({
    "grid": {"points": [[0,0],[1,0]]},
    "probs": [["0.6","0.4"],[1,0]]
  })";
  auto f = field_from_json<Rational>(parse_json_text(text, "t"));
  CHECK(f.num_alternatives() == 2);
  CHECK(f.at(0)[0] == Rational(3, 5));
  CHECK(f.at(1)[0] == Rational(1));

  const char* bad = R"({"grid":{"points":[[0,0]]},"probs":[["0.6","0.3"]]})";
  CHECK_THROWS_AS(field_from_json<Rational>(parse_json_text(bad, "t")), ValidationError);
  const char* missing = R"({"grid":{"points":[[0,0],[1,0]]},"probs":[[1,0]]})";
  CHECK_THROWS_AS(field_from_json<Rational>(parse_json_text(missing, "t")), ValidationError);
}

TEST_CASE("malformed json text raises ParseError") {
  CHECK_THROWS_AS(parse_json_text("{not json", "t"), ParseError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/path/x.json"), IoError);
}
