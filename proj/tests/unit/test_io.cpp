#include <doctest.h>

#include <filesystem>

#include "probcalc/expressivity.hpp"
#include "probcalc/io.hpp"

using namespace probcalc;

TEST_CASE("model JSON round trip") {
  Model m = model_from_vector({"A", "B"}, {Rational(1, 6), 0, Rational(1, 2), Rational(1, 3)});
  Model back = model_from_json(model_to_json(m));
  CHECK(back == m);
  Model c = model_from_json(R"({"mode":"count","letters":["A"],"weights":{"A":3,"~A":"1"}})");
  CHECK(c.mode == Mode::Count);
  CHECK(c.weight(0) == 3);
}

TEST_CASE("model JSON errors") {
  CHECK_THROWS_AS(model_from_json("{"), IoError);
  CHECK_THROWS_AS(model_from_json(R"({"letters":["A"]})"), IoError);
  CHECK_THROWS_AS(model_from_json(R"({"letters":["A"],"weights":{"A":"1/2"}})"), IoError);
  CHECK_THROWS_AS(model_from_json(R"({"letters":["A"],"weights":{"B":"1"}})"), IoError);
  CHECK_THROWS_AS(model_from_json(R"({"letters":["A"],"weights":{"A":0.5,"~A":0.5}})"), IoError);
  CHECK_THROWS_AS(read_file("/nonexistent/model.json"), IoError);
}

TEST_CASE("order JSON round trip") {
  CompOrder o = CompOrder::from_measure({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  CompOrder back = order_from_json(order_to_json(o));
  CHECK(back.atoms == 3);
  CHECK(back.rel == o.rel);
  CHECK_THROWS_AS(order_from_json(R"({"atoms":2,"comparisons":[["{0}","{1}"]]})"), IoError);
}

TEST_CASE("pair keys") {
  CHECK(pair_key(1, 2) == "({0},{1})");
  CHECK(parse_pair_key("({0},{1})", 2) == std::pair<Subset, Subset>{1, 2});
  CHECK(parse_pair_key("({},{0,1})", 2) == std::pair<Subset, Subset>{0, 3});
  CHECK_THROWS(parse_pair_key("{0},{1}", 2));
}

TEST_CASE("quadratic order JSON") {
  BilinearMatrix m{{{Rational(1, 4), Rational(1, 4)}, {Rational(1, 4), Rational(1, 4)}}};
  QuadOrder q = order_from_matrix(m);
  QuadOrder back = quad_order_from_json(quad_order_to_json(q));
  CHECK(back.rel == q.rel);
  QuadOrder viam = quad_order_from_json(R"({"matrix":[["1/4","1/4"],["1/4","1/4"]]})");
  CHECK(viam.rel == q.rel);
  CHECK_THROWS_AS(matrix_from_json(R"({"matrix":[["1","2"]]})"), IoError);
}

TEST_CASE("fixture models") {
  auto dir = std::filesystem::temp_directory_path() / "probcalc_fixture_test";
  std::filesystem::remove_all(dir);
  auto paths = write_fixture_models(dir.string());
  CHECK(paths.size() == 12);
  auto blocks = hierarchy_blocks();
  CHECK(model_from_json(read_file(paths.at(0))) == blocks.at(0).m1);
  // The checked-in fixtures match the built-in blocks.
  for (const auto& b : blocks)
    CHECK(model_from_json(read_file(std::string(PROBCALC_FIXTURES) + "/block_" + b.name + "_m2.json")) == b.m2);
  std::filesystem::remove_all(dir);
}
