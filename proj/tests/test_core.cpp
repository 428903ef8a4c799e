#include <doctest.h>

#include "arum/domain.hpp"
#include "arum/extended.hpp"
#include "arum/scalar.hpp"

using namespace arum;

TEST_CASE("extended_add: finite and neg-infinity absorption") {
  auto fin = ExtendedReal<double>::finite(2.0);
  CHECK(extended_add(fin, 3.0) == ExtendedReal<double>::finite(5.0));
  auto ninf = ExtendedReal<double>::neg_infinity();
  CHECK(extended_add(ninf, 100.0) == ExtendedReal<double>::neg_infinity());
  auto neg = ExtendedReal<double>::finite(-1.5);
  CHECK(extended_add(neg, 0.0) == ExtendedReal<double>::finite(-1.5));
}

TEST_CASE("extended ordering: neg-infinity below everything") {
  auto ninf = ExtendedReal<Rational>::neg_infinity();
  auto lo = ExtendedReal<Rational>::finite(Rational(-1000000));
  auto hi = ExtendedReal<Rational>::finite(Rational(3, 2));
  CHECK(ninf < lo);
  CHECK(lo < hi);
  CHECK(!(ninf < ninf));
  CHECK(ninf == ExtendedReal<Rational>::neg_infinity());
}

TEST_CASE("extended_add is monotone in both arguments") {
  std::vector<ExtendedReal<double>> vals = {
      ExtendedReal<double>::neg_infinity(), ExtendedReal<double>::finite(-2.0),
      ExtendedReal<double>::finite(0.5), ExtendedReal<double>::finite(7.0)};
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < vals.size(); ++j)
      for (double b : {-1.0, 0.0, 2.0}) {
        if (vals[i] < vals[j]) CHECK(extended_add(vals[i], b) <= extended_add(vals[j], b));
        CHECK(extended_add(vals[i], b) <= extended_add(vals[i], b + 0.5));
      }
}

TEST_CASE("k_maximal_point on the unit square grid") {
  auto grid = UtilityGrid<Rational>::rectangular({{Rational(0), Rational(1)},
                                                  {Rational(0), Rational(1)}});
  auto u = k_maximal_point(grid, 0);
  REQUIRE(u.has_value());
  CHECK(*u == UtilityPoint<Rational>{Rational(1), Rational(0)});
  auto u1 = k_maximal_point(grid, 1);
  REQUIRE(u1.has_value());
  CHECK(*u1 == UtilityPoint<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("k_maximal_point: singleton grid returns the point") {
  UtilityGrid<Rational> grid(2, {{Rational(3), Rational(5)}});
  for (int k = 0; k < 2; ++k) {
    auto u = k_maximal_point(grid, k);
    REQUIRE(u.has_value());
    CHECK(*u == grid[0]);
  }
}

TEST_CASE("k_maximal_point: tie broken by grid order") {
  UtilityGrid<Rational> grid(2, {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
  auto u = k_maximal_point(grid, 0);
  REQUIRE(u.has_value());
  CHECK(*u == UtilityPoint<Rational>{Rational(0), Rational(0)});
}

TEST_CASE("k_maximal_point: defining inequality verified exhaustively") {
  auto grid = UtilityGrid<Rational>::rectangular(
      {{Rational(-2), Rational(0), Rational(1)}, {Rational(-1), Rational(2)}, {Rational(0), Rational(3)}});
  for (int k = 0; k < 3; ++k) {
    auto idx = k_maximal_index(grid, k);
    REQUIRE(idx.has_value());
    const auto& u = grid[*idx];
    for (const auto& w : grid.points())
      for (int j = 0; j < 3; ++j)
        CHECK(u[k] - u[j] >= w[k] - w[j]);
  }
}

TEST_CASE("no k-maximal point on a K=3 grid with conflicting differences") {
  UtilityGrid<Rational> grid(3, {{Rational(1), Rational(0), Rational(5)},
                                 {Rational(1), Rational(5), Rational(0)}});
  CHECK(!k_maximal_index(grid, 0).has_value());
}

TEST_CASE("utility_difference_bound examples") {
  auto square = UtilityGrid<Rational>::rectangular({{Rational(0), Rational(1)},
                                                    {Rational(0), Rational(1)}});
  CHECK(utility_difference_bound(square) == Rational(1));
  UtilityGrid<Rational> single(2, {{Rational(3), Rational(5)}});
  CHECK(utility_difference_bound(single) == Rational(2));
  UtilityGrid<Rational> pair3(3, {{Rational(0), Rational(0), Rational(0)},
                                  {Rational(2), Rational(-1), Rational(0)}});
  CHECK(utility_difference_bound(pair3) == Rational(3));
}

TEST_CASE("simplex vector invariants") {
  CHECK_NOTHROW(SimplexVector<Rational>({Rational(3, 5), Rational(2, 5)}));
  CHECK_THROWS_AS(SimplexVector<Rational>({Rational(1, 2), Rational(1, 3)}), ValidationError);
  CHECK_THROWS_AS(SimplexVector<Rational>({Rational(3, 2), Rational(-1, 2)}), ValidationError);
  // float mode: 1e-12 slack
  CHECK_NOTHROW(SimplexVector<double>({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK_THROWS_AS(SimplexVector<double>({0.5, 0.4}), ValidationError);
}

TEST_CASE("grid validation and cartesian detection") {
  CHECK_THROWS_AS(UtilityGrid<double>(2, {}), ValidationError);
  CHECK_THROWS_AS(UtilityGrid<double>(2, {{0.0, 0.0}, {0.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(UtilityGrid<double>(2, {{0.0, 0.0}, {1.0}}), ValidationError);

  auto rect = UtilityGrid<double>::rectangular({{-1.0, 1.0}, {-1.0, 0.0, 1.0}});
  CHECK(rect.size() == 6);
  CHECK(rect.is_cartesian_product());
  // last coordinate varies fastest
  CHECK(rect[0] == UtilityPoint<double>{-1.0, -1.0});
  CHECK(rect[1] == UtilityPoint<double>{-1.0, 0.0});
  CHECK(rect[5] == UtilityPoint<double>{1.0, 1.0});

  UtilityGrid<double> tri(2, {{0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  CHECK(!tri.is_cartesian_product());
}

TEST_CASE("rational parsing: decimals, fractions, exponents") {
  CHECK(rational_from_string("0.6") == Rational(3, 5));
  CHECK(rational_from_string("-1.25") == Rational(-5, 4));
  CHECK(rational_from_string("2/7") == Rational(2, 7));
  CHECK(rational_from_string("1e-3") == Rational(1, 1000));
  CHECK(rational_from_string("-3/6") == Rational(-1, 2));
  CHECK(rational_from_string("12") == Rational(12));
  CHECK_THROWS_AS(rational_from_string("abc"), ParseError);
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_string(""), ParseError);
}

TEST_CASE("rational formatting: canonical text") {
  CHECK(rational_to_string(Rational(3, 5)) == "0.6");
  CHECK(rational_to_string(Rational(-5, 4)) == "-1.25");
  CHECK(rational_to_string(Rational(1, 3)) == "1/3");
  CHECK(rational_to_string(Rational(7)) == "7");
  CHECK(rational_to_string(Rational(0)) == "0");
  CHECK(rational_to_string(Rational(1, 8)) == "0.125");
  CHECK(rational_to_string(Rational(-1, 200)) == "-0.005");
  // round-trips exactly
  for (const char* s : {"0.6", "-1.25", "1/3", "7", "0.125", "123456789/987654321"})
    CHECK(rational_from_string(rational_to_string(rational_from_string(s))) ==
          rational_from_string(s));
}

TEST_CASE("double from-rational conversion and shortest formatting") {
  CHECK(rational_to_double(Rational(1, 2)) == 0.5);
  CHECK(rational_from_double(0.1) == Rational(0.1));  // exact binary value
  CHECK(double_to_string(0.5) == "0.5");
  CHECK(double_to_string(-0.0) == "0");
  CHECK(double_to_string(1e300) == "1e+300");
}
