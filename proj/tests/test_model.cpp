#include <stdexcept>

#include "doctest.h"
#include "ilsolve/model.hpp"
#include "test_util.hpp"

using namespace ilsolve;
using testutil::make_instance;

TEST_CASE("objective and slack arithmetic") {
  // min 2 x0 - x1  s.t.  x0 + 3 x1 <= 7,  -x0 <= 0,  0 <= x <= 5
  Instance inst = make_instance(2, {2.0, -1.0},
                                {{{{0, 1.0}, {1, 3.0}}, 7.0}, {{{0, -1.0}}, 0.0}},
                                {0, 0}, {5, 5});
  Assignment a{1, 2};
  CHECK(evaluate_objective(inst, a) == doctest::Approx(0.0));
  CHECK(slack(inst, 0, a) == doctest::Approx(0.0));
  CHECK(slack(inst, 1, a) == doctest::Approx(1.0));
  a = {4, 2};
  CHECK(evaluate_objective(inst, a) == doctest::Approx(6.0));
  CHECK(slack(inst, 0, a) == doctest::Approx(-3.0));

  auto acts = compute_activities(inst, a);
  REQUIRE(acts.size() == 2);
  CHECK(acts[0] == doctest::Approx(10.0));
  CHECK(acts[1] == doctest::Approx(-4.0));
}

TEST_CASE("finalize builds the column transpose and objective support") {
  Instance inst = make_instance(3, {0.0, -2.0, 0.5},
                                {{{{0, 1.0}, {2, -1.0}}, 4.0},
                                 {{{1, 2.0}, {2, 3.0}}, 6.0}},
                                {0, 0, 0}, {9, 9, 9});
  REQUIRE(inst.obj_support.size() == 2);
  CHECK(inst.obj_support[0] == 1);
  CHECK(inst.obj_support[1] == 2);

  REQUIRE(inst.cols.size() == 3);
  REQUIRE(inst.cols[2].size() == 2);
  CHECK(inst.cols[2][0].row == 0);
  CHECK(inst.cols[2][0].coeff == -1.0);
  CHECK(inst.cols[2][1].row == 1);
  CHECK(inst.cols[2][1].coeff == 3.0);
  REQUIRE(inst.cols[0].size() == 1);
  CHECK(inst.cols[0][0].row == 0);
}

TEST_CASE("finalize rejects malformed instances") {
  SUBCASE("unsorted terms") {
    CHECK_THROWS_AS(make_instance(2, {1.0, 0.0},
                                  {{{{1, 1.0}, {0, 1.0}}, 3.0}}, {0, 0},
                                  {5, 5}),
                    std::logic_error);
  }
  SUBCASE("duplicate variable in a row") {
    CHECK_THROWS_AS(make_instance(2, {1.0, 0.0},
                                  {{{{0, 1.0}, {0, 2.0}}, 3.0}}, {0, 0},
                                  {5, 5}),
                    std::logic_error);
  }
  SUBCASE("zero coefficient") {
    CHECK_THROWS_AS(
        make_instance(2, {1.0, 0.0}, {{{{0, 0.0}}, 3.0}}, {0, 0}, {5, 5}),
        std::logic_error);
  }
  SUBCASE("crossed bounds") {
    CHECK_THROWS_AS(
        make_instance(1, {1.0}, {{{{0, 1.0}}, 3.0}}, {2}, {1}),
        std::logic_error);
  }
}

TEST_CASE("feasibility uses an absolute slack tolerance") {
  Instance inst =
      make_instance(1, {1.0}, {{{{0, 1.0}}, 0.9999999}}, {0}, {5});
  Assignment a{1};  // slack = -1e-7, inside the tolerance
  CHECK(is_feasible(inst, a));
  CHECK(violated_rows(inst, a).empty());

  inst.rows[0].rhs = 0.99999;  // slack = -1e-5, outside
  CHECK_FALSE(is_feasible(inst, a));
  auto viol = violated_rows(inst, a);
  REQUIRE(viol.size() == 1);
  CHECK(viol[0] == 0);
}

TEST_CASE("violated rows come back ascending") {
  Instance inst = make_instance(1, {1.0},
                                {{{{0, 1.0}}, 0.0},
                                 {{{0, -1.0}}, 100.0},
                                 {{{0, 2.0}}, 1.0}},
                                {-10}, {10});
  Assignment a{3};
  auto viol = violated_rows(inst, a);
  REQUIRE(viol.size() == 2);
  CHECK(viol[0] == 0);
  CHECK(viol[1] == 2);
}

TEST_CASE("bounds with infinite sentinels") {
  Instance inst = make_instance(2, {1.0, 1.0}, {{{{0, 1.0}}, 100.0}},
                                {kNegInf, 0}, {kPosInf, 3});
  CHECK(within_bounds(inst, {-1000000, 0}));
  CHECK(within_bounds(inst, {1000000, 3}));
  CHECK_FALSE(within_bounds(inst, {0, 4}));
  CHECK_FALSE(within_bounds(inst, {0, -1}));

  CHECK(is_finite(Value{0}));
  CHECK_FALSE(is_finite(kNegInf));
  CHECK_FALSE(is_finite(kPosInf));
  CHECK(is_neg_inf(kNegInf));
  CHECK(is_pos_inf(kPosInf));
}

TEST_CASE("reported objective restores the original sense") {
  Instance inst = make_instance(1, {-3.0}, {{{{0, 1.0}}, 10.0}}, {0}, {10});
  inst.maximize = true;     // stored negated: internal min -3 x0
  inst.obj_constant = 2.5;  // additive constant from the original form
  // Internal value -12 (x0 = 4) reports as 12 + 2.5.
  CHECK(inst.reported_objective(-12.0) == doctest::Approx(14.5));

  inst.maximize = false;
  CHECK(inst.reported_objective(-12.0) == doctest::Approx(-9.5));
}
