#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "assignments.hpp"
#include "fixtures.hpp"
#include "ppdsp/enc_location.hpp"
#include "ppdsp/errors.hpp"
#include "ppdsp/harness.hpp"

using namespace ppdsp;

namespace {

// All three requests on the first truck along delta-a-b-c-delta. Net loads
// a +6, b -1, c -5 stay within capacity 6, but picking up r3 at b before
// dropping r2 carries 7.
DeliveryRoutingSolution all_on_first() {
  DeliveryRoutingSolution s;
  s.plans.push_back({0, {0, 1, 2}, {0, 1, 2, 3, 0}, {}});
  s.plans.push_back({1, {}, {}, {}});
  return s;
}

}  // namespace

TEST(EncLocation, ReferenceCounts) {
  // (|V|, n, m) -> (variables, rows) for k = 1, m = 2, plus one m = 10 cell.
  EXPECT_EQ(predicted_counts_location(14, 7, 2), (mip::Census{458, 1041}));
  EXPECT_EQ(predicted_counts_location(16, 8, 2), (mip::Census{588, 1380}));
  EXPECT_EQ(predicted_counts_location(22, 11, 2), (mip::Census{1074, 2685}));
  EXPECT_EQ(predicted_counts_location(14, 20, 10), (mip::Census{2420, 5580}));
}

TEST(EncLocation, CensusMatchesFormula) {
  for (int nv = 4; nv <= 12; nv += 2) {
    for (int n = 1; n <= 6; ++n) {
      for (int m = 1; m <= 3; ++m) {
        const Instance inst = fixtures::random_instance(nv * 100 + n * 10 + m, nv, n, m);
        EXPECT_EQ(mip::census(encode_location(inst).model), predicted_counts_location(nv, n, m));
        const auto strict = mip::census(encode_location(inst, {true}).model);
        EXPECT_EQ(strict.num_rows,
                  predicted_counts_location(nv, n, m).num_rows + pickup_first_extra_rows(nv, m));
      }
    }
  }
}

TEST(EncLocation, IndexFunctionsMatchNames) {
  const Instance inst = fixtures::example1();
  const auto enc = encode_location(inst);
  EXPECT_EQ(enc.model.variable(enc.x(1, 2, 3)).name, "x_t1_o2_d3");
  EXPECT_EQ(enc.model.variable(enc.y(1, 2)).name, "y_t1_r2");
  EXPECT_EQ(enc.model.variable(enc.u(0, 3)).name, "u_t0_v3");
  EXPECT_EQ(enc.model.variable(enc.h(1, 1)).name, "h_t1_v1");
  EXPECT_EQ(enc.model.variable(enc.x(0, 2, 2)).upper, 0);
  EXPECT_EQ(enc.model.variable(enc.x(0, 1, 3)).objective, -7);
  EXPECT_EQ(enc.model.variable(enc.y(0, 0)).objective, 13);
}

TEST(EncLocation, WorkedExampleOptimumIsFeasibleWithValue11) {
  const Instance inst = fixtures::example1();
  for (bool strict : {false, true}) {
    const auto enc = encode_location(inst, {strict});
    const auto point = fixtures::location_point(enc, fixtures::example1_optimum(), inst);
    EXPECT_EQ(mip::max_violation(enc.model, point), 0) << strict;
    EXPECT_EQ(mip::objective_value(enc.model, point), 11) << strict;
  }
}

TEST(EncLocation, NettedLoadIsOnlyRejectedByStrictRows) {
  const Instance inst = fixtures::example1();
  const auto s = all_on_first();
  EXPECT_EQ(xi(s, inst), 14);
  EXPECT_FALSE(validate_solution(s, inst).ok());
  EXPECT_TRUE(validate_solution(s, inst, {RouteSemantics::Location, LoadOrder::Netted}).ok());

  const auto loose = encode_location(inst);
  EXPECT_EQ(mip::max_violation(loose.model, fixtures::location_point(loose, s, inst)), 0);
  const auto strict = encode_location(inst, {true});
  EXPECT_GT(mip::max_violation(strict.model, fixtures::location_point(strict, s, inst)), 0);
}

TEST(EncLocation, DecodeRoundTrip) {
  const Instance inst = fixtures::example1();
  const auto enc = encode_location(inst);
  const auto ds = fixtures::example1_optimum();
  EXPECT_EQ(decode_location(enc, fixtures::location_point(enc, ds, inst)), ds);
  EXPECT_EQ(decode_location(enc, fixtures::location_point(enc, all_on_first(), inst)), all_on_first());
}

TEST(EncLocation, DecodeAllZeroGivesIdleTrucks) {
  const Instance inst = fixtures::example1();
  const auto enc = encode_location(inst);
  const auto s = decode_location(enc, std::vector<double>(enc.model.num_variables(), 0.0));
  ASSERT_EQ(s.plans.size(), 2u);
  for (const auto& p : s.plans) {
    EXPECT_TRUE(p.requests.empty());
    EXPECT_TRUE(p.route.empty());
  }
  EXPECT_EQ(xi(s, inst), 0);
}

TEST(EncLocation, DecodeRejectsBrokenAssignments) {
  const Instance inst = fixtures::example1();
  const auto enc = encode_location(inst);
  const std::size_t size = enc.model.num_variables();

  std::vector<double> half(size, 0.0);
  half[enc.x(0, 0, 1)] = 0.5;
  EXPECT_THROW(decode_location(enc, half), DecodeError);

  // Depot cycle plus a detached a-b-a loop.
  std::vector<double> subtour(size, 0.0);
  subtour[enc.x(0, 0, 3)] = subtour[enc.x(0, 3, 0)] = 1;
  subtour[enc.x(0, 1, 2)] = subtour[enc.x(0, 2, 1)] = 1;
  EXPECT_THROW(decode_location(enc, subtour), DecodeError);

  std::vector<double> dead_end(size, 0.0);
  dead_end[enc.x(1, 0, 2)] = 1;
  EXPECT_THROW(decode_location(enc, dead_end), DecodeError);

  EXPECT_THROW(decode_location(enc, std::vector<double>(size - 1, 0.0)), DecodeError);
}

// Any solution the validator accepts under netted loads must be a feasible
// point of the default model with objective equal to xi, and decode back to
// itself.
TEST(EncLocation, ValidSolutionsAreModelPoints) {
  std::mt19937 rng(17);
  int accepted = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const Instance inst = fixtures::random_instance(5000 + trial, 6, 4, 2);
    const auto enc = encode_location(inst);
    DeliveryRoutingSolution s;
    std::vector<int> owner(4);
    for (int& o : owner) o = static_cast<int>(rng() % 3) - 1;
    for (int t = 0; t < 2; ++t) {
      TruckPlan plan;
      plan.truck = t;
      std::vector<int> stops;
      for (int r = 0; r < 4; ++r) {
        if (owner[r] != t) continue;
        plan.requests.push_back(r);
        for (int v : {inst.request(r).pickup, inst.request(r).dropoff}) {
          if (std::find(stops.begin(), stops.end(), v) == stops.end()) stops.push_back(v);
        }
      }
      std::shuffle(stops.begin(), stops.end(), rng);
      if (!stops.empty()) {
        plan.route.push_back(kDepot);
        plan.route.insert(plan.route.end(), stops.begin(), stops.end());
        plan.route.push_back(kDepot);
      }
      s.plans.push_back(plan);
    }
    if (!validate_solution(s, inst, validation_for(Formulation::Location)).ok()) continue;
    ++accepted;
    const auto point = fixtures::location_point(enc, s, inst);
    ASSERT_LE(mip::max_violation(enc.model, point), 1e-9) << "trial " << trial;
    ASSERT_NEAR(mip::objective_value(enc.model, point), xi(s, inst), 1e-9);
    ASSERT_EQ(decode_location(enc, point), s);
  }
  EXPECT_GT(accepted, 50);
}
