#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "ppdsp/core.hpp"

using namespace ppdsp;
using fixtures::kA;
using fixtures::kB;
using fixtures::kC;

namespace {

const Instance& ex1() {
  static const Instance instance = fixtures::example1();
  return instance;
}

}  // namespace

TEST(Xi, WorkedExampleOptimumIsEleven) {
  // t1: 13 + 7 - (2 + 4 + 2 + 2); t2: 4 - (1 + 1 + 1)
  EXPECT_DOUBLE_EQ(xi(fixtures::example1_optimum(), ex1()), (13 + 7 - 10) + (4 - 3));
  EXPECT_DOUBLE_EQ(xi(fixtures::example1_optimum(), ex1()), 11.0);
}

TEST(Xi, EmptySolutionIsZero) {
  DeliveryRoutingSolution s;
  s.plans.push_back({0, {}, {}, {}});
  s.plans.push_back({1, {}, {}, {}});
  EXPECT_EQ(xi(s, ex1()), 0.0);
  EXPECT_EQ(xi(DeliveryRoutingSolution{}, ex1()), 0.0);
}

TEST(Xi, SingleRequestOnFirstTruckIsMinusOne) {
  DeliveryRoutingSolution s;
  s.plans.push_back({0, {1}, {0, kA, kB, 0}, {}});
  EXPECT_DOUBLE_EQ(xi(s, ex1()), 7.0 - (2 + 4 + 2));
}

TEST(Xi, UnknownIdsAreStructuralErrors) {
  DeliveryRoutingSolution s;
  s.plans.push_back({0, {7}, {0, kA, 0}, {}});
  EXPECT_THROW(xi(s, ex1()), StructuralError);
  s.plans = {{5, {}, {}, {}}};
  EXPECT_THROW(xi(s, ex1()), StructuralError);
}

TEST(Xi, IsTheSumOfPerTruckValues) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = fixtures::random_instance(trial, 6, 4, 2);
    DeliveryRoutingSolution s;
    double per_truck = 0.0;
    for (int t = 0; t < 2; ++t) {
      TruckPlan p{t, {}, {0}, {}};
      std::vector<int> stops{1, 2, 3, 4, 5};
      std::shuffle(stops.begin(), stops.end(), rng);
      p.route.insert(p.route.end(), stops.begin(), stops.begin() + 1 + rng() % 5);
      p.route.push_back(0);
      p.requests.push_back(static_cast<int>(rng() % 4));
      per_truck += xi(p, inst);
      s.plans.push_back(p);
    }
    EXPECT_NEAR(xi(s, inst), per_truck, 1e-9 * std::max(1.0, std::fabs(per_truck)));
  }
}

TEST(Instance, RejectsBrokenInvariants) {
  LocationGraph g({{0, 0, 0}, {1, 1, 0}, {2, 0, 1}});
  Truck t{0, 10, 1.0, std::nullopt};
  EXPECT_THROW(Instance(g, {{0, 1.0, 1, 0, 1}}, {t}, {}), StructuralError);  // pickup at depot
  EXPECT_THROW(Instance(g, {{0, 1.0, 1, 1, 1}}, {t}, {}), StructuralError);  // pickup == dropoff
  EXPECT_THROW(Instance(g, {{0, 1.0, 0, 1, 2}}, {t}, {}), StructuralError);  // zero volume
  EXPECT_THROW(Instance(g, {{0, 1.0, 1, 1, 9}}, {t}, {}), StructuralError);  // unknown node
  EXPECT_THROW(Instance(g, {{1, 1.0, 1, 1, 2}}, {t}, {}), StructuralError);  // id gap
  EXPECT_THROW(Instance(g, {}, {{0, 0, 1.0, std::nullopt}}, {}), StructuralError);
  EXPECT_THROW(LocationGraph({{1, 0, 0}}), StructuralError);
}

TEST(LocationGraphTest, EuclideanAndSymmetric) {
  LocationGraph g({{0, 0, 0}, {1, 3, 4}, {2, 3, 0}});
  EXPECT_DOUBLE_EQ(g.distance(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(g.distance(1, 0), 5.0);
  EXPECT_DOUBLE_EQ(g.distance(2, 2), 0.0);
  // (5 + 3 + 4) * 2 ordered pairs / 6
  EXPECT_DOUBLE_EQ(g.average_distance(), 4.0);
}

TEST(ArcCost, CoefficientTimesDistance) {
  LocationGraph g({{0, 0, 0}, {1, 3, 4}, {2, 3, 0}});
  Instance inst(g, {{0, 5.0, 1, 1, 2}}, {{0, 15, 0.8, std::nullopt}}, {"t", 1.0, 1, 1, 0});
  EXPECT_DOUBLE_EQ(inst.arc_cost(0, 0, 1), 0.8 * 5.0);
  EXPECT_DOUBLE_EQ(inst.arc_cost(0, 1, 1), 0.0);
}

// ---------------------------------------------------------------------------
// Validation

TEST(Validate, WorkedExampleOptimumIsClean) {
  const ValidationReport r = validate_solution(fixtures::example1_optimum(), ex1());
  EXPECT_TRUE(r.ok()) << r.describe();
}

TEST(Validate, FullFirstTruckRouteLoadsExactlyCapacity) {
  const std::vector<int> d{0, 1};
  const std::vector<int> route{0, kA, kB, kC, 0};
  EXPECT_TRUE(validate_route(ex1().truck(0), d, route, ex1()).ok());
}

TEST(Validate, OversizedRequestExceedsSmallTruck) {
  const std::vector<int> d{0};
  for (const std::vector<int>& route : {std::vector<int>{0, kA, kC, 0}, std::vector<int>{0, kA, kB, kC, 0}}) {
    const ValidationReport r = validate_route(ex1().truck(1), d, route, ex1());
    EXPECT_TRUE(r.has(ViolationKind::CapacityExceeded)) << r.describe();
  }
}

TEST(Validate, ReversedEndpointsViolatePrecedence) {
  const std::vector<int> d{0};
  const std::vector<int> route{0, kC, kA, 0};
  const ValidationReport r = validate_route(ex1().truck(0), d, route, ex1());
  ASSERT_TRUE(r.has(ViolationKind::PrecedenceViolated));
  EXPECT_EQ(r.violations.front().request, 0);
}

TEST(Validate, LoadOrderDecidesSameStopSwaps) {
  // All three requests on t1 along a-b-c: at b, r2 (2) leaves and r3 (1)
  // boards. Loading first peaks at 7 > 6; netting stays at 5.
  const std::vector<int> d{0, 1, 2};
  const std::vector<int> route{0, kA, kB, kC, 0};
  const ValidationReport first = validate_route(ex1().truck(0), d, route, ex1(), LoadOrder::PickupFirst);
  ASSERT_TRUE(first.has(ViolationKind::CapacityExceeded));
  EXPECT_EQ(first.violations.front().node, kB);
  EXPECT_TRUE(validate_route(ex1().truck(0), d, route, ex1(), LoadOrder::Netted).ok());
}

TEST(Validate, StructuralRouteFaults) {
  const Truck& t1 = ex1().truck(0);
  const std::vector<int> d{1};
  EXPECT_TRUE(validate_route(t1, d, std::vector<int>{kA, kB, 0}, ex1()).has(ViolationKind::NotCycle));
  EXPECT_TRUE(validate_route(t1, d, std::vector<int>{}, ex1()).has(ViolationKind::NotCycle));
  EXPECT_TRUE(validate_route(t1, d, std::vector<int>{0, kA, kB, kA, 0}, ex1()).has(ViolationKind::RepeatedNode));
  EXPECT_TRUE(validate_route(t1, d, std::vector<int>{0, kA, 0}, ex1()).has(ViolationKind::MissingNode));
  EXPECT_TRUE(validate_route(t1, d, std::vector<int>{0, kA, 9, 0}, ex1()).has(ViolationKind::UnknownId));
}

TEST(Validate, TransitLocationsAreAllowed) {
  const std::vector<int> d{1};
  EXPECT_TRUE(validate_route(ex1().truck(0), d, std::vector<int>{0, kA, kC, kB, 0}, ex1()).ok());
}

TEST(Validate, DuplicateAssignmentAcrossTrucks) {
  DeliveryRoutingSolution s;
  s.plans.push_back({0, {0}, {0, kA, kC, 0}, {}});
  s.plans.push_back({1, {0}, {0, kA, kC, 0}, {}});
  const ValidationReport r = validate_solution(s, ex1());
  ASSERT_TRUE(r.has(ViolationKind::DuplicateAssignment));
  for (const Violation& v : r.violations) {
    if (v.kind == ViolationKind::DuplicateAssignment) EXPECT_EQ(v.request, 0);
  }
}

TEST(Validate, EmptySolutionIsValid) {
  DeliveryRoutingSolution s;
  s.plans.push_back({0, {}, {}, {}});
  s.plans.push_back({1, {}, {}, {}});
  EXPECT_TRUE(validate_solution(s, ex1()).ok());
  EXPECT_EQ(xi(s, ex1()), 0.0);
}

TEST(Validate, EventSequences) {
  const Truck& t1 = ex1().truck(0);
  const std::vector<int> d{0, 1, 2};
  // Unload r2 at b before loading r3: peak 6.
  std::vector<Event> events{{0, EventKind::Pickup}, {1, EventKind::Pickup}, {1, EventKind::Dropoff},
                            {2, EventKind::Pickup}, {0, EventKind::Dropoff}, {2, EventKind::Dropoff}};
  EXPECT_EQ(route_from_events(events, ex1()), (std::vector<int>{0, kA, kB, kC, 0}));
  EXPECT_TRUE(validate_event_route(t1, d, events, std::vector<int>{0, kA, kB, kC, 0}, ex1()).ok());

  // Load r3 first: 7 > 6.
  std::swap(events[2], events[3]);
  EXPECT_TRUE(validate_event_route(t1, d, events, std::vector<int>{0, kA, kB, kC, 0}, ex1())
                  .has(ViolationKind::CapacityExceeded));

  const std::vector<Event> backwards{{1, EventKind::Dropoff}, {1, EventKind::Pickup}};
  EXPECT_TRUE(validate_event_route(t1, std::vector<int>{1}, backwards, std::vector<int>{0, kB, kA, 0}, ex1())
                  .has(ViolationKind::PrecedenceViolated));

  const std::vector<Event> stray{{2, EventKind::Pickup}, {2, EventKind::Dropoff}};
  EXPECT_TRUE(validate_event_route(t1, std::vector<int>{}, stray, std::vector<int>{0, kB, kC, 0}, ex1())
                  .has(ViolationKind::StrayEvent));
}

TEST(Validate, RequestSemanticsMayRevisitLocations) {
  // r2 then r1 then r3, coming back to a: a-b-a-c is fine per request node.
  const Truck& t1 = ex1().truck(0);
  const std::vector<int> d{0, 1};
  const std::vector<Event> events{{1, EventKind::Pickup}, {1, EventKind::Dropoff}, {0, EventKind::Pickup},
                                  {0, EventKind::Dropoff}};
  const std::vector<int> route = route_from_events(events, ex1());
  EXPECT_EQ(route, (std::vector<int>{0, kA, kB, kA, kC, 0}));
  EXPECT_TRUE(validate_event_route(t1, d, events, route, ex1()).ok());
  EXPECT_TRUE(validate_route(t1, d, route, ex1()).has(ViolationKind::RepeatedNode));
}

// ---------------------------------------------------------------------------
// Load profile

TEST(LoadProfile, WorkedExampleFirstTruck) {
  const std::vector<int> d{0, 1};
  const std::vector<int> route{0, kA, kB, kC, 0};
  EXPECT_EQ(load_profile(ex1().truck(0), d, route, ex1()),
            (std::vector<LoadPoint>{{kA, 4 + 2}, {kB, 6 - 2}, {kC, 4 - 4}}));
}

TEST(LoadProfile, SecondTruckReportsDepartureLoad) {
  // a: +2; b: -2 +1; c: -1
  const std::vector<int> d{1, 2};
  const std::vector<int> route{0, kA, kB, kC, 0};
  EXPECT_EQ(load_profile(ex1().truck(1), d, route, ex1()),
            (std::vector<LoadPoint>{{kA, 2}, {kB, 1}, {kC, 0}}));
}

TEST(LoadProfile, EmptyDeliveryAndMissingEndpoint) {
  EXPECT_TRUE(load_profile(ex1().truck(0), std::vector<int>{}, std::vector<int>{}, ex1()).empty());
  try {
    load_profile(ex1().truck(0), std::vector<int>{0}, std::vector<int>{0, kA, 0}, ex1());
    FAIL() << "expected RouteError";
  } catch (const RouteError& e) {
    EXPECT_EQ(e.violation().kind, ViolationKind::MissingNode);
    EXPECT_EQ(e.violation().node, kC);
  }
}

TEST(LoadProfile, EndsEmptyOnCoveringRoutes) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance inst = fixtures::random_instance(1000 + trial, 7, 4, 1);
    std::vector<int> stops{1, 2, 3, 4, 5, 6};
    std::shuffle(stops.begin(), stops.end(), rng);
    std::vector<int> route{0};
    route.insert(route.end(), stops.begin(), stops.end());
    route.push_back(0);
    std::vector<int> d;
    for (int r = 0; r < 4; ++r) {
      if (rng() % 2) d.push_back(r);
    }
    const auto profile = load_profile(inst.truck(0), d, route, inst);
    ASSERT_EQ(profile.size(), 6u);
    EXPECT_EQ(profile.back().load, 0);
  }
}
