#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ppdsp/errors.hpp"
#include "ppdsp/tsplib.hpp"

using ppdsp::ParseError;
using ppdsp::parse_tsplib;

TEST(Tsplib, ReadsHeaderAndRowsInOrder) {
  const auto s = parse_tsplib(
      "NAME : tiny.tsp\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
      "NODE_COORD_SECTION\n1 0 0\n2 3.5 -4\n3 +1e2 7\nEOF\n");
  EXPECT_EQ(s.name, "tiny");
  ASSERT_EQ(s.coords.size(), 3u);
  EXPECT_DOUBLE_EQ(s.coords[1].x, 3.5);
  EXPECT_DOUBLE_EQ(s.coords[1].y, -4.0);
  EXPECT_DOUBLE_EQ(s.coords[2].x, 100.0);
}

TEST(Tsplib, StopsAtEofAndFollowingSections) {
  const auto a = parse_tsplib("NODE_COORD_SECTION\n1 0 0\n2 1 1\n3 2 2\nEOF\n4 3 3\n");
  EXPECT_EQ(a.coords.size(), 3u);
  const auto b = parse_tsplib("NODE_COORD_SECTION\n1 0 0\n2 1 1\n3 2 2\nDISPLAY_DATA_SECTION\n");
  EXPECT_EQ(b.coords.size(), 3u);
}

TEST(Tsplib, Errors) {
  EXPECT_THROW(parse_tsplib("NAME: x\n"), ParseError);
  EXPECT_THROW(parse_tsplib("NODE_COORD_SECTION\n1 0 0\n2 1 1\n"), ParseError);
  EXPECT_THROW(parse_tsplib("DIMENSION: 4\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n3 2 2\n"), ParseError);
  EXPECT_THROW(parse_tsplib("DIMENSION: four\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n3 2 2\n"),
               ParseError);
  try {
    parse_tsplib("NODE_COORD_SECTION\n1 0 0\n2 1 x\n3 2 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_tsplib("NODE_COORD_SECTION\n1 0 0\n1 1 1\n3 2 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Tsplib, BundledSamplesHaveExpectedSizes) {
  EXPECT_EQ(fixtures::sample("burma14").coords.size(), 14u);
  EXPECT_EQ(fixtures::sample("ulysses16").coords.size(), 16u);
  EXPECT_EQ(fixtures::sample("ulysses22").coords.size(), 22u);
  const auto b = fixtures::sample("burma14");
  EXPECT_EQ(b.name, "burma14");
  EXPECT_DOUBLE_EQ(b.coords[0].x, 16.47);
  EXPECT_DOUBLE_EQ(b.coords[0].y, 96.10);
}
