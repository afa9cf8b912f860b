#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ppdsp {

struct Coordinate {
  double x = 0.0;
  double y = 0.0;
};

// NODE_COORD_SECTION of a TSPLIB file, in file order. The first row becomes
// the depot.
struct TsplibSample {
  std::string name;
  std::vector<Coordinate> coords;
};

inline constexpr std::size_t kMinSampleNodes = 3;

// Reads NAME, DIMENSION and NODE_COORD_SECTION; other header keys are
// ignored. Throws ParseError with a line number.
TsplibSample parse_tsplib(std::string_view text);

}  // namespace ppdsp
