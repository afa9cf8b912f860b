#include "ppdsp/tsplib.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "ppdsp/errors.hpp"

namespace ppdsp {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// "KEY : value" or "KEY: value"; returns false if the line has no colon.
bool split_header(const std::string& line, std::string& key, std::string& value) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) return false;
  key = trim(line.substr(0, colon));
  value = trim(line.substr(colon + 1));
  return true;
}

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

TsplibSample parse_tsplib(std::string_view text) {
  TsplibSample sample;
  long long dimension = -1;
  bool in_section = false;
  bool saw_section = false;
  std::set<long long> indexes;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line == "EOF") break;

    if (in_section) {
      std::istringstream row(line);
      std::string idx_tok, x_tok, y_tok, extra;
      row >> idx_tok >> x_tok >> y_tok;
      long long index = 0;
      auto [p, ec] = std::from_chars(idx_tok.data(), idx_tok.data() + idx_tok.size(), index);
      if (ec != std::errc() || p != idx_tok.data() + idx_tok.size()) {
        // A non-numeric first token ends the section (e.g. DISPLAY_DATA_SECTION).
        if (std::isalpha(static_cast<unsigned char>(idx_tok.front()))) {
          in_section = false;
          continue;
        }
        throw ParseError(line_no, "non-numeric node index '" + idx_tok + "'");
      }
      Coordinate c;
      if (!parse_double(x_tok, c.x) || !parse_double(y_tok, c.y) || (row >> extra)) {
        throw ParseError(line_no, "expected 'index x y', got '" + line + "'");
      }
      if (!indexes.insert(index).second) {
        throw ParseError(line_no, "duplicate node index " + std::to_string(index));
      }
      sample.coords.push_back(c);
      continue;
    }

    if (line == "NODE_COORD_SECTION" || line.rfind("NODE_COORD_SECTION", 0) == 0) {
      in_section = true;
      saw_section = true;
      continue;
    }
    std::string key, value;
    if (!split_header(line, key, value)) continue;
    if (key == "NAME") {
      sample.name = value;
      const auto dot = sample.name.find(".tsp");
      if (dot != std::string::npos) sample.name.erase(dot);
    } else if (key == "DIMENSION") {
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), dimension);
      if (ec != std::errc() || p != value.data() + value.size()) {
        throw ParseError(line_no, "DIMENSION is not an integer");
      }
    }
  }

  if (!saw_section) throw ParseError(0, "missing NODE_COORD_SECTION");
  if (sample.coords.size() < kMinSampleNodes) {
    throw ParseError(0, "TooFewNodes: sample has " + std::to_string(sample.coords.size()) +
                            " coordinate rows, need at least " +
                            std::to_string(kMinSampleNodes));
  }
  if (dimension >= 0 && static_cast<std::size_t>(dimension) != sample.coords.size()) {
    throw ParseError(0, "DIMENSION " + std::to_string(dimension) + " but " +
                            std::to_string(sample.coords.size()) + " coordinate rows");
  }
  return sample;
}

}  // namespace ppdsp
