#include "ppdsp/mipir.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <regex>
#include <sstream>

namespace ppdsp::mip {
namespace {

constexpr std::size_t kItemsPerLine = 8;

std::string shortest(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string bound_text(double value) {
  if (value == kInf) return "+inf";
  if (value == -kInf) return "-inf";
  return shortest(value);
}

const char* sense_text(Sense sense) {
  switch (sense) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "?";
}

void write_terms(std::ostringstream& out, const MipModel& model, const std::vector<Term>& terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kItemsPerLine == 0) out << "\n  ";
    const Term& t = terms[i];
    const bool negative = std::signbit(t.coef) && t.coef != 0.0;
    if (i == 0) {
      out << (negative ? "- " : "");
    } else {
      out << (negative ? " - " : " + ");
    }
    out << shortest(std::fabs(t.coef)) << ' ' << model.variable(t.var).name;
  }
}

bool parse_number(std::string_view token, double& out) {
  if (token == "+inf" || token == "inf" || token == "+infinity" || token == "infinity") {
    out = kInf;
    return true;
  }
  if (token == "-inf" || token == "-infinity") {
    out = -kInf;
    return true;
  }
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && begin != end;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

bool is_valid_name(std::string_view name) {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (name.empty() || !alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; });
}

int MipModel::add_variable(Variable variable) {
  if (!is_valid_name(variable.name)) throw EmitError("illegal variable name '" + variable.name + "'");
  if (variable.kind == VarKind::Binary && (variable.lower < 0.0 || variable.upper > 1.0)) {
    throw EmitError("binary variable " + variable.name + " has bounds outside [0,1]");
  }
  if (variable.lower > variable.upper) throw EmitError("variable " + variable.name + " has lower > upper");
  const int index = num_variables();
  if (!index_.emplace(variable.name, index).second) {
    throw EmitError("duplicate variable name " + variable.name);
  }
  variables_.push_back(std::move(variable));
  return index;
}

void MipModel::add_row(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
  if (!is_valid_name(name)) throw EmitError("illegal row name '" + name + "'");
  if (terms.empty()) throw EmitError("row " + name + " has no terms");
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) throw EmitError("row " + name + " references an undeclared variable");
  }
  std::vector<Term> merged;
  if (terms.size() <= 16) {
    bool repeated = false;
    for (std::size_t i = 1; i < terms.size() && !repeated; ++i) {
      for (std::size_t j = 0; j < i; ++j) repeated = repeated || terms[i].var == terms[j].var;
    }
    if (!repeated) {
      rows_.push_back(LinearRow{std::move(name), std::move(terms), sense, rhs});
      return;
    }
    merged.reserve(terms.size());
    for (const Term& t : terms) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const Term& m) { return m.var == t.var; });
      if (it == merged.end()) {
        merged.push_back(t);
      } else {
        it->coef += t.coef;
      }
    }
  } else {
    merged.reserve(terms.size());
    std::unordered_map<int, std::size_t> slot;
    for (const Term& t : terms) {
      auto [it, fresh] = slot.emplace(t.var, merged.size());
      if (fresh) {
        merged.push_back(t);
      } else {
        merged[it->second].coef += t.coef;
      }
    }
  }
  rows_.push_back(LinearRow{std::move(name), std::move(merged), sense, rhs});
}

std::optional<int> MipModel::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Census census(const MipModel& model) { return {model.num_variables(), model.num_rows()}; }

std::string emit_lp(const MipModel& model) {
  for (const Variable& v : model.variables()) {
    if (!is_valid_name(v.name)) throw EmitError("illegal variable name '" + v.name + "'");
  }
  std::ostringstream out;
  out << "Maximize\n obj: ";
  std::vector<Term> objective;
  for (int i = 0; i < model.num_variables(); ++i) {
    if (model.variable(i).objective != 0.0) objective.push_back({i, model.variable(i).objective});
  }
  if (objective.empty() && model.num_variables() > 0) objective.push_back({0, 0.0});
  write_terms(out, model, objective);
  out << "\nSubject To\n";
  for (const LinearRow& row : model.rows()) {
    if (!is_valid_name(row.name)) throw EmitError("illegal row name '" + row.name + "'");
    out << ' ' << row.name << ": ";
    write_terms(out, model, row.terms);
    out << ' ' << sense_text(row.sense) << ' ' << shortest(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : model.variables()) {
    out << ' ' << bound_text(v.lower) << " <= " << v.name << " <= " << bound_text(v.upper) << '\n';
  }
  auto write_names = [&](const char* header, VarKind kind) {
    std::vector<const std::string*> names;
    for (const Variable& v : model.variables()) {
      if (v.kind == kind) names.push_back(&v.name);
    }
    out << header << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) {
      out << ' ' << *names[i];
      if ((i + 1) % kItemsPerLine == 0 || i + 1 == names.size()) out << '\n';
    }
  };
  write_names("Generals", VarKind::Integer);
  write_names("Binaries", VarKind::Binary);
  out << "End\n";
  return out.str();
}

MipModel read_lp(std::string_view text) {
  enum class Section { None, Objective, Rows, Bounds, Generals, Binaries, End };
  std::vector<std::pair<std::size_t, std::string>> tokens[7];

  // Tokenize per section, dropping comments.
  Section section = Section::None;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('\\'); pos != std::string::npos) line.erase(pos);
    std::istringstream words(line);
    std::string word;
    std::vector<std::string> parts;
    while (words >> word) parts.push_back(word);
    if (parts.empty()) continue;
    const std::string head = lower(parts[0]);
    if (parts.size() == 1 && (head == "maximize" || head == "maximum" || head == "max")) {
      section = Section::Objective;
      continue;
    }
    if (head == "minimize" || head == "min") throw ParseError(line_no, "only maximization models are read");
    if ((parts.size() == 2 && head == "subject" && lower(parts[1]) == "to") || head == "st" ||
        head == "s.t.") {
      section = Section::Rows;
      continue;
    }
    if (parts.size() == 1 && (head == "bounds" || head == "bound")) {
      section = Section::Bounds;
      continue;
    }
    if (parts.size() == 1 && (head == "generals" || head == "general")) {
      section = Section::Generals;
      continue;
    }
    if (parts.size() == 1 && (head == "binaries" || head == "binary")) {
      section = Section::Binaries;
      continue;
    }
    if (parts.size() == 1 && head == "end") {
      section = Section::End;
      break;
    }
    if (section == Section::None) throw ParseError(line_no, "text before the objective section");
    if (section == Section::Bounds) {
      // Keep bound lines intact: one bound per line.
      std::string joined;
      for (const auto& p : parts) joined += p + " ";
      tokens[static_cast<int>(section)].emplace_back(line_no, joined);
      continue;
    }
    for (auto& p : parts) tokens[static_cast<int>(section)].emplace_back(line_no, std::move(p));
  }
  if (section != Section::End) throw ParseError(line_no, "missing End");

  // Variables are declared in Bounds order, which emit_lp writes in model
  // order; any name seen only elsewhere is appended afterwards.
  struct Pending {
    double lower = 0.0;
    double upper = kInf;
    double objective = 0.0;
    VarKind kind = VarKind::Continuous;
    bool bounded = false;
  };
  std::vector<std::string> order;
  std::map<std::string, Pending> pending;
  auto touch = [&](const std::string& name, std::size_t at) -> Pending& {
    if (!is_valid_name(name)) throw ParseError(at, "bad variable name '" + name + "'");
    auto [it, fresh] = pending.emplace(name, Pending{});
    if (fresh) order.push_back(name);
    return it->second;
  };

  for (const auto& [at, bound_line] : tokens[static_cast<int>(Section::Bounds)]) {
    std::istringstream words(bound_line);
    std::vector<std::string> p;
    std::string w;
    while (words >> w) p.push_back(w);
    double lo = 0, hi = 0;
    if (p.size() == 5 && p[1] == "<=" && p[3] == "<=" && parse_number(p[0], lo) &&
        parse_number(p[4], hi)) {
      Pending& v = touch(p[2], at);
      v.lower = lo;
      v.upper = hi;
      v.bounded = true;
    } else if (p.size() == 3 && p[1] == "=" && parse_number(p[2], lo)) {
      Pending& v = touch(p[0], at);
      v.lower = v.upper = lo;
      v.bounded = true;
    } else if (p.size() == 2 && lower(p[1]) == "free") {
      Pending& v = touch(p[0], at);
      v.lower = -kInf;
      v.upper = kInf;
      v.bounded = true;
    } else {
      throw ParseError(at, "unsupported bound '" + bound_line + "'");
    }
  }

  // Linear expressions: [sign] [coef] name ...
  struct ParsedRow {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
  };
  auto parse_expression = [&](const std::vector<std::pair<std::size_t, std::string>>& toks,
                              std::size_t& i, std::vector<std::pair<std::string, double>>& terms,
                              bool stop_at_sense) {
    double sign = 1.0;
    double coef = 1.0;
    while (i < toks.size()) {
      const auto& [at, tok] = toks[i];
      if (stop_at_sense && (tok == "<=" || tok == ">=" || tok == "=" || tok == "<" || tok == ">" ||
                            tok == "=<" || tok == "=>")) {
        return;
      }
      if (!stop_at_sense && tok.back() == ':' && i + 1 < toks.size()) return;
      double value = 0.0;
      if (tok == "+") {
        sign = 1.0;
      } else if (tok == "-") {
        sign = -1.0;
      } else if (parse_number(tok, value)) {
        coef = value;
      } else {
        terms.emplace_back(tok, sign * coef);
        touch(tok, at);
        sign = 1.0;
        coef = 1.0;
      }
      ++i;
    }
  };

  {
    const auto& toks = tokens[static_cast<int>(Section::Objective)];
    std::size_t i = 0;
    if (i < toks.size() && toks[i].second.back() == ':') ++i;
    std::vector<std::pair<std::string, double>> terms;
    parse_expression(toks, i, terms, false);
    for (const auto& [name, c] : terms) pending.at(name).objective += c;
  }

  std::vector<ParsedRow> rows;
  {
    const auto& toks = tokens[static_cast<int>(Section::Rows)];
    std::size_t i = 0;
    while (i < toks.size()) {
      ParsedRow row;
      const auto& [at, first] = toks[i];
      if (first.back() != ':') throw ParseError(at, "rows must be named ('name: ...')");
      row.name = first.substr(0, first.size() - 1);
      ++i;
      parse_expression(toks, i, row.terms, true);
      if (i + 1 >= toks.size()) throw ParseError(at, "row " + row.name + " lacks a sense and rhs");
      const std::string& sense = toks[i].second;
      if (sense == "<=" || sense == "<" || sense == "=<") {
        row.sense = Sense::LessEqual;
      } else if (sense == ">=" || sense == ">" || sense == "=>") {
        row.sense = Sense::GreaterEqual;
      } else {
        row.sense = Sense::Equal;
      }
      if (!parse_number(toks[i + 1].second, row.rhs)) {
        throw ParseError(toks[i + 1].first, "bad right-hand side '" + toks[i + 1].second + "'");
      }
      i += 2;
      rows.push_back(std::move(row));
    }
  }

  for (const auto& [at, name] : tokens[static_cast<int>(Section::Generals)]) touch(name, at).kind = VarKind::Integer;
  for (const auto& [at, name] : tokens[static_cast<int>(Section::Binaries)]) {
    Pending& v = touch(name, at);
    v.kind = VarKind::Binary;
    if (!v.bounded) {
      v.lower = 0.0;
      v.upper = 1.0;
    }
  }

  MipModel model;
  for (const std::string& name : order) {
    const Pending& p = pending.at(name);
    model.add_variable(Variable{name, p.kind, p.lower, p.upper, p.objective, {}});
  }
  for (ParsedRow& row : rows) {
    std::vector<Term> terms;
    for (const auto& [name, c] : row.terms) terms.push_back({*model.find(name), c});
    model.add_row(std::move(row.name), std::move(terms), row.sense, row.rhs);
  }
  return model;
}

double objective_value(const MipModel& model, const std::vector<double>& values) {
  double total = 0.0;
  for (int i = 0; i < model.num_variables(); ++i) total += model.variable(i).objective * values.at(static_cast<std::size_t>(i));
  return total;
}

double max_violation(const MipModel& model, const std::vector<double>& values) {
  double worst = 0.0;
  for (int i = 0; i < model.num_variables(); ++i) {
    const Variable& v = model.variable(i);
    const double x = values.at(static_cast<std::size_t>(i));
    worst = std::max({worst, v.lower - x, x - v.upper});
  }
  for (const LinearRow& row : model.rows()) {
    double lhs = 0.0;
    for (const Term& t : row.terms) lhs += t.coef * values.at(static_cast<std::size_t>(t.var));
    switch (row.sense) {
      case Sense::LessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Sense::GreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Sense::Equal: worst = std::max(worst, std::fabs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Optimal: return "Optimal";
    case SolverStatus::Feasible: return "Feasible";
    case SolverStatus::Infeasible: return "Infeasible";
    case SolverStatus::TimeLimit: return "TimeLimit";
    case SolverStatus::Error: return "Error";
    case SolverStatus::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(Dialect dialect) {
  switch (dialect) {
    case Dialect::Plain: return "plain";
    case Dialect::Cbc: return "cbc";
    case Dialect::Xml: return "xml";
  }
  return "?";
}

std::optional<Dialect> dialect_from_string(std::string_view text) {
  if (text == "plain") return Dialect::Plain;
  if (text == "cbc") return Dialect::Cbc;
  if (text == "xml") return Dialect::Xml;
  return std::nullopt;
}

namespace {

void assign(Assignment& out, const MipModel& model, const std::string& name, double value) {
  if (auto index = model.find(name)) {
    out.values[static_cast<std::size_t>(*index)] = value;
  } else {
    out.warnings.push_back("unknown variable '" + name + "' ignored");
  }
}

std::optional<SolverStatus> status_from_word(std::string word) {
  word = lower(std::move(word));
  if (word == "optimal") return SolverStatus::Optimal;
  if (word == "feasible") return SolverStatus::Feasible;
  if (word == "infeasible") return SolverStatus::Infeasible;
  if (word == "timelimit") return SolverStatus::TimeLimit;
  if (word == "error") return SolverStatus::Error;
  if (word == "unknown") return SolverStatus::Unknown;
  return std::nullopt;
}

SolverReport parse_plain(std::string_view text, const MipModel& model) {
  SolverReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() != '#') continue;
    std::istringstream words(line.substr(1));
    std::string key, value;
    words >> key >> value;
    key = lower(key);
    if (key == "status:") {
      auto status = status_from_word(value);
      if (!status) throw ParseError(line_no, "unknown status '" + value + "'");
      report.status = *status;
    } else if (key == "objective:") {
      double obj = 0;
      if (!parse_number(value, obj)) throw ParseError(line_no, "bad objective '" + value + "'");
      report.objective = obj;
    }
  }
  report.assignment = parse_solution(text, model);
  return report;
}

SolverReport parse_cbc(std::string_view text, const MipModel& model) {
  SolverReport report;
  report.assignment.values.assign(static_cast<std::size_t>(model.num_variables()), 0.0);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty CBC solution file");
  ++line_no;
  const std::string status_line = lower(line);
  const bool has_value = status_line.find("objective value") != std::string::npos;
  if (status_line.rfind("optimal", 0) == 0) {
    report.status = SolverStatus::Optimal;
  } else if (status_line.find("infeasible") != std::string::npos) {
    report.status = SolverStatus::Infeasible;
  } else if (status_line.rfind("stopped", 0) == 0) {
    report.status = has_value ? SolverStatus::Feasible : SolverStatus::TimeLimit;
  } else if (status_line.find("unbounded") != std::string::npos) {
    report.status = SolverStatus::Error;
  } else {
    throw ParseError(1, "unrecognized CBC status line '" + line + "'");
  }
  if (has_value) {
    const auto pos = status_line.find("objective value") + std::string("objective value").size();
    std::istringstream rest(line.substr(pos));
    std::string token;
    double obj = 0;
    if (rest >> token && parse_number(token, obj)) report.objective = obj;
  }
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::vector<std::string> p;
    std::string w;
    while (words >> w) p.push_back(w);
    if (p.empty()) continue;
    if (p[0] == "**") p.erase(p.begin());
    double value = 0;
    if (p.size() < 3 || !parse_number(p[2], value)) {
      throw ParseError(line_no, "expected 'index name value [reduced cost]'");
    }
    assign(report.assignment, model, p[1], value);
  }
  return report;
}

SolverReport parse_xml(std::string_view text, const MipModel& model) {
  SolverReport report;
  report.assignment.values.assign(static_cast<std::size_t>(model.num_variables()), 0.0);
  const std::string body(text);
  static const std::regex element(R"(<(header|variable)\b([^>]*)>)");
  static const std::regex attribute(R"re((\w+)\s*=\s*"([^"]*)")re");
  bool saw_variable = false;
  std::string status_string;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), element); it != std::sregex_iterator(); ++it) {
    std::map<std::string, std::string> attrs;
    const std::string inner = (*it)[2].str();
    for (auto a = std::sregex_iterator(inner.begin(), inner.end(), attribute); a != std::sregex_iterator(); ++a) {
      attrs[(*a)[1].str()] = (*a)[2].str();
    }
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(body.begin(), body.begin() + it->position(), '\n'));
    if ((*it)[1] == "header") {
      status_string = lower(attrs["solutionStatusString"]);
      double obj = 0;
      if (attrs.count("objectiveValue") && parse_number(attrs["objectiveValue"], obj)) report.objective = obj;
    } else {
      double value = 0;
      if (!attrs.count("name") || !attrs.count("value") || !parse_number(attrs["value"], value)) {
        throw ParseError(line, "variable element needs name and numeric value");
      }
      assign(report.assignment, model, attrs["name"], value);
      saw_variable = true;
    }
  }
  if (status_string.find("infeasible") != std::string::npos) {
    report.status = SolverStatus::Infeasible;
  } else if (status_string.find("optimal") != std::string::npos) {
    report.status = SolverStatus::Optimal;
  } else if (status_string.find("time limit") != std::string::npos) {
    report.status = saw_variable ? SolverStatus::Feasible : SolverStatus::TimeLimit;
  } else if (status_string.find("feasible") != std::string::npos) {
    report.status = SolverStatus::Feasible;
  } else if (saw_variable) {
    report.status = SolverStatus::Feasible;
  }
  return report;
}

}  // namespace

Assignment parse_solution(std::string_view text, const MipModel& model) {
  Assignment out;
  out.values.assign(static_cast<std::size_t>(model.num_variables()), 0.0);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream words(line);
    std::vector<std::string> p;
    std::string w;
    while (words >> w) p.push_back(w);
    if (p.empty()) continue;
    double value = 0;
    if (p.size() != 2 || !parse_number(p[1], value)) {
      throw ParseError(line_no, "expected 'name value', got '" + line + "'");
    }
    assign(out, model, p[0], value);
  }
  return out;
}

SolverReport parse_solver_output(std::string_view text, const MipModel& model, Dialect dialect) {
  switch (dialect) {
    case Dialect::Plain: return parse_plain(text, model);
    case Dialect::Cbc: return parse_cbc(text, model);
    case Dialect::Xml: return parse_xml(text, model);
  }
  throw ParseError(0, "unknown dialect");
}

}  // namespace ppdsp::mip
