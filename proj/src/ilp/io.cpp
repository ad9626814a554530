// SPDX-License-Identifier: Apache-2.0
#include "spark/ilp/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace spark {

using nlohmann::ordered_json;

namespace {

Relation parse_relation(const std::string& text) {
  if (text == "<=" || text == "le") return Relation::Le;
  if (text == ">=" || text == "ge") return Relation::Ge;
  if (text == "=" || text == "==" || text == "eq") return Relation::Eq;
  throw ProblemError("unknown relation '" + text + "'");
}

std::vector<std::int64_t> int_array(const ordered_json& node, const char* what) {
  if (!node.is_array()) throw ProblemError(std::string(what) + " must be an array");
  std::vector<std::int64_t> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number_integer()) throw ProblemError(std::string(what) + " entries must be integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

}  // namespace

IlpProblem parse_json_problem(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ProblemError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ProblemError("problem document must be a JSON object");
  try {
    const std::string sense_text = doc.at("sense").get<std::string>();
    Sense sense;
    if (sense_text == "max") {
      sense = Sense::Max;
    } else if (sense_text == "min") {
      sense = Sense::Min;
    } else {
      throw ProblemError("sense must be \"max\" or \"min\"");
    }
    auto cost = int_array(doc.at("cost"), "cost");
    const auto& rows_node = doc.at("constraints");
    if (!rows_node.is_array()) throw ProblemError("constraints must be an array");
    std::vector<RawConstraint> rows;
    for (const auto& r : rows_node) {
      RawConstraint raw;
      raw.coeffs = int_array(r.at("coeffs"), "coeffs");
      if (!r.at("rhs").is_number_integer()) throw ProblemError("rhs must be an integer");
      raw.rhs = r.at("rhs").get<std::int64_t>();
      if (r.contains("relation")) raw.relation = parse_relation(r.at("relation").get<std::string>());
      rows.push_back(std::move(raw));
    }
    if (rows.empty()) throw ProblemError("constraints must not be empty");
    const bool integral = doc.value("integral", true);
    const int width = doc.value("coeff_width", 16);
    return make_problem(doc.value("name", std::string{}), sense, std::move(cost), rows, integral,
                        width);
  } catch (const nlohmann::json::exception& e) {
    throw ProblemError(std::string("invalid problem document: ") + e.what());
  }
}

std::string serialize_json(const IlpProblem& p) {
  ordered_json doc;
  doc["name"] = p.name;
  doc["sense"] = to_string(p.sense);
  doc["cost"] = p.cost;
  ordered_json rows = ordered_json::array();
  for (const auto& c : p.constraints) {
    ordered_json row;
    row["coeffs"] = c.coeffs;
    row["rhs"] = c.rhs;
    rows.push_back(std::move(row));
  }
  doc["constraints"] = std::move(rows);
  doc["integral"] = p.integral;
  doc["coeff_width"] = p.coeff_width;
  return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::int64_t integral_value(const std::string& tok, std::size_t line_no) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ProblemError("MPS line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ProblemError("MPS line " + std::to_string(line_no) + ": value '" + tok +
                       "' is not an integer");
  }
  return static_cast<std::int64_t>(v);
}

struct MpsRow {
  char type;  // N, L, G, E
  std::map<std::size_t, std::int64_t> coeffs;
  std::int64_t rhs = 0;
};

}  // namespace

IlpProblem parse_mps_problem(std::string_view text) {
  std::string name;
  Sense sense = Sense::Min;
  std::vector<MpsRow> rows;
  std::map<std::string, std::size_t> row_index;
  std::optional<std::size_t> objective_row;
  std::vector<std::string> columns;
  std::map<std::string, std::size_t> column_index;
  std::vector<bool> column_integral;
  std::vector<std::int64_t> lower, upper;
  std::vector<bool> has_upper;
  bool in_int_block = false;
  std::string section;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ProblemError("MPS line " + std::to_string(line_no) + ": " + msg);
  };
  auto column_of = [&](const std::string& col) -> std::size_t {
    auto it = column_index.find(col);
    if (it == column_index.end()) fail("unknown column '" + col + "'");
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    auto f = split_fields(line);
    if (f.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      section = f[0];
      if (section == "NAME") {
        name = f.size() > 1 ? f[1] : "";
      } else if (section == "OBJSENSE") {
        if (f.size() > 1) sense = (f[1] == "MAX" || f[1] == "MAXIMIZE") ? Sense::Max : Sense::Min;
      } else if (section == "ENDATA") {
        break;
      } else if (section == "RANGES") {
        fail("RANGES section is not supported");
      } else if (section != "ROWS" && section != "COLUMNS" && section != "RHS" &&
                 section != "BOUNDS" && section != "OBJSENSE") {
        fail("unknown section '" + section + "'");
      }
      continue;
    }
    if (section == "OBJSENSE") {
      sense = (f[0] == "MAX" || f[0] == "MAXIMIZE") ? Sense::Max : Sense::Min;
    } else if (section == "ROWS") {
      if (f.size() != 2 || f[0].size() != 1) fail("ROWS entry needs a type and a name");
      const char type = f[0][0];
      if (type != 'N' && type != 'L' && type != 'G' && type != 'E') fail("bad row type");
      if (type == 'N' && objective_row) continue;  // extra free rows are ignored
      row_index[f[1]] = rows.size();
      if (type == 'N') objective_row = rows.size();
      rows.push_back({type, {}, 0});
    } else if (section == "COLUMNS") {
      if (f.size() >= 3 && f[1] == "'MARKER'") {
        if (f[2] == "'INTORG'") {
          in_int_block = true;
        } else if (f[2] == "'INTEND'") {
          in_int_block = false;
        } else {
          fail("unknown marker");
        }
        continue;
      }
      if (f.size() != 3 && f.size() != 5) fail("COLUMNS entry needs 1 or 2 row/value pairs");
      auto [it, fresh] = column_index.try_emplace(f[0], columns.size());
      if (fresh) {
        columns.push_back(f[0]);
        column_integral.push_back(in_int_block);
        lower.push_back(0);
        upper.push_back(0);
        has_upper.push_back(false);
      }
      for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
        auto r = row_index.find(f[k]);
        if (r == row_index.end()) fail("unknown row '" + f[k] + "'");
        rows[r->second].coeffs[it->second] = integral_value(f[k + 1], line_no);
      }
    } else if (section == "RHS") {
      if (f.size() != 3 && f.size() != 5) fail("RHS entry needs a set name and pairs");
      for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
        auto r = row_index.find(f[k]);
        if (r == row_index.end()) fail("unknown row '" + f[k] + "'");
        if (objective_row && r->second == *objective_row) continue;
        rows[r->second].rhs = integral_value(f[k + 1], line_no);
      }
    } else if (section == "BOUNDS") {
      if (f.size() < 3) fail("BOUNDS entry too short");
      const std::string& kind = f[0];
      const std::size_t j = column_of(f[2]);
      if (kind == "BV") {
        lower[j] = 0;
        upper[j] = 1;
        has_upper[j] = true;
        column_integral[j] = true;
        continue;
      }
      if (f.size() != 4) fail("BOUNDS entry needs a value");
      const std::int64_t v = integral_value(f[3], line_no);
      if (kind == "UP") {
        upper[j] = v;
        has_upper[j] = true;
      } else if (kind == "LO") {
        if (v < 0) fail("negative lower bounds are not supported");
        lower[j] = v;
      } else if (kind == "FX") {
        lower[j] = upper[j] = v;
        has_upper[j] = true;
      } else {
        fail("bound type '" + kind + "' is not supported");
      }
    } else {
      fail("data line outside a section");
    }
  }

  if (columns.empty()) throw ProblemError("MPS: COLUMNS section is empty");
  if (!objective_row) throw ProblemError("MPS: no objective (N) row");
  if (rows.size() <= 1) throw ProblemError("MPS: ROWS section has no constraints");
  const bool integral = column_integral.front();
  for (bool b : column_integral) {
    if (b != integral) throw ProblemError("MPS: mixed integer/continuous columns are not supported");
  }

  const std::size_t n = columns.size();
  std::vector<std::int64_t> cost(n, 0);
  for (auto [j, v] : rows[*objective_row].coeffs) cost[j] = v;
  std::vector<RawConstraint> raw;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == *objective_row) continue;
    RawConstraint rc;
    rc.coeffs.assign(n, 0);
    for (auto [j, v] : rows[i].coeffs) rc.coeffs[j] = v;
    rc.rhs = rows[i].rhs;
    rc.relation = rows[i].type == 'L' ? Relation::Le
                  : rows[i].type == 'G' ? Relation::Ge
                                        : Relation::Eq;
    raw.push_back(std::move(rc));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (has_upper[j]) {
      RawConstraint rc{std::vector<std::int64_t>(n, 0), upper[j], Relation::Le};
      rc.coeffs[j] = 1;
      raw.push_back(std::move(rc));
    }
    if (lower[j] > 0) {
      RawConstraint rc{std::vector<std::int64_t>(n, 0), lower[j], Relation::Ge};
      rc.coeffs[j] = 1;
      raw.push_back(std::move(rc));
    }
  }
  return make_problem(name, sense, std::move(cost), raw, integral);
}

IlpProblem parse_problem(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ProblemError("empty problem document");
  if (text[first] == '{') return parse_json_problem(text);
  return parse_mps_problem(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

IlpProblem load_problem(const std::filesystem::path& path) {
  return parse_problem(read_text_file(path));
}

}  // namespace spark
