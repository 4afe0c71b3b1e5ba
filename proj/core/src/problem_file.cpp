#include "dds/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "dds/error.hpp"

namespace dds {

namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error{ErrorCode::parse_error, "field '" + field + "': " + what};
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path + key, "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

Vector number_array(const json& v, const std::string& field) {
  if (!v.is_array()) field_error(field, "expected an array of numbers");
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Index>(i)) = number(v[i], field + "[" + std::to_string(i) + "]");
  }
  return out;
}

Index positive_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    field_error(field, "expected a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

BarrierAtom parse_atom(const json& v, const std::string& path) {
  if (!v.is_object()) field_error(path, "expected an object");
  const json& type_field = require(v, "type", path + ".");
  if (!type_field.is_string()) field_error(path + ".type", "expected a string");
  const std::string type = type_field.get<std::string>();

  const json& coords_field = require(v, "coords", path + ".");
  if (!coords_field.is_array() || coords_field.empty()) {
    field_error(path + ".coords", "expected a non-empty array of 1-based indices");
  }
  std::vector<Index> coords;
  for (std::size_t i = 0; i < coords_field.size(); ++i) {
    coords.push_back(
        positive_integer(coords_field[i], path + ".coords[" + std::to_string(i) + "]") - 1);
  }

  Vector offset = Vector::Zero(static_cast<Index>(coords.size()));
  if (const auto it = v.find("offset"); it != v.end()) {
    offset = number_array(*it, path + ".offset");
  }
  Vector bounds;
  if (const auto it = v.find("bounds"); it != v.end()) {
    bounds = number_array(*it, path + ".bounds");
  }
  auto need_bounds = [&](Index count) {
    if (bounds.size() != count) {
      field_error(path + ".bounds", "type '" + type + "' needs " + std::to_string(count) +
                                        " bound(s)");
    }
  };

  if (type == "halfline_lower") {
    need_bounds(1);
    return BarrierAtom::halfline_lower(std::move(coords), bounds(0), std::move(offset));
  }
  if (type == "halfline_upper") {
    need_bounds(1);
    return BarrierAtom::halfline_upper(std::move(coords), bounds(0), std::move(offset));
  }
  if (type == "box") {
    need_bounds(2);
    return BarrierAtom::box(std::move(coords), bounds(0), bounds(1), std::move(offset));
  }
  if (type == "soc") {
    need_bounds(0);
    return BarrierAtom::soc(std::move(coords), std::move(offset));
  }
  field_error(path + ".type",
              "unknown atom type '" + type + "' (halfline_lower, halfline_upper, box, soc)");
}

std::string locate(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ProblemFile parse_problem_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw Error{ErrorCode::parse_error, locate(text, at) + ": malformed JSON"};
  }
  if (!doc.is_object()) field_error("<root>", "expected an object");

  const Index n = positive_integer(require(doc, "n", ""), "n");
  const Index m = positive_integer(require(doc, "m", ""), "m");

  const json& a_field = require(doc, "A", "");
  if (!a_field.is_array() || static_cast<Index>(a_field.size()) != m) {
    field_error("A", "expected " + std::to_string(m) + " rows");
  }
  ProblemFile file;
  file.raw.A.resize(m, n);
  for (Index i = 0; i < m; ++i) {
    const std::string row_name = "A[" + std::to_string(i) + "]";
    const Vector row = number_array(a_field[static_cast<std::size_t>(i)], row_name);
    if (row.size() != n) field_error(row_name, "expected " + std::to_string(n) + " entries");
    file.raw.A.row(i) = row.transpose();
  }

  file.raw.c = number_array(require(doc, "c", ""), "c");
  if (file.raw.c.size() != n) field_error("c", "expected " + std::to_string(n) + " entries");

  const json& atoms = require(doc, "atoms", "");
  if (!atoms.is_array()) field_error("atoms", "expected an array");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    file.raw.atoms.push_back(parse_atom(atoms[i], "atoms[" + std::to_string(i) + "]"));
  }

  if (const auto it = doc.find("z0"); it != doc.end()) {
    file.z0 = number_array(*it, "z0");
    if (file.z0->size() != m) field_error("z0", "expected " + std::to_string(m) + " entries");
  }
  if (const auto it = doc.find("constants"); it != doc.end()) {
    if (!it->is_object()) field_error("constants", "expected an object");
    if (const auto xi = it->find("xi"); xi != it->end()) {
      file.raw.constants.xi = number(*xi, "constants.xi");
    }
    if (const auto kappa = it->find("kappa"); kappa != it->end()) {
      file.raw.constants.kappa = number(*kappa, "constants.kappa");
    }
  }
  return file;
}

ProblemFile read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error{ErrorCode::parse_error, "cannot open '" + path.string() + "'"};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str());
}

LoadedProblem load_problem(ProblemFile file) {
  Problem problem = validate_problem(std::move(file.raw));
  StartData start = file.z0 ? make_start(problem, std::move(*file.z0)) : default_z0(problem);
  return LoadedProblem{std::move(problem), std::move(start)};
}

LoadedProblem parse_problem_file(const std::filesystem::path& path) {
  return load_problem(read_problem_file(path));
}

}  // namespace dds
