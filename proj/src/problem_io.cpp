#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "eedp/dispatch.hpp"
#include "eedp/errors.hpp"

namespace eedp::dispatch {

namespace {

// Parse floats straight into long double (strtold) instead of via double.
using Json = nlohmann::basic_json<std::map, std::vector, std::string, bool,
                                  std::int64_t, std::uint64_t, long double>;

struct FieldSpec {
  const char* key;
  real_t GeneratorCoefficients::*member;
};

constexpr FieldSpec kUnitFields[] = {
    {"a", &GeneratorCoefficients::a},
    {"b", &GeneratorCoefficients::b},
    {"c", &GeneratorCoefficients::c},
    {"g", &GeneratorCoefficients::g_valve},
    {"h", &GeneratorCoefficients::h_valve},
    {"alpha", &GeneratorCoefficients::alpha_e},
    {"beta", &GeneratorCoefficients::beta_e},
    {"gamma", &GeneratorCoefficients::gamma_e},
    {"p_min", &GeneratorCoefficients::p_min},
    {"p_max", &GeneratorCoefficients::p_max},
};

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

real_t read_number(const Json& object, const std::string& key,
                   const std::string& path, std::string_view source) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(std::string(source) + ": missing field '" + path + "'");
  }
  if (!it->is_number()) {
    throw ParseError(std::string(source) + ": field '" + path +
                     "' must be a number");
  }
  return it->get<real_t>();
}

std::string format_real(real_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

}  // namespace

DispatchProblem parse_problem(std::string_view text, std::string_view source) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end(), nullptr, true,
                       /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(source) + ": syntax error at " +
                     location(text, e.byte) + ": " + e.what());
  }
  if (!root.is_object()) {
    throw ParseError(std::string(source) + ": top level must be an object");
  }
  const real_t demand = read_number(root, "demand", "demand", source);
  const auto units_it = root.find("units");
  if (units_it == root.end() || !units_it->is_array()) {
    throw ParseError(std::string(source) + ": field 'units' must be an array");
  }

  std::vector<GeneratorCoefficients> units;
  for (std::size_t i = 0; i < units_it->size(); ++i) {
    const Json& entry = (*units_it)[i];
    const std::string prefix = "units[" + std::to_string(i) + "]";
    if (!entry.is_object()) {
      throw ParseError(std::string(source) + ": '" + prefix +
                       "' must be an object");
    }
    GeneratorCoefficients unit;
    unit.name = entry.value("name", "G" + std::to_string(i + 1));
    for (const auto& field : kUnitFields) {
      unit.*field.member =
          read_number(entry, field.key, prefix + "." + field.key, source);
    }
    units.push_back(std::move(unit));
  }

  try {
    return DispatchProblem(std::move(units), demand);
  } catch (const ModelError& e) {
    throw ModelError(std::string(source) + ": " + e.what());
  }
}

DispatchProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str(), path.string());
}

std::string to_problem_text(const DispatchProblem& problem) {
  std::ostringstream out;
  out << "{\n  \"demand\": " << format_real(problem.demand())
      << ",\n  \"units\": [\n";
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const auto& u = problem.unit(i);
    out << "    { \"name\": \"" << u.name << "\"";
    for (const auto& field : kUnitFields) {
      out << ", \"" << field.key << "\": " << format_real(u.*field.member);
    }
    out << " }" << (i + 1 < problem.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

}  // namespace eedp::dispatch
