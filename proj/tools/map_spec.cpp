#include "map_spec.hpp"

#include <fstream>

#include "circlemap/cf.hpp"
#include "circlemap/errors.hpp"
#include "circlemap/tongues.hpp"

namespace cmtool {

using circlemap::CircleMapLift;
using circlemap::InvalidArgument;
using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw InvalidArgument(std::string("map spec needs a numeric \"") + key + "\"");
  return j[key].get<double>();
}

// tight enough that the map is indistinguishable from the tongue point
constexpr double kTongueTol = 1e-13;

CircleMapLift arnold_on_tongue(const std::string& alpha, double b) {
  const auto cf = circlemap::parse_alpha(alpha);
  return CircleMapLift::arnold(circlemap::tongue_point(cf, b, kTongueTol), b);
}

}  // namespace

CircleMapLift map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidArgument("map spec must be an object with a \"kind\"");
  const std::string kind = j["kind"];
  if (kind == "arnold") {
    const double b = number(j, "b");
    if (j.contains("alpha")) {
      if (j.contains("a")) throw InvalidArgument("give either \"a\" or \"alpha\", not both");
      if (!j["alpha"].is_string()) throw InvalidArgument("\"alpha\" must be a string");
      return arnold_on_tongue(j["alpha"].get<std::string>(), b);
    }
    return CircleMapLift::arnold(number(j, "a"), b);
  }
  if (kind == "trig") {
    std::vector<double> rc, sc;
    if (j.contains("cos")) rc = j["cos"].get<std::vector<double>>();
    if (j.contains("sin")) sc = j["sin"].get<std::vector<double>>();
    return CircleMapLift(number(j, "c0"), rc, sc);
  }
  throw InvalidArgument("unknown map kind \"" + kind + "\"");
}

CircleMapLift load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open map file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("map file " + path + ": " + e.what());
  }
  try {
    return map_from_json(j);
  } catch (const json::exception& e) {
    throw InvalidArgument("map file " + path + ": " + e.what());
  }
}

CircleMapLift map_from_arnold_flag(const std::string& s) {
  const auto comma = s.rfind(',');
  if (comma == std::string::npos) throw InvalidArgument("--arnold expects A,B or alpha=SPEC,B");
  const std::string left = s.substr(0, comma), right = s.substr(comma + 1);
  double b;
  try {
    b = std::stod(right);
  } catch (const std::exception&) {
    throw InvalidArgument("--arnold: bad b value \"" + right + "\"");
  }
  if (left.rfind("alpha=", 0) == 0) return arnold_on_tongue(left.substr(6), b);
  double a;
  try {
    a = std::stod(left);
  } catch (const std::exception&) {
    throw InvalidArgument("--arnold: bad a value \"" + left + "\"");
  }
  return CircleMapLift::arnold(a, b);
}

json map_to_json(const CircleMapLift& m) {
  return {{"kind", "trig"}, {"c0", m.c0()}, {"cos", m.cos_coeffs()}, {"sin", m.sin_coeffs()}};
}

}  // namespace cmtool
