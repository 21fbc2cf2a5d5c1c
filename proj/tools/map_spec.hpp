#pragma once

#include <string>

#include <json.hpp>

#include "circlemap/circle_map.hpp"

namespace cmtool {

// {"kind":"arnold","a":A,"b":B}
// {"kind":"arnold","alpha":"golden","b":B}   a taken on the tongue of alpha
// {"kind":"trig","c0":C,"cos":[...],"sin":[...]}
circlemap::CircleMapLift map_from_json(const nlohmann::json& j);
circlemap::CircleMapLift load_map_file(const std::string& path);

// "A,B" or "alpha=SPEC,B"
circlemap::CircleMapLift map_from_arnold_flag(const std::string& s);

nlohmann::json map_to_json(const circlemap::CircleMapLift& m);

}  // namespace cmtool
