#pragma once

#include <string>

#include <json.hpp>

#include "polydyn/lens.hpp"

namespace polydyn {

// {"positions":[{"label":str,"dirs":[str,...]},...]}
nlohmann::json poly_to_json(const FinPoly& p);
FinPoly poly_from_json(const nlohmann::json& j);

// {"dom":poly,"cod":poly,"onPos":{pos:pos},"onDir":{pos:{codDir:domDir}}}
nlohmann::json lens_to_json(const Lens& f);
Lens lens_from_json(const nlohmann::json& j);

/// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace polydyn
