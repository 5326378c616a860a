#include "polydyn/json_io.hpp"

#include <fstream>
#include <sstream>

#include "polydyn/error.hpp"

namespace polydyn {

using nlohmann::json;

json poly_to_json(const FinPoly& p) {
  json positions = json::array();
  for (const auto& pos : p) positions.push_back({{"label", pos.label}, {"dirs", pos.dirs.elements()}});
  return {{"positions", positions}};
}

namespace {

// Runs `fn`, reporting JSON type mismatches as library errors.
template <class Fn>
auto typed(const char* what, Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

FinPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("positions") || !j.at("positions").is_array())
    throw Error("polynomial JSON needs a \"positions\" array");
  std::vector<Position> ps;
  for (const auto& pos : j.at("positions")) {
    if (!pos.contains("label") || !pos.contains("dirs"))
      throw Error("each position needs \"label\" and \"dirs\"");
    typed("polynomial", [&] {
      ps.push_back({pos.at("label").get<std::string>(), FinSet(pos.at("dirs").get<std::vector<std::string>>())});
      return 0;
    });
  }
  return FinPoly(std::move(ps));
}

json lens_to_json(const Lens& f) {
  json on_pos = json::object();
  json on_dir = json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    const std::string& src = f.dom().label(i);
    std::size_t j = f.on_pos(i);
    on_pos[src] = f.cod().label(j);
    json back = json::object();
    const FinSet& cd = f.cod().dirs(j);
    for (std::size_t e = 0; e < cd.size(); ++e) back[cd[e]] = f.dom().dirs(i)[f.on_dir(i, e)];
    on_dir[src] = back;
  }
  return {{"dom", poly_to_json(f.dom())}, {"cod", poly_to_json(f.cod())}, {"onPos", on_pos}, {"onDir", on_dir}};
}

Lens lens_from_json(const json& j) {
  for (const char* key : {"dom", "cod", "onPos", "onDir"})
    if (!j.contains(key)) throw Error(std::string("lens JSON is missing \"") + key + "\"");
  Lens::PosMap op = typed("lens", [&] { return j.at("onPos").get<Lens::PosMap>(); });
  Lens::DirMap od = typed("lens", [&] { return j.at("onDir").get<Lens::DirMap>(); });
  return Lens::from_labels(poly_from_json(j.at("dom")), poly_from_json(j.at("cod")), op, od);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace polydyn
