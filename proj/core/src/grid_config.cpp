#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stq/grid.hpp"

namespace stq {

GridRef parse_grid_config(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("grid config: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("grid config: top level must be an object");
  if (!doc.contains("k") || !doc["k"].is_array())
    throw DomainError("grid config: missing array \"k\"");

  std::vector<std::array<double, 3>> ks;
  std::vector<int> spins{0};
  double cell_volume = 0.0;
  try {
    for (const auto& entry : doc["k"]) {
      if (!entry.is_array() || entry.size() != 3)
        throw DomainError("grid config: every entry of \"k\" must be a 3-vector");
      ks.push_back({entry[0].get<double>(), entry[1].get<double>(), entry[2].get<double>()});
    }
    if (doc.contains("spins")) spins = doc["spins"].get<std::vector<int>>();
    cell_volume = doc.value("cell_volume", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("grid config: ") + e.what());
  }
  return make_grid(ks, spins, cell_volume);
}

GridRef load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("grid config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grid_config(buf.str());
}

}  // namespace stq
