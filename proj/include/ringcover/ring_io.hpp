#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ringcover/finite_ring.hpp"

namespace ringcover {

/// Textual ring format: {"moduli": [...], "table": [[[coords]...]...]}.
/// Serialization uses a fixed key order and indentation so that
/// store(load(s)) is byte-identical to store of the original ring.
inline std::string ring_to_string(const FiniteRing& r) {
  nlohmann::ordered_json j;
  j["moduli"] = r.moduli();
  auto table = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.rank(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t jj = 0; jj < r.rank(); ++jj) {
      row.push_back(r.decode(r.table_entry(i, jj)));
    }
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  return j.dump(2) + "\n";
}

inline FiniteRing ring_from_json(const nlohmann::json& j) {
  if (!j.contains("moduli") || !j.contains("table")) {
    throw std::invalid_argument("ring file needs 'moduli' and 'table'");
  }
  std::vector<std::uint32_t> moduli =
      j.at("moduli").get<std::vector<std::uint32_t>>();
  FiniteRing::Table table;
  for (const auto& row : j.at("table")) {
    std::vector<FiniteRing::Coords> r;
    for (const auto& entry : row) {
      r.push_back(entry.get<FiniteRing::Coords>());
    }
    table.push_back(std::move(r));
  }
  return FiniteRing::make(std::move(moduli), std::move(table));
}

inline FiniteRing ring_from_string(const std::string& text) {
  return ring_from_json(nlohmann::json::parse(text));
}

inline void store_ring(const FiniteRing& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << ring_to_string(r);
}

inline FiniteRing load_ring(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ring_from_string(ss.str());
}

}  // namespace ringcover
