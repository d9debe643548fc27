// Copyright 2026 The gamebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON game files:
//
//   {"analysis": {...}, "blocks": {"i,j": [[...]]}, "dims": [...],
//    "offsets": {"i": [...]}}
//
// Player indices are 1-based, omitted blocks are zero and "analysis" is an
// optional side-object describing how the instance was generated. The writer
// streams (instances can be large) and emits keys in lexicographic order.

#ifndef GAMEBOUND_GAME_IO_HPP
#define GAMEBOUND_GAME_IO_HPP

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gamebound/errors.hpp"
#include "gamebound/format.hpp"
#include "gamebound/game.hpp"
#include "gamebound/hard_instances.hpp"
#include "gamebound/linalg.hpp"

namespace gamebound {

struct GameDocument {
  QuadraticGame game;
  std::optional<nlohmann::json> analysis;
};

namespace detail {

inline void write_vector(std::ostream& os, const Vector& v) {
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_double(v[i]);
  os << ']';
}

inline void write_matrix(std::ostream& os, const Matrix& m) {
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "," : "") << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format_double(m(i, j));
    os << ']';
  }
  os << ']';
}

inline std::pair<std::size_t, std::size_t> parse_block_key(const std::string& key) {
  const auto comma = key.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(key);
    std::size_t pos1 = 0, pos2 = 0;
    const std::string a = key.substr(0, comma), b = key.substr(comma + 1);
    const unsigned long i = std::stoul(a, &pos1), j = std::stoul(b, &pos2);
    if (pos1 != a.size() || pos2 != b.size() || i == 0 || j == 0) throw std::invalid_argument(key);
    return {i - 1, j - 1};
  } catch (const std::exception&) {
    throw ValidationError("bad block key '" + key + "' (expected \"i,j\" with 1-based indices)");
  }
}

inline Matrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DimensionError(what + " has ragged rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& x = row[static_cast<std::size_t>(k)];
      if (!x.is_number()) throw ValidationError(what + " has a non-numeric entry");
      m(i, k) = x.get<double>();
    }
  }
  return m;
}

inline Vector vector_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError(what + " has a non-numeric entry");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

}  // namespace detail

inline void write_game_json(std::ostream& os, const QuadraticGame& game,
                            const std::optional<nlohmann::json>& analysis = std::nullopt) {
  os << '{';
  if (analysis) os << "\"analysis\":" << analysis->dump() << ',';
  std::map<std::string, BlockKey> keys;
  for (std::size_t i = 0; i < game.players(); ++i) {
    for (std::size_t j = 0; j < game.players(); ++j) {
      keys.emplace(std::to_string(i + 1) + "," + std::to_string(j + 1), BlockKey{i, j});
    }
  }
  os << "\"blocks\":{";
  bool first = true;
  for (const auto& [key, ij] : keys) {
    const Matrix blk = game.block(ij.first, ij.second);
    if (blk.isZero(0.0)) continue;
    os << (first ? "" : ",") << '"' << key << "\":";
    detail::write_matrix(os, blk);
    first = false;
  }
  os << "},\"dims\":[";
  for (std::size_t i = 0; i < game.players(); ++i) os << (i ? "," : "") << game.layout().dim(i);
  os << "],\"offsets\":{";
  std::map<std::string, std::size_t> okeys;
  for (std::size_t i = 0; i < game.players(); ++i) okeys.emplace(std::to_string(i + 1), i);
  first = true;
  for (const auto& [key, i] : okeys) {
    os << (first ? "" : ",") << '"' << key << "\":";
    detail::write_vector(os, game.offset_block(i));
    first = false;
  }
  os << "}}\n";
}

inline GameDocument game_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("game JSON must be an object");
  if (!j.contains("dims") || !j["dims"].is_array()) throw ValidationError("game JSON needs a \"dims\" array");
  std::vector<std::size_t> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) throw DimensionError("dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  std::map<BlockKey, Matrix> blocks;
  if (j.contains("blocks")) {
    if (!j["blocks"].is_object()) throw ValidationError("\"blocks\" must be an object");
    for (const auto& [key, val] : j["blocks"].items()) {
      blocks[detail::parse_block_key(key)] = detail::matrix_from_json(val, "block " + key);
    }
  }
  std::map<std::size_t, Vector> offsets;
  if (j.contains("offsets")) {
    if (!j["offsets"].is_object()) throw ValidationError("\"offsets\" must be an object");
    for (const auto& [key, val] : j["offsets"].items()) {
      std::size_t pos = 0;
      unsigned long i = 0;
      try {
        i = std::stoul(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size() || i == 0) throw ValidationError("bad offset key '" + key + "'");
      offsets[i - 1] = detail::vector_from_json(val, "offset " + key);
    }
  }
  GameDocument doc{build_game(dims, blocks, offsets), std::nullopt};
  if (j.contains("analysis")) doc.analysis = j["analysis"];
  return doc;
}

inline GameDocument read_game_json(std::istream& is) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return game_from_json(j);
}

inline GameDocument read_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open game file '" + path + "'");
  return read_game_json(in);
}

inline nlohmann::json analysis_json(const DominoInstance& inst) {
  nlohmann::json params;
  params["mu1"] = inst.mu1;
  params["mu2"] = inst.mu2;
  params["dim"] = inst.dim;
  if (inst.kind == DominoKind::kBasic) {
    params["c"] = inst.c;
  } else {
    params["mu12"] = inst.mu12;
    params["L12"] = inst.L12;
  }
  return {{"kind", to_string(inst.kind)}, {"params", params}, {"chi", inst.chi},
          {"kappa", inst.kappa},          {"c1", inst.c1},    {"c2", inst.c2},
          {"a0", inst.a0},                {"a1", inst.a1},    {"d1", inst.d1_coeff},
          {"d2", inst.d2_coeff}};
}

// Rebuilds a domino instance from its analysis side-object, if it has one.
inline std::optional<DominoInstance> domino_from_analysis(const nlohmann::json& a) {
  if (!a.is_object() || !a.contains("kind") || !a.contains("params")) return std::nullopt;
  const std::string kind = a["kind"].get<std::string>();
  const nlohmann::json& p = a["params"];
  try {
    if (kind == "domino-basic") {
      return domino_basic(p.at("mu1").get<double>(), p.at("mu2").get<double>(), p.at("c").get<double>(),
                          p.at("dim").get<std::size_t>());
    }
    if (kind == "domino-improved") {
      return domino_improved(p.at("mu1").get<double>(), p.at("mu2").get<double>(), p.at("mu12").get<double>(),
                             p.at("L12").get<double>(), p.at("dim").get<std::size_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad analysis params: ") + e.what());
  }
  return std::nullopt;
}

// A game file resolved to either a structured domino instance (rebuilt from
// its analysis object, the dense blocks are not materialized) or a dense game.
struct LoadedInstance {
  std::optional<DominoInstance> domino;
  std::optional<QuadraticGame> game;
  std::optional<nlohmann::json> analysis;

  QuadraticGame dense() const { return domino ? domino->game() : *game; }
  std::size_t size() const { return domino ? 2 * domino->dim : game->dim(); }
};

inline LoadedInstance load_instance_json(const std::string& text) {
  // First pass keeps only the small top-level keys.
  nlohmann::json light;
  try {
    light = nlohmann::json::parse(text, [](int depth, nlohmann::json::parse_event_t ev, nlohmann::json& parsed) {
      if (depth == 1 && ev == nlohmann::json::parse_event_t::key) {
        return parsed != "blocks" && parsed != "offsets";
      }
      return true;
    });
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  LoadedInstance out;
  if (light.is_object() && light.contains("analysis")) {
    out.analysis = light["analysis"];
    out.domino = domino_from_analysis(*out.analysis);
    if (out.domino) return out;
  }
  std::istringstream is(text);
  GameDocument doc = read_game_json(is);
  out.game = std::move(doc.game);
  return out;
}

// Accepts a path or inline JSON (anything starting with '{').
inline LoadedInstance load_instance(const std::string& path_or_json) {
  const auto first = path_or_json.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_json[first] == '{') return load_instance_json(path_or_json);
  std::ifstream in(path_or_json, std::ios::binary);
  if (!in) throw Error("cannot open game file '" + path_or_json + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_instance_json(ss.str());
}

}  // namespace gamebound

#endif  // GAMEBOUND_GAME_IO_HPP
