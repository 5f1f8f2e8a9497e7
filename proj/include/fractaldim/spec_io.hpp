#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fractaldim/common.hpp"
#include "fractaldim/ifs.hpp"
#include "fractaldim/linalg.hpp"
#include "fractaldim/osc.hpp"

namespace fractaldim {

struct ParsedSpec {
  Ifs ifs;
  std::optional<ConvexPolygon> certificate;
  std::string label;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_fields(const json& obj, const std::string& where,
                                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known)
      throw invalid_input("spec: unknown field '" + item.key() + "' at " + where);
  }
}

inline double require_number(const json& obj, const char* key,
                             const std::string& where) {
  if (!obj.contains(key))
    throw invalid_input("spec: missing field '" + std::string(key) + "' at " + where);
  if (!obj[key].is_number())
    throw invalid_input("spec: field '" + std::string(key) + "' at " + where +
                        " must be a number");
  return obj[key].get<double>();
}

inline Vec parse_vector(const json& v, int dim, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    throw invalid_input("spec: " + where + " must be an array of " +
                        std::to_string(dim) + " numbers");
  Vec out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw invalid_input("spec: " + where + " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline Mat parse_ortho(const json& rows, int dim, const std::string& where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw invalid_input("spec: " + where + " must be an array of " +
                        std::to_string(dim) + " rows");
  Mat q(dim);
  for (int i = 0; i < dim; ++i) {
    const Vec row = parse_vector(rows[i], dim, where + "[" + std::to_string(i) + "]");
    for (int j = 0; j < dim; ++j) q(i, j) = row[j];
  }
  return q;
}

inline Similarity parse_map(const json& m, int dim, const std::string& where) {
  if (!m.is_object()) throw invalid_input("spec: " + where + " must be an object");
  reject_unknown_fields(
      m, where, {"ratio", "shift", "rotation_degrees", "reflection", "ortho", "label"});
  const double ratio = require_number(m, "ratio", where);
  if (!m.contains("shift"))
    throw invalid_input("spec: missing field 'shift' at " + where);
  const Vec shift = parse_vector(m["shift"], dim, where + ".shift");

  const bool has_rotation = m.contains("rotation_degrees");
  const bool has_reflection = m.contains("reflection");
  const bool has_ortho = m.contains("ortho");
  if (has_ortho && (has_rotation || has_reflection))
    throw invalid_input("spec: " + where +
                        " gives both 'ortho' and rotation/reflection fields");
  if ((has_rotation || has_reflection) && dim != 2)
    throw invalid_input("spec: rotation_degrees/reflection at " + where +
                        " are 2-D conveniences; give 'ortho' for dimension " +
                        std::to_string(dim));
  if (m.contains("label") && !m["label"].is_string())
    throw invalid_input("spec: field 'label' at " + where + " must be a string");

  Mat q = Mat::identity(dim);
  if (has_ortho) {
    q = parse_ortho(m["ortho"], dim, where + ".ortho");
  } else if (dim == 2) {
    // mirror across the x-axis first, then rotate
    if (has_reflection) {
      if (!m["reflection"].is_boolean())
        throw invalid_input("spec: field 'reflection' at " + where +
                            " must be a boolean");
      if (m["reflection"].get<bool>()) q(1, 1) = -1.0;
    }
    if (has_rotation)
      q = rotation2d(require_number(m, "rotation_degrees", where)) * q;
  }
  try {
    return Similarity(ratio, std::move(q), shift);
  } catch (const invalid_input& e) {
    throw invalid_input("spec: " + where + ": " + e.what());
  }
}

inline ConvexPolygon parse_certificate(const json& cert, int dim) {
  if (dim != 2)
    throw invalid_input("spec: certificate requires dimension = 2, got " +
                        std::to_string(dim));
  if (!cert.is_array() || cert.size() < 3)
    throw invalid_input("spec: certificate must be an array of >= 3 vertices");
  std::vector<Point2> vertices;
  for (std::size_t i = 0; i < cert.size(); ++i) {
    const Vec v = parse_vector(cert[i], 2, "certificate[" + std::to_string(i) + "]");
    vertices.push_back({v[0], v[1]});
  }
  try {
    return ConvexPolygon(std::move(vertices));
  } catch (const invalid_input& e) {
    throw invalid_input("spec: certificate: " + std::string(e.what()));
  }
}

}  // namespace detail

inline ParsedSpec parse_spec(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_input(std::string("spec: not valid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw invalid_input("spec: top level must be a JSON object");
  detail::reject_unknown_fields(root, "top level",
                                {"dimension", "maps", "certificate", "label"});
  if (!root.contains("dimension") || !root["dimension"].is_number_integer())
    throw invalid_input("spec: 'dimension' must be an integer");
  const int dim = root["dimension"].get<int>();
  if (dim < 1) throw invalid_input("spec: 'dimension' must be >= 1");
  if (!root.contains("maps") || !root["maps"].is_array() || root["maps"].empty())
    throw invalid_input("spec: 'maps' must be a non-empty array");

  std::vector<Similarity> maps;
  for (std::size_t i = 0; i < root["maps"].size(); ++i)
    maps.push_back(
        detail::parse_map(root["maps"][i], dim, "maps[" + std::to_string(i) + "]"));

  ParsedSpec out{Ifs(std::move(maps)), std::nullopt, ""};
  if (root.contains("certificate"))
    out.certificate = detail::parse_certificate(root["certificate"], dim);
  if (root.contains("label")) {
    if (!root["label"].is_string())
      throw invalid_input("spec: 'label' must be a string");
    out.label = root["label"].get<std::string>();
  }
  return out;
}

struct LoadedSpec {
  ParsedSpec spec;
  std::string hash_hex;  // FNV-1a 64 over the raw file bytes
};

inline std::uint64_t fnv1a64_string(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string to_hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

inline LoadedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("spec: cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return LoadedSpec{parse_spec(text), to_hex16(fnv1a64_string(text))};
}

}  // namespace fractaldim
