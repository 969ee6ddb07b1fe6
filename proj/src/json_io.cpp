#include "funkvol/json_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "funkvol/errors.hpp"

namespace funkvol {

namespace {

using nlohmann::json;

Vec parse_point(const json& row, size_t want_dim, const char* what) {
  if (!row.is_array() || row.empty())
    fail(Errc::ParseError, std::string(what) + " must be a non-empty array of numbers");
  if (row.size() != want_dim)
    fail(Errc::ParseError, std::string(what) + " has " + std::to_string(row.size()) +
                               " coordinates, expected " + std::to_string(want_dim));
  Vec p(static_cast<int>(row.size()));
  for (size_t c = 0; c < row.size(); ++c) {
    if (!row[c].is_number())
      fail(Errc::ParseError, std::string(what) + " contains a non-numeric coordinate");
    p(static_cast<int>(c)) = row[c].get<double>();
  }
  return p;
}

}  // namespace

Polytope parse_polytope_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices"))
    fail(Errc::ParseError, "expected an object with a \"vertices\" key");
  for (const auto& item : doc.items())
    if (item.key() != "vertices" && item.key() != "center")
      fail(Errc::ParseError, "unknown key \"" + item.key() + "\"");

  const json& rows = doc["vertices"];
  if (!rows.is_array() || rows.empty()) fail(Errc::ParseError, "\"vertices\" must be a non-empty array");
  if (rows.size() > 64)
    fail(Errc::TooManyVertices, std::to_string(rows.size()) + " vertices given, the limit is 64");
  if (!rows[0].is_array() || rows[0].empty() || rows[0].size() > 6)
    fail(Errc::DimensionTooLarge, "vertex rows must have between 1 and 6 coordinates");

  size_t dim = rows[0].size();
  std::vector<Vec> vertices;
  vertices.reserve(rows.size());
  for (const json& row : rows) vertices.push_back(parse_point(row, dim, "vertex"));

  if (doc.contains("center")) {
    Vec center = parse_point(doc["center"], dim, "center");
    for (Vec& v : vertices) v -= center;
  }
  return build_polytope(vertices);
}

Polytope load_polytope(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open input file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polytope_json(buf.str());
}

}  // namespace funkvol
