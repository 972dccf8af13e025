#include "jmetric/manifold_config.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "jmetric/error.hpp"
#include "jmetric/expression.hpp"

namespace jmetric {

namespace {

using json = nlohmann::json;

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

Location location_at(std::string_view text, std::size_t offset) {
  Location loc;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

class ConfigReader {
 public:
  explicit ConfigReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const {
    const Location loc = location_at(text_, offset);
    throw Error(ErrorCode::ConfigParse, "line " + std::to_string(loc.line) + ", column " +
                                            std::to_string(loc.column) + ": " + message);
  }

  // Best-effort source position of a key or string literal.
  std::size_t find(std::string_view needle, std::size_t from = 0) const {
    const std::string quoted = "\"" + std::string(needle) + "\"";
    const auto pos = text_.find(quoted, from);
    return pos == std::string_view::npos ? 0 : pos;
  }

  [[noreturn]] void fail_key(std::string_view key, const std::string& message) const {
    fail_at(find(key), message);
  }

  const json& require(const json& obj, std::string_view key) const {
    if (!obj.is_object() || !obj.contains(std::string(key)))
      fail_at(0, "missing field \"" + std::string(key) + "\"");
    return obj.at(std::string(key));
  }

  int require_sign(const json& obj, std::string_view key) const {
    const json& v = require(obj, key);
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
      fail_key(key, "\"" + std::string(key) + "\" must be 1 or -1");
    return v.get<int>();
  }

  std::vector<double> require_coords(const json& obj, std::string_view key, int dim) const {
    const json& v = require(obj, key);
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
      fail_key(key, "\"" + std::string(key) + "\" must be an array of " + std::to_string(dim) +
                        " numbers");
    std::vector<double> out;
    for (const auto& c : v) {
      if (!c.is_number()) fail_key(key, "\"" + std::string(key) + "\" entries must be numbers");
      out.push_back(c.get<double>());
    }
    return out;
  }

  // dim x dim expressions, nested or flat.
  std::vector<Expression> require_field(const json& obj, std::string_view key, int dim) {
    const json& v = require(obj, key);
    std::vector<const json*> entries;
    if (v.is_array() && static_cast<int>(v.size()) == dim && !v.empty() && v[0].is_array()) {
      for (const auto& row : v) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
          fail_key(key, "\"" + std::string(key) + "\" rows must have " + std::to_string(dim) +
                            " entries");
        for (const auto& e : row) entries.push_back(&e);
      }
    } else if (v.is_array() && static_cast<int>(v.size()) == dim * dim) {
      for (const auto& e : v) entries.push_back(&e);
    } else {
      fail_key(key, "\"" + std::string(key) + "\" must be a " + std::to_string(dim) + "x" +
                        std::to_string(dim) + " array");
    }

    const std::size_t field_start = find(key);
    std::size_t cursor = field_start;
    std::vector<Expression> out;
    for (const json* e : entries) {
      std::string src;
      if (e->is_string()) {
        src = e->get<std::string>();
      } else if (e->is_number()) {
        src = e->dump();
      } else {
        fail_at(field_start, "\"" + std::string(key) + "\" entries must be strings or numbers");
      }
      const std::size_t at = e->is_string() ? text_.find("\"" + src + "\"", cursor) : std::string_view::npos;
      if (at != std::string_view::npos) cursor = at + src.size() + 2;
      try {
        out.push_back(Expression::parse(src, dim));
      } catch (const ExpressionError& err) {
        const std::size_t base = at != std::string_view::npos ? at + 1 : field_start;
        fail_at(base + err.column() - 1, "in " + std::string(key) + " expression \"" + src +
                                             "\": " + err.what());
      }
    }
    return out;
  }

 private:
  std::string_view text_;
};

ChartedManifold::Field expression_field(std::vector<Expression> entries, int dim) {
  auto shared = std::make_shared<const std::vector<Expression>>(std::move(entries));
  return [shared, dim](std::span<const Dual> x) {
    SquareMatrix<Dual> out(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        out(i, j) = (*shared)[static_cast<std::size_t>(i * dim + j)].evaluate(x);
    return out;
  };
}

}  // namespace

ChartedManifold parse_manifold_config(std::string_view source_text, std::string_view default_name) {
  ConfigReader reader(source_text);
  json doc;
  try {
    doc = json::parse(source_text.begin(), source_text.end());
  } catch (const json::parse_error& e) {
    reader.fail_at(e.byte > 0 ? e.byte - 1 : 0, "invalid JSON syntax");
  }
  if (!doc.is_object()) reader.fail_at(0, "top level must be an object");

  std::string name(default_name);
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) reader.fail_key("name", "\"name\" must be a string");
    name = doc["name"].get<std::string>();
  }

  const json& kind_obj = reader.require(doc, "kind");
  if (!kind_obj.is_object()) reader.fail_key("kind", "\"kind\" must be an object");
  const StructureKind kind{reader.require_sign(kind_obj, "alpha"),
                           reader.require_sign(kind_obj, "epsilon")};

  const json& dim_v = reader.require(doc, "dim");
  if (!dim_v.is_number_integer() || dim_v.get<int>() < 2 || dim_v.get<int>() % 2 != 0 ||
      dim_v.get<int>() > kMaxChartDim)
    reader.fail_key("dim", "\"dim\" must be an even integer in [2, " +
                               std::to_string(kMaxChartDim) + "]");
  const int dim = dim_v.get<int>();

  const json& dom = reader.require(doc, "domain");
  if (!dom.is_object()) reader.fail_key("domain", "\"domain\" must be an object");
  Domain domain{reader.require_coords(dom, "lo", dim), reader.require_coords(dom, "hi", dim),
                std::nullopt};
  if (dom.contains("radius")) {
    if (!dom["radius"].is_number()) reader.fail_key("radius", "\"radius\" must be a number");
    domain.ball_radius = dom["radius"].get<double>();
  }
  if (domain.empty()) reader.fail_key("domain", "domain is empty");

  auto metric = reader.require_field(doc, "metric", dim);
  auto structure = reader.require_field(doc, "structure", dim);
  return ChartedManifold(std::move(name), kind, std::move(domain),
                         expression_field(std::move(metric), dim),
                         expression_field(std::move(structure), dim));
}

ChartedManifold load_manifold_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifold_config(buf.str(), path.stem().string());
}

}  // namespace jmetric
