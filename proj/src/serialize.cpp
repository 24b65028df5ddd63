#include "ruelle/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ruelle::io {

namespace {

int infer_depth(int k, std::size_t n) {
  if (k < 2) throw ConfigError("need k >= 2 to interpret a value table");
  int d = 0;
  std::size_t c = 1;
  while (c < n) {
    c *= static_cast<std::size_t>(k);
    ++d;
  }
  if (c != n) throw ConfigError("value table of length " + std::to_string(n) + " is not a power of k = " + std::to_string(k));
  return d;
}

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

Complex complex_from_json(const Json& v) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  throw ConfigError("expected a number or [re, im], got " + v.dump());
}

double real_from_json(const Json& v) {
  if (!v.is_number()) throw ConfigError("expected a number, got " + v.dump());
  return v.get<double>();
}

// (k, depth, values) of an object document, or of a bare array using `k`.
std::tuple<int, int, const Json*> table_shape(const Json& j, int k, const char* values_key) {
  if (j.is_array()) return {k, infer_depth(k, j.size()), &j};
  if (!j.is_object()) throw ConfigError("expected an object or an array of values");
  const Json& values = j.contains(values_key) ? j.at(values_key) : throw ConfigError(std::string("missing key \"") + values_key + "\"");
  if (!values.is_array()) throw ConfigError(std::string("\"") + values_key + "\" must be an array");
  const int kk = j.contains("k") ? get<int>(j, "k") : k;
  const int depth = j.contains("depth") ? get<int>(j, "depth") : infer_depth(kk, values.size());
  return {kk, depth, &values};
}

template <typename Fn>
auto guarded(Fn fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

Json to_json(const CylinderFunction& f) {
  Json values = Json::array();
  for (const Complex& z : f.values()) values.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"k", f.symbols()}, {"depth", f.depth()}, {"values", std::move(values)}};
}

Json to_json(const RealFunction& f) {
  return Json{{"k", f.symbols()}, {"depth", f.depth()}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

Json to_json(const Potential& p) { return to_json(p.function()); }

Json to_json(const CylinderMeasure& m) {
  return Json{{"k", m.symbols()}, {"depth", m.depth()}, {"masses", std::vector<double>(m.masses().begin(), m.masses().end())}};
}

Json to_json(const GeneratorTerm& t) { return Json{{"f", to_json(t.f)}, {"n", t.level}, {"g", to_json(t.g)}}; }

CylinderFunction function_from_json(const Json& j) {
  return guarded([&] {
    const auto [k, depth, values] = table_shape(j, 0, "values");
    std::vector<Complex> v;
    v.reserve(values->size());
    for (const auto& x : *values) v.push_back(complex_from_json(x));
    return CylinderFunction(ShiftSpace(k), depth, std::move(v));
  });
}

RealFunction real_function_from_json(const Json& j, int k) {
  return guarded([&] {
    const auto [kk, depth, values] = table_shape(j, k, "values");
    std::vector<double> v;
    v.reserve(values->size());
    for (const auto& x : *values) v.push_back(real_from_json(x));
    return RealFunction(ShiftSpace(kk), depth, std::move(v));
  });
}

Potential potential_from_json(const Json& j, int k) {
  return guarded([&] { return Potential::positive(real_function_from_json(j, k)); });
}

CylinderMeasure measure_from_json(const Json& j) {
  return guarded([&] {
    const auto [k, depth, values] = table_shape(j, 0, "masses");
    std::vector<double> v;
    v.reserve(values->size());
    for (const auto& x : *values) v.push_back(real_from_json(x));
    return CylinderMeasure(ShiftSpace(k), depth, std::move(v));
  });
}

GeneratorTerm term_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("f") || !j.contains("g")) throw ConfigError("a term needs \"f\", \"n\" and \"g\"");
  return GeneratorTerm{function_from_json(j.at("f")), get<int>(j, "n"), function_from_json(j.at("g"))};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  const auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw ConfigError("empty CSV document");
  return t;
}

std::string write_csv(const CsvTable& t) {
  std::string out;
  const auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  row(t.header);
  for (const auto& r : t.rows) row(r);
  return out;
}

}  // namespace ruelle::io
