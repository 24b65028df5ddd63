#pragma once

// JSON and CSV forms of the library's value types.
//
//   cylinder function  {"k": 2, "depth": 1, "values": [[re, im], ...]}
//   real function      {"k": 2, "depth": 1, "values": [v, ...]}
//   measure            {"k": 2, "depth": 1, "masses": [m, ...]}
//   generator term     {"f": <function>, "n": 1, "g": <function>}
//
// Readers also accept plain numbers in place of [re, im] pairs, and a bare
// array of values for a real function (its depth inferred from the length).

#include <string>
#include <vector>

#include "json.hpp"
#include "ruelle/algebra.hpp"
#include "ruelle/measure.hpp"
#include "ruelle/shift_space.hpp"

namespace ruelle::io {

using Json = nlohmann::ordered_json;  // keeps keys in insertion order

Json to_json(const CylinderFunction& f);
Json to_json(const RealFunction& f);
Json to_json(const Potential& p);
Json to_json(const CylinderMeasure& m);
Json to_json(const GeneratorTerm& t);

/// All readers throw ConfigError on malformed input.
CylinderFunction function_from_json(const Json& j);
/// `k` is used when the document does not carry one.
RealFunction real_function_from_json(const Json& j, int k = 0);
Potential potential_from_json(const Json& j, int k = 0);
CylinderMeasure measure_from_json(const Json& j);
GeneratorTerm term_from_json(const Json& j);

/// 17 significant digits (%.17g), which round-trips; "nan"/"inf" for non-finite values.
std::string format_double(double x);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

Json parse_json(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);
/// Comma separated, LF line endings, header first.
std::string write_csv(const CsvTable& t);

}  // namespace ruelle::io
