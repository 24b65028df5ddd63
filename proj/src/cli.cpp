#include "ruelle/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "ruelle/algebra.hpp"
#include "ruelle/ff_model.hpp"
#include "ruelle/gibbs.hpp"
#include "ruelle/serialize.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle::cli {

namespace {

using io::Json;

struct Options {
  std::string config;
  std::string out;
  std::string H;
  std::string p;
  std::string beta_grid;
  std::string input;
  std::string to;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<int> k;
  std::optional<int> depth;
  std::optional<std::size_t> kmax;
};

struct RunConfig {
  int k = 2;
  int depth = 4;
  Json H;  // potential specs; null when absent
  Json p;
  std::vector<double> betas;
  std::optional<double> beta;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string out;
  int function_depth = 2;
  int max_level = 3;
  int relation_functions = 3;
  int probe_n_max = -1;
  int state_trials = 20;
  FFParams ff;
};

double parse_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) throw ConfigError("not a number: \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
T json_get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key \"") + key + "\": " + e.what());
  }
}

template <typename T>
void json_read(const Json& j, const char* key, T& into) {
  if (j.is_object() && j.contains(key)) into = json_get<T>(j, key);
}

std::vector<double> grid_from_json(const Json& j) {
  if (j.is_string()) return parse_beta_grid(j.get<std::string>());
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& x : j) {
      if (!x.is_number()) throw ConfigError("beta grid entries must be numbers");
      v.push_back(x.get<double>());
    }
    if (v.empty()) throw ConfigError("beta grid must have at least one point");
    return v;
  }
  if (j.is_object()) {
    const double start = json_get<double>(j, "start");
    const double stop = json_get<double>(j, "stop");
    const int count = json_get<int>(j, "count");
    return parse_beta_grid(io::format_double(start) + ":" + io::format_double(stop) + ":" + std::to_string(count));
  }
  throw ConfigError("beta grid must be a string, an array or {start, stop, count}");
}

RunConfig load_config(const Options& o) {
  RunConfig c;
  if (!o.config.empty()) {
    const Json j = io::read_json_file(o.config);
    if (!j.is_object()) throw ConfigError(o.config + ": config must be a JSON object");
    json_read(j, "k", c.k);
    json_read(j, "depth", c.depth);
    if (j.contains("H")) c.H = j.at("H");
    if (j.contains("p")) c.p = j.at("p");
    if (j.contains("beta")) c.beta = json_get<double>(j, "beta");
    if (j.contains("beta_grid")) c.betas = grid_from_json(j.at("beta_grid"));
    if (j.contains("tol")) c.tol = json_get<double>(j, "tol");
    json_read(j, "seed", c.seed);
    json_read(j, "out", c.out);
    if (j.contains("battery")) {
      json_read(j.at("battery"), "function_depth", c.function_depth);
      json_read(j.at("battery"), "max_level", c.max_level);
    }
    if (j.contains("relations")) json_read(j.at("relations"), "functions", c.relation_functions);
    if (j.contains("probe")) json_read(j.at("probe"), "n_max", c.probe_n_max);
    if (j.contains("state")) json_read(j.at("state"), "trials", c.state_trials);
    if (j.contains("ff")) {
      json_read(j.at("ff"), "gamma", c.ff.gamma);
      json_read(j.at("ff"), "k_max", c.ff.k_max);
      json_read(j.at("ff"), "tol", c.ff.tol);
    }
  }
  if (o.k) c.k = *o.k;
  if (o.depth) c.depth = *o.depth;
  if (!o.H.empty()) c.H = o.H;
  if (!o.p.empty()) c.p = o.p;
  if (o.beta) c.beta = *o.beta;
  if (!o.beta_grid.empty()) c.betas = parse_beta_grid(o.beta_grid);
  if (o.tol) c.tol = *o.tol;
  if (o.seed) c.seed = *o.seed;
  if (!o.out.empty()) c.out = o.out;
  if (o.gamma) c.ff.gamma = *o.gamma;
  if (o.kmax) c.ff.k_max = *o.kmax;

  if (c.k < 2) throw ConfigError("k must be at least 2");
  if (c.depth < 1) throw ConfigError("depth must be at least 1");
  if (c.tol && !(*c.tol > 0.0)) throw ConfigError("tol must be positive");
  if (c.function_depth < 0 || c.max_level < 0 || c.relation_functions < 1 || c.state_trials < 0) {
    throw ConfigError("battery, relation and state sizes must be nonnegative");
  }
  return c;
}

Potential resolve_potential(const Json& spec, int k, const char* name) {
  if (spec.is_null()) throw ConfigError(std::string("no potential ") + name + " given");
  Potential pot = [&] {
    if (spec.is_string()) {
      const std::string s = spec.get<std::string>();
      try {
        Json values = Json::array();
        for (const auto& part : split(s, ',')) values.push_back(parse_number(part));
        return io::potential_from_json(values, k);
      } catch (const ConfigError&) {
        if (!std::filesystem::exists(s)) throw ConfigError(std::string(name) + ": \"" + s + "\" is neither a value list nor a file");
        return io::potential_from_json(io::read_json_file(s), k);
      }
    }
    return io::potential_from_json(spec, k);
  }();
  if (pot.symbols() != k) {
    throw ConfigError(std::string(name) + " lives on " + std::to_string(pot.symbols()) + " symbols, config says k = " +
                      std::to_string(k));
  }
  return pot;
}

Potential resolve_p(const RunConfig& c) {
  if (c.p.is_null()) return Potential::positive(RealFunction::constant(ShiftSpace(c.k), 1.0 / c.k));
  return resolve_potential(c.p, c.k, "p");
}

double single_beta(const RunConfig& c) {
  if (c.beta) return *c.beta;
  if (c.betas.size() == 1) return c.betas.front();
  if (c.betas.size() > 1) throw ConfigError("this command takes a single beta");
  return 1.0;
}

class Sink {
 public:
  Sink(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {}

  void emit(const std::string& name, const std::string& content) {
    if (dir_.empty()) {
      out_ << content;
      return;
    }
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir_ + ": " + ec.message());
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << content;
  }

 private:
  std::string dir_;
  std::ostream& out_;
};

struct Violations {
  Json list = Json::array();

  void check(const std::string& invariant, double residual, double tol, std::ostream& err) {
    if (residual <= tol) return;
    list.push_back(Json{{"invariant", invariant}, {"residual", residual}, {"tol", tol}});
    err << "tolerance failure: " << invariant << " residual " << io::format_double(residual) << " > "
        << io::format_double(tol) << "\n";
  }
  bool empty() const { return list.empty(); }
};

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Potential H = resolve_potential(c.H, c.k, "H");
  const double beta = single_beta(c);
  const double tol = c.tol.value_or(1e-8);
  const SpectralTriple t = leading_triple(gibbs_weight(H, beta), c.depth);
  const double residual = std::max(t.right_residual, t.left_residual);
  Violations v;
  v.check("leading eigenpair residual", residual, tol, err);
  const Json j{{"beta", beta},
               {"k", c.k},
               {"depth", c.depth},
               {"lambda", t.eigenvalue},
               {"pressure", std::log(t.eigenvalue)},
               {"h", io::to_json(t.eigenfunction)},
               {"nu", io::to_json(t.eigenmeasure)},
               {"iterations", t.iterations},
               {"residual", residual},
               {"tol", tol},
               {"violations", v.list}};
  Sink(c.out, out).emit("spectrum.json", io::dump(j));
  return v.empty() ? kSuccess : kToleranceFailure;
}

int cmd_pressure_curve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Potential H = resolve_potential(c.H, c.k, "H");
  std::vector<double> betas = c.betas;
  if (betas.empty()) betas = c.beta ? std::vector<double>{*c.beta} : parse_beta_grid("0:2:21");
  const double tol = c.tol.value_or(1e-10);
  const int depth = std::max(c.depth, H.depth());
  io::CsvTable t{{"beta", "pressure", "lambda", "entropy", "energy"}, {}};
  Violations v;
  for (double beta : betas) {
    const EquilibriumState s = equilibrium_state(H, beta, depth);
    const double lambda = std::exp(s.pressure);
    t.rows.push_back({io::format_double(beta), io::format_double(s.pressure), io::format_double(lambda),
                      io::format_double(s.entropy), io::format_double(s.energy)});
    const double excess = std::max(-s.entropy, s.entropy - std::log(static_cast<double>(c.k)));
    v.check("entropy within [0, log k] at beta " + io::format_double(beta), std::max(excess, 0.0), tol, err);
  }
  Sink(c.out, out).emit("pressure_curve.csv", io::write_csv(t));
  return v.empty() ? kSuccess : kToleranceFailure;
}

int cmd_kms_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Potential H = resolve_potential(c.H, c.k, "H");
  const Potential p = resolve_p(c);
  const double beta = single_beta(c);
  const double tol = c.tol.value_or(1e-8);
  const int d = c.depth;
  const ShiftSpace space(c.k);
  std::mt19937_64 rng(c.seed);

  const AlgebraContext ctx = AlgebraContext::make(p, d);
  const int max_level = std::min(c.max_level, d - p.depth() + 1);
  const int fdepth = std::min(c.function_depth, d);
  if (max_level < 0) throw ConfigError("depth too small for the Jacobian p");

  std::uniform_int_distribution<int> depth_pick(0, fdepth);
  std::vector<CylinderFunction> functions;
  for (int i = 0; i < c.relation_functions; ++i) {
    const int fd = depth_pick(rng);
    functions.push_back(random_function(space, fd, rng));
  }
  const RelationReport relations = relation_suite(ctx, functions, max_level);

  const SpectralTriple triple = leading_triple(gibbs_weight(H, beta), std::max(d, H.depth()));
  const StateFunctional psi{triple.eigenmeasure.marginal(d), p};
  const KmsBatteryReport battery = kms_battery(psi, H, beta, battery_terms(space, fdepth, max_level), ctx, tol);
  const StateAxiomReport axioms = state_axioms_check(psi, ctx, c.state_trials, rng, std::min(2, max_level));

  const int probe_limit = d - std::max(p.depth(), H.depth()) + 1;
  const int n_max = std::max(0, c.probe_n_max < 0 ? probe_limit : std::min(c.probe_n_max, probe_limit));
  const auto probe = uniqueness_probe(p, H, beta, CylinderMeasure::uniform(space, d), n_max);

  Violations v;
  v.check("kms battery", battery.max_residual, tol, err);
  v.check("relation suite", relations.max_residual(), tol, err);
  v.check("state normalization psi(1) = 1", std::abs(axioms.psi_identity - 1.0), tol, err);
  v.check("state positivity psi(b b*) >= 0", std::max(0.0, -axioms.min_positive_real), tol, err);

  constexpr std::size_t kMaxListedFailures = 50;
  Json failures = Json::array();
  for (std::size_t i = 0; i < battery.failures.size() && i < kMaxListedFailures; ++i) {
    const auto& f = battery.failures[i];
    failures.push_back(Json{{"a", io::to_json(f.a)}, {"b", io::to_json(f.b)}, {"residual", f.residual}});
  }
  Json rel = Json::object();
  for (const auto& e : relations.entries) rel[e.name] = e.residual;
  Json uniq = Json::array();
  for (const auto& pt : probe) {
    uniq.push_back(Json{{"n", pt.n}, {"distance", pt.distance}, {"normalization", pt.normalization}});
  }
  const Json j{{"beta", beta},
               {"k", c.k},
               {"depth", d},
               {"battery_size", battery.battery_size},
               {"max_residual", battery.max_residual},
               {"failures", std::move(failures)},
               {"failure_count", battery.failures.size()},
               {"relations", Json{{"max_residual", relations.max_residual()}, {"entries", std::move(rel)}}},
               {"state",
                Json{{"psi_identity", Json::array({axioms.psi_identity.real(), axioms.psi_identity.imag()})},
                     {"min_positive_real", axioms.min_positive_real},
                     {"max_positive_imag", axioms.max_positive_imag},
                     {"max_adjoint_defect", axioms.max_adjoint_defect},
                     {"trials", axioms.trials}}},
               {"uniqueness", std::move(uniq)},
               {"seed", c.seed},
               {"generator", kGeneratorName},
               {"tol", tol},
               {"violations", v.list},
               {"passed", v.empty()}};
  Sink(c.out, out).emit("kms_verify.json", io::dump(j));
  return v.empty() ? kSuccess : kToleranceFailure;
}

int cmd_ff(const RunConfig& c, std::ostream& out, std::ostream& err) {
  FFParams params = c.ff;
  if (c.tol) params.tol = *c.tol;
  const FFModel model(params);
  std::vector<double> betas = c.betas;
  if (betas.empty()) betas = c.beta ? std::vector<double>{*c.beta} : parse_beta_grid("0:2:21");

  io::CsvTable t{{"beta", "pressure"}, {}};
  for (const auto& pt : ff_pressure_curve(params, betas)) {
    t.rows.push_back({io::format_double(pt.beta), io::format_double(pt.pressure)});
  }

  Violations v;
  const double tail = ff_tail_bound(params) / model.zeta_gamma();
  v.check("eigenfunction identity L_g h~ = h~", model.eigen_identity_residual(), params.tol, err);
  v.check("dual balance nu(M_k) = e^{a_k} nu(M_{k-1})", model.dual_balance_residual(), params.tol, err);
  v.check("u = 1 / sum t nu(t-1)", std::abs(model.u() - model.u_series()), params.tol, err);
  v.check("mass deficit below tail bound", std::max(0.0, model.mass_deficit() - tail), params.tol, err);

  std::vector<double> first(model.masses().begin(),
                            model.masses().begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(20, model.masses().size())));
  const Json j{{"gamma", params.gamma},
               {"k_max", params.k_max},
               {"tol", params.tol},
               {"zeta_gamma", model.zeta_gamma()},
               {"zeta_gamma_minus_1", model.zeta_gamma_minus_1()},
               {"u", model.u()},
               {"u_series", model.u_series()},
               {"nu_masses", first},
               {"mass_deficit", model.mass_deficit()},
               {"tail_bound", tail},
               {"eigen_identity_residual", model.eigen_identity_residual()},
               {"dual_balance_residual", model.dual_balance_residual()},
               {"violations", v.list}};
  Sink sink(c.out, out);
  sink.emit("ff_pressure.csv", io::write_csv(t));
  sink.emit("ff_summary.json", io::dump(j));
  return v.empty() ? kSuccess : kToleranceFailure;
}

bool is_number(const std::string& s) {
  try {
    parse_number(s);
    return true;
  } catch (const ConfigError&) {
    return false;
  }
}

std::string canonical_cell(const std::string& s) { return is_number(s) ? io::format_double(parse_number(s)) : s; }

io::CsvTable json_to_csv(const Json& j) {
  const Json* rows = &j;
  if (j.is_object()) {
    const Json* found = nullptr;
    for (const auto& [key, value] : j.items()) {
      if (value.is_array() && !value.empty() && value.front().is_object()) {
        if (found) throw ConfigError("JSON document has several tables; cannot pick one for CSV");
        found = &value;
      }
    }
    if (!found) throw ConfigError("JSON document has no table of records to export as CSV");
    rows = found;
  }
  if (!rows->is_array() || rows->empty()) throw ConfigError("CSV export needs a non-empty array of records");
  io::CsvTable t;
  for (const auto& [key, value] : rows->front().items()) t.header.push_back(key);
  for (const auto& r : *rows) {
    if (!r.is_object()) throw ConfigError("CSV export needs an array of records");
    std::vector<std::string> cells;
    for (const auto& key : t.header) {
      if (!r.contains(key)) throw ConfigError("record is missing \"" + key + "\"");
      const Json& x = r.at(key);
      if (x.is_number()) {
        cells.push_back(io::format_double(x.get<double>()));
      } else if (x.is_string()) {
        cells.push_back(x.get<std::string>());
      } else {
        throw ConfigError("CSV export needs flat records; \"" + key + "\" is structured");
      }
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Json csv_to_json(const io::CsvTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (is_number(r[i])) {
        o[t.header[i]] = parse_number(r[i]);
      } else {
        o[t.header[i]] = r[i];
      }
    }
    rows.push_back(std::move(o));
  }
  return rows;
}

// Parses typed documents through the library so that malformed ones are rejected.
void validate_document(const Json& j) {
  if (!j.is_object()) return;
  if (j.contains("masses") && j.contains("k")) {
    io::measure_from_json(j);
  } else if (j.contains("values") && j.contains("k")) {
    io::function_from_json(j);
  } else if (j.contains("f") && j.contains("g") && j.contains("n")) {
    io::term_from_json(j);
  }
}

int cmd_export(const Options& o, const RunConfig& c, std::ostream& out) {
  const std::string text = io::read_text_file(o.input);
  const std::filesystem::path in(o.input);
  const bool is_csv = in.extension() == ".csv";
  std::string to = o.to.empty() ? (is_csv ? "csv" : "json") : o.to;
  if (to != "json" && to != "csv") throw ConfigError("--to must be json or csv");
  std::string content;
  if (is_csv) {
    io::CsvTable t = io::parse_csv(text);
    if (to == "csv") {
      for (auto& r : t.rows) {
        for (auto& cell : r) cell = canonical_cell(cell);
      }
      content = io::write_csv(t);
    } else {
      content = io::dump(csv_to_json(t));
    }
  } else {
    const Json j = io::parse_json(text, o.input);
    validate_document(j);
    content = to == "json" ? io::dump(j) : io::write_csv(json_to_csv(j));
  }
  Sink(c.out, out).emit(in.stem().string() + "." + to, content);
  return kSuccess;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory (default: stdout)");
  sub->add_option("--seed", o.seed, "seed for randomized batteries");
  sub->add_option("--tol", o.tol, "tolerance");
}

void add_model(CLI::App* sub, Options& o) {
  sub->add_option("--k", o.k, "number of symbols");
  sub->add_option("--depth", o.depth, "working cylinder depth");
  sub->add_option("--H", o.H, "potential H: comma-separated values or a JSON file");
}

}  // namespace

std::vector<double> parse_beta_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("beta grid \"" + spec + "\" is not start:stop:count");
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    const double n = parse_number(parts[2]);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6) throw ConfigError("beta grid count must be a positive integer");
    const auto count = static_cast<int>(n);
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? a : (a * (count - 1 - i) + b * i) / (count - 1));
  } else {
    for (const auto& part : split(spec, ',')) out.push_back(parse_number(part));
  }
  for (double x : out) {
    if (!std::isfinite(x)) throw ConfigError("beta grid values must be finite");
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfer operators, Gibbs states and KMS checks on full shifts", "ruelle"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "leading eigenvalue, eigenfunction and eigenmeasure for one (H, beta)");
  add_common(spectrum, o);
  add_model(spectrum, o);
  spectrum->add_option("--beta", o.beta, "inverse temperature");

  auto* curve = app.add_subcommand("pressure-curve", "pressure, entropy and energy over a beta grid (CSV)");
  add_common(curve, o);
  add_model(curve, o);
  curve->add_option("--beta-grid", o.beta_grid, "start:stop:count or a comma list");

  auto* kms = app.add_subcommand("kms-verify", "relation suite, KMS battery and uniqueness probe (JSON)");
  add_common(kms, o);
  add_model(kms, o);
  kms->add_option("--p", o.p, "normalized Jacobian p (default 1/k)");
  kms->add_option("--beta", o.beta, "inverse temperature");

  auto* ff = app.add_subcommand("ff", "renewal model: pressure over a beta grid and closed forms");
  add_common(ff, o);
  ff->add_option("--gamma", o.gamma, "decay exponent, > 2");
  ff->add_option("--beta-grid", o.beta_grid, "start:stop:count or a comma list");
  ff->add_option("--kmax", o.kmax, "partition truncation index");

  auto* exp = app.add_subcommand("export", "re-serialize a JSON or CSV artifact");
  add_common(exp, o);
  exp->add_option("input", o.input, "artifact to read")->required()->check(CLI::ExistingFile);
  exp->add_option("--to", o.to, "json or csv (default: same as input)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    const RunConfig c = load_config(o);
    if (spectrum->parsed()) return cmd_spectrum(c, out, err);
    if (curve->parsed()) return cmd_pressure_curve(c, out, err);
    if (kms->parsed()) return cmd_kms_verify(c, out, err);
    if (ff->parsed()) return cmd_ff(c, out, err);
    return cmd_export(o, c, out);
  } catch (const ConvergenceError& e) {
    err << "tolerance failure: " << e.what() << " (last residual " << io::format_double(e.residual()) << ")\n";
    return kToleranceFailure;
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ruelle::cli
