#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hqc/csv.hpp"
#include "hqc/entanglement.hpp"
#include "hqc/error.hpp"
#include "hqc/measurement.hpp"
#include "hqc/moments.hpp"
#include "hqc/quasiprob.hpp"
#include "hqc/sampler.hpp"
#include "hqc/states.hpp"

namespace hqc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::validation, what); }

json number(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  return json::parse(format_number(v));
}

double parse_double(const std::string& text, const char* name) {
  double v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) invalid(std::string(name) + ": not a finite number: '" + text + "'");
  return v;
}

long long parse_integer(const std::string& text, const char* name) {
  long long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) invalid(std::string(name) + ": not an integer: '" + text + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) invalid("seed: not an unsigned 64-bit integer: '" + text + "'");
  return v;
}

// Config-file values may be numbers or strings; both funnel through the
// same text parsers as flags.
std::string config_text(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  invalid("config: '" + key + "' has an unsupported type");
}

bool parse_bool(const std::string& text, const char* name) {
  if (text == "1" || text == "true" || text == "on" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "off" || text == "no") return false;
  invalid(std::string(name) + ": expected a boolean, got '" + text + "'");
}

struct Range {
  double lo, hi;
  int points;

  std::vector<double> values() const {
    std::vector<double> v(points);
    for (int k = 0; k < points; ++k) v[k] = points == 1 ? lo : lo + (hi - lo) * k / (points - 1);
    return v;
  }
};

struct RunConfig {
  std::string command;
  double alpha0 = 1.0;
  Dephasing dephasing = Dephasing::gaussian(0.5);
  double width = 1.5;
  int n_max = 40;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "csv";
  double x = 0.0;
  std::optional<double> lo, hi;
  std::optional<int> points;
  std::size_t samples = 100000;
  std::string source = "closed_form";
  std::string sweep = "tau";
  bool seesaw = false;
  int restarts = 64;
  unsigned threads = 0;

  FockConfig fock() const {
    FockConfig c;
    c.n_max = n_max;
    return c;
  }
  CatParams cat() const { return {alpha0, dephasing, 0.0}; }

  Range range() const {
    Range r{-3.0, 3.0, 121};
    if (command == "joint") r = {-5.0, 5.0, 201};
    if (command == "moments") r = sweep == "tau" ? Range{0.0, 1.0, 101} : Range{-3.0, 3.0, 241};
    if (command == "witness") r = {0.0, 3.0, 61};
    if (lo) r.lo = *lo;
    if (hi) r.hi = *hi;
    if (points) r.points = *points;
    return r;
  }

  void validate() const {
    if (alpha0 < 0) invalid("alpha0 must be non-negative");
    if (!(width > 0)) invalid("width must be positive");
    if (n_max < 1 || n_max > 400) invalid("nmax must lie in [1, 400]");
    if (format != "csv" && format != "json") invalid("format must be csv or json");
    if (source != "closed_form" && source != "numeric") invalid("source must be closed_form or numeric");
    if (sweep != "tau" && sweep != "y") invalid("sweep must be tau or y");
    if (samples < 1) invalid("samples must be at least 1");
    if (restarts < 1) invalid("restarts must be at least 1");
    const Range r = range();
    if (r.points < 2) invalid("points must be at least 2");
    if (!(r.lo < r.hi)) invalid("range: lo must be below hi");
    if (command == "moments" && sweep == "tau" && (r.lo < 0 || r.hi > 1)) invalid("tau range must lie in [0, 1]");
    if (command == "witness" && r.lo < 0) invalid("alpha0 range must be non-negative");
    const double guard = fock().amplitude_guard();
    const double largest = command == "witness" ? r.hi : alpha0;
    const bool needs_fock = command == "pmatrix" || command == "witness" || command == "figures" ||
                            (command == "sample" && source == "numeric") || (command == "joint" && source == "numeric");
    if (needs_fock && largest * largest > guard) {
      invalid("alpha0 = " + format_number(largest) + " exceeds the truncation guard sqrt(nmax/4) = " + format_number(std::sqrt(guard)));
    }
    if (command == "figures" && out == "-") invalid("figures needs --out <directory>");
  }

  json to_json() const {
    json j;
    j["command"] = command;
    j["alpha0"] = number(alpha0);
    j["sigma"] = number(dephasing.sigma());
    j["tau"] = number(dephasing.tau());
    j["width"] = number(width);
    j["nmax"] = n_max;
    j["seed"] = seed;
    j["format"] = format;
    j["x"] = number(x);
    if (command != "figures") {
      const Range r = range();
      j["range"] = {{"lo", number(r.lo)}, {"hi", number(r.hi)}, {"points", r.points}};
    }
    j["samples"] = samples;
    j["source"] = source;
    j["sweep"] = sweep;
    j["seesaw"] = seesaw;
    j["restarts"] = restarts;
    return j;
  }
};

// A table is kept as CSV text; the JSON format re-reads it so both
// renderings carry identical 12-digit numbers.
json csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  json columns = json::array(), rows = json::array();
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (std::getline(in, line)) {
    for (const std::string& c : split(line)) columns.push_back(c);
  }
  while (std::getline(in, line)) {
    json row = json::array();
    for (const std::string& c : split(line)) {
      if (c.empty()) {
        row.push_back(nullptr);
        continue;
      }
      const json parsed = json::parse(c, nullptr, false);
      row.push_back(parsed.is_discarded() ? json(c) : parsed);
    }
    rows.push_back(std::move(row));
  }
  return {{"columns", columns}, {"rows", rows}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw Error(ErrorKind::io, "write to '" + path.string() + "' failed");
}

struct Dataset {
  std::string name;
  std::vector<std::pair<std::string, std::string>> tables;  // (suffix, csv text)
  json summary = json::object();
};

std::string render(const std::string& csv, const std::string& format) {
  return format == "csv" ? csv : csv_to_json(csv).dump() + "\n";
}

// --- datasets ---------------------------------------------------------------

Dataset pmatrix_dataset(const RunConfig& c) {
  const Range r = c.range();
  const GridSpec grid = GridSpec::cross_section(c.x, r.lo, r.hi, r.points);
  const FilterSpec f{c.width};
  const PMatrixGrid closed = closed_form_pmatrix_grid(c.cat(), grid, f);
  PMatrixQuadrature q;
  q.threads = c.threads;
  const PMatrixGrid numeric = numeric_pmatrix(dephased_cat(c.cat(), c.fock()), grid, f, q);

  std::vector<std::string> header{"y"};
  for (const char* src : {"closed", "numeric"}) {
    for (const char* e : {"P00", "P01", "P10", "P11"}) {
      header.push_back(std::string(src) + "_re_" + e);
      header.push_back(std::string(src) + "_im_" + e);
    }
  }
  std::ostringstream os;
  CsvWriter w(os, header);
  double deviation = 0.0, diag_min = INFINITY, off_max = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    w << grid.y(j);
    for (const PMatrixGrid* g : {&closed, &numeric}) {
      const QubitMatrix& m = g->at(0, j);
      for (int e = 0; e < 4; ++e) w << m(e / 2, e % 2).real() << m(e / 2, e % 2).imag();
    }
    w.end_row();
    deviation = std::max(deviation, (numeric.at(0, j) - closed.at(0, j)).cwiseAbs().maxCoeff());
    diag_min = std::min({diag_min, numeric.at(0, j)(0, 0).real(), numeric.at(0, j)(1, 1).real()});
    off_max = std::max(off_max, std::abs(numeric.at(0, j)(0, 1)));
  }
  Dataset d{"pmatrix", {{"", os.str()}}};
  d.summary = {{"max_abs_deviation", number(deviation)},
               {"quadrature_nodes", numeric.quadrature_nodes},
               {"min_diagonal", number(diag_min)},
               {"max_abs_offdiagonal", number(off_max)}};
  return d;
}

JointDistribution joint_for(const RunConfig& c) {
  if (c.source == "numeric") return joint_numeric(dephased_cat(c.cat(), c.fock()));
  return joint_closed_form(c.cat());
}

Dataset joint_dataset(const RunConfig& c) {
  const JointDistribution j = joint_for(c);
  std::ostringstream os;
  write_joint_csv(j, c.range().values(), os);
  Dataset d{"joint", {{"", os.str()}}};
  d.summary = {{"p_plus", number(j.marginal(Outcome::plus))},
               {"p_minus", number(j.marginal(Outcome::minus))},
               {"normalization", number(integrate_over_y([&](double y) { return j.marginal_y(y); }))}};
  return d;
}

Dephasing dephasing_for_tau(double tau) {
  if (tau <= 0) return Dephasing::complete();
  return Dephasing::gaussian(std::sqrt(-2.0 * std::log(tau)));
}

std::string moments_tau_table(const RunConfig& c, const Range& r) {
  std::vector<MomentSweepRow> rows;
  for (double tau : r.values()) rows.push_back(moment_sweep_row({c.alpha0, dephasing_for_tau(tau), 0.0}));
  std::ostringstream os;
  write_moment_sweep_csv(rows, os);
  return os.str();
}

std::string moments_y_table(const RunConfig& c, const Range& r) {
  const std::vector<std::pair<std::string, Dephasing>> levels = {
      {"sigma0", Dephasing::none()},
      {"sigma_0.5", Dephasing::gaussian(0.5)},
      {"sigma_sqrt05", Dephasing::gaussian(std::sqrt(0.5))},
      {"sigma_sqrt2", Dephasing::gaussian(std::sqrt(2.0))},
  };
  std::vector<std::string> header{"y"};
  for (const auto& l : levels) header.push_back("mu2_cond_" + l.first);
  std::ostringstream os;
  CsvWriter w(os, header);
  for (double y : r.values()) {
    w << y;
    for (const auto& l : levels) w << conditional_variance_sigmax_closed_form({c.alpha0, l.second, 0.0}, y);
    w.end_row();
  }
  return os.str();
}

json minors_summary(const RunConfig& c) {
  const Minors m = closed_form_minors(c.cat());
  return {{"mu1", number(m.mu1)}, {"mu2", number(m.mu2)}, {"mu12", number(m.mu12)}};
}

Dataset moments_dataset(const RunConfig& c, bool both) {
  Dataset d{"moments", {}};
  if (both || c.sweep == "tau") {
    RunConfig t = c;
    t.sweep = "tau";
    d.tables.emplace_back(both ? "_tau" : "", moments_tau_table(c, t.range()));
  }
  if (both || c.sweep == "y") {
    RunConfig t = c;
    t.sweep = "y";
    d.tables.emplace_back(both ? "_y" : "", moments_y_table(c, t.range()));
  }
  d.summary = {{"minors", minors_summary(c)}};
  return d;
}

Dataset witness_dataset(const RunConfig& c) {
  std::vector<WitnessSweepRow> rows;
  for (double a0 : c.range().values()) {
    WitnessSweepRow row = witness_sweep_row(a0);
    if (c.seesaw) {
      SeesawOptions o;
      o.restarts = c.restarts;
      o.seed = c.seed;
      o.threads = c.threads;
      row.g_max_seesaw = seesaw_solve(cat_witness(a0, c.fock()), o).g_max;
    }
    rows.push_back(row);
  }
  std::ostringstream os;
  write_witness_csv(rows, os);
  json crossings = json::object();
  for (const auto& [name, sigma] : {std::pair{"sigma0", 0.0}, {"sigma_sqrt05", std::sqrt(0.5)}, {"sigma_sqrt2", std::sqrt(2.0)}}) {
    const std::optional<double> a = alpha0_threshold(Dephasing::gaussian(sigma).tau());
    crossings[name] = a ? number(*a) : json(nullptr);
  }
  Dataset d{"witness", {{"", os.str()}}};
  d.summary = {{"alpha0_crossing", crossings}};
  if (c.seesaw) {
    double dev = 0;
    for (const WitnessSweepRow& r : rows) dev = std::max(dev, std::abs(*r.g_max_seesaw - r.g_sep));
    d.summary["seesaw_max_abs_deviation"] = number(dev);
  }
  return d;
}

json estimate_json(const Estimate& e) { return {{"value", number(e.value)}, {"error", number(e.error)}}; }

Dataset sample_dataset(const RunConfig& c) {
  const JointDistribution j = joint_for(c);
  SamplerOptions o;
  o.threads = c.threads;
  const SampleBatch b = sample_joint(j, c.samples, c.seed, o);
  std::ostringstream os;
  write_batch_csv(b, os);
  Dataset d{"sample", {{"", os.str()}}};
  json params = json::object();
  for (const auto& [k, v] : b.source_params) params[k] = v;
  d.summary = {{"n", b.size()}, {"seed", b.seed}, {"generator", b.generator}, {"source", b.source}, {"source_params", params}};
  const double n = static_cast<double>(b.size());
  const double p = b.count(Outcome::plus) / n;
  d.summary["p_plus"] = {{"value", number(p)}, {"error", number(std::sqrt(p * (1 - p) / n))}};
  if (b.size() >= 100) {
    const EstimatedMoments e = estimate_moments(b);
    d.summary["estimates"] = {{"mu1", estimate_json(e.mu1)},
                              {"mu2", estimate_json(e.mu2)},
                              {"mu12", estimate_json(e.mu12)},
                              {"mu1_plus", estimate_json(e.mu1_plus)},
                              {"mu1_minus", estimate_json(e.mu1_minus)},
                              {"bootstrap_resamples", e.bootstrap_resamples}};
  }
  return d;
}

// --- emission ---------------------------------------------------------------

std::string extension(const RunConfig& c) { return c.format == "csv" ? ".csv" : ".json"; }

// Single-command output: the table goes to --out (or stdout); a file target
// also gets a <out>.manifest.json sidecar with config and summary.
void emit_single(const RunConfig& c, const Dataset& d, std::ostream& out) {
  const std::string& table = d.tables.front().second;
  if (c.out == "-") {
    out << render(table, c.format);
    return;
  }
  write_file(c.out, render(table, c.format));
  json manifest = {{"config", c.to_json()}, {"dataset", d.name}, {"files", {fs::path(c.out).filename().string()}}, {"summary", d.summary}};
  write_file(c.out + ".manifest.json", manifest.dump(2) + "\n");
}

void emit_figures(const RunConfig& c, std::ostream& out) {
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::io, "cannot create directory '" + dir.string() + "'");

  auto with = [&](const char* command) {
    RunConfig r = c;
    r.command = command;
    return r;
  };
  const std::vector<Dataset> datasets = {pmatrix_dataset(with("pmatrix")), joint_dataset(with("joint")),
                                         moments_dataset(with("moments"), true), witness_dataset(with("witness"))};
  json list = json::array();
  for (const Dataset& d : datasets) {
    json files = json::array();
    for (const auto& [suffix, table] : d.tables) {
      const std::string name = d.name + suffix + extension(c);
      write_file(dir / name, render(table, c.format));
      files.push_back(name);
    }
    list.push_back({{"name", d.name}, {"files", files}, {"summary", d.summary}});
  }
  const json manifest = {{"config", c.to_json()}, {"datasets", list}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  out << (dir / "manifest.json").string() << "\n";
}

// --- argument handling ------------------------------------------------------

struct Flags {
  std::string alpha0, sigma, width, nmax, seed, out, format, config;
  std::string x, lo, hi, points, samples, source, sweep, restarts, threads, seesaw;
};

struct Binding {
  const char* key;  // config-file key
  std::string* value;
  CLI::Option* option = nullptr;
};

std::string env_name(const std::string& key) {
  std::string s = "HQC_" + key;
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const json j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) invalid("config file '" + path + "' is not a JSON object");
  return j;
}

RunConfig resolve(const std::string& command, std::vector<Binding>& bindings, const Flags& flags) {
  json config = json::object();
  if (!flags.config.empty()) config = load_config(flags.config);
  for (const auto& [key, _] : config.items()) {
    bool known = false;
    for (const Binding& b : bindings) known = known || key == b.key;
    if (!known || key == std::string("config")) invalid("config: unknown key '" + key + "'");
  }
  // Precedence: flag > environment > config file > built-in default.
  // CLI11 already folds the environment into the option results.
  for (Binding& b : bindings) {
    if (b.option->count() == 0 && config.contains(b.key)) *b.value = config_text(config, b.key);
  }

  RunConfig c;
  c.command = command;
  if (!flags.alpha0.empty()) c.alpha0 = parse_double(flags.alpha0, "alpha0");
  if (!flags.sigma.empty()) c.dephasing = Dephasing::parse(flags.sigma);
  if (!flags.width.empty()) c.width = parse_double(flags.width, "width");
  if (!flags.nmax.empty()) c.n_max = static_cast<int>(parse_integer(flags.nmax, "nmax"));
  if (!flags.seed.empty()) c.seed = parse_seed(flags.seed);
  if (!flags.out.empty()) c.out = flags.out;
  if (!flags.format.empty()) c.format = flags.format;
  if (!flags.x.empty()) c.x = parse_double(flags.x, "x");
  if (!flags.lo.empty()) c.lo = parse_double(flags.lo, "lo");
  if (!flags.hi.empty()) c.hi = parse_double(flags.hi, "hi");
  if (!flags.points.empty()) c.points = static_cast<int>(parse_integer(flags.points, "points"));
  if (!flags.samples.empty()) {
    const long long n = parse_integer(flags.samples, "samples");
    if (n < 1) invalid("samples must be at least 1");
    c.samples = static_cast<std::size_t>(n);
  }
  if (!flags.source.empty()) c.source = flags.source;
  if (!flags.sweep.empty()) c.sweep = flags.sweep;
  if (!flags.restarts.empty()) c.restarts = static_cast<int>(parse_integer(flags.restarts, "restarts"));
  if (!flags.threads.empty()) {
    const long long t = parse_integer(flags.threads, "threads");
    if (t < 0) invalid("threads must be non-negative");
    c.threads = static_cast<unsigned>(t);
  }
  if (!flags.seesaw.empty()) c.seesaw = parse_bool(flags.seesaw, "seesaw");
  c.validate();
  return c;
}

void report(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid oscillator-qubit states: filtered P-matrix, measurement statistics, moments and witnesses"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Flags flags;
  std::vector<Binding> bindings = {
      {"alpha0", &flags.alpha0}, {"sigma", &flags.sigma},       {"width", &flags.width},     {"nmax", &flags.nmax},
      {"seed", &flags.seed},     {"out", &flags.out},           {"format", &flags.format},   {"config", &flags.config},
      {"x", &flags.x},           {"lo", &flags.lo},             {"hi", &flags.hi},           {"points", &flags.points},
      {"samples", &flags.samples}, {"source", &flags.source},   {"sweep", &flags.sweep},     {"restarts", &flags.restarts},
      {"threads", &flags.threads}, {"seesaw", &flags.seesaw},
  };
  const std::vector<std::pair<const char*, const char*>> help = {
      {"alpha0", "coherent amplitude alpha0 >= 0 (default 1)"},
      {"sigma", "dephasing sigma >= 0 or 'inf' (default 0.5)"},
      {"width", "filter width w > 0 (default 1.5)"},
      {"nmax", "Fock truncation n_max (default 40)"},
      {"seed", "RNG seed for sample and see-saw restarts (default 0)"},
      {"out", "output file, '-' for stdout; a directory for figures"},
      {"format", "csv or json (default csv)"},
      {"config", "JSON config file with any of these keys"},
      {"x", "pmatrix: Re(alpha) of the cross-section (default 0)"},
      {"lo", "sweep lower bound (y, tau or alpha0, by command)"},
      {"hi", "sweep upper bound"},
      {"points", "sweep points"},
      {"samples", "sample: number of draws (default 100000)"},
      {"source", "joint/sample: closed_form or numeric"},
      {"sweep", "moments: tau or y"},
      {"restarts", "witness --seesaw: restarts per alpha0 (default 64)"},
      {"threads", "worker threads, 0 = hardware concurrency"},
      {"seesaw", "witness: append a see-saw g_max column (true/false)"},
  };
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    Binding& b = bindings[i];
    const std::string name = std::string("--") + b.key;
    if (b.key == std::string("seesaw")) {
      b.option = app.add_option(name, *b.value, help[i].second)->envname(env_name(b.key))->expected(0, 1);
    } else {
      b.option = app.add_option(name, *b.value, help[i].second)->envname(env_name(b.key));
    }
  }

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"pmatrix", "filtered P-matrix cross-section, closed form and numeric side by side"},
      {"joint", "joint distribution p(y, +-) of momentum and sigma_x outcomes"},
      {"moments", "conditional variance sweeps over tau or y"},
      {"witness", "separable bound and witness expectations versus alpha0"},
      {"sample", "simulated measurement record with moment estimates"},
      {"figures", "all four datasets plus a manifest into --out <dir>"},
  };
  for (const auto& [name, description] : commands) app.add_subcommand(name, description)->fallthrough();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp& e) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      report(err, "validation", e.what());
      return 2;
    }
    if (bindings.back().option->count() > 0 && flags.seesaw.empty()) flags.seesaw = "true";
    const std::string command = app.get_subcommands().front()->get_name();
    const RunConfig c = resolve(command, bindings, flags);
    if (command == "figures") {
      emit_figures(c, out);
    } else if (command == "pmatrix") {
      emit_single(c, pmatrix_dataset(c), out);
    } else if (command == "joint") {
      emit_single(c, joint_dataset(c), out);
    } else if (command == "moments") {
      emit_single(c, moments_dataset(c, false), out);
    } else if (command == "witness") {
      emit_single(c, witness_dataset(c), out);
    } else {
      emit_single(c, sample_dataset(c), out);
    }
    return 0;
  } catch (const Error& e) {
    report(err, to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::validation ? 2 : 1;
  } catch (const std::exception& e) {
    report(err, "runtime", e.what());
    return 1;
  }
}

}  // namespace hqc::cli
