#include "polyrecur/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polyrecur {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key '" + key + "': expected boolean, got '" + value + "'");
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
  ExperimentConfig cfg;
  cfg.raw_text = text;
  cfg.config_hash = fnv1a_hash(text);
  bool kind_set = false, nonzero_set = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t != "[experiment]")
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section " + t);
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (std::size_t hash = value.find('#'); hash != std::string::npos)
      value = trim(value.substr(0, hash));
    if (value.empty()) throw ConfigError("key '" + key + "' has an empty value");
    if (key == "kind") {
      cfg.kind = value;
      kind_set = true;
    } else if (key == "poly" || key == "polys") {
      for (const std::string& p : split(value, ';')) cfg.polys.push_back(IntPoly::parse(p));
    } else if (key == "alpha") {
      cfg.alpha = split(value, ',');
    } else if (key == "n") {
      cfg.n_single = parse_long(key, value);
    } else if (key == "n_grid") {
      for (const std::string& n : split(value, ',')) cfg.n_grid.push_back(parse_long(key, n));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "require_nonzero") {
      cfg.require_nonzero = parse_bool(key, value);
      nonzero_set = true;
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(parse_long(key, value));
    } else if (key == "tol") {
      try {
        cfg.tol = std::stod(value);
      } catch (const std::exception&) {
        throw ConfigError("key 'tol': expected number, got '" + value + "'");
      }
    } else if (key == "out_csv") {
      cfg.out_csv = value;
    } else if (key == "out_json") {
      cfg.out_json = value;
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!kind_set) throw ConfigError("missing key 'kind'");
  if (cfg.kind != "kronecker" && cfg.kind != "polynomial" && cfg.kind != "system")
    throw ConfigError("kind must be kronecker, polynomial, or system");
  if (cfg.alpha.empty()) throw ConfigError("missing key 'alpha'");
  for (const std::string& a : cfg.alpha) {
    if (a == "random") continue;
    try {
      FixedReal::parse(a, 80);
    } catch (const std::exception& e) {
      throw ConfigError("alpha entry '" + a + "': " + e.what());
    }
  }
  if (cfg.kind == "kronecker") {
    if (!cfg.polys.empty()) throw ConfigError("kind kronecker takes no polynomials");
    if (nonzero_set && cfg.require_nonzero)
      throw ConfigError("kind kronecker does not support require_nonzero");
    cfg.require_nonzero = false;
  } else if (cfg.kind == "polynomial") {
    if (cfg.polys.size() != 1) throw ConfigError("kind polynomial needs exactly one poly");
    if (!nonzero_set) cfg.require_nonzero = true;
  } else {
    if (cfg.polys.size() != cfg.alpha.size())
      throw ConfigError("kind system needs one poly per alpha entry");
    for (std::size_t j = 0; j < cfg.polys.size(); ++j)
      if (cfg.polys[j].constant_term() != 0)
        throw ConfigError("system poly " + std::to_string(j) + " has a nonzero constant term");
    cfg.require_nonzero = false;
  }
  if (cfg.n_grid.empty() && cfg.n_single <= 0)
    throw ConfigError("need either 'n' or 'n_grid'");
  for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
    if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) throw ConfigError("n_grid must be strictly increasing");
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

ScalingSpec ExperimentConfig::to_scaling_spec() const {
  ScalingSpec spec;
  spec.kind = kind == "kronecker"    ? ScalingKind::kKronecker
              : kind == "polynomial" ? ScalingKind::kPolynomial
                                     : ScalingKind::kSystem;
  spec.polys = polys;
  spec.alpha = alpha;
  spec.seed = seed;
  spec.require_nonzero = require_nonzero;
  return spec;
}

ordered_json ExperimentConfig::echo() const {
  ordered_json j;
  j["kind"] = kind;
  ordered_json jp = ordered_json::array();
  for (const IntPoly& p : polys) jp.push_back(p.to_human());
  j["polys"] = jp;
  j["alpha"] = alpha;
  if (!n_grid.empty()) j["n_grid"] = n_grid;
  if (n_single > 0) j["n"] = n_single;
  j["seed"] = seed;
  j["require_nonzero"] = require_nonzero;
  j["workers"] = workers;
  j["tol"] = tol;
  return j;
}

ordered_json scaling_report_json(const ScalingReport& report) {
  ordered_json j;
  j["kind"] = report.kind == ScalingKind::kKronecker    ? "kronecker"
              : report.kind == ScalingKind::kPolynomial ? "polynomial"
                                                        : "system";
  j["seed"] = report.seed;
  j["precision_bits"] = report.precision_bits;
  j["alpha"] = report.alpha_desc;
  ordered_json fit;
  fit["slope"] = format_double(report.fitted_slope);
  fit["intercept"] = format_double(report.fitted_intercept);
  fit["residual"] = format_double(report.residual);
  fit["points_used"] = report.points_used;
  j["fit"] = fit;
  j["exact_hits"] = report.exact_hits;
  ordered_json grid = ordered_json::array();
  for (const ScalingPoint& p : report.grid) {
    ordered_json row;
    row["N"] = p.N;
    row["max_norm"] = format_double(p.max_norm);
    row["n_star"] = p.n_star;
    grid.push_back(row);
  }
  j["grid"] = grid;
  return j;
}

std::string scaling_report_csv(const ScalingReport& report) {
  std::string out = "N,max_norm,n_star\n";
  for (const ScalingPoint& p : report.grid) {
    out += std::to_string(p.N);
    out += ",";
    out += format_double(p.max_norm);
    out += ",";
    out += std::to_string(p.n_star);
    out += "\n";
  }
  return out;
}

ExperimentOutput run_scaling(const ExperimentConfig& cfg) {
  if (cfg.n_grid.size() < 3)
    throw ConfigError("scaling needs an n_grid with at least 3 points");
  ScalingReport report = scaling_experiment(cfg.to_scaling_spec(), cfg.n_grid, cfg.workers);
  ExperimentOutput out;
  out.csv = scaling_report_csv(report);
  out.json = scaling_report_json(report);
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(cfg.config_hash));
  out.json["config_hash"] = hash_hex;
  out.json["config"] = cfg.echo();
  return out;
}

ExperimentOutput run_recur(const ExperimentConfig& cfg) {
  if (cfg.n_single <= 0) throw ConfigError("recur needs a positive 'n'");
  const long N = cfg.n_single;
  std::vector<IntPoly> polys;
  if (cfg.kind == "kronecker")
    polys.assign(cfg.alpha.size(), IntPoly::x());
  else if (cfg.kind == "polynomial")
    polys.assign(cfg.alpha.size(), cfg.polys.front());
  else
    polys = cfg.polys;
  const long prec = precision_for(polys, N);
  FixedVector alpha = resolve_alphas(cfg.alpha, cfg.seed, prec);
  RecurrenceResult r;
  if (cfg.kind == "kronecker")
    r = kronecker_search(alpha, N, cfg.workers);
  else if (cfg.kind == "polynomial")
    r = best_recurrence(cfg.polys.front(), alpha, N, cfg.require_nonzero, cfg.workers);
  else
    r = system_recurrence(cfg.polys, alpha, N, cfg.workers);

  ExperimentOutput out;
  ordered_json j;
  j["kind"] = cfg.kind;
  j["N"] = r.N;
  j["n_star"] = r.n_star;
  j["max_norm"] = format_double(r.max_norm);
  ordered_json vals = ordered_json::array();
  for (double v : r.values) vals.push_back(format_double(v));
  j["values"] = vals;
  j["nonzero_constraint"] = r.nonzero_constraint;
  j["seed"] = cfg.seed;
  j["precision_bits"] = prec;
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(cfg.config_hash));
  j["config_hash"] = hash_hex;
  j["config"] = cfg.echo();
  out.json = j;
  out.csv = "N,max_norm,n_star\n" + std::to_string(r.N) + "," + format_double(r.max_norm) + "," +
            std::to_string(r.n_star) + "\n";
  return out;
}

}  // namespace polyrecur
