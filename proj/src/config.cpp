#include "kerrsol/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kerrsol {

const char* to_string(Closure c) {
  return c == Closure::linearized ? "linearized" : "self-consistent";
}

Closure closure_from_string(const std::string& s) {
  if (s == "linearized") return Closure::linearized;
  if (s == "self-consistent" || s == "self_consistent") return Closure::self_consistent;
  throw std::invalid_argument("closure must be 'linearized' or 'self-consistent', got '" + s + "'");
}

void SimulationConfig::validate() const {
  if (!(nbar > 0.0)) throw std::invalid_argument("nbar must be > 0");
  if (!(gamma_td >= 0.0)) throw std::invalid_argument("gamma_td must be >= 0");
  if (!(n_th >= 0.0)) throw std::invalid_argument("n_th must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be >= 0");
  if (!(snapshot_interval > 0.0)) throw std::invalid_argument("snapshot_interval must be > 0");
  const double ratio = t_final / snapshot_interval;
  if (std::abs(ratio - std::round(ratio)) > 1e-9)
    throw std::invalid_argument("t_final must be an integer multiple of snapshot_interval");
  grid();  // validates n_points and dx
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value,
                    const std::string& origin, int line) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                ": key '" + key + "' has non-numeric value '" + value + "'");
  }
}

}  // namespace

SimulationConfig parse_config(std::istream& in, const std::string& origin) {
  SimulationConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");

    if (key == "n_points") cfg.n_points = static_cast<int>(parse_double(key, value, origin, lineno));
    else if (key == "dx") cfg.dx = parse_double(key, value, origin, lineno);
    else if (key == "nbar") cfg.nbar = parse_double(key, value, origin, lineno);
    else if (key == "gamma_td") cfg.gamma_td = parse_double(key, value, origin, lineno);
    else if (key == "n_th") cfg.n_th = parse_double(key, value, origin, lineno);
    else if (key == "closure") cfg.closure = closure_from_string(value);
    else if (key == "dt") cfg.dt = parse_double(key, value, origin, lineno);
    else if (key == "t_final") cfg.t_final = parse_double(key, value, origin, lineno);
    else if (key == "snapshot_interval") cfg.snapshot_interval = parse_double(key, value, origin, lineno);
    else
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
  }
  static const char* required[] = {"n_points", "dx",      "nbar",
                                   "gamma_td", "n_th",    "closure",
                                   "dt",       "t_final", "snapshot_interval"};
  for (const char* key : required)
    if (!seen.count(key))
      throw std::invalid_argument(origin + ": missing key '" + std::string(key) + "'");
  return cfg;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

std::string canonical_config_text(const SimulationConfig& cfg) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "n_points=%d\ndx=%.17g\nnbar=%.17g\ngamma_td=%.17g\nn_th=%.17g\n"
                "closure=%s\ndt=%.17g\nt_final=%.17g\nsnapshot_interval=%.17g\n",
                cfg.n_points, cfg.dx, cfg.nbar, cfg.gamma_td, cfg.n_th,
                to_string(cfg.closure), cfg.dt, cfg.t_final, cfg.snapshot_interval);
  return buf;
}

std::string config_hash(const SimulationConfig& cfg) {
  const std::string text = canonical_config_text(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace kerrsol
