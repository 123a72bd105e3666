#include "cwave/config.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cwave/errors.hpp"
#include "cwave/mesh.hpp"
#include "cwave/problems.hpp"

namespace cwave {

using nlohmann::json;

void RunConfig::validate() const {
  (void)scheme_kind_from_string(scheme);
  (void)problem_by_name(problem);
  if (mesh != "uniform") (void)distribution_by_name(mesh);
  if (Ns.empty()) throw ConfigError("need at least one N");
  for (int N : Ns)
    if (N < 2) throw MeshError("N must be at least 2, got " + std::to_string(N));
  if (M && *M < 1) throw MeshError("M must be at least 1");
  if (!(cfl_factor > 0)) throw ConfigError("cfl factor must be positive");
  if (!(eps0 > 0 && eps0 < 1)) throw ConfigError("eps0 must lie in (0, 1)");
  if (format != "csv" && format != "md") throw ConfigError("format must be csv or md");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
}

RunConfig run_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const char* known[] = {"problem", "scheme", "mesh", "N", "M", "cfl_factor", "sigma", "eps0",
                                "fn0", "format", "out", "jobs", "seed", "serial"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(std::begin(known), std::end(known), k) == std::end(known))
      throw ConfigError("unknown config key '" + k + "'");
  }
  RunConfig c;
  try {
    c.problem = j.value("problem", c.problem);
    c.scheme = j.value("scheme", c.scheme);
    if (j.contains("mesh")) {
      const auto& m = j["mesh"];
      if (m.is_string()) {
        c.mesh = m.get<std::string>();
      } else {
        // {"axis": {"kind": "uniform" | "graded", "phi": name, "N": n}}
        const auto& ax = m.contains("axis") ? m["axis"] : m;
        for (const auto& [k, v] : ax.items())
          if (k != "kind" && k != "phi" && k != "N") throw ConfigError("unknown mesh key '" + k + "'");
        const std::string kind = ax.value("kind", std::string("uniform"));
        if (kind == "uniform")
          c.mesh = "uniform";
        else if (kind == "graded")
          c.mesh = ax.at("phi").get<std::string>();
        else
          throw ConfigError("mesh kind must be uniform or graded");
        if (ax.contains("N")) c.Ns = {ax["N"].get<int>()};
      }
    }
    if (j.contains("N")) {
      const auto& n = j["N"];
      c.Ns = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
    }
    if (j.contains("M")) {
      const auto& m = j["M"];
      if (m.is_string()) {
        if (m.get<std::string>() != "auto") throw ConfigError("M must be an integer or \"auto\"");
      } else {
        c.M = m.get<int>();
      }
    }
    c.cfl_factor = j.value("cfl_factor", c.cfl_factor);
    c.sigma = j.value("sigma", c.sigma);
    c.eps0 = j.value("eps0", c.eps0);
    if (j.contains("fn0")) c.fn0 = fn0_mode_from_string(j["fn0"].get<std::string>());
    c.format = j.value("format", c.format);
    c.out = j.value("out", c.out);
    c.jobs = j.value("jobs", c.jobs);
    c.seed = j.value("seed", c.seed);
    c.serial = j.value("serial", c.serial);
  } catch (const json::out_of_range& e) {
    throw ConfigError(std::string("config is missing a key: ") + e.what());
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return run_config_from_json(ss.str());
}

std::string to_json(const RunConfig& c) {
  json j{{"problem", c.problem}, {"scheme", c.scheme},   {"mesh", c.mesh},     {"N", c.Ns},
         {"cfl_factor", c.cfl_factor}, {"sigma", c.sigma}, {"eps0", c.eps0}, {"fn0", to_string(c.fn0)},
         {"format", c.format}, {"jobs", c.jobs},         {"seed", c.seed},     {"serial", c.serial}};
  if (c.M)
    j["M"] = *c.M;
  else
    j["M"] = "auto";
  if (!c.out.empty()) j["out"] = c.out;
  return j.dump();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw ConfigError("not an integer: '" + tok + "'");
    }
    if (pos != tok.size()) throw ConfigError("not an integer: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

} // namespace cwave
