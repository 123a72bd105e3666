#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cwave/kernels.hpp"
#include "cwave/rhs.hpp"
#include "cwave/schemes.hpp"

namespace cwave {

// Everything a CLI run needs; loaded from JSON and overridden by flags.
struct RunConfig {
  std::string problem = "smooth1d";
  std::string scheme = "compact1d";
  std::string mesh = "uniform"; // or phi0..phi6 (1D graded)
  std::vector<int> Ns{100};
  std::optional<int> M;         // empty: automatic rule
  double cfl_factor = 1.4142135623730951;
  double sigma = 0.5;
  double eps0 = 0.5;
  FN0Mode fn0 = FN0Mode::Graded;
  std::string format = "md";
  std::string out;              // empty: stdout
  int jobs = 1;                 // sweep members run concurrently
  unsigned long long seed = 12345;
  bool serial = false;

  void validate() const;
  Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
};

RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string to_json(const RunConfig& c);

// "200,400,800" -> {200, 400, 800}
std::vector<int> parse_int_list(const std::string& s);

} // namespace cwave
