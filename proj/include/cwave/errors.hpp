#pragma once
#include <stdexcept>
#include <string>

namespace cwave {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested combination exists in the math but not in this library.
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace cwave
