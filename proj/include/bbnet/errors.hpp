#pragma once

#include <stdexcept>
#include <string>

namespace bbnet {

// Invalid parameters, malformed config files, violated config invariants.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external inputs (graph files, caches, traces).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arguments outside an operation's mathematical domain.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bbnet
