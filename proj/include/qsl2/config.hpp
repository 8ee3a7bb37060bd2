#pragma once

#include <cstdlib>
#include <string>

#include "qsl2/errors.hpp"

namespace qsl2 {

// Global knobs. Command-line flags override environment variables, which
// override these defaults; the struct itself carries no magic.
struct Config {
  int jet_order = 8;  // number of exactly tracked Taylor coefficients
  int window = 40;    // K-type truncation half-width for graded solvers
  int n_max = 64;     // exponent search bound for special-point detection

  void validate() const {
    if (jet_order < 2) throw err("ConfigError", "jet_order must be >= 2");
    if (window < 8) throw err("ConfigError", "window must be >= 8");
    if (n_max < 1) throw err("ConfigError", "n_max must be >= 1");
  }

  static Config from_env() {
    Config cfg;
    auto read = [](const char* name, int& slot) {
      if (const char* v = std::getenv(name)) {
        try {
          slot = std::stoi(v);
        } catch (...) {
          throw err("ConfigError", std::string(name) + " is not an integer");
        }
      }
    };
    read("QSL2_JET_ORDER", cfg.jet_order);
    read("QSL2_WINDOW", cfg.window);
    read("QSL2_NMAX", cfg.n_max);
    cfg.validate();
    return cfg;
  }
};

}  // namespace qsl2
