#pragma once

#include <string>
#include <vector>

#include "qotto/cycle.hpp"
#include "qotto/io/config.hpp"

namespace qotto::io {

// One or two sweep axes: `sweep.param = omega_h`, `sweep.grid = 1:3:41`
// (lo:hi:n, inclusive) or an explicit comma list.
struct SweepAxis {
  std::string param;
  std::vector<double> grid;
};

CycleSpec cycle_spec_from_config(const Config& cfg);

// Applies `param = value` on top of a config (used by sweeps).
void apply_override(Config& cfg, const std::string& param, double value);

std::vector<double> parse_grid(const std::string& text);
std::vector<SweepAxis> sweep_axes_from_config(const Config& cfg);

// Comment header stamped on every output file: units convention, tool
// version, config hash.
std::string file_header(const Config& cfg, const std::string& what);

}  // namespace qotto::io
