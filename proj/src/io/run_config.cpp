#include "qotto/io/run_config.hpp"

#include <fstream>
#include <sstream>

#include "qotto/version.hpp"

namespace qotto::io {

namespace {

Protocol protocol_from_config(const Config& cfg, const std::string& prefix,
                              double omega_i, double omega_f) {
  const std::string kind = cfg.get_string(prefix + ".kind", "constmu");
  if (kind == "constmu") {
    if (cfg.has(prefix + ".mu"))
      return constant_mu_protocol(omega_i, omega_f,
                                  cfg.get_double(prefix + ".mu"));
    return frictionless_constmu(omega_i, omega_f, cfg.get_int(prefix + ".l", 1));
  }
  if (kind == "linear")
    return linear_protocol(omega_i, omega_f, cfg.get_double(prefix + ".tau"));
  if (kind == "ermakov")
    return ermakov_sta(omega_i, omega_f, cfg.get_double(prefix + ".tau"));
  if (kind == "bangbang")
    return bang_bang(omega_i, omega_f,
                     cfg.get_double(prefix + ".omega_min",
                                    std::min(omega_i, omega_f)),
                     cfg.get_double(prefix + ".omega_max",
                                    std::max(omega_i, omega_f)),
                     omega_f / omega_i);
  if (kind == "sudden") {
    Protocol p;
    p.kind = Protocol::Kind::bang_bang;
    p.omega_start = omega_i;
    p.omega_end = omega_f;
    p.duration = 0.0;
    return p;
  }
  if (kind == "tabulated") {
    std::ifstream in(cfg.get_string(prefix + ".file"));
    if (!in)
      throw ConfigError("cannot open protocol table " +
                        cfg.get_string(prefix + ".file"));
    return from_table(in);
  }
  throw ConfigError("unknown protocol kind `" + kind + "` for " + prefix);
}

}  // namespace

CycleSpec cycle_spec_from_config(const Config& cfg) {
  CycleSpec spec;
  spec.omega_h = cfg.get_double("omega_h");
  spec.omega_c = cfg.get_double("omega_c");
  spec.hot_bath.temperature = cfg.get_double("bath.hot.T");
  spec.hot_bath.conductance = cfg.get_double("bath.hot.gamma", 1.0);
  spec.hot_bath.squeezing = cfg.get_double("bath.hot.squeeze", 0.0);
  spec.cold_bath.temperature = cfg.get_double("bath.cold.T");
  spec.cold_bath.conductance = cfg.get_double("bath.cold.gamma", 1.0);
  spec.cold_bath.squeezing = cfg.get_double("bath.cold.squeeze", 0.0);
  spec.tau_h = cfg.get_double("tau_h");
  spec.tau_c = cfg.get_double("tau_c");
  spec.noise.gamma_a = cfg.get_double("noise.amplitude", 0.0);
  spec.noise.gamma_p = cfg.get_double("noise.phase", 0.0);
  spec.order = cfg.get_string("order", "engine") == "refrigerator"
                   ? CycleOrder::refrigerator
                   : CycleOrder::engine;
  spec.adiabat_tol = cfg.get_double("adiabat_tol", 1e-10);
  spec.expansion =
      protocol_from_config(cfg, "expansion", spec.omega_h, spec.omega_c);
  spec.compression =
      protocol_from_config(cfg, "compression", spec.omega_c, spec.omega_h);
  spec.validate();
  return spec;
}

void apply_override(Config& cfg, const std::string& param, double value) {
  cfg.set(param, format_number(value));
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
      throw ConfigError("bad grid spec `" + text + "`, expected lo:hi:n");
    for (int i = 0; i < n; ++i)
      grid.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return grid;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    grid.push_back(std::stod(tok));
  }
  if (grid.empty()) throw ConfigError("empty grid spec `" + text + "`");
  return grid;
}

std::vector<SweepAxis> sweep_axes_from_config(const Config& cfg) {
  std::vector<SweepAxis> axes;
  if (cfg.has("sweep.param"))
    axes.push_back({cfg.get_string("sweep.param"),
                    parse_grid(cfg.get_string("sweep.grid"))});
  if (cfg.has("sweep2.param"))
    axes.push_back({cfg.get_string("sweep2.param"),
                    parse_grid(cfg.get_string("sweep2.grid"))});
  if (axes.empty())
    throw ConfigError("sweep requires sweep.param and sweep.grid");
  return axes;
}

std::string file_header(const Config& cfg, const std::string& what) {
  std::ostringstream os;
  os << "# qotto " << what << "\n";
  os << "# units: hbar = kB = m = 1 (energies, temperatures and frequencies "
        "share one unit; work is negative for a working engine)\n";
  os << "# version: " << kVersion << "\n";
  os << "# config_hash: " << cfg.hash() << "\n";
  return os.str();
}

}  // namespace qotto::io
