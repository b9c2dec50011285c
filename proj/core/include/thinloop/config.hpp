#ifndef THINLOOP_CONFIG_HPP
#define THINLOOP_CONFIG_HPP

#include <cstdint>
#include <string>

namespace thinloop {

// Tool-level configuration: tolerances, grid sizes, seeds, outputs.
// Defaults here are the documented defaults; a JSON config file
// overrides them and command-line flags override the file.
struct RunConfig {
  double eps_geo = 0.0;   // 0: 2.5 x max consecutive sample spacing
  double v_min = 0.0;     // 0: 5% of the total arclength
  double theta_tol = 1e-3;
  double tol_rank = 1e-3;
  double tol_edge = 1e-6;
  double tol_group = 1e-8;
  double tol_trivial = 1e-5;
  double tol_nontrivial = 1e-2;
  double tol_factor_rel = 1e-3;
  double fold_lip_max = 1.01;
  int grid_rows = 257;
  int samples_per_arc = 512;
  int transport_steps = 1024;
  int connections = 20;
  int signature_level = 4;
  std::uint64_t seed = 20240801;
  std::string group = "SU2";
  std::string out_dir = ".";

  static RunConfig from_file(const std::string& path);
};

}  // namespace thinloop

#endif
