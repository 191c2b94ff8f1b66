#ifndef STOKESBI_DRIVER_HPP
#define STOKESBI_DRIVER_HPP

#include "stokesbi/io.hpp"

namespace stokesbi {

struct SimulateResult {
  Trajectory trajectory;
  std::string output_dir;
  std::vector<std::string> files;
};

/// Run one config end to end and write snapshot CSVs, diagnostics CSV and
/// the manifest into its output directory.
SimulateResult simulate(const RunConfig& cfg);

/// One refinement pair of a convergence study: l² differences between the
/// N and 2N solutions at the final time, measured on the coarse nodes.
struct ConvergenceRow {
  int n_coarse = 0;
  int n_fine = 0;
  double dtheta = 0.0;
  double dsigma = 0.0;
  double dalpha0 = 0.0;
  double dtau = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  // log2(row_i / row_{i+1}) per field; empty until there are two rows.
  std::vector<double> order_theta, order_sigma, order_alpha0, order_tau;
  bool failed = false;
  std::string failure;
  std::string csv_path;
};

/// Doubling-chain refinement study. All members share the finest grid's time
/// step so the spatial error dominates the comparison; the finer solution is
/// restricted by subsampling (the coarse nodes are a subset).
ConvergenceReport converge(const RunConfig& cfg, const std::vector<int>& resolutions);

struct DiagnoseSeries {
  std::string label;
  std::vector<double> times;
  std::vector<double> high_mode_max;
  bool blew_up = false;
  double first_blow_up_time = -1.0;
};

struct DiagnoseReport {
  DiagnoseSeries filtered;
  DiagnoseSeries unfiltered;
  std::vector<std::string> flags;
  std::string csv_path;
};

/// Paired filtered vs unfiltered runs of the same config, reporting the
/// high-mode tail history and first failure time.
DiagnoseReport diagnose(const RunConfig& cfg);

}  // namespace stokesbi

#endif
