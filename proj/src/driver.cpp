#include "stokesbi/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace stokesbi {

SimulateResult simulate(const RunConfig& cfg) {
  InterfaceState initial = build_initial_state(cfg);
  Problem prob = build_problem(cfg, initial);
  std::vector<std::string> warnings = config_warnings(cfg);

  SimulateResult result;
  result.output_dir = resolve_output_dir(cfg);
  ensure_directory(result.output_dir);

  result.trajectory = run(initial, prob, cfg.integrator, cfg.snapshot_interval);

  std::vector<Diagnostics> diag_rows;
  std::vector<std::string> snapshot_files;
  int idx = 0;
  for (const Snapshot& snap : result.trajectory.snapshots) {
    RealSeq tension = tension_profile(snap.state, prob.membrane, prob.filter,
                                      prob.filters.tension_transport);
    snapshot_files.push_back(write_snapshot_csv(result.output_dir, idx++, snap.state, tension));
    diag_rows.push_back(snap.diag);
  }
  result.files = snapshot_files;
  result.files.push_back(write_diagnostics_csv(result.output_dir, diag_rows));
  result.files.push_back(write_manifest(result.output_dir, cfg, warnings,
                                        result.trajectory.failed, result.trajectory.failure,
                                        result.trajectory.last_good_time, snapshot_files));
  return result;
}

namespace {

double l2_diff_real(const Grid& coarse, const RealSeq& fine_restricted, const RealSeq& coarse_vals) {
  RealSeq d(coarse_vals.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = fine_restricted[i] - coarse_vals[i];
  return l2_norm(coarse, d);
}

}  // namespace

ConvergenceReport converge(const RunConfig& cfg, const std::vector<int>& resolutions) {
  if (resolutions.size() < 2)
    throw Error(ErrorCode::config_error, "convergence study needs at least two resolutions");
  for (std::size_t i = 0; i + 1 < resolutions.size(); ++i)
    if (resolutions[i + 1] != 2 * resolutions[i])
      throw Error(ErrorCode::config_error, "resolutions must form a doubling chain");

  // Pin the step to the finest grid so every member shares the same time
  // discretization.
  RunConfig finest_cfg = cfg;
  finest_cfg.n = resolutions.back();
  InterfaceState finest_state = build_initial_state(finest_cfg);
  Problem finest_prob = build_problem(finest_cfg, finest_state);
  double dt = cfg.integrator.dt > 0.0
                  ? cfg.integrator.dt
                  : default_dt(finest_state, finest_prob, cfg.integrator.scheme, cfg.integrator.cfl);

  ConvergenceReport report;
  struct Member {
    int n;
    InterfaceState state;
  };
  std::vector<Member> members;
  for (int n : resolutions) {
    RunConfig member_cfg = cfg;
    member_cfg.n = n;
    member_cfg.integrator.dt = dt;
    InterfaceState initial = build_initial_state(member_cfg);
    Problem prob = build_problem(member_cfg, initial);
    Trajectory traj = run(initial, prob, member_cfg.integrator, 0.0);
    if (traj.failed) {
      report.failed = true;
      report.failure = "run at n = " + std::to_string(n) + " failed: " + traj.failure;
      break;
    }
    members.push_back({n, traj.snapshots.back().state});
  }

  for (std::size_t m = 0; m + 1 < members.size(); ++m) {
    const InterfaceState& coarse = members[m].state;
    const InterfaceState& fine = members[m + 1].state;
    const int stride = fine.n() / coarse.n();
    const int nc = coarse.n();

    RealSeq theta_f(nc), alpha0_f(nc);
    for (int i = 0; i < nc; ++i) {
      theta_f[i] = fine.theta_p[i * stride];
      alpha0_f[i] = fine.alpha0_p[i * stride];
    }
    ComplexSeq tau_c_grid = reconstruct_tau(coarse);
    ComplexSeq tau_f_grid = reconstruct_tau(fine);
    RealSeq dtau(nc);
    for (int i = 0; i < nc; ++i) dtau[i] = std::abs(tau_f_grid[i * stride] - tau_c_grid[i]);

    ConvergenceRow row;
    row.n_coarse = coarse.n();
    row.n_fine = fine.n();
    row.dtheta = l2_diff_real(coarse.grid, theta_f, coarse.theta_p);
    row.dsigma = std::abs(fine.sigma - coarse.sigma);
    row.dalpha0 = l2_diff_real(coarse.grid, alpha0_f, coarse.alpha0_p);
    row.dtau = l2_norm(coarse.grid, dtau);
    report.rows.push_back(row);
  }

  auto orders = [](auto get, const std::vector<ConvergenceRow>& rows) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      double a = get(rows[i]), b = get(rows[i + 1]);
      out.push_back((a > 0.0 && b > 0.0) ? std::log2(a / b) : 0.0);
    }
    return out;
  };
  report.order_theta = orders([](const ConvergenceRow& r) { return r.dtheta; }, report.rows);
  report.order_sigma = orders([](const ConvergenceRow& r) { return r.dsigma; }, report.rows);
  report.order_alpha0 = orders([](const ConvergenceRow& r) { return r.dalpha0; }, report.rows);
  report.order_tau = orders([](const ConvergenceRow& r) { return r.dtau; }, report.rows);

  std::string dir = resolve_output_dir(cfg);
  ensure_directory(dir);
  report.csv_path = dir + "/convergence.csv";
  std::ofstream f(report.csv_path);
  if (!f) throw Error(ErrorCode::io_error, "cannot open '" + report.csv_path + "'");
  f << "n_coarse,n_fine,dtheta,dsigma,dalpha0,dtau\n";
  for (const auto& r : report.rows)
    f << r.n_coarse << ',' << r.n_fine << ',' << fmt17(r.dtheta) << ',' << fmt17(r.dsigma) << ','
      << fmt17(r.dalpha0) << ',' << fmt17(r.dtau) << '\n';
  if (report.failed) f << "# " << report.failure << '\n';
  return report;
}

namespace {

DiagnoseSeries run_series(const RunConfig& cfg, const std::string& label) {
  DiagnoseSeries series;
  series.label = label;
  InterfaceState initial = build_initial_state(cfg);
  Problem prob = build_problem(cfg, initial);
  Trajectory traj = run(initial, prob, cfg.integrator, cfg.snapshot_interval);
  for (const Snapshot& s : traj.snapshots) {
    series.times.push_back(s.time);
    series.high_mode_max.push_back(s.diag.high_mode_max);
  }
  if (traj.failed) {
    series.blew_up = true;
    series.first_blow_up_time = traj.last_good_time;
  }
  return series;
}

}  // namespace

DiagnoseReport diagnose(const RunConfig& cfg) {
  DiagnoseReport report;
  report.flags = config_warnings(cfg);

  RunConfig filtered_cfg = cfg;
  report.filtered = run_series(filtered_cfg, "filtered");

  RunConfig unfiltered_cfg = cfg;
  unfiltered_cfg.filters.forcing = false;
  unfiltered_cfg.filters.density_kernels = false;
  report.unfiltered = run_series(unfiltered_cfg, "unfiltered");

  std::string dir = resolve_output_dir(cfg);
  ensure_directory(dir);
  report.csv_path = dir + "/diagnose.csv";
  std::ofstream f(report.csv_path);
  if (!f) throw Error(ErrorCode::io_error, "cannot open '" + report.csv_path + "'");
  f << "series,time,high_mode_max\n";
  for (std::size_t i = 0; i < report.filtered.times.size(); ++i)
    f << "filtered," << fmt17(report.filtered.times[i]) << ','
      << fmt17(report.filtered.high_mode_max[i]) << '\n';
  for (std::size_t i = 0; i < report.unfiltered.times.size(); ++i)
    f << "unfiltered," << fmt17(report.unfiltered.times[i]) << ','
      << fmt17(report.unfiltered.high_mode_max[i]) << '\n';
  for (const auto& flag : report.flags) f << "# " << flag << '\n';
  return report;
}

}  // namespace stokesbi
