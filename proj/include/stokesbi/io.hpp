#ifndef STOKESBI_IO_HPP
#define STOKESBI_IO_HPP

#include <string>
#include <vector>

#include "stokesbi/config.hpp"

namespace stokesbi {

/// Round-trippable formatting for CSV numerics (17 significant digits).
std::string fmt17(double v);

void ensure_directory(const std::string& dir);

/// Interface snapshot CSV: t, j, x, y, theta, tension, alpha0 per node.
std::string write_snapshot_csv(const std::string& dir, int index, const InterfaceState& state,
                               const RealSeq& tension);

/// One diagnostics row per snapshot.
std::string write_diagnostics_csv(const std::string& dir, const std::vector<Diagnostics>& rows);

/// Run manifest: every resolved parameter, tool version, outcome. No clocks
/// or hostnames, so reruns are byte-identical.
std::string write_manifest(const std::string& dir, const RunConfig& cfg,
                           const std::vector<std::string>& warnings, bool failed,
                           const std::string& failure, double last_good_time,
                           const std::vector<std::string>& snapshot_files);

extern const char* kToolVersion;

}  // namespace stokesbi

#endif
