#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "swe/bounds.hpp"
#include "swe/detwave.hpp"
#include "swe/mc.hpp"

// Serializers for every artifact the tool writes. All output is
// deterministic: a rerun with the same inputs produces identical bytes.

namespace swe::io {

std::string bound_report_json(const BoundReport& r);

// CSV of (t, sup_norm, phi) with a header row
std::string trajectory_csv(const TrajectoryRecord& rec);

std::string det_summary_json(const TrajectoryRecord& rec,
                             const BoundReport& bound, double horizon, int nx,
                             double dt, double L);

// CSV of (t, sup_norm, phi, sup_u_sq) with a header row
std::string path_csv(const PathResult& p);
std::string path_sidecar_json(const PathResult& p);

std::string mc_summary_json(const McSummary& s);
std::string isometry_json(const IsometryReport& r);

// blow-up-time histogram over [0, horizon] in uniform bins
std::string blowup_histogram_csv(const std::vector<PathResult>& paths,
                                 double horizon, int bins);

// per-checkpoint trimmed curve, reference curve, and their difference
std::string margin_csv(const McSummary& s);

std::string manifest_json(std::uint64_t config_hash, int nx, double dt,
                          double horizon);

std::uint64_t fnv1a(std::string_view text);

void write_file(const std::string& path, const std::string& content);

}  // namespace swe::io
