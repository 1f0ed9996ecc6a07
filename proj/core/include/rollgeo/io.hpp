#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rollgeo/plane.hpp"

namespace rollgeo {

/// Shortest-round-trip double formatting (17 significant digits).
std::string format_g17(double x);

/// Header t,u1,u2,u3,v1,v2,v3,a1,a2,a3,b1,b2,b3,theta; one row per sample.
std::string trajectory_csv(const HorizontalPath& p);

/// Parses rows written by trajectory_csv (header required).
std::vector<PathSample> read_trajectory_rows(std::istream& in);

std::string render_jacobian_report(const JacobianReport& report);
std::string render_geodesic_report(const GeodesicReport& report);
std::string render_shortcut_result(const ShortcutSearchResult& result);
std::string render_break_report(const std::array<BreakJump, 5>& jumps, double tol);

/// Writes content to a sibling temp file and renames it over the target.
void atomic_write_file(const std::filesystem::path& target, std::string_view content);

}  // namespace rollgeo
