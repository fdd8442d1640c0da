#pragma once

// Conversions between core results and tables, and the custom initial-state
// file format.

#include <iosfwd>
#include <string>

#include "sqbath/dynamics.hpp"
#include "sqbath/events.hpp"
#include "table.hpp"

namespace sqbath::cli {

/// Columns t, re_ij/im_ij for the 16 DFS-basis entries (row-major),
/// concurrence, ppt_min_eig. Bath and method are recorded as comments.
Table trajectory_table(const Trajectory& traj);
Trajectory trajectory_from_table(const Table& table);

/// Columns event (death|revival), time, tolerance; summary fields as comments.
Table events_table(const EventReport& report);
EventReport events_from_table(const Table& table);

/// Line 1: "standard" or "dfs". Then 16 whitespace-separated "re,im" pairs in
/// row-major order. Throws InvalidCustom on malformed input or a matrix that
/// is not a density matrix.
DensityMatrix parse_custom_state(std::istream& in);
DensityMatrix read_custom_state(const std::string& path);

}  // namespace sqbath::cli
