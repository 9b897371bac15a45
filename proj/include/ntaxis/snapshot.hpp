#pragma once

// Binary snapshots: the magic "DTXS1", an int32 dimension, int32 cells per
// axis (3), float64 lengths (3), float64 t, alpha, chi, ell, epsilon, then
// the row-major float64 arrays u and v. Everything little-endian.

#include <filesystem>
#include <vector>

#include "ntaxis/model.hpp"

namespace ntaxis {

struct Snapshot
{
   GridSpec grid;
   double t = 0.0;
   double alpha = 0.0;
   double chi = 0.0;
   double ell = 0.0;
   double epsilon = 0.0;
   std::vector<double> u;
   std::vector<double> v;
};

void save_snapshot(const State& state, const Params& params, const std::filesystem::path& path);

/// Throws Error("not a snapshot") on a magic mismatch and
/// Error("corrupt snapshot") when the header or payload size is inconsistent.
Snapshot load_snapshot(const std::filesystem::path& path);

/// Throws Error("grid mismatch: ...") naming both shapes unless the snapshot
/// was written on `grid`.
void require_snapshot_grid(const Snapshot& snap, const Grid& grid);

/// State with the stored t, u and v (accumulators zero).
State snapshot_state(const Snapshot& snap, const Grid& grid);

} // namespace ntaxis
