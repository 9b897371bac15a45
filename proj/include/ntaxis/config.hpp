#pragma once

// Line-oriented `key = value` run configuration with `#` comments.
//
// Required keys: alpha, epsilon, cells, t_end.
// Optional keys (defaults in parentheses):
//   dim (1), lengths (1), chi (1), ell (0), cfl_safety (0.9),
//   face_mean (geometric | arithmetic),
//   initial (constant | gaussian_bump | cosine_mix | snapshot),
//   u_base (1), u_amp (0), width (0.1), center (0.5), v_base (1), v_amp (0),
//   snapshot (path, required when initial = snapshot),
//   dt_max (inf), fixed_dt (false), max_rejects (30), monitor_every (0),
//   snapshot_every (0), residual_every (10), p_list (empty),
//   output (out), seed (0).
// Axis lists (cells, lengths, center) are comma separated; a single value is
// broadcast to every active axis.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ntaxis/model.hpp"
#include "ntaxis/stepper.hpp"

namespace ntaxis {

struct RunConfig
{
   GridSpec grid;
   InitialData initial;
   /// Source file when initial.kind is from_snapshot.
   std::filesystem::path snapshot_path;
   Params params;
   StepControl control;
   /// Identity residuals are logged every this many accepted steps; 0 disables.
   int residual_every = 10;
   std::filesystem::path output_dir = "out";
   std::uint64_t seed = 0;
};

/// Throws Error("unknown key <k>"), Error("missing key <k>"),
/// Error("invalid value for <k>") or the component validation messages.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Builds the initial state of a config, loading its snapshot if needed.
State initial_state(const RunConfig& config);

} // namespace ntaxis
