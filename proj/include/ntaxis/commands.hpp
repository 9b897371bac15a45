#pragma once

// Experiment orchestration behind the command line tool: single runs with
// CSV and snapshot output, alpha sweeps, epsilon studies and the
// verification batches.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntaxis/config.hpp"
#include "ntaxis/exponents.hpp"

namespace ntaxis {

struct RunOutcome
{
   bool ok = false;
   std::string message;
   std::optional<Trajectory> trajectory;
};

/// Runs one configuration, writing monitors.csv, residuals.csv and
/// snapshot_NNNN.bin into config.output_dir. Never throws for solver
/// failures; they are reported in the outcome.
RunOutcome run_to_directory(const RunConfig& config);

/// Exit status of run_to_directory; failures are printed to `err`.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SweepRow
{
   double alpha = 0.0;
   std::string regime;
   bool ok = false;
   std::string message;
   std::optional<MonitorRow> final_row;
};

struct SweepReport
{
   std::vector<SweepRow> rows;
   /// sweep.csv: alpha, regime, status, the final monitor row, message.
   std::string csv() const;
};

/// One independent run per alpha (in list order, duplicates kept), each in
/// output_dir/alpha_<index>, executed on up to `threads` worker threads.
/// Writes sweep.csv into config.output_dir.
SweepReport cmd_sweep(const RunConfig& config, std::span<const double> alphas, unsigned threads = 0);

struct EpsRow
{
   double eps_a = 0.0;
   double eps_b = 0.0;
   bool ok = false;
   std::string message;
   double l2_u = 0.0; ///< ||u_b(T) - u_a(T)||_{L^2}
   double l2_v = 0.0;
};

struct EpsStudyReport
{
   std::vector<EpsRow> rows;
   std::string csv() const;
};

/// Runs the configuration once per epsilon (entries in (0,1), nonincreasing)
/// and reports L^2 differences of consecutive final states. Writes
/// eps_study.csv into config.output_dir.
EpsStudyReport cmd_eps_study(const RunConfig& config, std::span<const double> eps_list,
                             unsigned threads = 0);

/// JSON-lines summary of the randomized inequality batches; 0 when every
/// explicit-constant check passes and the Sobolev-product constant is stable.
int cmd_verify_inequalities(std::size_t count, std::uint64_t seed, std::ostream& out);

enum class SequenceKind
{
   moderate,
   moderate_hat,
   strong
};

/// CSV of a bootstrap sequence: k, start exponent, p, r.
void cmd_exponents(SequenceKind kind, double start, double alpha, int count, std::ostream& out);

/// JSON lines: one summary object, then one object per violation.
int cmd_verify_exponents(std::size_t samples, std::uint64_t seed, int iterations, std::ostream& out);

} // namespace ntaxis
