#pragma once

// Explicit Euler time stepping with positivity by rejection and halving.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ntaxis/diagnostics.hpp"
#include "ntaxis/model.hpp"

namespace ntaxis {

struct StepControl
{
   double t_end = 1.0;
   double dt_max = std::numeric_limits<double>::infinity();
   int max_rejects = 30;
   /// Use dt_max as the step instead of the stability estimate. The
   /// estimate is then ignored entirely; only rejection protects positivity.
   bool fixed_dt = false;
   /// Monitor rows are recorded at t = k * monitor_every (and at t_end).
   /// Non-positive disables periodic rows; t = 0 and t_end are always kept.
   double monitor_every = 0.0;
   /// Snapshot events at t = k * snapshot_every, including t = 0; 0 disables.
   double snapshot_every = 0.0;
   std::vector<double> p_list;

   void validate() const;
};

/// cfl_safety * min( min_a h_a^2 / (2 dim D*), 1 / (sum_a 2/h_a^2 + max u) ),
/// capped by 1 / (max u + ell max v) and dt_max, where
/// D* = max_i (u v + chi u^alpha v). Throws BlowUp("state blew up") when D*
/// is not finite.
double stable_dt(const State& state, const Params& params,
                 double dt_max = std::numeric_limits<double>::infinity());

/// One explicit Euler step. Never mutates `state`. Throws StepRejected if
/// u' < 0 or v' <= 0 somewhere, BlowUp if anything is non-finite.
State step(const State& state, const Params& params, double dt);

/// Receives every accepted step and the scheduled events of run().
class Observer
{
public:
   virtual ~Observer() = default;
   virtual void on_step(const State& /*prev*/, const State& /*next*/) {}
   virtual void on_monitor(const State& /*state*/, const MonitorRow& /*row*/) {}
   virtual void on_snapshot(const State& /*state*/, std::size_t /*index*/) {}
};

struct Trajectory
{
   std::vector<MonitorRow> rows;
   std::size_t accepted_steps = 0;
   std::size_t rejected_steps = 0;
   std::size_t snapshots = 0;
   State final_state;
};

/// Advances to control.t_end. Throws Error("positivity unrecoverable at
/// t=...") after max_rejects consecutive halvings; BlowUp propagates.
Trajectory run(const State& initial, const Params& params, const StepControl& control,
               std::span<Observer* const> observers = {});

} // namespace ntaxis
