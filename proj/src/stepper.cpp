#include "ntaxis/stepper.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ntaxis/error.hpp"
#include "ntaxis/functionals.hpp"

namespace ntaxis {

void StepControl::validate() const
{
   if (!(t_end > 0.0) || !std::isfinite(t_end))
   {
      throw Error("t_end must be positive and finite");
   }
   if (!(dt_max > 0.0))
   {
      throw Error("dt_max must be positive");
   }
   if (fixed_dt && !std::isfinite(dt_max))
   {
      throw Error("fixed time stepping needs a finite dt_max");
   }
   if (max_rejects < 1)
   {
      throw Error("max_rejects must be at least 1");
   }
   if (monitor_every < 0.0 || snapshot_every < 0.0)
   {
      throw Error("output cadences must be nonnegative");
   }
}

double stable_dt(const State& state, const Params& params, double dt_max)
{
   const Field& u = state.u;
   const Field& v = state.v;
   const Grid& g = u.grid();

   double d_star = 0.0;
   for (std::size_t i = 0; i < u.size(); ++i)
   {
      d_star = std::max(d_star, u[i] * v[i] + params.chi * std::pow(u[i], params.alpha) * v[i]);
   }
   if (!std::isfinite(d_star))
   {
      throw BlowUp("state blew up");
   }
   const double u_max = u.max();
   const double v_max = v.max();

   double h2_min = std::numeric_limits<double>::infinity();
   double inv_h2_sum = 0.0;
   for (int a = 0; a < g.dim(); ++a)
   {
      const double h2 = g.h(a) * g.h(a);
      h2_min = std::min(h2_min, h2);
      inv_h2_sum += 2.0 / h2;
   }

   double dt = dt_max;
   if (d_star > 0.0)
   {
      dt = std::min(dt, params.cfl_safety * h2_min / (2.0 * g.dim() * d_star));
   }
   // v-update: keeps every stencil weight nonnegative, hence max v nonincreasing.
   dt = std::min(dt, params.cfl_safety / (inv_h2_sum + u_max));
   const double reaction = u_max + params.ell * v_max;
   if (reaction > 0.0)
   {
      dt = std::min(dt, 1.0 / reaction);
   }
   return dt;
}

State step(const State& state, const Params& params, double dt)
{
   if (!(dt > 0.0) || !std::isfinite(dt))
   {
      throw Error(fmt::format("invalid time step {}", dt));
   }
   const Rhs rhs = assemble_rhs(state, params);
   const Accumulators rates = accumulator_rates(state, params);

   State next = state;
   next.t = state.t + dt;
   for (std::size_t k = 0; k < kAccumulatorCount; ++k)
   {
      next.acc[k] += dt * rates[k];
   }
   Field& u = next.u;
   Field& v = next.v;
   for (std::size_t i = 0; i < u.size(); ++i)
   {
      u[i] += dt * rhs.du[i];
      v[i] += dt * rhs.dv[i];
   }
   if (!u.all_finite() || !v.all_finite() ||
       !std::all_of(next.acc.begin(), next.acc.end(), [](double x) { return std::isfinite(x); }))
   {
      throw BlowUp("state blew up");
   }
   for (std::size_t i = 0; i < u.size(); ++i)
   {
      if (u[i] < 0.0)
      {
         throw StepRejected(fmt::format("u negative at cell {} (dt={})", i, dt));
      }
      if (!(v[i] > 0.0))
      {
         throw StepRejected(fmt::format("v nonpositive at cell {} (dt={})", i, dt));
      }
   }
   return next;
}

namespace {

double next_tick(double every, std::size_t k)
{
   return every > 0.0 ? every * static_cast<double>(k) : std::numeric_limits<double>::infinity();
}

} // namespace

Trajectory run(const State& initial, const Params& params, const StepControl& control,
               std::span<Observer* const> observers)
{
   params.validate();
   control.validate();

   const double tol = 1e-12 * std::max(1.0, control.t_end);
   Trajectory traj{{}, 0, 0, 0, initial};
   State cur = initial;

   auto record_row = [&] {
      MonitorRow row = monitor_row(cur, params, control.p_list);
      for (Observer* o : observers)
      {
         o->on_monitor(cur, row);
      }
      traj.rows.push_back(std::move(row));
   };
   auto record_snapshot = [&] {
      for (Observer* o : observers)
      {
         o->on_snapshot(cur, traj.snapshots);
      }
      ++traj.snapshots;
   };

   std::size_t mon_k = 0;
   std::size_t snap_k = 0;
   record_row();
   ++mon_k;
   if (control.snapshot_every > 0.0)
   {
      record_snapshot();
      ++snap_k;
   }
   double next_mon = next_tick(control.monitor_every, mon_k);
   double next_snap = next_tick(control.snapshot_every, snap_k);

   while (control.t_end - cur.t > tol)
   {
      const double target = std::min({control.t_end, next_mon, next_snap});
      double dt = control.fixed_dt ? control.dt_max : stable_dt(cur, params, control.dt_max);
      bool lands = false;
      if (dt >= target - cur.t - tol)
      {
         dt = target - cur.t;
         lands = true;
      }

      int rejects = 0;
      while (true)
      {
         try
         {
            State next = step(cur, params, dt);
            if (lands)
            {
               // cur.t + (target - cur.t) may miss target by one ulp.
               next.t = target;
            }
            for (Observer* o : observers)
            {
               o->on_step(cur, next);
            }
            cur = std::move(next);
            break;
         }
         catch (const StepRejected&)
         {
            ++traj.rejected_steps;
            if (++rejects > control.max_rejects)
            {
               throw Error(fmt::format("positivity unrecoverable at t={}", cur.t));
            }
            dt *= 0.5;
            lands = false;
         }
      }
      ++traj.accepted_steps;

      if (cur.t >= next_mon - tol)
      {
         record_row();
         next_mon = next_tick(control.monitor_every, ++mon_k);
      }
      if (cur.t >= next_snap - tol)
      {
         record_snapshot();
         next_snap = next_tick(control.snapshot_every, ++snap_k);
      }
   }
   if (traj.rows.back().t != cur.t)
   {
      record_row();
   }
   traj.final_state = std::move(cur);
   return traj;
}

} // namespace ntaxis
