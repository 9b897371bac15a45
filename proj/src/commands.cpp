#include "ntaxis/commands.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "ntaxis/error.hpp"
#include "ntaxis/inequalities.hpp"
#include "ntaxis/snapshot.hpp"

namespace ntaxis {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path)
{
   std::ofstream out(path, std::ios::trunc);
   if (!out)
   {
      throw Error(fmt::format("cannot write {}", path.string()));
   }
   return out;
}

class MonitorCsv : public Observer
{
public:
   explicit MonitorCsv(const fs::path& path) : out_(open_output(path)) {}

   void on_monitor(const State&, const MonitorRow& row) override
   {
      if (!header_written_)
      {
         out_ << csv_header(row) << '\n';
         header_written_ = true;
      }
      out_ << csv_line(row) << '\n';
   }

private:
   std::ofstream out_;
   bool header_written_ = false;
};

class ResidualCsv : public Observer
{
public:
   ResidualCsv(const fs::path& path, const Params& params, int every)
       : out_(open_output(path)), params_(params), every_(every)
   {
      out_ << "step,t,dt,v_energy,v_energy_rel,vq2,vq2_rel,upvq,upvq_rel,first_energy,"
              "first_energy_rel,first_energy_slack\n";
   }

   void on_step(const State& prev, const State& next) override
   {
      ++step_;
      if (every_ == 0 || step_ % static_cast<std::size_t>(every_) != 0)
      {
         return;
      }
      const ResidualReport ve = residual_v_energy(prev, next, params_);
      const ResidualReport vq = residual_vq_identity(prev, next, 2.0, params_);
      const ResidualReport upvq = residual_upvq_identity(prev, next, 0.5, 1.0, params_);
      const FirstEnergyReport fe = check_first_energy(prev, next, params_);
      out_ << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                          "{:.17g},{:.17g}\n",
                          step_, prev.t, next.t - prev.t, ve.residual, ve.relative(), vq.residual,
                          vq.relative(), upvq.residual, upvq.relative(), fe.identity.residual,
                          fe.identity.relative(), fe.slack);
   }

private:
   std::ofstream out_;
   const Params& params_;
   int every_;
   std::size_t step_ = 0;
};

class SnapshotWriter : public Observer
{
public:
   SnapshotWriter(fs::path dir, const Params& params) : dir_(std::move(dir)), params_(params) {}

   void on_snapshot(const State& state, std::size_t index) override
   {
      save_snapshot(state, params_, dir_ / fmt::format("snapshot_{:04}.bin", index));
   }

private:
   fs::path dir_;
   const Params& params_;
};

/// Calls job(i) for i in [0, n) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job job)
{
   if (threads == 0)
   {
      threads = std::max(1u, std::thread::hardware_concurrency());
   }
   threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
   std::atomic<std::size_t> next{0};
   auto worker = [&] {
      for (std::size_t i = next++; i < n; i = next++)
      {
         job(i);
      }
   };
   std::vector<std::thread> pool;
   for (unsigned t = 1; t < threads; ++t)
   {
      pool.emplace_back(worker);
   }
   if (n > 0)
   {
      worker();
   }
   for (auto& t : pool)
   {
      t.join();
   }
}

std::string regime_label(double alpha)
{
   try
   {
      return std::string(exponents::regime_name(exponents::regime_of(alpha)));
   }
   catch (const Error&)
   {
      return "invalid";
   }
}

std::string csv_quote(const std::string& s)
{
   std::string out = "\"";
   for (char c : s)
   {
      out += c;
      if (c == '"')
      {
         out += '"';
      }
   }
   return out + "\"";
}

double l2_difference(const Field& a, const Field& b)
{
   require_same_grid(a.grid(), b.grid());
   double sum = 0.0;
   for (std::size_t i = 0; i < a.size(); ++i)
   {
      const double d = a[i] - b[i];
      sum += d * d;
   }
   return std::sqrt(sum * a.grid().cell_volume());
}

} // namespace

RunOutcome run_to_directory(const RunConfig& config)
{
   RunOutcome outcome;
   try
   {
      fs::create_directories(config.output_dir);
      const State initial = initial_state(config);
      MonitorCsv monitors(config.output_dir / "monitors.csv");
      ResidualCsv residuals(config.output_dir / "residuals.csv", config.params, config.residual_every);
      SnapshotWriter snapshots(config.output_dir, config.params);
      Observer* observers[] = {&monitors, &residuals, &snapshots};
      outcome.trajectory = run(initial, config.params, config.control, observers);
      outcome.ok = true;
   }
   catch (const std::exception& e)
   {
      outcome.message = e.what();
   }
   return outcome;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
   const RunOutcome outcome = run_to_directory(config);
   if (!outcome.ok)
   {
      err << "run failed: " << outcome.message << '\n';
      return 1;
   }
   const Trajectory& traj = *outcome.trajectory;
   out << fmt::format("completed t={} accepted={} rejected={} snapshots={} output={}\n",
                      traj.final_state.t, traj.accepted_steps, traj.rejected_steps, traj.snapshots,
                      config.output_dir.string());
   return 0;
}

// ---------------------------------------------------------------------------

std::string SweepReport::csv() const
{
   std::vector<std::string> monitor_names;
   for (const SweepRow& r : rows)
   {
      if (r.final_row)
      {
         monitor_names = r.final_row->names();
         break;
      }
   }
   std::string out = "alpha,regime,status";
   for (const auto& n : monitor_names)
   {
      out += ',' + n;
   }
   out += ",message\n";
   for (const SweepRow& r : rows)
   {
      out += fmt::format("{:.17g},{},{}", r.alpha, r.regime, r.ok ? "ok" : "failed");
      if (r.final_row)
      {
         for (double x : r.final_row->values())
         {
            out += fmt::format(",{:.17g}", x);
         }
      }
      else
      {
         out += std::string(monitor_names.size(), ',');
      }
      out += ',' + csv_quote(r.message) + '\n';
   }
   return out;
}

SweepReport cmd_sweep(const RunConfig& config, std::span<const double> alphas, unsigned threads)
{
   SweepReport report;
   report.rows.resize(alphas.size());
   fs::create_directories(config.output_dir);
   parallel_for(alphas.size(), threads, [&](std::size_t i) {
      SweepRow& row = report.rows[i];
      row.alpha = alphas[i];
      row.regime = regime_label(alphas[i]);
      RunConfig member = config;
      member.params.alpha = alphas[i];
      member.output_dir = config.output_dir / fmt::format("alpha_{:03}", i);
      RunOutcome outcome = run_to_directory(member);
      row.ok = outcome.ok;
      row.message = outcome.message;
      if (outcome.ok)
      {
         row.final_row = outcome.trajectory->rows.back();
      }
   });
   open_output(config.output_dir / "sweep.csv") << report.csv();
   return report;
}

// ---------------------------------------------------------------------------

std::string EpsStudyReport::csv() const
{
   std::string out = "eps_a,eps_b,status,l2_u,l2_v,message\n";
   for (const EpsRow& r : rows)
   {
      out += fmt::format("{:.17g},{:.17g},{},{:.17g},{:.17g},{}\n", r.eps_a, r.eps_b,
                         r.ok ? "ok" : "failed", r.l2_u, r.l2_v, csv_quote(r.message));
   }
   return out;
}

EpsStudyReport cmd_eps_study(const RunConfig& config, std::span<const double> eps_list,
                             unsigned threads)
{
   for (std::size_t i = 0; i < eps_list.size(); ++i)
   {
      const double e = eps_list[i];
      if (!(e > 0.0 && e < 1.0) || (i > 0 && e > eps_list[i - 1]))
      {
         throw Error("eps_list must be nonincreasing with entries in (0,1)");
      }
   }

   std::vector<std::optional<State>> finals(eps_list.size());
   std::vector<std::string> errors(eps_list.size());
   parallel_for(eps_list.size(), threads, [&](std::size_t i) {
      try
      {
         RunConfig member = config;
         member.params.epsilon = eps_list[i];
         member.control.monitor_every = 0.0;
         member.control.snapshot_every = 0.0;
         finals[i] = run(initial_state(member), member.params, member.control).final_state;
      }
      catch (const std::exception& e)
      {
         errors[i] = fmt::format("run with epsilon {} failed: {}", eps_list[i], e.what());
      }
   });

   EpsStudyReport report;
   for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
   {
      EpsRow row;
      row.eps_a = eps_list[i];
      row.eps_b = eps_list[i + 1];
      if (finals[i] && finals[i + 1])
      {
         row.ok = true;
         row.l2_u = l2_difference(finals[i + 1]->u, finals[i]->u);
         row.l2_v = l2_difference(finals[i + 1]->v, finals[i]->v);
      }
      else
      {
         row.message = errors[i].empty() ? errors[i + 1] : errors[i];
      }
      report.rows.push_back(row);
   }
   fs::create_directories(config.output_dir);
   open_output(config.output_dir / "eps_study.csv") << report.csv();
   return report;
}

// ---------------------------------------------------------------------------

int cmd_verify_inequalities(std::size_t count, std::uint64_t seed, std::ostream& out)
{
   using nlohmann::json;
   bool ok = true;
   const double q_list[] = {2.0, 3.0, 4.0};

   for (const GridSpec& spec : {GridSpec{1, {128, 1, 1}, {1, 1, 1}}, GridSpec{2, {48, 48, 1}, {1, 1, 1}}})
   {
      const LogHessianBatch batch = log_hessian_batch(Grid(spec), count, q_list, seed + spec.dim);
      ok = ok && batch.failures == 0;
      out << json{{"check", "log_hessian"},     {"dim", spec.dim},
                  {"fields", count},            {"checks", batch.checks},
                  {"failures", batch.failures}, {"max_ratio1", batch.max_ratio1},
                  {"max_ratio2", batch.max_ratio2}, {"pass", batch.failures == 0}}
                 .dump()
          << '\n';
   }

   const struct
   {
      GridSpec grid;
      int N;
   } sobolev_cases[] = {{GridSpec{1, {64, 1, 1}, {1, 1, 1}}, 3}, {GridSpec{2, {32, 32, 1}, {1, 1, 1}}, 3}};
   for (const auto& c : sobolev_cases)
   {
      const SobolevBatch batch = sobolev_batch(c.grid, count, 1.0, 3.0, c.N, seed + 10 + c.grid.dim);
      const bool pass = std::isfinite(batch.max_ratio_fine) && batch.relative_change <= 0.02;
      ok = ok && pass;
      out << json{{"check", "sobolev_product"},
                  {"dim", c.grid.dim},
                  {"N", c.N},
                  {"p", 1.0},
                  {"mu", 3.0},
                  {"pairs", batch.count},
                  {"max_ratio_coarse", batch.max_ratio_coarse},
                  {"max_ratio_fine", batch.max_ratio_fine},
                  {"relative_change", batch.relative_change},
                  {"pass", pass}}
                 .dump()
          << '\n';
   }
   return ok ? 0 : 1;
}

void cmd_exponents(SequenceKind kind, double start, double alpha, int count, std::ostream& out)
{
   std::vector<exponents::ExponentTriple> seq;
   switch (kind)
   {
   case SequenceKind::moderate:
      out << "k,m,p,r\n";
      seq = exponents::moderate_seq(start, alpha, count);
      break;
   case SequenceKind::moderate_hat:
      out << "k,mhat,phat,rhat\n";
      seq = exponents::moderate_seq_hat(start, alpha, count);
      break;
   case SequenceKind::strong:
      out << "k,q,p,r\n";
      seq = exponents::strong_seq(start, alpha, count);
      break;
   }
   for (const auto& e : seq)
   {
      out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", e.k, e.first, e.p, e.r);
   }
}

int cmd_verify_exponents(std::size_t samples, std::uint64_t seed, int iterations, std::ostream& out)
{
   using nlohmann::json;
   const exponents::VerifyReport r = exponents::verify_regime_lemmas(samples, seed, iterations);
   out << json{{"check", "exponent_lemmas"},
               {"seed", seed},
               {"iterations", iterations},
               {"moderate_samples", r.moderate_samples},
               {"moderate_hat_samples", r.moderate_hat_samples},
               {"strong_samples", r.strong_samples},
               {"boundary_cases", r.boundary_cases},
               {"r0_zero_cases", r.r0_zero_cases},
               {"violations", r.violations.size()},
               {"pass", r.ok()}}
              .dump()
       << '\n';
   for (const auto& v : r.violations)
   {
      out << json{{"violation", v.property}, {"regime", v.regime}, {"alpha", v.alpha},
                  {"start", v.seed},         {"k", v.k},           {"detail", v.detail}}
                 .dump()
          << '\n';
   }
   return r.ok() ? 0 : 1;
}

} // namespace ntaxis
