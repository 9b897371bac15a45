#include "ntaxis/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "ntaxis/error.hpp"
#include "ntaxis/snapshot.hpp"

namespace ntaxis {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "dim",      "cells",         "lengths",        "alpha",       "chi",     "ell",
    "epsilon",  "cfl_safety",    "face_mean",      "initial",     "u_base",  "u_amp",
    "width",    "center",        "v_base",         "v_amp",       "snapshot", "t_end",
    "dt_max",   "fixed_dt",      "max_rejects",    "monitor_every", "snapshot_every",
    "residual_every", "p_list",  "output",         "seed",
};

constexpr std::string_view kRequired[] = {"alpha", "epsilon", "cells", "t_end"};

std::string_view trim(std::string_view s)
{
   const auto first = s.find_first_not_of(" \t\r");
   if (first == std::string_view::npos)
   {
      return {};
   }
   const auto last = s.find_last_not_of(" \t\r");
   return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
   std::vector<std::string_view> out;
   std::size_t start = 0;
   while (true)
   {
      const auto pos = s.find(sep, start);
      out.push_back(trim(s.substr(start, pos - start)));
      if (pos == std::string_view::npos)
      {
         return out;
      }
      start = pos + 1;
   }
}

class Entries
{
public:
   explicit Entries(std::map<std::string, std::string, std::less<>> kv) : kv_(std::move(kv)) {}

   bool has(std::string_view key) const { return kv_.find(key) != kv_.end(); }

   const std::string& raw(std::string_view key) const { return kv_.find(key)->second; }

   [[noreturn]] static void invalid(std::string_view key)
   {
      throw Error(fmt::format("invalid value for {}", key));
   }

   template <class T>
   static T parse_number(std::string_view key, std::string_view text)
   {
      T value{};
      const auto* end = text.data() + text.size();
      const auto [ptr, ec] = std::from_chars(text.data(), end, value);
      if (text.empty() || ec != std::errc{} || ptr != end)
      {
         invalid(key);
      }
      return value;
   }

   template <class T>
   T number(std::string_view key, T fallback) const
   {
      return has(key) ? parse_number<T>(key, raw(key)) : fallback;
   }

   double real(std::string_view key, double fallback) const
   {
      if (!has(key))
      {
         return fallback;
      }
      const std::string& text = raw(key);
      if (text == "inf")
      {
         return std::numeric_limits<double>::infinity();
      }
      return parse_number<double>(key, text);
   }

   bool boolean(std::string_view key, bool fallback) const
   {
      if (!has(key))
      {
         return fallback;
      }
      const std::string& text = raw(key);
      if (text == "true" || text == "1")
      {
         return true;
      }
      if (text == "false" || text == "0")
      {
         return false;
      }
      invalid(key);
   }

   template <class T>
   std::vector<T> list(std::string_view key) const
   {
      std::vector<T> out;
      if (!has(key) || trim(raw(key)).empty())
      {
         return out;
      }
      for (std::string_view item : split(raw(key), ','))
      {
         out.push_back(parse_number<T>(key, item));
      }
      return out;
   }

   /// Axis list broadcast to `dim` entries.
   template <class T>
   std::array<T, 3> axes(std::string_view key, int dim, T fallback) const
   {
      std::array<T, 3> out{fallback, fallback, fallback};
      if (!has(key))
      {
         return out;
      }
      const std::vector<T> items = list<T>(key);
      if (items.size() == 1)
      {
         for (int a = 0; a < dim; ++a)
         {
            out[a] = items[0];
         }
      }
      else if (items.size() == static_cast<std::size_t>(dim))
      {
         std::copy(items.begin(), items.end(), out.begin());
      }
      else
      {
         invalid(key);
      }
      return out;
   }

private:
   std::map<std::string, std::string, std::less<>> kv_;
};

} // namespace

RunConfig parse_config(std::string_view text)
{
   std::map<std::string, std::string, std::less<>> kv;
   std::istringstream in{std::string(text)};
   std::string line;
   int lineno = 0;
   while (std::getline(in, line))
   {
      ++lineno;
      std::string_view body = line;
      if (const auto hash = body.find('#'); hash != std::string_view::npos)
      {
         body = body.substr(0, hash);
      }
      body = trim(body);
      if (body.empty())
      {
         continue;
      }
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
      {
         throw Error(fmt::format("line {}: expected key = value", lineno));
      }
      const std::string key(trim(body.substr(0, eq)));
      if (!kKnownKeys.contains(key))
      {
         throw Error(fmt::format("unknown key {}", key));
      }
      if (kv.contains(key))
      {
         throw Error(fmt::format("duplicate key {}", key));
      }
      kv.emplace(key, std::string(trim(body.substr(eq + 1))));
   }
   for (std::string_view key : kRequired)
   {
      if (!kv.contains(key))
      {
         throw Error(fmt::format("missing key {}", key));
      }
   }

   const Entries e(std::move(kv));
   RunConfig c;

   c.grid.dim = e.number<int>("dim", 1);
   if (c.grid.dim < 1 || c.grid.dim > 3)
   {
      Entries::invalid("dim");
   }
   c.grid.cells = e.axes<int>("cells", c.grid.dim, 1);
   c.grid.lengths = e.axes<double>("lengths", c.grid.dim, 1.0);

   c.params.alpha = e.real("alpha", 1.0);
   c.params.chi = e.real("chi", 1.0);
   c.params.ell = e.real("ell", 0.0);
   c.params.epsilon = e.real("epsilon", 0.01);
   c.params.cfl_safety = e.real("cfl_safety", 0.9);
   if (e.has("face_mean"))
   {
      const std::string& mode = e.raw("face_mean");
      if (mode == "geometric")
      {
         c.params.avg_mode = FaceMean::geometric;
      }
      else if (mode == "arithmetic")
      {
         c.params.avg_mode = FaceMean::arithmetic;
      }
      else
      {
         Entries::invalid("face_mean");
      }
   }

   InitialData& init = c.initial;
   if (e.has("initial"))
   {
      const std::string& kind = e.raw("initial");
      if (kind == "constant")
      {
         init.kind = InitialKind::constant;
      }
      else if (kind == "gaussian_bump")
      {
         init.kind = InitialKind::gaussian_bump;
      }
      else if (kind == "cosine_mix")
      {
         init.kind = InitialKind::cosine_mix;
      }
      else if (kind == "snapshot")
      {
         init.kind = InitialKind::from_snapshot;
      }
      else
      {
         Entries::invalid("initial");
      }
   }
   init.u_base = e.real("u_base", init.u_base);
   init.u_amp = e.real("u_amp", init.u_amp);
   init.width = e.real("width", init.width);
   init.center = e.axes<double>("center", c.grid.dim, 0.5);
   init.v_base = e.real("v_base", init.v_base);
   init.v_amp = e.real("v_amp", init.v_amp);
   if (!(init.width > 0.0))
   {
      Entries::invalid("width");
   }
   if (e.has("snapshot"))
   {
      c.snapshot_path = e.raw("snapshot");
   }
   if (init.kind == InitialKind::from_snapshot && c.snapshot_path.empty())
   {
      throw Error("missing key snapshot");
   }

   StepControl& ctl = c.control;
   ctl.t_end = e.real("t_end", 1.0);
   ctl.dt_max = e.real("dt_max", ctl.dt_max);
   ctl.fixed_dt = e.boolean("fixed_dt", false);
   ctl.max_rejects = e.number<int>("max_rejects", ctl.max_rejects);
   ctl.monitor_every = e.real("monitor_every", 0.0);
   ctl.snapshot_every = e.real("snapshot_every", 0.0);
   ctl.p_list = e.list<double>("p_list");
   for (double p : ctl.p_list)
   {
      if (!(p > 0.0))
      {
         Entries::invalid("p_list");
      }
   }
   c.residual_every = e.number<int>("residual_every", c.residual_every);
   if (c.residual_every < 0)
   {
      Entries::invalid("residual_every");
   }
   if (e.has("output"))
   {
      if (e.raw("output").empty())
      {
         Entries::invalid("output");
      }
      c.output_dir = e.raw("output");
   }
   c.seed = e.number<std::uint64_t>("seed", 0);

   // Component validation with their own messages.
   const Grid grid(c.grid);
   c.grid = grid.spec();
   c.params.validate();
   ctl.validate();
   return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
   std::ifstream in(path);
   if (!in)
   {
      throw Error(fmt::format("cannot read config {}", path.string()));
   }
   std::ostringstream text;
   text << in.rdbuf();
   return parse_config(text.str());
}

State initial_state(const RunConfig& config)
{
   const Grid grid(config.grid);
   if (config.initial.kind != InitialKind::from_snapshot)
   {
      return build_initial(grid, config.initial, config.params);
   }
   const Snapshot snap = load_snapshot(config.snapshot_path);
   require_snapshot_grid(snap, grid);
   InitialData data = config.initial;
   data.snapshot_u = snap.u;
   data.snapshot_v = snap.v;
   return build_initial(grid, data, config.params);
}

} // namespace ntaxis
