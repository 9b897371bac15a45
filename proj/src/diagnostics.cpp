#include "ntaxis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <fmt/format.h>

#include "ntaxis/error.hpp"
#include "ntaxis/functionals.hpp"

namespace ntaxis {

std::vector<std::string> MonitorRow::names() const
{
   std::vector<std::string> n = {"t",     "mass_u", "mass_v", "total_mass",
                                 "sup_v", "inf_v",  "sup_u"};
   for (double p : lp_p)
   {
      n.push_back(fmt::format("lp_norm_{}", p));
   }
   for (const char* s : {"log_energy", "grad4_energy", "grad2_over_v", "combined_flux_energy"})
   {
      n.emplace_back(s);
   }
   for (auto name : kAccumulatorNames)
   {
      n.emplace_back(name);
   }
   return n;
}

std::vector<double> MonitorRow::values() const
{
   std::vector<double> v = {t, mass_u, mass_v, total_mass, sup_v, inf_v, sup_u};
   v.insert(v.end(), lp_norms.begin(), lp_norms.end());
   v.insert(v.end(), {log_energy, grad4_energy, grad2_over_v, combined_flux_energy});
   v.insert(v.end(), acc.begin(), acc.end());
   return v;
}

bool MonitorRow::all_finite() const
{
   const auto v = values();
   return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string csv_header(const MonitorRow& row) { return fmt::format("{}", fmt::join(row.names(), ",")); }

std::string csv_line(const MonitorRow& row)
{
   std::string out;
   bool first = true;
   for (double x : row.values())
   {
      if (!first)
      {
         out += ',';
      }
      first = false;
      out += fmt::format("{:.17g}", x);
   }
   return out;
}

MonitorRow monitor_row(const State& state, const Params& params, std::span<const double> p_list)
{
   const Field& u = state.u;
   const Field& v = state.v;
   MonitorRow row;
   row.t = state.t;
   row.inf_v = v.min();
   if (!(row.inf_v > 0.0))
   {
      throw Error("v positivity lost");
   }
   row.mass_u = integrate(u);
   row.mass_v = integrate(v);
   row.total_mass = row.mass_u + params.ell * row.mass_v;
   row.sup_v = v.max();
   row.sup_u = u.max();
   for (double p : p_list)
   {
      row.lp_p.push_back(p);
      row.lp_norms.push_back(lp_norm(u, p));
   }
   row.log_energy = entropy_integral(u);

   const Field gv2 = cell_grad_sq(v);
   const double a = params.alpha;
   const double k = 1.0 / ((2.0 - a) * (3.0 - a));
   double g4 = 0.0;
   double g2 = 0.0;
   double flux_energy = 0.0;
   for (std::size_t i = 0; i < u.size(); ++i)
   {
      g4 += gv2[i] * gv2[i] / (v[i] * v[i] * v[i]);
      g2 += gv2[i] / v[i];
      flux_energy += k * std::pow(u[i], 3.0 - a) - u[i] * v[i];
   }
   const double cv = u.grid().cell_volume();
   row.grad4_energy = g4 * cv;
   row.grad2_over_v = g2 * cv;
   row.combined_flux_energy = flux_energy * cv;
   row.acc = state.acc;
   return row;
}

// ---------------------------------------------------------------------------

namespace {

double step_dt(const State& prev, const State& next)
{
   require_same_grid(prev.u.grid(), next.u.grid());
   const double dt = next.t - prev.t;
   if (!(dt > 0.0))
   {
      throw Error("residual needs two states with increasing time");
   }
   return dt;
}

double normalizer(std::initializer_list<double> terms)
{
   double m = 1.0;
   for (double x : terms)
   {
      m = std::max(m, std::abs(x));
   }
   return m;
}

// sum_i f(u_i, v_i) * cellvol
template <class F>
double cell_sum(const State& s, F&& f)
{
   double sum = 0.0;
   for (std::size_t i = 0; i < s.u.size(); ++i)
   {
      sum += f(s.u[i], s.v[i]);
   }
   return sum * s.u.grid().cell_volume();
}

// Forward difference of sum_i f(u_i, v_i) * cellvol, taken cell by cell so
// the large totals never cancel against each other.
template <class F>
double cell_rate(const State& prev, const State& next, double dt, F&& f)
{
   double sum = 0.0;
   for (std::size_t i = 0; i < prev.u.size(); ++i)
   {
      sum += f(next.u[i], next.v[i]) - f(prev.u[i], prev.v[i]);
   }
   return sum * prev.u.grid().cell_volume() / dt;
}

template <class F>
Field cell_weight(const State& s, F&& f)
{
   Field w(s.u.grid());
   for (std::size_t i = 0; i < s.u.size(); ++i)
   {
      w[i] = f(s.u[i], s.v[i]);
   }
   return w;
}

ResidualReport make_report(std::string name, const State& prev, double dt, double lhs, double rhs,
                           double norm)
{
   ResidualReport r;
   r.name = std::move(name);
   r.t0 = prev.t;
   r.dt = dt;
   r.lhs = lhs;
   r.rhs = rhs;
   r.residual = lhs - rhs;
   r.normalizer = norm;
   return r;
}

} // namespace

ResidualReport residual_v_energy(const State& prev, const State& next, const Params&)
{
   const double dt = step_dt(prev, next);
   auto energy = [](const State& s) {
      const FaceData g = face_gradient(s.v);
      return 0.5 * face_weighted_product(Field(s.v.grid(), 1.0), g, g);
   };
   const double rate = (energy(next) - energy(prev)) / dt;

   const FaceData gu = face_gradient(prev.u);
   const FaceData gv = face_gradient(prev.v);
   const Field lap = laplacian_neumann(prev.v);
   const double lap2 = weighted_integral(lap, lap);
   const double u_gv2 = face_weighted_product(prev.u, gv, gv);
   const double mixed = face_weighted_product(prev.v, gu, gv);

   const double lhs = rate + lap2 + u_gv2;
   const double rhs = -mixed;
   return make_report("v_energy", prev, dt, lhs, rhs, normalizer({rate, lap2, u_gv2, mixed}));
}

ResidualReport residual_vq_identity(const State& prev, const State& next, double q,
                                    const Params&)
{
   if (!(q > 1.0))
   {
      throw Error("vq identity needs q > 1");
   }
   const double dt = step_dt(prev, next);
   const double rate = cell_rate(prev, next, dt, [q](double, double v) { return std::pow(v, q); }) / q;

   const FaceData gv = face_gradient(prev.v);
   const Field w = cell_weight(prev, [q](double, double v) { return std::pow(v, q - 2.0); });
   const double diffusion = (q - 1.0) * face_weighted_product(w, gv, gv);
   const double consumption = cell_sum(prev, [q](double u, double v) { return u * std::pow(v, q); });

   const double rhs = -diffusion - consumption;
   return make_report(fmt::format("vq_identity(q={})", q), prev, dt, rate, rhs,
                      normalizer({rate, diffusion, consumption}));
}

ResidualReport residual_upvq_identity(const State& prev, const State& next, double p, double q,
                                      const Params& params)
{
   const double dt = step_dt(prev, next);
   const double rate =
       cell_rate(prev, next, dt, [p, q](double u, double v) { return std::pow(u, p) * std::pow(v, q); });

   const double a = params.alpha;
   const double chi = params.chi;
   const FaceData gu = face_gradient(prev.u);
   const FaceData gv = face_gradient(prev.v);
   auto weight = [&](double eu, double ev) {
      return cell_weight(prev, [eu, ev](double u, double v) { return std::pow(u, eu) * std::pow(v, ev); });
   };

   // u-equation: diffusion, taxis, growth
   const double t1 = p * (1.0 - p) * face_weighted_product(weight(p - 1.0, q + 1.0), gu, gu);
   const double t2 = chi * p * q * face_weighted_product(weight(p - 1.0 + a, q), gv, gv);
   const double t3 =
       p * params.ell * cell_sum(prev, [p, q](double u, double v) { return std::pow(u, p) * std::pow(v, q + 1.0); });
   const double t4 = -chi * p * (1.0 - p) * face_weighted_product(weight(p - 2.0 + a, q + 1.0), gu, gv);
   const double t5 = -p * q * face_weighted_product(weight(p, q), gu, gv);
   // v-equation: diffusion and consumption
   const double t6 = -p * q * face_weighted_product(weight(p - 1.0, q - 1.0), gu, gv);
   const double t7 = -q * (q - 1.0) * face_weighted_product(weight(p, q - 2.0), gv, gv);
   const double t8 =
       -q * cell_sum(prev, [p, q](double u, double v) { return std::pow(u, p + 1.0) * std::pow(v, q); });

   const double rhs = t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8;
   return make_report(fmt::format("upvq_identity(p={},q={})", p, q), prev, dt, rate, rhs,
                      normalizer({rate, t1, t2, t3, t4, t5, t6, t7, t8}));
}

FirstEnergyReport check_first_energy(const State& prev, const State& next, const Params& params)
{
   const double a = params.alpha;
   if (!(a < 2.0))
   {
      throw Error("first energy needs alpha < 2");
   }
   const double chi = params.chi;
   const double dt = step_dt(prev, next);
   const double k = 1.0 / ((2.0 - a) * (3.0 - a));
   const double rate =
       cell_rate(prev, next, dt, [&](double u, double v) { return k * std::pow(u, 3.0 - a) - chi * u * v; });

   const FaceData gu = face_gradient(prev.u);
   const FaceData gv = face_gradient(prev.v);
   const double cross = face_weighted_product(Field(prev.u.grid(), 1.0), gu, gv);
   const double growth =
       params.ell / (2.0 - a) * cell_sum(prev, [a](double u, double v) { return std::pow(u, 3.0 - a) * v; });
   const double quadratic = cell_sum(prev, [](double u, double v) { return u * u * v; });
   const double consumption = params.ell * cell_sum(prev, [](double u, double v) { return u * v * v; });

   // Dissipation int u^a v |grad w|^2 with w = u^(2-a)/(2-a) - chi v, using
   // the same face coefficient as the taxis flux.
   const Field w = cell_weight(prev, [&](double u, double v) {
      return std::pow(u, 2.0 - a) / (2.0 - a) - chi * v;
   });
   const FaceData gw = face_gradient(w);
   const FaceData coef = face_taxis_coefficient(prev.u, prev.v, a, params.avg_mode);
   const double dissipation =
       face_quadrature(zip(coef, gw, [](double c, double g) { return c * g * g; }));

   FirstEnergyReport r;
   r.lhs_rate = rate;
   r.rhs_inequality = growth + chi * cross + chi * quadratic;
   r.slack = r.rhs_inequality - rate;
   const double rhs_eq = -dissipation + growth - chi * consumption + chi * cross + chi * quadratic;
   r.identity = make_report("first_energy", prev, dt, rate, rhs_eq,
                            normalizer({rate, dissipation, growth, consumption, cross, quadratic}));
   return r;
}

// ---------------------------------------------------------------------------

Struc2Sample struc2_sample(const State& prev, const State& next, const Params& params)
{
   const double dt = step_dt(prev, next);
   const double a = params.alpha;
   auto log_energy = [](const State& s) { return entropy_integral(s.u) - integrate(s.u); };
   auto grad4 = [](const State& s) {
      const Field g2 = cell_grad_sq(s.v);
      double sum = 0.0;
      for (std::size_t i = 0; i < g2.size(); ++i)
      {
         sum += g2[i] * g2[i] / std::pow(s.v[i], 3);
      }
      return sum * s.v.grid().cell_volume();
   };

   const Field gu2 = cell_grad_sq(prev.u);
   const Field gv2 = cell_grad_sq(prev.v);
   const Field hess = hessian_sq(map(prev.v, [](double x) { return std::log(x); }));

   Struc2Sample s;
   s.t = prev.t;
   s.dt = dt;
   s.log_rate = (log_energy(next) - log_energy(prev)) / dt;
   s.grad4_rate = (grad4(next) - grad4(prev)) / dt;
   double hterm = 0.0, u4 = 0.0, vgu = 0.0, taxis = 0.0, growth = 0.0;
   for (std::size_t i = 0; i < prev.u.size(); ++i)
   {
      const double u = prev.u[i];
      const double v = prev.v[i];
      hterm += gv2[i] / v * hess[i];
      u4 += u * gv2[i] * gv2[i] / (v * v * v);
      vgu += v * gu2[i];
      taxis += std::pow(u, 2.0 * a - 2.0) * v * gv2[i];
      growth += u > 0.0 ? u * v * std::log(u) : 0.0;
   }
   const double cv = prev.u.grid().cell_volume();
   s.hessian_term = hterm * cv;
   s.u_grad4 = u4 * cv;
   s.v_gradu2 = vgu * cv;
   s.taxis_term = taxis * cv;
   s.growth_term = growth * cv;
   return s;
}

Struc2Report check_struc2_balance(std::span<const Struc2Sample> window, const Params& params)
{
   if (!(params.alpha > 1.0))
   {
      throw Error("the log / gradient balance is only tracked for alpha > 1");
   }
   constexpr double tiny = 1e-14;
   Struc2Report r;
   r.steps = window.size();

   // Smallest C0 in  d/dt G + 2 H + U <= C0 int v |grad u|^2.
   double c0 = 0.0;
   for (const auto& s : window)
   {
      const double lhs = s.grad4_rate + 2.0 * s.hessian_term + s.u_grad4;
      if (s.v_gradu2 > tiny)
      {
         c0 = std::max(c0, lhs / s.v_gradu2);
      }
      else if (lhs > tiny)
      {
         ++r.violations;
      }
   }
   r.c0 = c0;

   double c = 0.0;
   for (const auto& s : window)
   {
      const double lhs = 4.0 * c0 * s.log_rate + s.grad4_rate + c0 * s.v_gradu2 +
                         2.0 * s.hessian_term + s.u_grad4;
      const double rhs = s.taxis_term + s.growth_term;
      if (rhs > tiny)
      {
         c = std::max(c, lhs / rhs);
      }
      else if (lhs > tiny)
      {
         ++r.violations;
      }
   }
   r.c = c;
   return r;
}

} // namespace ntaxis
