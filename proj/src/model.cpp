#include "ntaxis/model.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "ntaxis/error.hpp"

namespace ntaxis {

void Params::validate() const
{
   if (!(alpha >= 0.0 && alpha < 2.0))
   {
      throw Error(fmt::format("alpha must satisfy 0 <= alpha < 2 (got {})", alpha));
   }
   if (!(chi > 0.0) || !std::isfinite(chi))
   {
      throw Error(fmt::format("chi must be positive (got {})", chi));
   }
   if (!(ell >= 0.0) || !std::isfinite(ell))
   {
      throw Error(fmt::format("ell must be nonnegative (got {})", ell));
   }
   if (!(epsilon > 0.0 && epsilon < 1.0))
   {
      throw Error(fmt::format("epsilon must lie in (0, 1) (got {})", epsilon));
   }
   if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
   {
      throw Error(fmt::format("cfl_safety must lie in (0, 1] (got {})", cfl_safety));
   }
}

State::State(Field u_, Field v_) : u(std::move(u_)), v(std::move(v_))
{
   require_same_grid(u.grid(), v.grid());
}

namespace {

double mean_cos(const Grid& g, const Point& x, double modes)
{
   double s = 0.0;
   for (int a = 0; a < g.dim(); ++a)
   {
      s += std::cos(modes * std::numbers::pi * x[a] / g.length(a));
   }
   return s / g.dim();
}

// Gaussian on [0, L] plus its images under reflection at both walls; the
// image sum is truncated after two periods, far below double precision for
// widths up to L/4.
double mirrored_gaussian(double x, double c, double w, double L)
{
   double s = 0.0;
   for (int k = -2; k <= 2; ++k)
   {
      const double shift = 2.0 * k * L;
      const double d1 = x - c + shift;
      const double d2 = x + c + shift;
      s += std::exp(-d1 * d1 / (2.0 * w * w)) + std::exp(-d2 * d2 / (2.0 * w * w));
   }
   return s;
}

} // namespace

State build_initial(const Grid& grid, const InitialData& data, const Params& params)
{
   params.validate();

   Field u0(grid);
   Field v0(grid);
   switch (data.kind)
   {
   case InitialKind::constant:
      u0 = Field(grid, data.u_base);
      v0 = Field(grid, data.v_base);
      break;
   case InitialKind::gaussian_bump:
      if (!(data.width > 0.0))
      {
         throw Error("bump width must be positive");
      }
      u0 = Field::from_function(grid, [&](const Point& x) {
         double g = 1.0;
         for (int a = 0; a < grid.dim(); ++a)
         {
            g *= mirrored_gaussian(x[a], data.center[a] * grid.length(a), data.width,
                                   grid.length(a));
         }
         return data.u_base + data.u_amp * g;
      });
      v0 = Field::from_function(
          grid, [&](const Point& x) { return data.v_base + data.v_amp * mean_cos(grid, x, 1.0); });
      break;
   case InitialKind::cosine_mix:
      u0 = Field::from_function(
          grid, [&](const Point& x) { return data.u_base + data.u_amp * mean_cos(grid, x, 2.0); });
      v0 = Field::from_function(
          grid, [&](const Point& x) { return data.v_base + data.v_amp * mean_cos(grid, x, 1.0); });
      break;
   case InitialKind::from_snapshot:
      u0 = Field(grid, data.snapshot_u);
      v0 = Field(grid, data.snapshot_v);
      break;
   }

   if (!u0.all_finite() || !v0.all_finite())
   {
      throw Error("initial data must be finite");
   }
   if (!u0.is_nonnegative())
   {
      throw Error("u0 must be nonnegative");
   }
   if (!(v0.min() > 0.0))
   {
      throw Error("initial v must be strictly positive");
   }

   Field u = map(u0, [eps = params.epsilon](double x) { return x + eps; });
   State s(std::move(u), v0);
   s.t = 0.0;
   s.acc.fill(0.0);
   s.mass_bound = integrate(u0) + grid.volume() + params.ell * integrate(v0);
   return s;
}

namespace {

FaceData mean_of_cells(const Grid& g, const std::vector<double>& cell, FaceMean mode)
{
   return face_mean(Field(g, cell), mode);
}

} // namespace

FaceData face_diffusivity(const Field& u, const Field& v, FaceMean mode)
{
   require_same_grid(u.grid(), v.grid());
   std::vector<double> uv(u.size());
   for (std::size_t i = 0; i < u.size(); ++i)
   {
      uv[i] = u[i] * v[i];
   }
   return mean_of_cells(u.grid(), uv, mode);
}

FaceData face_taxis_coefficient(const Field& u, const Field& v, double alpha, FaceMean mode)
{
   require_same_grid(u.grid(), v.grid());
   std::vector<double> c(u.size());
   for (std::size_t i = 0; i < u.size(); ++i)
   {
      c[i] = std::pow(u[i], alpha) * v[i];
   }
   return mean_of_cells(u.grid(), c, mode);
}

Rhs assemble_rhs(const State& state, const Params& params)
{
   const Grid& g = state.u.grid();
   const Field& u = state.u;
   const Field& v = state.v;
   const std::size_t n = g.size();

   std::vector<double> uv(n);
   std::vector<double> taxis(n);
   for (std::size_t i = 0; i < n; ++i)
   {
      uv[i] = u[i] * v[i];
      taxis[i] = std::pow(u[i], params.alpha) * v[i];
   }

   const bool geometric = params.avg_mode == FaceMean::geometric;
   auto mean = [geometric](double a, double b) {
      return geometric ? std::sqrt(a * b) : 0.5 * (a + b);
   };

   Rhs rhs{Field(g), Field(g)};
   Field& du = rhs.du;
   Field& dv = rhs.dv;
   for (int a = 0; a < g.dim(); ++a)
   {
      const std::size_t s = g.stride(a);
      const double inv_h = 1.0 / g.h(a);
      g.for_each_face(a, [&](std::size_t, std::size_t l) {
         const std::size_t r = l + s;
         const double gu = (u[r] - u[l]) * inv_h;
         const double gv = (v[r] - v[l]) * inv_h;
         const double flux_u =
             (mean(uv[l], uv[r]) * gu - params.chi * mean(taxis[l], taxis[r]) * gv) * inv_h;
         const double flux_v = gv * inv_h;
         du[l] += flux_u;
         du[r] -= flux_u;
         dv[l] += flux_v;
         dv[r] -= flux_v;
      });
   }
   for (std::size_t i = 0; i < n; ++i)
   {
      du[i] += params.ell * uv[i];
      dv[i] -= uv[i];
      if (!std::isfinite(du[i]) || !std::isfinite(dv[i]))
      {
         throw BlowUp(fmt::format("rhs overflow at cell {}", i));
      }
   }
   return rhs;
}

} // namespace ntaxis
