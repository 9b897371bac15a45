#include "ntaxis/functionals.hpp"

#include <cmath>

namespace ntaxis {

double weighted_integral(const Field& w, const Field& f)
{
   require_same_grid(w.grid(), f.grid());
   double sum = 0.0;
   for (std::size_t i = 0; i < f.size(); ++i)
   {
      sum += w[i] * f[i];
   }
   return sum * f.grid().cell_volume();
}

double face_weighted_product(const Field& w, const FaceData& a, const FaceData& b)
{
   const Grid& g = w.grid();
   require_same_grid(g, a.grid());
   require_same_grid(g, b.grid());
   double sum = 0.0;
   for (int ax = 0; ax < g.dim(); ++ax)
   {
      const auto fa = a.along(ax);
      const auto fb = b.along(ax);
      const std::size_t s = g.stride(ax);
      g.for_each_face(ax, [&](std::size_t face, std::size_t l) {
         sum += 0.5 * (w[l] + w[l + s]) * fa[face] * fb[face];
      });
   }
   return sum * g.cell_volume();
}

Field hessian_sq(const Field& f)
{
   const Grid& g = f.grid();
   Field out(g);
   std::vector<Field> first;
   for (int a = 0; a < g.dim(); ++a)
   {
      const Field d2 = second_difference(f, a);
      for (std::size_t i = 0; i < out.size(); ++i)
      {
         out[i] += d2[i] * d2[i];
      }
      first.push_back(cell_derivative(f, a));
   }
   for (int a = 0; a < g.dim(); ++a)
   {
      for (int b = a + 1; b < g.dim(); ++b)
      {
         const Field mixed = cell_derivative(first[a], b);
         for (std::size_t i = 0; i < out.size(); ++i)
         {
            out[i] += 2.0 * mixed[i] * mixed[i];
         }
      }
   }
   return out;
}

double entropy_integral(const Field& u)
{
   double sum = 0.0;
   for (double x : u.values())
   {
      if (x > 0.0)
      {
         sum += x * std::log(x);
      }
   }
   return sum * u.grid().cell_volume();
}

Accumulators accumulator_rates(const State& state, const Params& params)
{
   const Field& u = state.u;
   const Field& v = state.v;
   const Field gu2 = cell_grad_sq(u);
   const Field gv2 = cell_grad_sq(v);
   const Field lap = laplacian_neumann(v);

   Accumulators r{};
   for (std::size_t i = 0; i < u.size(); ++i)
   {
      const double ui = u[i];
      const double vi = v[i];
      const double g2 = gv2[i];
      at(r, Accumulator::uv) += ui * vi;
      at(r, Accumulator::v_gradu2) += vi * gu2[i];
      at(r, Accumulator::u_gradv2) += ui * g2;
      at(r, Accumulator::lapv2) += lap[i] * lap[i];
      at(r, Accumulator::u1ma_v_gradu2) += std::pow(ui, 1.0 - params.alpha) * vi * gu2[i];
      at(r, Accumulator::v_over_u_gradu2) += vi / ui * gu2[i];
      at(r, Accumulator::u_over_v_gradv2) += ui / vi * g2;
      at(r, Accumulator::u_gradv4_over_v3) += ui * g2 * g2 / (vi * vi * vi);
      at(r, Accumulator::gradv6_over_v5) += g2 * g2 * g2 / std::pow(vi, 5);
      at(r, Accumulator::u73_v) += std::pow(ui, 7.0 / 3.0) * vi;
   }
   for (double& x : r)
   {
      x *= u.grid().cell_volume();
   }
   return r;
}

} // namespace ntaxis
