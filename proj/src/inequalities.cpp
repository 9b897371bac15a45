#include "ntaxis/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "ntaxis/error.hpp"
#include "ntaxis/functionals.hpp"

namespace ntaxis {

namespace {

void require_positive(const Field& f, const char* name)
{
   if (!f.is_positive())
   {
      throw Error(fmt::format("{} must be strictly positive", name));
   }
}

double cell_sum(const Grid& g, const std::function<double(std::size_t)>& term)
{
   double sum = 0.0;
   for (std::size_t i = 0; i < g.size(); ++i)
   {
      sum += term(i);
   }
   return sum * g.cell_volume();
}

} // namespace

SobolevProductReport check_sobolev_product(const Field& phi, const Field& psi, double p,
                                           double mu, int N)
{
   require_same_grid(phi.grid(), psi.grid());
   require_positive(phi, "phi");
   require_positive(psi, "psi");
   if (N < 1)
   {
      throw Error("dimension N must be at least 1");
   }
   const double mu_max = N >= 3 ? static_cast<double>(N) / (N - 2) : std::numeric_limits<double>::infinity();
   if (!(mu >= 1.0 && mu <= mu_max))
   {
      throw Error(fmt::format("mu = {} outside [1, {}] for N = {}", mu, mu_max, N));
   }

   const Grid& g = phi.grid();
   const Field gphi = cell_grad_sq(phi);
   const Field gpsi = cell_grad_sq(psi);

   SobolevProductReport r;
   const double lhs_int = cell_sum(g, [&](std::size_t i) {
      return std::pow(std::pow(phi[i], p + 1.0) * psi[i], mu);
   });
   r.lhs = std::pow(lhs_int, 1.0 / mu);
   r.grad_phi = cell_sum(g, [&](std::size_t i) { return std::pow(phi[i], p - 1.0) * psi[i] * gphi[i]; });
   r.grad_psi = cell_sum(g, [&](std::size_t i) { return std::pow(phi[i], p + 1.0) / psi[i] * gpsi[i]; });
   r.zero_order = cell_sum(g, [&](std::size_t i) { return std::pow(phi[i], p + 1.0) * psi[i]; });
   r.rhs_amended = r.grad_phi + r.grad_psi + r.zero_order;
   r.ratio = r.lhs / r.rhs_amended;
   return r;
}

LogHessianReport check_log_hessian(const Field& phi, double q)
{
   require_positive(phi, "phi");
   if (!(q >= 2.0))
   {
      throw Error(fmt::format("log-Hessian inequalities need q >= 2 (got {})", q));
   }
   const Grid& g = phi.grid();
   const Field grad2 = cell_grad_sq(phi);
   const Field hess_log = hessian_sq(map(phi, [](double x) { return std::log(x); }));
   const Field hess = hessian_sq(phi);

   auto grad_pow = [&](std::size_t i, double e) { return e == 0.0 ? 1.0 : std::pow(grad2[i], 0.5 * e); };

   LogHessianReport r;
   r.q = q;
   const double root_n = std::sqrt(static_cast<double>(g.dim()));
   r.const1 = (q + root_n) * (q + root_n);
   r.const2 = (q + root_n + 1.0) * (q + root_n + 1.0);
   r.lhs1 = cell_sum(g, [&](std::size_t i) { return std::pow(phi[i], -q - 1.0) * grad_pow(i, q + 2.0); });
   r.rhs1 = cell_sum(g, [&](std::size_t i) {
      return std::pow(phi[i], 3.0 - q) * grad_pow(i, q - 2.0) * hess_log[i];
   });
   r.lhs2 = cell_sum(g, [&](std::size_t i) {
      return std::pow(phi[i], 1.0 - q) * grad_pow(i, q - 2.0) * hess[i];
   });
   r.rhs2 = r.rhs1;
   return r;
}

// ---------------------------------------------------------------------------

CosineSeries::CosineSeries(int dim, std::vector<Mode> modes) : dim_(dim), modes_(std::move(modes))
{
   if (dim < 1 || dim > 3)
   {
      throw Error(fmt::format("dimension must be 1, 2 or 3 (got {})", dim));
   }
}

CosineSeries CosineSeries::random(int dim, int max_mode, double scale, std::mt19937_64& rng)
{
   if (max_mode < 0)
   {
      throw Error("max_mode must be nonnegative");
   }
   std::uniform_real_distribution<double> amp(-scale, scale);
   std::vector<Mode> modes;
   const int kx = max_mode;
   const int ky = dim >= 2 ? max_mode : 0;
   const int kz = dim >= 3 ? max_mode : 0;
   for (int a = 0; a <= kx; ++a)
   {
      for (int b = 0; b <= ky; ++b)
      {
         for (int c = 0; c <= kz; ++c)
         {
            if (a + b + c == 0)
            {
               continue;
            }
            const double k2 = a * a + b * b + c * c;
            modes.push_back({{a, b, c}, amp(rng) / (1.0 + k2)});
         }
      }
   }
   return CosineSeries(dim, std::move(modes));
}

double CosineSeries::operator()(const Point& x, const std::array<double, 3>& lengths) const
{
   double sum = 0.0;
   for (const Mode& m : modes_)
   {
      double term = m.amplitude;
      for (int a = 0; a < dim_; ++a)
      {
         if (m.k[a] != 0)
         {
            term *= std::cos(m.k[a] * std::numbers::pi * x[a] / lengths[a]);
         }
      }
      sum += term;
   }
   return sum;
}

Field CosineSeries::sample(const Grid& grid) const
{
   if (grid.dim() != dim_)
   {
      throw Error(fmt::format("series of dimension {} sampled on a {}-dimensional grid", dim_, grid.dim()));
   }
   const std::array<double, 3> lengths{grid.length(0), grid.length(1), grid.length(2)};
   return Field::from_function(grid, [&](const Point& x) { return (*this)(x, lengths); });
}

Field CosineSeries::sample_exp(const Grid& grid) const
{
   return map(sample(grid), [](double s) { return std::exp(s); });
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxMode = 3;
constexpr double kAmplitude = 1.5;

} // namespace

LogHessianBatch log_hessian_batch(const Grid& grid, std::size_t count, std::span<const double> q_list,
                                  std::uint64_t seed)
{
   std::mt19937_64 rng(seed);
   LogHessianBatch batch;
   for (std::size_t i = 0; i < count; ++i)
   {
      const Field phi = CosineSeries::random(grid.dim(), kMaxMode, kAmplitude, rng).sample_exp(grid);
      for (double q : q_list)
      {
         const LogHessianReport r = check_log_hessian(phi, q);
         ++batch.checks;
         batch.max_ratio1 = std::max(batch.max_ratio1, r.ratio1());
         batch.max_ratio2 = std::max(batch.max_ratio2, r.ratio2());
         if (!r.pass())
         {
            ++batch.failures;
            batch.failed.push_back(r);
         }
      }
   }
   return batch;
}

SobolevBatch sobolev_batch(const GridSpec& coarse, std::size_t count, double p, double mu, int N,
                           std::uint64_t seed)
{
   GridSpec fine = coarse;
   for (int a = 0; a < coarse.dim; ++a)
   {
      fine.cells[a] *= 2;
   }
   const Grid gc(coarse);
   const Grid gf(fine);
   std::mt19937_64 rng(seed);
   SobolevBatch batch;
   for (std::size_t i = 0; i < count; ++i)
   {
      const CosineSeries s_phi = CosineSeries::random(gc.dim(), kMaxMode, kAmplitude, rng);
      const CosineSeries s_psi = CosineSeries::random(gc.dim(), kMaxMode, kAmplitude, rng);
      const double rc = check_sobolev_product(s_phi.sample_exp(gc), s_psi.sample_exp(gc), p, mu, N).ratio;
      const double rf = check_sobolev_product(s_phi.sample_exp(gf), s_psi.sample_exp(gf), p, mu, N).ratio;
      batch.max_ratio_coarse = std::max(batch.max_ratio_coarse, rc);
      batch.max_ratio_fine = std::max(batch.max_ratio_fine, rf);
      ++batch.count;
   }
   batch.relative_change = batch.max_ratio_coarse > 0.0
                               ? std::abs(batch.max_ratio_fine - batch.max_ratio_coarse) / batch.max_ratio_coarse
                               : 0.0;
   return batch;
}

} // namespace ntaxis
