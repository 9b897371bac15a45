#pragma once

// Quadrature evaluation of the standalone functional inequalities used by
// the a priori estimates, plus random Neumann-compatible test fields.

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "ntaxis/grid.hpp"

namespace ntaxis {

struct SobolevProductReport
{
   double lhs = 0.0;         ///< ||phi^(p+1) psi||_{L^mu}
   double grad_phi = 0.0;    ///< int phi^(p-1) psi |grad phi|^2
   double grad_psi = 0.0;    ///< int phi^(p+1) psi^-1 |grad psi|^2
   double zero_order = 0.0;  ///< int phi^(p+1) psi
   double rhs_amended = 0.0; ///< sum of the three terms above
   double ratio = 0.0;       ///< lhs / rhs_amended
};

/// Requires phi, psi > 0 on the same grid and 1 <= mu <= N/(N-2) for N >= 3
/// (mu >= 1 otherwise). N is the nominal space dimension; fields constant in
/// the missing directions may stand in for higher dimensions.
SobolevProductReport check_sobolev_product(const Field& phi, const Field& psi, double p,
                                           double mu, int N);

struct LogHessianReport
{
   static constexpr double kInf = std::numeric_limits<double>::infinity();

   double q = 0.0;
   double lhs1 = 0.0; ///< int phi^(-q-1) |grad phi|^(q+2)
   double rhs1 = 0.0; ///< int phi^(3-q) |grad phi|^(q-2) |D^2 log phi|^2
   double lhs2 = 0.0; ///< int phi^(1-q) |grad phi|^(q-2) |D^2 phi|^2
   double rhs2 = 0.0; ///< same integral as rhs1
   double const1 = 0.0; ///< (q + sqrt N)^2
   double const2 = 0.0; ///< (q + sqrt N + 1)^2
   double slack = 0.05;

   double ratio1() const { return rhs1 > 0.0 ? lhs1 / (const1 * rhs1) : (lhs1 > 0.0 ? kInf : 0.0); }
   double ratio2() const { return rhs2 > 0.0 ? lhs2 / (const2 * rhs2) : (lhs2 > 0.0 ? kInf : 0.0); }
   bool pass() const
   {
      return lhs1 <= (1.0 + slack) * const1 * rhs1 && lhs2 <= (1.0 + slack) * const2 * rhs2;
   }
};

/// Both log-Hessian inequalities for phi > 0 with N = grid dimension and
/// q >= 2. Hessians use composed central differences.
LogHessianReport check_log_hessian(const Field& phi, double q);

/// Truncated cosine series sum_k a_k prod_a cos(k_a pi x_a / L_a), so every
/// member has zero normal derivative on the box. Evaluable on any grid of the
/// same dimension, which lets one field be compared across refinements.
class CosineSeries
{
public:
   struct Mode
   {
      std::array<int, 3> k{0, 0, 0};
      double amplitude = 0.0;
   };

   CosineSeries(int dim, std::vector<Mode> modes);

   /// Modes with 0 <= k_a <= max_mode, amplitudes uniform in
   /// [-scale, scale] / (1 + |k|^2).
   static CosineSeries random(int dim, int max_mode, double scale, std::mt19937_64& rng);

   int dim() const { return dim_; }
   const std::vector<Mode>& modes() const { return modes_; }

   double operator()(const Point& x, const std::array<double, 3>& lengths) const;
   Field sample(const Grid& grid) const;
   /// exp of the series: a strictly positive field.
   Field sample_exp(const Grid& grid) const;

private:
   int dim_;
   std::vector<Mode> modes_;
};

} // namespace ntaxis

namespace ntaxis {

struct LogHessianBatch
{
   std::size_t checks = 0;
   std::size_t failures = 0;
   double max_ratio1 = 0.0; ///< max lhs1 / (const1 rhs1)
   double max_ratio2 = 0.0;
   std::vector<LogHessianReport> failed;
};

/// `count` random exp(cosine series) fields on `grid`, each tested for every
/// q in q_list.
LogHessianBatch log_hessian_batch(const Grid& grid, std::size_t count, std::span<const double> q_list,
                                  std::uint64_t seed);

struct SobolevBatch
{
   std::size_t count = 0;
   double max_ratio_coarse = 0.0;
   double max_ratio_fine = 0.0;
   /// |fine - coarse| / coarse of the batch maxima
   double relative_change = 0.0;
};

/// Random positive pairs (phi, psi) evaluated on `coarse` and on its
/// refinement by two in every direction; reports the batch-max constant of
/// the amended Sobolev-product inequality on both.
SobolevBatch sobolev_batch(const GridSpec& coarse, std::size_t count, double p, double mu, int N,
                           std::uint64_t seed);

} // namespace ntaxis
