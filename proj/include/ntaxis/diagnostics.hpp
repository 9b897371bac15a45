#pragma once

// Monitored functionals and discrete residuals of the energy identities
// satisfied by the regularized system.
//
// Identity residuals compare a forward difference in time between two
// consecutive states with the continuous right-hand side evaluated at the
// earlier state, so they vanish at rate O(dt + h^2).

#include <span>
#include <string>
#include <vector>

#include "ntaxis/model.hpp"

namespace ntaxis {

struct MonitorRow
{
   double t = 0.0;
   double mass_u = 0.0;
   double mass_v = 0.0;
   double total_mass = 0.0; // int u + ell int v
   double sup_v = 0.0;
   double inf_v = 0.0;
   double sup_u = 0.0;
   std::vector<double> lp_p;
   std::vector<double> lp_norms;
   double log_energy = 0.0;           // int u log u
   double grad4_energy = 0.0;         // int |grad v|^4 / v^3
   double grad2_over_v = 0.0;         // int |grad v|^2 / v
   double combined_flux_energy = 0.0; // int u^(3-a)/((2-a)(3-a)) - u v
   Accumulators acc{};

   std::vector<std::string> names() const;
   std::vector<double> values() const;
   bool all_finite() const;
};

/// Throws Error("v positivity lost") if inf v <= 0.
MonitorRow monitor_row(const State& state, const Params& params,
                       std::span<const double> p_list = {});

/// Header line naming every column; fixed order, no trailing newline.
std::string csv_header(const MonitorRow& row);
/// Values printed with 17 significant digits.
std::string csv_line(const MonitorRow& row);

struct ResidualReport
{
   std::string name;
   double t0 = 0.0;
   double dt = 0.0;
   double lhs = 0.0;
   double rhs = 0.0;
   double residual = 0.0; // lhs - rhs
   double normalizer = 1.0;

   double relative() const { return residual / normalizer; }
};

/// 1/2 d/dt int |grad v|^2 + int |lap v|^2 + int u |grad v|^2
///    = - int v grad u . grad v
ResidualReport residual_v_energy(const State& prev, const State& next, const Params& params);

/// (1/q) d/dt int v^q = -(q-1) int v^(q-2) |grad v|^2 - int u v^q, q > 1
ResidualReport residual_vq_identity(const State& prev, const State& next, double q,
                                    const Params& params);

/// d/dt int u^p v^q expanded into its eight contributions (diffusion,
/// taxis and reaction of u; diffusion and consumption of v).
ResidualReport residual_upvq_identity(const State& prev, const State& next, double p, double q,
                                      const Params& params);

struct FirstEnergyReport
{
   /// d/dt int ( u^(3-a)/((2-a)(3-a)) - chi u v ) by forward difference.
   double lhs_rate = 0.0;
   /// ell/(2-a) int u^(3-a) v + chi int grad u.grad v + chi int u^2 v
   double rhs_inequality = 0.0;
   /// rhs_inequality - lhs_rate; nonnegative up to time-discretization error.
   double slack = 0.0;
   /// The equality including the dissipation
   /// int u^a v |grad(u^(2-a)/(2-a) - chi v)|^2 and the consumption term.
   ResidualReport identity;
};

FirstEnergyReport check_first_energy(const State& prev, const State& next, const Params& params);

/// Per-step ingredients of the combined log / |grad v|^4 v^-3 balance
/// (valid for alpha > 1).
struct Struc2Sample
{
   double t = 0.0;
   double dt = 0.0;
   double log_rate = 0.0;    // d/dt int (u log u - u)
   double grad4_rate = 0.0;  // d/dt int |grad v|^4 / v^3
   double hessian_term = 0.0; // int |grad v|^2 / v |D^2 log v|^2
   double u_grad4 = 0.0;     // int u |grad v|^4 / v^3
   double v_gradu2 = 0.0;    // int v |grad u|^2
   double taxis_term = 0.0;  // int u^(2a-2) v |grad v|^2
   double growth_term = 0.0; // int u v log u
};

Struc2Sample struc2_sample(const State& prev, const State& next, const Params& params);

/// Empirical constants (C0, C) for which
///   d/dt int (4 C0 (u log u - u) + |grad v|^4/v^3) + C0 int v|grad u|^2
///     + 2 int |grad v|^2/v |D^2 log v|^2 + int u |grad v|^4/v^3
///   <= C (int u^(2a-2) v |grad v|^2 + int u v log u)
/// holds on every sample. C0 is the smallest constant of the |grad v|^4/v^3
/// evolution bound over the window; C the smallest admissible constant
/// given C0. Steps whose right side is nonpositive but left side positive
/// are counted in `violations`.
struct Struc2Report
{
   double c0 = 0.0;
   double c = 0.0;
   std::size_t steps = 0;
   std::size_t violations = 0;
};

Struc2Report check_struc2_balance(std::span<const Struc2Sample> window, const Params& params);

} // namespace ntaxis
