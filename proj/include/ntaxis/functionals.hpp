#pragma once

// Spatial integrals shared by the stepper (accumulator rates) and the
// diagnostics. Two quadratures are used:
//  * cell quadrature, with |grad f|^2 formed from face gradients squared and
//    averaged into cells (cell_grad_sq);
//  * face quadrature, sum_f wbar_f a_f b_f * cellvol with wbar_f the
//    arithmetic mean of a cell weight over the two adjacent cells. This one
//    is exact under summation by parts against the flux-form scheme.

#include <span>
#include <vector>

#include "ntaxis/grid.hpp"
#include "ntaxis/model.hpp"

namespace ntaxis {

/// sum_i w_i f_i * cellvol
double weighted_integral(const Field& w, const Field& f);

/// sum over faces of mean(w) a_f b_f times the dual volume.
double face_weighted_product(const Field& w, const FaceData& a, const FaceData& b);

/// |D^2 f|^2 = sum_{a,b} (d_a d_b f)^2 at cell centers. Diagonal entries use
/// the three-point Neumann second difference, mixed entries composed
/// central differences.
Field hessian_sq(const Field& f);

/// Integrands (spatial integrals) of every accumulator at the given state.
Accumulators accumulator_rates(const State& state, const Params& params);

/// int u log u with 0 log 0 = 0.
double entropy_integral(const Field& u);

} // namespace ntaxis
