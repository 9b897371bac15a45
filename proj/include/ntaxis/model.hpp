#pragma once

// The epsilon-regularized doubly degenerate nutrient taxis system
//
//   u_t = div(u v grad u) - chi div(u^alpha v grad v) + ell u v
//   v_t = lap v - u v
//
// with no-flux boundaries, discretized in flux form on a Grid.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "ntaxis/grid.hpp"

namespace ntaxis {

struct Params
{
   double alpha = 1.0;
   double chi = 1.0;
   double ell = 0.0;
   double epsilon = 0.01;
   double cfl_safety = 0.9;
   FaceMean avg_mode = FaceMean::geometric;

   /// Throws Error unless 0 <= alpha < 2, chi > 0, ell >= 0,
   /// 0 < epsilon < 1 and 0 < cfl_safety <= 1.
   void validate() const;
};

/// Time integrals carried along a trajectory, advanced by the stepper with
/// left-endpoint quadrature.
enum class Accumulator : std::size_t
{
   uv,               // iint u v
   v_gradu2,         // iint v |grad u|^2
   u_gradv2,         // iint u |grad v|^2
   lapv2,            // iint |lap v|^2
   u1ma_v_gradu2,    // iint u^(1-alpha) v |grad u|^2
   v_over_u_gradu2,  // iint (v/u) |grad u|^2
   u_over_v_gradv2,  // iint (u/v) |grad v|^2
   u_gradv4_over_v3, // iint u |grad v|^4 / v^3
   gradv6_over_v5,   // iint |grad v|^6 / v^5
   u73_v,            // iint u^(7/3) v
};

inline constexpr std::size_t kAccumulatorCount = 10;

inline constexpr std::array<std::string_view, kAccumulatorCount> kAccumulatorNames = {
    "acc_uv",           "acc_v_gradu2",         "acc_u_gradv2",
    "acc_lapv2",        "acc_u1ma_v_gradu2",    "acc_v_over_u_gradu2",
    "acc_u_over_v_gradv2", "acc_u_gradv4_over_v3", "acc_gradv6_over_v5",
    "acc_u73_v",
};

using Accumulators = std::array<double, kAccumulatorCount>;

inline double& at(Accumulators& acc, Accumulator which)
{
   return acc[static_cast<std::size_t>(which)];
}
inline double at(const Accumulators& acc, Accumulator which)
{
   return acc[static_cast<std::size_t>(which)];
}

struct State
{
   State(Field u_, Field v_);

   double t = 0.0;
   Field u;
   Field v;
   Accumulators acc{};
   /// M = int (u0 + 1) + ell int v0, fixed at construction of the initial state.
   double mass_bound = 0.0;
};

enum class InitialKind
{
   constant,
   gaussian_bump,
   cosine_mix,
   from_snapshot
};

/// Shapes (C1(x) is the mean over active axes of cos(pi x_a / L_a), C2 the
/// same with 2 pi, G a Gaussian mirrored across the walls so that its normal
/// derivative vanishes there):
///   constant       u0 = u_base,               v0 = v_base
///   gaussian_bump  u0 = u_base + u_amp G(x),  v0 = v_base + v_amp C1(x)
///   cosine_mix     u0 = u_base + u_amp C2(x), v0 = v_base + v_amp C1(x)
///   from_snapshot  u0, v0 taken from snapshot_u / snapshot_v
struct InitialData
{
   InitialKind kind = InitialKind::constant;
   double u_base = 1.0;
   double u_amp = 0.0;
   double width = 0.1;
   /// Bump center as a fraction of each axis length.
   Point center{0.5, 0.5, 0.5};
   double v_base = 1.0;
   double v_amp = 0.0;
   std::vector<double> snapshot_u;
   std::vector<double> snapshot_v;
};

/// (u0 + epsilon, v0) at t = 0 with zeroed accumulators.
State build_initial(const Grid& grid, const InitialData& data, const Params& params);

/// Face average of the doubly degenerate diffusivity u v.
FaceData face_diffusivity(const Field& u, const Field& v, FaceMean mode);

/// Face average of the taxis coefficient u^alpha v.
FaceData face_taxis_coefficient(const Field& u, const Field& v, double alpha, FaceMean mode);

struct Rhs
{
   Field du;
   Field dv;
};

/// Right-hand side of the regularized system. Throws BlowUp("rhs overflow
/// at cell i") on a non-finite value.
Rhs assemble_rhs(const State& state, const Params& params);

} // namespace ntaxis
