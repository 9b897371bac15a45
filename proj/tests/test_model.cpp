#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ntaxis/error.hpp"
#include "ntaxis/model.hpp"

using namespace ntaxis;
using std::numbers::pi;

namespace {

Grid line(int n) { return Grid(GridSpec{1, {n, 1, 1}, {1.0, 1, 1}}); }

State random_state(const Grid& g, std::uint64_t seed)
{
   std::mt19937_64 rng(seed);
   std::uniform_real_distribution<double> du(0.01, 3.0);
   std::uniform_real_distribution<double> dv(0.1, 2.0);
   Field u(g);
   Field v(g);
   for (std::size_t i = 0; i < g.size(); ++i)
   {
      u[i] = du(rng);
      v[i] = dv(rng);
   }
   return State(u, v);
}

double l1(const Field& f)
{
   double s = 0.0;
   for (double x : f.values())
   {
      s += std::abs(x);
   }
   return s * f.grid().cell_volume();
}

} // namespace

TEST_CASE("Params validation")
{
   Params p;
   CHECK_NOTHROW(p.validate());
   p.alpha = 2.0;
   CHECK_THROWS_WITH_AS(p.validate(), "alpha must satisfy 0 <= alpha < 2 (got 2)", Error);
   p = Params{};
   p.epsilon = 1.0;
   CHECK_THROWS_AS(p.validate(), Error);
   p = Params{};
   p.ell = -1.0;
   CHECK_THROWS_AS(p.validate(), Error);
   p = Params{};
   p.cfl_safety = 0.0;
   CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("build_initial shifts u by epsilon")
{
   Params p;
   p.epsilon = 0.01;
   p.ell = 2.0;
   InitialData d;
   d.u_base = 1.0;
   d.v_base = 1.0;
   const State s = build_initial(line(8), d, p);
   for (std::size_t i = 0; i < 8; ++i)
   {
      CHECK(s.u[i] == doctest::Approx(1.01));
      CHECK(s.v[i] == 1.0);
   }
   CHECK(s.t == 0.0);
   for (double a : s.acc)
   {
      CHECK(a == 0.0);
   }
   // M = int (u0 + 1) + ell int v0
   CHECK(s.mass_bound == doctest::Approx(2.0 + 2.0));
}

TEST_CASE("gaussian bump keeps min u at epsilon and is mirror symmetric")
{
   Params p;
   p.epsilon = 0.1;
   InitialData d;
   d.kind = InitialKind::gaussian_bump;
   d.u_base = 0.0;
   d.u_amp = 2.0;
   d.width = 0.05;
   const Grid g = line(64);
   const State s = build_initial(g, d, p);
   CHECK(s.u.min() >= 0.1);
   CHECK(s.u.max() > 1.0);
   for (std::size_t i = 0; i < 32; ++i)
   {
      CHECK(s.u[i] == doctest::Approx(s.u[63 - i]).epsilon(1e-13));
   }
}

TEST_CASE("cosine profile of v is Neumann compatible")
{
   InitialData d;
   d.kind = InitialKind::cosine_mix;
   d.v_base = 1.0;
   d.v_amp = 0.3;
   const Grid g = line(128);
   const State s = build_initial(g, d, Params{});
   // The boundary cells see the same stencil error as interior cells only if
   // the profile has zero normal derivative at the walls.
   const Field lap = laplacian_neumann(s.v);
   for (std::size_t i : {std::size_t{0}, std::size_t{127}})
   {
      const double x = g.center(i)[0];
      CHECK(lap[i] == doctest::Approx(-0.3 * pi * pi * std::cos(pi * x)).epsilon(1e-3));
   }
   const FaceData gv = face_gradient(s.v);
   CHECK(std::abs(gv.along(0).front()) < 0.3 * pi * pi / 128);
}

TEST_CASE("build_initial rejects bad data")
{
   InitialData d;
   d.u_base = -0.1;
   CHECK_THROWS_WITH_AS(build_initial(line(4), d, Params{}), "u0 must be nonnegative", Error);
   d = InitialData{};
   d.v_base = 0.0;
   CHECK_THROWS_WITH_AS(build_initial(line(4), d, Params{}), "initial v must be strictly positive", Error);
   d = InitialData{};
   d.kind = InitialKind::from_snapshot;
   d.snapshot_u = {1, 1, 1, 1};
   d.snapshot_v = {1, NAN, 1, 1};
   CHECK_THROWS_AS(build_initial(line(4), d, Params{}), Error);
}

TEST_CASE("face_diffusivity averaging")
{
   const Grid g = line(4);
   for (FaceMean mode : {FaceMean::arithmetic, FaceMean::geometric})
   {
      const FaceData d = face_diffusivity(Field(g, 2.0), Field(g, 3.0), mode);
      for (double x : d.along(0))
      {
         CHECK(x == doctest::Approx(6.0));
      }
   }

   const Grid two = line(2);
   const Field u(two, std::vector<double>{0.0, 4.0});
   const Field one(two, 1.0);
   CHECK(face_diffusivity(u, one, FaceMean::geometric).along(0)[0] == 0.0);

   const Field w(two, std::vector<double>{2.0, 8.0});
   CHECK(face_diffusivity(w, one, FaceMean::arithmetic).along(0)[0] == 5.0);
   CHECK(face_diffusivity(w, one, FaceMean::geometric).along(0)[0] == 4.0);

   // u^alpha v with u = 4, v = 2, alpha = 1/2
   for (FaceMean mode : {FaceMean::arithmetic, FaceMean::geometric})
   {
      CHECK(face_taxis_coefficient(Field(two, 4.0), Field(two, 2.0), 0.5, mode).along(0)[0] ==
            doctest::Approx(4.0));
   }
}

TEST_CASE("assemble_rhs on constant states is the reaction ODE")
{
   Params p;
   p.ell = 0.7;
   p.alpha = 1.3;
   const Grid g(GridSpec{2, {6, 5, 1}, {1, 1, 1}});
   const State s(Field(g, 1.5), Field(g, 0.4));
   const Rhs r = assemble_rhs(s, p);
   for (std::size_t i = 0; i < g.size(); ++i)
   {
      CHECK(r.du[i] == doctest::Approx(0.7 * 1.5 * 0.4).epsilon(1e-15));
      CHECK(r.dv[i] == doctest::Approx(-1.5 * 0.4).epsilon(1e-15));
   }
}

TEST_CASE("porous-medium reduction: chi = 0, ell = 0, v = 1")
{
   Params p;
   p.chi = 0.0;
   p.ell = 0.0;
   auto u_of = [](const Point& x) { return 1.0 + 0.5 * std::cos(pi * x[0]); };
   auto err = [&](int n, FaceMean mode) {
      p.avg_mode = mode;
      const Grid g = line(n);
      const Field u = Field::from_function(g, u_of);
      const Rhs r = assemble_rhs(State(u, Field(g, 1.0)), p);
      // div(u grad u) = u'^2 + u u''
      double e = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
      {
         const double x = g.center(i)[0];
         const double d1 = -0.5 * pi * std::sin(pi * x);
         const double d2 = -0.5 * pi * pi * std::cos(pi * x);
         e = std::max(e, std::abs(r.du[i] - (d1 * d1 + u_of(g.center(i)) * d2)));
      }
      return e;
   };
   for (FaceMean mode : {FaceMean::arithmetic, FaceMean::geometric})
   {
      CHECK(err(64, mode) < 4e-3);
      CHECK(std::log2(err(32, mode) / err(64, mode)) > 1.8);
   }

   // Arithmetic averaging is exactly the discrete Laplacian of u^2 / 2.
   p.avg_mode = FaceMean::arithmetic;
   const Grid g = line(50);
   const Field u = Field::from_function(g, u_of);
   const Rhs r = assemble_rhs(State(u, Field(g, 1.0)), p);
   const Field half_lap = map(laplacian_neumann(map(u, [](double x) { return x * x; })),
                              [](double x) { return 0.5 * x; });
   for (std::size_t i = 0; i < g.size(); ++i)
   {
      CHECK(r.du[i] == doctest::Approx(half_lap[i]).epsilon(1e-10).scale(1.0));
   }
}

TEST_CASE("assemble_rhs conserves up to the reaction terms")
{
   Params p;
   p.ell = 1.3;
   p.alpha = 1.6;
   p.chi = 2.0;
   for (std::uint64_t seed = 1; seed <= 5; ++seed)
   {
      const Grid g(GridSpec{2, {9, 7, 1}, {1.0, 0.6, 1}});
      const State s = random_state(g, seed);
      const Rhs r = assemble_rhs(s, p);
      const double uv = integrate(zip(s.u, s.v, [](double a, double b) { return a * b; }));
      CHECK(std::abs(integrate(r.du) - p.ell * uv) <= 1e-12 * l1(r.du));
      CHECK(std::abs(integrate(r.dv) + uv) <= 1e-12 * std::max(l1(r.dv), uv));
   }
}

TEST_CASE("degenerate faces carry no flux in geometric mode")
{
   const Grid g = line(10);
   Field u(g, 1.0);
   for (std::size_t i = 3; i <= 6; ++i)
   {
      u[i] = 0.0;
   }
   const Field v = Field::from_function(g, [](const Point& x) { return 1.0 + x[0]; });
   Params p;
   p.ell = 1.0;
   const Rhs r = assemble_rhs(State(u, v), p);
   // Cells 4 and 5 only touch faces with u = 0 on both sides.
   CHECK(r.du[4] == 0.0);
   CHECK(r.du[5] == 0.0);
}

TEST_CASE("reflection symmetric data gives a reflection symmetric rhs")
{
   InitialData d;
   d.kind = InitialKind::gaussian_bump;
   d.u_base = 0.2;
   d.u_amp = 1.0;
   d.v_amp = 0.0;
   Params p;
   p.alpha = 1.4;
   p.ell = 1.0;
   const Grid g = line(40);
   State s = build_initial(g, d, p);
   s.v = Field::from_function(g, [](const Point& x) { return 1.0 + 0.3 * std::cos(2.0 * pi * x[0]); });
   const Rhs r = assemble_rhs(s, p);
   const double scale = std::max(r.du.max(), -r.du.min());
   for (std::size_t i = 0; i < 20; ++i)
   {
      CHECK(std::abs(r.du[i] - r.du[39 - i]) <= 1e-13 * scale);
      CHECK(std::abs(r.dv[i] - r.dv[39 - i]) <= 1e-13 * scale);
   }
}

TEST_CASE("rhs depends smoothly on alpha")
{
   const Grid g = line(32);
   const State s = random_state(g, 9);
   Params p;
   p.alpha = 1.2;
   const Rhs a = assemble_rhs(s, p);
   p.alpha += 1e-9;
   const Rhs b = assemble_rhs(s, p);
   double diff = 0.0;
   for (std::size_t i = 0; i < g.size(); ++i)
   {
      diff = std::max(diff, std::abs(a.du[i] - b.du[i]));
   }
   CHECK(diff <= 1e-6 * std::max(a.du.max(), -a.du.min()));
}

TEST_CASE("rhs overflow names the cell")
{
   const Grid g = line(4);
   Field u(g, 1.0);
   u[2] = 1e300;
   Params p;
   p.ell = 1.0;
   CHECK_THROWS_AS(assemble_rhs(State(u, Field(g, 1e10)), p), BlowUp);
   try
   {
      assemble_rhs(State(u, Field(g, 1e10)), p);
   }
   catch (const BlowUp& e)
   {
      CHECK(std::string(e.what()).find("rhs overflow at cell") == 0);
   }
}
