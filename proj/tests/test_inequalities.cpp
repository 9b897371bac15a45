#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ntaxis/error.hpp"
#include "ntaxis/inequalities.hpp"

using namespace ntaxis;
using std::numbers::pi;

namespace {

Grid line(int n) { return Grid(GridSpec{1, {n, 1, 1}, {1.0, 1, 1}}); }

Field exp_cos(const Grid& g)
{
   return Field::from_function(g, [](const Point& x) { return std::exp(std::cos(pi * x[0])); });
}

// Composite Simpson on [0, 1].
template <class F>
double simpson(F&& f, int m = 20000)
{
   double s = 0.0;
   for (int k = 0; k <= m; ++k)
   {
      s += (k == 0 || k == m ? 1.0 : (k % 2 ? 4.0 : 2.0)) * f(static_cast<double>(k) / m);
   }
   return s / (3.0 * m);
}

double close(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("Sobolev product on constants")
{
   const Grid g(GridSpec{2, {8, 4, 1}, {2.0, 1.0, 1}});
   const SobolevProductReport r = check_sobolev_product(Field(g, 1.0), Field(g, 1.0), 1.0, 3.0, 3);
   CHECK(r.lhs == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
   CHECK(r.grad_phi == 0.0);
   CHECK(r.grad_psi == 0.0);
   CHECK(r.zero_order == doctest::Approx(2.0).epsilon(1e-14));
   CHECK(r.ratio == doctest::Approx(std::pow(2.0, 1.0 / 3.0 - 1.0)).epsilon(1e-14));
}

TEST_CASE("Sobolev product on exp(cos pi x) against quadrature and refinement")
{
   auto report = [](int n) {
      const Grid g = line(n);
      return check_sobolev_product(exp_cos(g), Field(g, 1.0), 1.0, 3.0, 3);
   };
   const SobolevProductReport coarse = report(128);
   const SobolevProductReport fine = report(256);

   const double lhs = std::cbrt(simpson([](double x) { return std::exp(6.0 * std::cos(pi * x)); }));
   const double grad = simpson([](double x) {
      return pi * pi * std::pow(std::sin(pi * x), 2) * std::exp(2.0 * std::cos(pi * x));
   });
   const double zero = simpson([](double x) { return std::exp(2.0 * std::cos(pi * x)); });
   CHECK(close(fine.lhs, lhs) < 1e-4);
   CHECK(close(fine.grad_phi, grad) < 1e-3);
   CHECK(fine.grad_psi == 0.0);
   CHECK(close(fine.zero_order, zero) < 1e-4);
   CHECK(std::isfinite(coarse.ratio));
   CHECK(close(fine.ratio, coarse.ratio) <= 0.02);
}

TEST_CASE("Sobolev product input checks")
{
   const Grid g = line(8);
   Field bad(g, 1.0);
   bad[0] = 0.0;
   CHECK_THROWS_WITH_AS(check_sobolev_product(bad, Field(g, 1.0), 1.0, 2.0, 3), "phi must be strictly positive",
                        Error);
   CHECK_THROWS_AS(check_sobolev_product(Field(g, 1.0), bad, 1.0, 2.0, 3), Error);
   CHECK_THROWS_AS(check_sobolev_product(Field(g, 1.0), Field(g, 1.0), 1.0, 3.5, 3), Error);
   CHECK_THROWS_AS(check_sobolev_product(Field(g, 1.0), Field(g, 1.0), 1.0, 0.5, 2), Error);
   CHECK_NOTHROW(check_sobolev_product(Field(g, 1.0), Field(g, 1.0), 1.0, 7.0, 2));
   CHECK_THROWS_AS(check_sobolev_product(Field(g, 1.0), Field(line(9), 1.0), 1.0, 2.0, 3), Error);
}

TEST_CASE("log-Hessian on a constant field")
{
   const LogHessianReport r = check_log_hessian(Field(line(16), 2.5), 3.0);
   CHECK(r.lhs1 == 0.0);
   CHECK(r.rhs1 == 0.0);
   CHECK(r.lhs2 == 0.0);
   CHECK(r.rhs2 == 0.0);
   CHECK(r.pass());
   CHECK(r.ratio1() == 0.0);
}

TEST_CASE("log-Hessian q = 2 on exp(cos pi x) against quadrature")
{
   const LogHessianReport r = check_log_hessian(exp_cos(line(512)), 2.0);
   auto phi = [](double x) { return std::exp(std::cos(pi * x)); };
   const double p4 = std::pow(pi, 4);
   const double lhs1 = simpson([&](double x) { return p4 * std::pow(std::sin(pi * x), 4) * phi(x); });
   const double rhs1 = simpson([&](double x) { return p4 * std::pow(std::cos(pi * x), 2) * phi(x); });
   const double lhs2 = simpson([&](double x) {
      const double s = std::sin(pi * x);
      return p4 * std::pow(s * s - std::cos(pi * x), 2) * phi(x);
   });
   MESSAGE("lhs1 ", r.lhs1, " rhs1 ", r.rhs1, " lhs2 ", r.lhs2);
   CHECK(r.const1 == doctest::Approx(9.0));
   CHECK(r.const2 == doctest::Approx(16.0));
   CHECK(close(r.lhs1, lhs1) < 1e-2);
   CHECK(close(r.rhs1, rhs1) < 1e-2);
   CHECK(close(r.lhs2, lhs2) < 1e-2);
   CHECK(r.rhs2 == r.rhs1);
   CHECK(lhs1 <= 9.0 * rhs1);
   CHECK(r.pass());
}

TEST_CASE("log-Hessian q = 4 on a 2D radial bump")
{
   const Grid g(GridSpec{2, {64, 64, 1}, {1.0, 1.0, 1}});
   const Field phi = Field::from_function(g, [](const Point& x) {
      const double r2 = (x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5);
      return std::exp(1.5 * std::exp(-r2 / 0.02));
   });
   const LogHessianReport r = check_log_hessian(phi, 4.0);
   CHECK(r.const1 == doctest::Approx(std::pow(4.0 + std::sqrt(2.0), 2)));
   CHECK(r.ratio1() < 1.0);
   CHECK(r.ratio2() < 1.0);
   CHECK(r.pass());
}

TEST_CASE("log-Hessian rejects bad input")
{
   Field bad(line(8), 1.0);
   bad[4] = -1.0;
   CHECK_THROWS_AS(check_log_hessian(bad, 2.0), Error);
   CHECK_THROWS_AS(check_log_hessian(Field(line(8), 1.0), 1.5), Error);
}

TEST_CASE("cosine series fields are Neumann compatible and grid independent")
{
   std::mt19937_64 rng(3);
   const CosineSeries s = CosineSeries::random(2, 3, 1.5, rng);
   CHECK(s.modes().size() == 15);
   for (const auto& m : s.modes())
   {
      const double k2 = m.k[0] * m.k[0] + m.k[1] * m.k[1];
      CHECK(std::abs(m.amplitude) <= 1.5 / (1.0 + k2));
   }
   const Grid g(GridSpec{2, {16, 8, 1}, {1.0, 0.5, 1}});
   const Field f = s.sample(g);
   const Field e = s.sample_exp(g);
   for (std::size_t i = 0; i < g.size(); ++i)
   {
      CHECK(f[i] == doctest::Approx(s(g.center(i), {1.0, 0.5, 1.0})));
      CHECK(e[i] == doctest::Approx(std::exp(f[i])));
   }
   // Mirror symmetry about each wall in the continuous series.
   CHECK(s({-0.1, 0.2, 0}, {1.0, 0.5, 1.0}) == doctest::Approx(s({0.1, 0.2, 0}, {1.0, 0.5, 1.0})));
   CHECK(s({0.3, 0.6, 0}, {1.0, 0.5, 1.0}) == doctest::Approx(s({0.3, 0.4, 0}, {1.0, 0.5, 1.0})));
}

TEST_CASE("random batches")
{
   const double qs[] = {2.0, 3.0, 4.0};
   const LogHessianBatch b = log_hessian_batch(line(64), 20, qs, 5);
   CHECK(b.checks == 60);
   CHECK(b.failures == 0);
   CHECK(b.failed.empty());
   CHECK(b.max_ratio1 < 1.0);
   CHECK(b.max_ratio2 < 1.0);

   const GridSpec coarse{1, {32, 1, 1}, {1.0, 1, 1}};
   const SobolevBatch s1 = sobolev_batch(coarse, 20, 1.0, 3.0, 3, 9);
   const SobolevBatch s2 = sobolev_batch(coarse, 20, 1.0, 3.0, 3, 9);
   CHECK(s1.count == 20);
   CHECK(s1.max_ratio_coarse == s2.max_ratio_coarse);
   CHECK(s1.max_ratio_fine == s2.max_ratio_fine);
   CHECK(std::isfinite(s1.max_ratio_fine));
   CHECK(s1.relative_change <= 0.05);
}
