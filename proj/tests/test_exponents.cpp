#include <doctest.h>

#include <cmath>
#include <random>

#include "ntaxis/error.hpp"
#include "ntaxis/exponents.hpp"

using namespace ntaxis;
using namespace ntaxis::exponents;

TEST_CASE("regime boundaries")
{
   CHECK(regime_of(0.0) == Regime::weak);
   CHECK(regime_of(1.0) == Regime::weak);
   CHECK(regime_of(1.0 + 1e-12) == Regime::moderate);
   CHECK(regime_of(1.5) == Regime::moderate);
   CHECK(regime_of(1.5 + 1e-12) == Regime::strong);
   CHECK(regime_name(Regime::strong) == "strong");
   CHECK_THROWS_AS(regime_of(2.0), Error);
   CHECK_THROWS_AS(regime_of(-0.1), Error);
}

TEST_CASE("weak_feedback_p worked values")
{
   CHECK(weak_feedback_p(2.0, 1.0) == doctest::Approx(7.0 / 3.0 - 1e-6).epsilon(1e-15));
   CHECK(weak_feedback_p(2.0, 1.0) > 2.25);
   CHECK(weak_feedback_p(2.0, 0.0) == doctest::Approx(13.0 / 3.0 - 1e-6).epsilon(1e-15));

   CHECK_THROWS_AS(weak_feedback_p(1.9, 0.5), Error);
   CHECK_THROWS_AS(weak_feedback_p(2.0, 1.1), Error);
   CHECK_THROWS_AS(weak_feedback_p(2.0, 0.5, 0.0), Error);
   CHECK_THROWS_WITH_AS(weak_feedback_p(2.0, 1.0, 0.1), doctest::Contains("too large"), Error);
}

TEST_CASE("weak_feedback_p properties")
{
   std::mt19937_64 rng(17);
   std::uniform_real_distribution<double> ur(2.0, 50.0), ua(0.0, 1.0), us(1e-9, 1.0 / 12.0);
   for (int i = 0; i < 1000; ++i)
   {
      const double r = ur(rng), a = ua(rng), s = us(rng);
      const double p = weak_feedback_p(r, a, s);
      CHECK(p - r >= 1.0 / 3.0 - s - 1e-12);
      CHECK(p < r + 2.0 * r / 3.0 - 2.0 * a + 1.0);
      CHECK(p > r + 0.25);
   }
}

TEST_CASE("p0_sup")
{
   CHECK(p0_sup(1.0).value() == 6.0);
   CHECK_FALSE(p0_sup(0.0).has_value());
   CHECK(p0_sup(0.5).value() == doctest::Approx(15.0));
   CHECK_THROWS_AS(p0_sup(1.2), Error);
   CHECK_THROWS_AS(p0_sup(-0.2), Error);
}

TEST_CASE("moderate sequence from m0 = 2, alpha = 5/4")
{
   const auto s = moderate_seq(2.0, 1.25, 4);
   REQUIRE(s.size() == 4);
   CHECK(s[0].k == 0);
   CHECK(s[0].first == 2.0);
   CHECK(s[0].p == doctest::Approx(2.0));
   CHECK(s[0].r == doctest::Approx(2.0 / 3.0));
   CHECK(s[1].first == doctest::Approx(4.0));
   CHECK(s[1].p == doctest::Approx(3.0));
   CHECK(s[1].r == doctest::Approx(2.0));
   CHECK(s[2].first == doctest::Approx(6.0));
   CHECK(s[2].p == doctest::Approx(4.0));
   CHECK(s[2].r == doctest::Approx(3.0));
   CHECK(s[3].first == doctest::Approx(23.0 / 3.0));

   // First k with p_k > 3 is k = 2, and then m_3 = 5/3 p_2 + 1 > 6.
   int k0 = -1;
   for (const auto& t : s)
   {
      if (t.p > 3.0)
      {
         k0 = t.k;
         break;
      }
   }
   CHECK(k0 == 2);
   CHECK(s[3].first == doctest::Approx(5.0 / 3.0 * s[2].p + 1.0));
   CHECK(s[3].first > 6.0);

   for (std::size_t k = 0; k + 1 < s.size(); ++k)
   {
      CHECK(s[k].p > 1.0);
      CHECK(1.5 * (s[k].r + 2.0) <= s[k + 1].first + 1e-12);
   }
   CHECK(moderate_seq(2.0, 1.25, 0).empty());
   CHECK_THROWS_AS(moderate_seq(2.0, 1.25, -1), Error);
}

TEST_CASE("moderate hat sequence")
{
   const auto s = moderate_seq_hat(6.5, 1.5, 30);
   CHECK(s[0].p == doctest::Approx(6.5));
   CHECK(s[0].r == doctest::Approx(5.5));
   CHECK(s[1].first == doctest::Approx(71.0 / 6.0));
   for (std::size_t k = 0; k + 1 < s.size(); ++k)
   {
      CHECK(s[k].p > 3.0);
      CHECK(s[k + 1].first - s[k].first > 6.0 - 2.0 * 1.5);
   }
}

TEST_CASE("strong sequence")
{
   const auto s = strong_seq(-0.5, 1.75, 3);
   CHECK(s[0].p == doctest::Approx(1.0));
   CHECK(s[0].r == doctest::Approx(0.0).scale(1.0));
   CHECK(s[1].first == doctest::Approx(-1.0 / 3.0));
   CHECK(s[1].p == doctest::Approx(7.0 / 6.0));

   const auto t = strong_seq(0.0, 1.75, 60);
   CHECK(t[0].p == doctest::Approx(1.5));
   for (std::size_t k = 0; k < t.size(); ++k)
   {
      CHECK(std::abs(t[k].p / (std::pow(7.0 / 6.0, k) * t[0].p) - 1.0) <= 1e-12);
      CHECK(t[k].first > -1.0);
      CHECK(t[k].r > 0.0);
      if (k > 0)
      {
         CHECK(t[k].p > t[k - 1].p);
         CHECK(t[k].first > t[k - 1].first);
      }
   }
}

TEST_CASE("verify_regime_lemmas finds no violations and is reproducible")
{
   const VerifyReport a = verify_regime_lemmas(200, 42);
   CHECK(a.ok());
   CHECK(a.moderate_samples == 200);
   CHECK(a.moderate_hat_samples == 200);
   CHECK(a.strong_samples == 200);
   CHECK(a.boundary_cases == 8);
   for (const auto& v : a.violations)
   {
      MESSAGE(v.regime, " ", v.property, " alpha=", v.alpha, " k=", v.k, " ", v.detail);
   }

   const VerifyReport b = verify_regime_lemmas(200, 42);
   CHECK(b.violations.size() == a.violations.size());
   CHECK(b.r0_zero_cases == a.r0_zero_cases);

   const auto x = strong_seq(0.3, 1.8, 50);
   const auto y = strong_seq(0.3, 1.8, 50);
   for (std::size_t k = 0; k < x.size(); ++k)
   {
      CHECK(x[k].p == y[k].p);
      CHECK(x[k].first == y[k].first);
   }
   CHECK_THROWS_AS(verify_regime_lemmas(1, 1, 0), Error);
}
