#include "ntaxis/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "ntaxis/error.hpp"

namespace ntaxis::exponents {

Regime regime_of(double alpha)
{
   if (!(alpha >= 0.0 && alpha < 2.0))
   {
      throw Error(fmt::format("alpha must satisfy 0 <= alpha < 2 (got {})", alpha));
   }
   if (alpha <= 1.0)
   {
      return Regime::weak;
   }
   return alpha <= 1.5 ? Regime::moderate : Regime::strong;
}

std::string_view regime_name(Regime r)
{
   switch (r)
   {
   case Regime::weak:
      return "weak";
   case Regime::moderate:
      return "moderate";
   case Regime::strong:
      return "strong";
   }
   return "unknown";
}

double weak_feedback_p(double r, double alpha, double slack)
{
   if (!(r >= 2.0))
   {
      throw Error(fmt::format("weak feedback needs r >= 2 (got {})", r));
   }
   if (!(alpha >= 0.0 && alpha <= 1.0))
   {
      throw Error(fmt::format("weak feedback needs 0 <= alpha <= 1 (got {})", alpha));
   }
   if (!(slack > 0.0))
   {
      throw Error("slack must be positive");
   }
   const double increment = 2.0 * r / 3.0 - 2.0 * alpha + 1.0;
   const double p = r + increment - slack;
   if (!(p > r + 0.25))
   {
      throw Error(fmt::format("slack {} too large: p = {} does not exceed r + 1/4", slack, p));
   }
   return p;
}

std::optional<double> p0_sup(double alpha)
{
   if (!(alpha >= 0.0 && alpha <= 1.0))
   {
      throw Error(fmt::format("p0 is defined for 0 <= alpha <= 1 (got {})", alpha));
   }
   if (alpha == 0.0)
   {
      return std::nullopt;
   }
   return 3.0 * (3.0 - alpha) / alpha;
}

namespace {

void require_count(int count)
{
   if (count < 0)
   {
      throw Error("sequence length must be nonnegative");
   }
}

} // namespace

std::vector<ExponentTriple> moderate_seq(double m0, double alpha, int count)
{
   require_count(count);
   std::vector<ExponentTriple> out;
   out.reserve(static_cast<std::size_t>(count));
   double m = m0;
   for (int k = 0; k < count; ++k)
   {
      const double p = m / 2.0 + 3.5 - 2.0 * alpha;
      // Single final division keeps rational values like 2/3 correctly rounded.
      const double r = std::min((4.0 * p - 6.0) / 3.0, p - 1.0);
      out.push_back({k, m, p, r});
      m = (2.0 * p + 3.0 * r + 6.0) / 3.0;
   }
   return out;
}

std::vector<ExponentTriple> moderate_seq_hat(double mhat0, double alpha, int count)
{
   require_count(count);
   std::vector<ExponentTriple> out;
   out.reserve(static_cast<std::size_t>(count));
   double m = mhat0;
   for (int k = 0; k < count; ++k)
   {
      const double p = m + 3.0 - 2.0 * alpha;
      const double r = p - 1.0;
      out.push_back({k, m, p, r});
      m = (2.0 * p + 3.0 * r + 6.0) / 3.0;
   }
   return out;
}

std::vector<ExponentTriple> strong_seq(double q0, double alpha, int count)
{
   require_count(count);
   std::vector<ExponentTriple> out;
   out.reserve(static_cast<std::size_t>(count));
   double q = q0;
   for (int k = 0; k < count; ++k)
   {
      const double p = q + 5.0 - 2.0 * alpha;
      out.push_back({k, q, p, p - 1.0});
      q = 7.0 * p / 6.0 + 2.0 * alpha - 5.0;
   }
   return out;
}

// ---------------------------------------------------------------------------

namespace {

// Slack for comparisons that hold with equality in exact arithmetic.
constexpr double kRoundoff = 1e-12;

bool leq(double a, double b) { return a <= b + kRoundoff * std::max({1.0, std::abs(a), std::abs(b)}); }

class Checker
{
public:
   Checker(VerifyReport& report, std::string regime, double alpha, double seed)
       : report_(report), regime_(std::move(regime)), alpha_(alpha), seed_(seed)
   {
   }

   void expect(bool ok, std::string_view property, int k, std::string detail = {})
   {
      if (!ok)
      {
         report_.violations.push_back(
             {regime_, std::string(property), alpha_, seed_, k, std::move(detail)});
      }
   }

private:
   VerifyReport& report_;
   std::string regime_;
   double alpha_;
   double seed_;
};

void check_moderate(VerifyReport& report, double alpha, double m0, int iterations)
{
   Checker check(report, "moderate", alpha, m0);
   const auto seq = moderate_seq(m0, alpha, iterations + 1);
   const double c_threshold = 24.0 - 12.0 * alpha;
   bool reached = false;
   for (int k = 0; k < iterations; ++k)
   {
      const auto& cur = seq[k];
      const double m_next = seq[k + 1].first;
      check.expect(cur.p > 1.0, "a) p_k > 1", k, fmt::format("p_k={}", cur.p));
      check.expect(leq(1.5 * (cur.r + 2.0), m_next), "a) 3/2 (r_k + 2) <= m_(k+1)", k,
                   fmt::format("r_k={} m_(k+1)={}", cur.r, m_next));
      if (cur.p > 3.0 && m_next > 6.0)
      {
         reached = true;
      }
      // Part c) is only decidable in floating point when p_k clears the
      // threshold by more than rounding; p_k converges to it from either side.
      if (cur.p - c_threshold > 1e-9 * std::max(1.0, cur.p))
      {
         check.expect(m_next < cur.first, "c) m_(k+1) < m_k when p_k > 24 - 12 alpha", k,
                      fmt::format("p_k={} m_k={} m_(k+1)={}", cur.p, cur.first, m_next));
      }
   }
   check.expect(reached, "b) some k0 has p_k0 > 3 and m_(k0+1) > 6", iterations);
}

void check_moderate_hat(VerifyReport& report, double alpha, double mhat0, int iterations)
{
   Checker check(report, "moderate_hat", alpha, mhat0);
   const auto seq = moderate_seq_hat(mhat0, alpha, iterations + 1);
   const double floor_increment = 6.0 - 2.0 * alpha;
   for (int k = 0; k < iterations; ++k)
   {
      const auto& cur = seq[k];
      const double m_next = seq[k + 1].first;
      check.expect(cur.p > 3.0, "a) phat_k > 3", k, fmt::format("phat_k={}", cur.p));
      check.expect(leq(1.5 * (cur.r + 2.0), m_next), "a) 3/2 (rhat_k + 2) <= mhat_(k+1)", k);
      check.expect(m_next - cur.first > floor_increment, "c) increment > 6 - 2 alpha", k,
                   fmt::format("increment={}", m_next - cur.first));
      check.expect(seq[k + 1].p > cur.p, "c) phat strictly increasing", k);
      check.expect(m_next >= mhat0 + (k + 1) * floor_increment, "c) divergence floor", k);
   }
   // Any bound B is passed after at most ceil((B - mhat0) / (6 - 2 alpha)) steps.
   const double bound = 1e6;
   const int steps = static_cast<int>(std::ceil((bound - mhat0) / floor_increment));
   if (steps <= iterations)
   {
      check.expect(seq[steps].first > bound, "c) exceeds 1e6 within the floor estimate", steps);
   }
}

void check_strong(VerifyReport& report, double alpha, double q0, int iterations)
{
   Checker check(report, "strong", alpha, q0);
   const auto seq = strong_seq(q0, alpha, iterations + 1);
   const double p0 = seq[0].p;
   if (p0 == 1.0)
   {
      ++report.r0_zero_cases;
   }
   for (int k = 0; k <= iterations; ++k)
   {
      const auto& cur = seq[k];
      const double exact = std::pow(7.0 / 6.0, k) * p0;
      check.expect(std::abs(cur.p - exact) <= 1e-12 * std::abs(exact), "p_k = (7/6)^k p_0", k,
                   fmt::format("p_k={} expected={}", cur.p, exact));
      if (k < iterations)
      {
         check.expect(seq[k + 1].first > cur.first, "q_k strictly increasing", k);
         check.expect(seq[k + 1].p > cur.p, "p_k strictly increasing", k);
      }
      if (p0 >= 1.0)
      {
         check.expect(cur.first > -1.0, "q_k > -1", k, fmt::format("q_k={}", cur.first));
      }
      if (cur.p > 1.0)
      {
         check.expect(cur.r > 0.0, "r_k > 0 where p_k > 1", k);
      }
   }
   if (p0 < 100.0)
   {
      const int steps = static_cast<int>(std::ceil(std::log(100.0 / p0) / std::log(7.0 / 6.0)));
      if (steps <= iterations)
      {
         check.expect(seq[steps].p >= 100.0 * (1.0 - kRoundoff),
                      "p_k reaches 100 within ceil(log_(7/6)(100/p_0)) steps", steps);
      }
   }
}

} // namespace

VerifyReport verify_regime_lemmas(std::size_t samples, std::uint64_t seed, int iterations)
{
   if (iterations < 1)
   {
      throw Error("verification needs at least one iteration");
   }
   VerifyReport report;
   std::mt19937_64 rng(seed);
   std::uniform_real_distribution<double> unit(0.0, 1.0);

   for (std::size_t i = 0; i < samples; ++i)
   {
      // alpha in (1, 3/2], m0 in [2, 40]
      const double alpha = 1.5 - 0.5 * unit(rng);
      const double m0 = 2.0 + 38.0 * unit(rng);
      check_moderate(report, alpha, m0, iterations);
      ++report.moderate_samples;
   }
   for (std::size_t i = 0; i < samples; ++i)
   {
      const double alpha = 1.5 - 0.5 * unit(rng);
      const double mhat0 = 40.0 - 34.0 * unit(rng); // (6, 40]
      check_moderate_hat(report, alpha, mhat0, iterations);
      ++report.moderate_hat_samples;
   }
   for (std::size_t i = 0; i < samples; ++i)
   {
      // alpha in (3/2, 2), q0 in (-1, 5]
      double alpha = 1.5 + 0.5 * unit(rng);
      if (alpha <= 1.5)
      {
         alpha = std::nextafter(1.5, 2.0);
      }
      const double q0 = 5.0 - 6.0 * unit(rng);
      check_strong(report, alpha, q0, iterations);
      ++report.strong_samples;
   }
   for (int e = 1; e <= 8; ++e)
   {
      check_strong(report, 1.5 + std::pow(10.0, -e), -0.99, iterations);
      ++report.boundary_cases;
   }
   return report;
}

} // namespace ntaxis::exponents
