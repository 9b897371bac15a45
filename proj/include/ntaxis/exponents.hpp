#pragma once

// Exponent recursions of the bootstrap arguments for the three chemotaxis
// regimes: weak (0 <= alpha <= 1), moderate (1 < alpha <= 3/2) and strong
// (3/2 < alpha < 2).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ntaxis::exponents {

enum class Regime
{
   weak,
   moderate,
   strong
};

/// Regime of alpha in [0, 2); alpha = 1 is weak, alpha = 3/2 is moderate.
Regime regime_of(double alpha);
std::string_view regime_name(Regime r);

/// One entry of a bootstrap sequence: (m_k, p_k, r_k), (mhat_k, phat_k,
/// rhat_k) or (q_k, p_k, r_k) depending on the recursion.
struct ExponentTriple
{
   int k = 0;
   double first = 0.0;
   double p = 0.0;
   double r = 0.0;
};

/// Exponent reached by one feedback step in the weak regime:
/// r + (2r/3 - 2 alpha + 1) - slack. Requires r >= 2, 0 <= alpha <= 1 and
/// 0 < slack < (2r/3 - 2 alpha + 1) - 1/4, so that the result exceeds r + 1/4.
double weak_feedback_p(double r, double alpha, double slack = 1e-6);

/// Exclusive supremum of the admissible gradient integrability p0 in the
/// weak regime, 3(3 - alpha)/alpha; std::nullopt (unbounded) at alpha = 0.
std::optional<double> p0_sup(double alpha);

/// p_k = m_k/2 + 7/2 - 2 alpha,  r_k = min(4 p_k/3 - 2, p_k - 1),
/// m_{k+1} = 2 p_k/3 + r_k + 2, starting from m_0 >= 2. Returns K triples.
std::vector<ExponentTriple> moderate_seq(double m0, double alpha, int count);

/// phat_k = mhat_k + 3 - 2 alpha, rhat_k = phat_k - 1,
/// mhat_{k+1} = 2 phat_k/3 + rhat_k + 2, starting from mhat_0 > 6.
std::vector<ExponentTriple> moderate_seq_hat(double mhat0, double alpha, int count);

/// p_k = q_k + 5 - 2 alpha, r_k = p_k - 1, q_{k+1} = 7 p_k/6 + 2 alpha - 5,
/// starting from q_0 > -1.
std::vector<ExponentTriple> strong_seq(double q0, double alpha, int count);

struct Violation
{
   std::string regime;
   std::string property;
   double alpha = 0.0;
   double seed = 0.0;
   int k = 0;
   std::string detail;
};

struct VerifyReport
{
   std::size_t moderate_samples = 0;
   std::size_t moderate_hat_samples = 0;
   std::size_t strong_samples = 0;
   std::size_t boundary_cases = 0;
   /// strong-regime seeds with p_0 = 1 exactly (r_0 = 0); logged, not failures
   std::size_t r0_zero_cases = 0;
   std::vector<Violation> violations;

   bool ok() const { return violations.empty(); }
};

/// Draws `samples` random admissible (alpha, seed) pairs per recursion, runs
/// `iterations` steps of each and checks every stated property. Also runs the
/// alpha -> 3/2+ boundary family with q0 = -0.99.
VerifyReport verify_regime_lemmas(std::size_t samples, std::uint64_t seed, int iterations = 200);

} // namespace ntaxis::exponents
