#pragma once

#include <optional>

#include "soscert/certificate.hpp"

namespace soscert {
namespace twopoint {

struct TwoPointParams {
  unsigned k = 1;
  BigRational rho;  // 0 <= rho <= 1 - 1/(2k)
};

BigRational rho_star(unsigned k);
void validate(const TwoPointParams& params);

// Fixed two-variable space {a, b} used by the base construction.
SpaceRef ab_space();
// Four-variable space {mu, nu, alpha, beta} for the homogenized certificate.
SpaceRef munu_space();

// The degree-4k target polynomial
//   (1/4+rho/4)((1+a)^{2k}(1+b)^{2k} + (1-a)^{2k}(1-b)^{2k})
// + (1/4-rho/4)((1+a)^{2k}(1-b)^{2k} + (1-a)^{2k}(1+b)^{2k}) - 1.
SparsePoly build_P(const TwoPointParams& params);

struct RationalFunction {
  SparsePoly numerator;
  SparsePoly denominator;
};

struct QFamily {
  unsigned k = 0;
  std::vector<SparsePoly> q;       // Q_{k,i} at rho = rho*(k), univariate in t
  std::vector<SparsePoly> qtilde;  // same coefficients with rho set to 0
};

// Univariate space {t} shared by the Q families.
SpaceRef t_space();

// Q coefficients of P_k in the basis s^{2i} after r = a-b, s = a+b, t = ab.
// The defining identity sum_i Q_i(ab) (a+b)^{2i} = P_k is checked exactly
// before returning. rho_override exists for sharpness probes.
QFamily compute_Q(unsigned k, std::optional<BigRational> rho_override = std::nullopt);

// S_k(t) = sum_j C(2k,2j)(1-t)^{2k-2j}(-4t)^j / (1+t)^{2k}.
RationalFunction S_poly(unsigned k);

struct RecurrenceVerdict {
  bool ok = true;
  int failed_index = -1;
};

// (t+1)^2 S_{k+2} - 2(t^2-6t+1) S_{k+1} + (t+1)^2 S_k = 0 as an exact
// polynomial identity on numerators, for all 0 <= k <= k_max-2.
RecurrenceVerdict check_S_recurrence(unsigned k_max);

// (1+i)(1+k)Qt_{k+2,i+1} = (1+i)(2+k)(1+t)^2 Qt_{k+1,i+1} + (2+k)(2+2k-i)Qt_{k+1,i}
// for all 0 <= i <= k <= k_max-2.
RecurrenceVerdict check_qtilde_recurrence(unsigned k_max);

struct NonnegEvidence {
  bool nonnegative = false;       // Sturm verdict (the normative oracle)
  std::optional<BigRational> witness;  // point with value < 0 when rejected
  bool case1_ok = false;          // -1/(2k) + (2k-1)t >= 0 on [1/(2k(2k-1)), inf)
  bool case2_ok = false;          // q(t) endpoint signs + kappa expansion identity
  bool convexity_ok = false;      // Q = (1-rho*) Qt + rho* C(2k,2i)(1+t)^{2k-2i}
};

NonnegEvidence prove_Q0_nonneg(unsigned k);
NonnegEvidence prove_Qi_nonneg(unsigned k, unsigned i);

// Degree-6 Taylor truncation of cos used by the analytic cross-check notes.
SparsePoly kappa_poly(SpaceRef space, VarId x);

// SOS certificate for P_k >= 0 (no constraints). rho = rho*: through the Q
// decomposition; rho = 0: through the product structure; in between: exact
// convex combination. Verified before returning.
SOSCertificate twopoint_certificate(const TwoPointParams& params);

// Lifts a certificate for P_k(a,b) to the homogenized 4-variable inequality
// via R(a,b) -> mu^k nu^k R(alpha/mu, beta/nu). Requires per-variable degrees
// of every square root <= k; verified exactly before returning.
SOSCertificate homogenize_certificate(const SOSCertificate& cert, const TwoPointParams& params);

// The 4-variable homogenized target in {mu,nu,alpha,beta}.
SparsePoly homogenized_target(const TwoPointParams& params);

}  // namespace twopoint
}  // namespace soscert
