#pragma once

#include "soscert/proof_dag.hpp"

namespace soscert {
namespace hypercert {

// Moments of one coordinate distribution: unit second moment, vanishing odd
// moments, even moments m_{2j} for j = 1..s.
struct MomentSequence {
  unsigned s = 0;
  std::vector<BigRational> even;  // even[j-1] = m_{2j}

  static MomentSequence rademacher(unsigned s);
  static MomentSequence gaussian(unsigned s);
  BigRational m2j(unsigned j) const;  // j = 0 gives 1
};

// (2s-1)^j C(s,j) / C(2s,2j).
BigRational moment_bound(unsigned s, unsigned j);

struct TableVerdict {
  bool ok = true;
  int failed_s = -1;
  int failed_j = -1;
};

// moment_bound equals (2j-1)!! * prod_{i=1}^{j-1} (2s-1)/(2s-(2i+1)), is
// >= (2j-1)!! and >= 1, for all 1 <= j <= s <= s_max.
TableVerdict check_remark_product_form(unsigned s_max);

struct TermwiseVerdict {
  bool ok = true;
  int violated_j = -1;
};

// C(2s,2j) rho^{2j} m_{2j} <= C(s,j) for every j; rho enters only through
// its square, which is the exact rational parameter.
TermwiseVerdict zfc_termwise_check(unsigned s, const BigRational& rho2,
                                   const MomentSequence& moments);

// Space {G1..Gv, H1..Hv} and the balanced-bipartition product certificate
// prod G_i H_i <= (1/C(v,v/2)) sum_{|T|=v/2} prod_T G^2 prod H^2.
SpaceRef amgm_space(unsigned v);
SOSCertificate amgm_lemma_certificate(unsigned v);

// sum_{v'} 2^{2v'}/C(2v',v') C(r,v') C(s-r,v') = C(2s,2r)/C(s,r) for all
// 0 <= r <= s <= s_max, plus the flat-recurrence form T(r+1) - T(r) = 0,
// T(0) = 1.
TableVerdict binomial_identity_check(unsigned s_max);

// Indeterminates fhat_i(S) for i in [s], S subseteq [n].
struct FourierIndeterminates {
  SpaceRef space;
  unsigned n = 0, s = 0;
  VarId coeff(unsigned i, unsigned subset_mask) const;
};
FourierIndeterminates make_fourier(unsigned n, unsigned s);

// Degree-2s proof of E[prod_i (T_rho f_i)^2] <= prod_i E[f_i^2] by induction
// on the split coordinate, with product-bound and moment-slack steps carried
// by explicit moment-Gram squares. Moments must be PSD-realizable.
ProofDag hypercon_certificate(unsigned n, unsigned s, const BigRational& rho2,
                              const MomentSequence& moments);

// Corollary wrappers.
// All functions identified: E[(T_rho f)^{2s}] <= E[f^2]^s.
ProofDag single_function_certificate(unsigned n, unsigned s, const BigRational& rho2,
                                     const MomentSequence& moments);
// Low-degree projection at the sharp noise rate (Rademacher moments):
// E[(P^{<=k} f)^{2s}] <= (2s-1)^{ks} (sum_S fhat(S)^2)^s.
ProofDag low_degree_projection_certificate(unsigned n, unsigned s, unsigned proj_k);

}  // namespace hypercert
}  // namespace soscert
