#pragma once

#include "soscert/proof_dag.hpp"
#include "soscert/two_point.hpp"

namespace soscert {
namespace reversecert {

// Formal unknowns f(x) (and optionally g(x)) for every x in {-1,1}^n. Points
// are indexed 0..2^n-1 in lexicographic order with +1 < -1 per coordinate;
// coordinate 0 is the most significant bit of the index, bit 0 = "+1".
struct CubeIndeterminates {
  SpaceRef space;
  unsigned n = 0;
  bool with_g = false;
  unsigned points() const { return 1u << n; }
  VarId f_var(unsigned point) const { return point; }
  VarId g_var(unsigned point) const { return points() + point; }
};

std::string point_label(unsigned n, unsigned point);
CubeIndeterminates make_cube(unsigned n, bool with_g);

struct CorrelatedExpectation {
  unsigned n = 0, k = 0;
  BigRational rho;
  SparsePoly lhs;  // E over rho-correlated (x,y) of f(x)^{2k} g(y)^{2k}
  SparsePoly rhs;  // E[f]^{2k} E[g]^{2k}
};

CorrelatedExpectation build_expectations(const CubeIndeterminates& cube, unsigned k,
                                         const BigRational& rho);

// Space {F0, F1, G0, G1} of the dimension-one instance.
SpaceRef base_space();

// The two-point certificate transported to the four point values through
// (mu, alpha, nu, beta) = ((F0+F1)/2, (F0-F1)/2, (G0+G1)/2, (G0-G1)/2).
SOSCertificate base_case_certificate(unsigned k, const BigRational& rho);

// Degree-4k proof of E[f^{2k} g^{2k}] >= E[f]^{2k} E[g]^{2k} by induction on
// the last coordinate: one statement node per restriction pair, the base
// inequality applied to the restriction means inline, and 4^{n-1} certificate
// leaves at dimension one.
ProofDag inductive_certificate(unsigned n, unsigned k, const BigRational& rho);

// Per-pair weight prod_i (1 + rho x_i y_i)/4 for m coordinates with h
// disagreeing positions.
BigRational correlation_weight(unsigned m, unsigned disagreements, const BigRational& rho);

}  // namespace reversecert
}  // namespace soscert
