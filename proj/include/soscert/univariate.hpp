#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "soscert/polynomial.hpp"
#include "soscert/rational.hpp"

namespace soscert {

// Dense univariate polynomial, coefficient of t^i at index i, trimmed so the
// back entry is nonzero (empty vector = zero polynomial).
using UniPoly = std::vector<BigRational>;

UniPoly uv_trim(UniPoly p);
int uv_degree(const UniPoly& p);  // -1 for zero
BigRational uv_eval(const UniPoly& p, const BigRational& x);
UniPoly uv_add(const UniPoly& a, const UniPoly& b);
UniPoly uv_sub(const UniPoly& a, const UniPoly& b);
UniPoly uv_mul(const UniPoly& a, const UniPoly& b);
UniPoly uv_scale(const UniPoly& a, const BigRational& c);
UniPoly uv_derivative(const UniPoly& p);
// Exact division; throws if the remainder is nonzero.
UniPoly uv_divexact(const UniPoly& a, const UniPoly& b);
std::pair<UniPoly, UniPoly> uv_divmod(const UniPoly& a, const UniPoly& b);
// Primitive part with positive leading coefficient, and the rational content
// such that p = content * primitive.
std::pair<BigRational, UniPoly> uv_content_primitive(const UniPoly& p);
UniPoly uv_gcd(const UniPoly& a, const UniPoly& b);  // primitive, positive lc

// Yun square-free decomposition: p = content * prod factors[i].first ^
// factors[i].second with primitive square-free pairwise-coprime factors.
struct SquareFree {
  BigRational content;
  std::vector<std::pair<UniPoly, unsigned>> factors;
};
SquareFree uv_squarefree(const UniPoly& p);

// Signed-remainder Sturm chain and exact real-root counting.
struct SturmChain {
  std::vector<UniPoly> chain;
  int variations_at(const BigRational& x) const;
  int variations_at_neg_inf() const;
  int variations_at_pos_inf() const;
  int count_real_roots() const;                                       // on all of R
  int count_roots_in(const BigRational& a, const BigRational& b) const;  // (a, b]
};
SturmChain sturm_chain(const UniPoly& p);

// Isolating intervals (a,b] for the distinct real roots of a square-free p.
std::vector<std::pair<BigRational, BigRational>> uv_isolate_real_roots(const UniPoly& p);

struct NonnegVerdict {
  bool nonnegative = false;
  // A rational point with p < 0 when not nonnegative.
  std::optional<BigRational> witness;
};

// Exact decision of "p(t) >= 0 for all real t" for univariate p.
NonnegVerdict sturm_nonneg(const SparsePoly& p);
NonnegVerdict uv_sturm_nonneg(const UniPoly& p);

// Conversions. to_unipoly rejects polynomials in more than one variable; the
// optional reports which variable carried the polynomial (nullopt if constant).
std::pair<UniPoly, std::optional<VarId>> to_unipoly(const SparsePoly& p);
SparsePoly from_unipoly(const UniPoly& p, SpaceRef space, VarId var);

}  // namespace soscert
