#pragma once

#include <stdexcept>
#include <vector>

#include "soscert/polynomial.hpp"
#include "soscert/univariate.hpp"

namespace soscert {

// One summand coeff * root^2 of an SOS expression; coeff is a nonnegative
// rational so everything stays in Q.
struct SosTerm {
  BigRational coeff;
  SparsePoly root;
};
using SosList = std::vector<SosTerm>;

SparsePoly sos_expand(const SosList& sos, const SpaceRef& space);
SosList sos_scaled(const SosList& sos, const BigRational& c);

struct DecomposeOptions {
  unsigned start_bits = 128;
  unsigned max_bits = 4096;
};
// max_bits from SOSCERT_PREC_CAP when set.
DecomposeOptions decompose_options_from_env();

struct NotNonnegativeError : std::runtime_error {
  explicit NotNonnegativeError(const std::string& what, BigRational witness_point)
      : std::runtime_error(what), witness(std::move(witness_point)) {}
  BigRational witness;
};

struct PrecisionExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational SOS decomposition of a nonnegative univariate polynomial.
// Nonnegativity is decided by Sturm first; the decomposition is obtained from
// numeric conjugate-root pairing plus an exact correction step, and the result
// is re-verified exactly (sum of squares equals p with zero residual).
SosList univariate_sos_decompose(const SparsePoly& p,
                                 DecomposeOptions opts = decompose_options_from_env());

// Homogeneous bivariate case: dehomogenize, decompose, rehomogenize each root.
SosList bivariate_homog_sos_decompose(const SparsePoly& p,
                                      DecomposeOptions opts = decompose_options_from_env());

// Exact rational LDL^T of a symmetric PSD matrix; returns false when the
// matrix is not PSD. On success m = sum_k d[k] * (unit column combination)^2.
bool ldlt_psd(std::vector<std::vector<BigRational>> m, std::vector<BigRational>& d,
              std::vector<std::vector<BigRational>>& l);

}  // namespace soscert
