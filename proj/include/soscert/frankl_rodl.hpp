#pragma once

#include "soscert/proof_dag.hpp"

namespace soscert {
namespace franklrodl {

// Graph on {-1,1}^n joining pairs at Hamming distance exactly d = (1-gamma)n.
struct FRInstance {
  unsigned n = 0;
  BigRational gamma;
  unsigned d = 0;
};
FRInstance make_instance(unsigned n, const BigRational& gamma);

// Eigenvalue of the distance-d averaging operator on Fourier level j:
// sum_i (-1)^i C(j,i) C(n-j,d-i) / C(n,d).
BigRational sd_eigenvalue(unsigned n, unsigned d, unsigned j);

struct SpectralGap {
  unsigned n = 0, d = 0;
  BigRational rho;                    // noise rate of the comparison operator
  std::vector<BigRational> lambda_sd;   // S_d eigenvalues per level
  std::vector<BigRational> lambda_sdp;  // S'_d = (S_d + S_{d+1})/2
  std::vector<BigRational> delta;       // lambda_sdp(j) - rho^j
  BigRational delta_max;                // max_j |delta(j)|
};
SpectralGap spectral_gap(unsigned n, unsigned d, const BigRational& rho);

enum class DeltaMode { Tight, Max };

// Constants (c, theta) of the spectral-transfer step: the certificate needs
// 2c - (rho^j + rho^{n-j}) + theta (lambda'(j) + lambda'(n-j)) >= 0 on every
// complementation pair class. Tight solves the tiny exact LP; Max mirrors the
// single-delta bound with theta = 1.
struct TransferConstants {
  BigRational c;
  BigRational theta;
  DeltaMode mode = DeltaMode::Tight;
};
TransferConstants transfer_constants(const SpectralGap& gap, DeltaMode mode);

unsigned default_power(const BigRational& gamma);  // k = ceil(1/(4 gamma))

struct RefutationConfig {
  BigRational alpha;
  unsigned k = 0;  // 0 = derive from gamma
  DeltaMode mode = DeltaMode::Tight;
};

struct Refutation {
  ProofDag dag;
  ConstraintSystem system;
  TransferConstants constants;
  unsigned k = 0;
  BigRational rho;
};

struct InfeasibleThreshold : std::runtime_error {
  InfeasibleThreshold(const std::string& what, BigRational alpha)
      : std::runtime_error(what), min_alpha(std::move(alpha)) {}
  BigRational min_alpha;  // smallest granular alpha that would be refutable
};

// alpha^{4k} > 2^{4k-1} c is the exact feasibility condition.
bool refutable(const FRInstance& inst, const RefutationConfig& cfg);

// Degree-4k refutation of {f(x)^2 = f(x), f(x)f(y) = 0 on edges, E[f] >= alpha}
// concluding -1 >= 0. Restriction means enter through definitional equality
// axioms so every node stays small. Throws InfeasibleThreshold below the bound.
Refutation build_refutation(const FRInstance& inst, const RefutationConfig& cfg);

// Smallest multiple of `granularity` that is refutable (may exceed 1, meaning
// no admissible density can be refuted at desk scale).
BigRational min_refutable_density(const FRInstance& inst, DeltaMode mode,
                                  const BigRational& granularity = BigRational(1, 1u << 20));

// Exhaustive maximum independent set of FR(n, gamma); exact for n <= 6.
unsigned max_independent_set(unsigned n, unsigned d);

// Parity views: element [i][x] is f(x) when weight(x) = i mod 2, else zero.
std::vector<std::vector<SparsePoly>> parity_views(const SpaceRef& space, unsigned n);

std::string spectrum_csv(const SpectralGap& gap);

}  // namespace franklrodl
}  // namespace soscert
