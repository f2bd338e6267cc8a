#include <random>

#include "doctest.h"
#include "soscert/frankl_rodl.hpp"
#include "soscert/reverse.hpp"

using namespace soscert;
using namespace soscert::franklrodl;

TEST_SUITE_BEGIN("franklrodl");

TEST_CASE("instance validation") {
  FRInstance i1 = make_instance(4, BigRational(1, 2));
  CHECK(i1.d == 2);
  FRInstance i2 = make_instance(6, BigRational(1, 3));
  CHECK(i2.d == 4);
  FRInstance i3 = make_instance(8, BigRational(1, 4));
  CHECK(i3.d == 6);
  CHECK_THROWS_AS(make_instance(6, BigRational(1, 2)), std::invalid_argument);  // d odd
  CHECK_THROWS_AS(make_instance(4, BigRational(2, 3)), std::invalid_argument);  // gamma > 1/2
}

TEST_CASE("eigenvalues: pinned values and two independent routes") {
  CHECK(sd_eigenvalue(4, 2, 0) == 1);
  CHECK(sd_eigenvalue(4, 2, 1) == 0);  // 1 - 2d/n = 0
  CHECK(sd_eigenvalue(4, 2, 2) == BigRational(-1, 3));
  for (unsigned n : {4u, 6u, 8u}) {
    for (unsigned d = 1; d < n; ++d) {
      for (unsigned j = 0; j <= n; ++j) {
        // Route 2: apply S_d to chi_U at the all-plus point by enumeration.
        unsigned u_mask = (1u << j) - 1;
        BigRational total = 0;
        unsigned count = 0;
        for (unsigned flip = 0; flip < (1u << n); ++flip) {
          if (static_cast<unsigned>(std::popcount(flip)) != d) continue;
          ++count;
          total += (std::popcount(flip & u_mask) % 2) ? -1 : 1;
        }
        CHECK(sd_eigenvalue(n, d, j) == total / BigRational(count));
      }
    }
  }
  CHECK(sd_eigenvalue(4, 2, 1) == BigRational(1) - BigRational(2 * 2, 4));
}

TEST_CASE("operator application agrees with the Fourier route") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-9, 9);
  for (unsigned n : {3u, 5u, 8u}) {
    unsigned d = n / 2;
    std::vector<BigRational> f;
    for (unsigned p = 0; p < (1u << n); ++p) f.push_back(BigRational(num(rng), 4));
    // Direct neighborhood averaging.
    std::vector<BigRational> direct;
    for (unsigned x = 0; x < (1u << n); ++x) {
      BigRational acc = 0;
      unsigned count = 0;
      for (unsigned y = 0; y < (1u << n); ++y)
        if (static_cast<unsigned>(std::popcount(x ^ y)) == d) {
          acc += f[y];
          ++count;
        }
      direct.push_back(acc / BigRational(count));
    }
    // Through the spectrum.
    for (unsigned x = 0; x < (1u << n); ++x) {
      BigRational acc = 0;
      for (unsigned u = 0; u < (1u << n); ++u) {
        BigRational fhat = 0;
        for (unsigned y = 0; y < (1u << n); ++y) {
          BigRational v = f[y];
          if (std::popcount(u & y) % 2) v = -v;
          fhat += v;
        }
        fhat /= BigRational(1u << n);
        BigRational term =
            sd_eigenvalue(n, d, static_cast<unsigned>(std::popcount(u))) * fhat;
        if (std::popcount(u & x) % 2) term = -term;
        acc += term;
      }
      CHECK(acc == direct[x]);
    }
  }
}

TEST_CASE("spectral gaps and the dimension-4 level-1 value") {
  // n=4, d=2, rho'=0: delta(1) = (1/2)(1-2*2/4) + (1/2)(1-2*3/4) - 0 = -1/4.
  SpectralGap gap = spectral_gap(4, 2, BigRational(0));
  CHECK(gap.delta[0] == 0);
  CHECK(gap.delta[1] == BigRational(-1, 4));
  CHECK(gap.delta_max >= BigRational(1, 4));

  // delta(j) independently via <chi_U, S'_d chi_U> - rho^|U| for n <= 6.
  for (unsigned n : {4u, 6u}) {
    unsigned d = n == 4 ? 2 : 4;
    BigRational rho_prime = BigRational(1) - BigRational(2 * d, n);
    SpectralGap g = spectral_gap(n, d, rho_prime);
    for (unsigned j = 0; j <= n; ++j) {
      unsigned u_mask = (1u << j) - 1;
      // <chi_U, S'_d chi_U> = (S'_d chi_U)(x) chi_U(x) averaged; by symmetry
      // evaluate the eigenvalue directly at the all-plus point.
      auto avg_at = [&](unsigned dd) {
        BigRational total = 0;
        unsigned count = 0;
        for (unsigned flip = 0; flip < (1u << n); ++flip)
          if (static_cast<unsigned>(std::popcount(flip)) == dd) {
            ++count;
            total += (std::popcount(flip & u_mask) % 2) ? -1 : 1;
          }
        return total / BigRational(count);
      };
      BigRational inner = (avg_at(d) + avg_at(d + 1)) / 2;
      CHECK(g.delta[j] == inner - pow_rational(rho_prime, j));
    }
  }
}

TEST_CASE("parity views and the parity-killing structure") {
  for (unsigned n : {1u, 2u, 4u}) {
    SpaceRef space = reversecert::make_cube(n, false).space;
    auto views = parity_views(space, n);
    unsigned support0 = 0, support1 = 0;
    for (unsigned p = 0; p < (1u << n); ++p) {
      support0 += !views[0][p].is_zero();
      support1 += !views[1][p].is_zero();
    }
    CHECK(support0 + support1 == (1u << n));
    if (n == 2) CHECK(support0 == 2);
  }
  // <f0, S'_d f0> + <f1, S'_d f1> expands into edge monomials only (n=4, d=2).
  unsigned n = 4, d = 2;
  SpaceRef space = reversecert::make_cube(n, false).space;
  auto views = parity_views(space, n);
  SparsePoly total = SparsePoly::zero(space);
  for (unsigned i = 0; i < 2; ++i) {
    for (unsigned x = 0; x < (1u << n); ++x) {
      for (unsigned dd : {d, d + 1}) {
        BigRational w = BigRational(1, 2) / BigRational(binomial(n, dd)) / BigRational(1u << n);
        for (unsigned y = 0; y < (1u << n); ++y)
          if (static_cast<unsigned>(std::popcount(x ^ y)) == dd)
            total += (views[i][x] * views[i][y]).scaled(w);
      }
    }
  }
  for (const auto& [m, c] : total.terms()) {
    // every monomial is f_x f_y with hamming distance exactly d
    REQUIRE(m.factors().size() == 2);
    unsigned x = m.factors()[0].first, y = m.factors()[1].first;
    CHECK(static_cast<unsigned>(std::popcount(x ^ y)) == d);
    CHECK(c > 0);
  }
}

TEST_CASE("transfer constants") {
  // (6, 1/3): tight constants beat the single-delta bound.
  FRInstance inst = make_instance(6, BigRational(1, 3));
  BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, inst.n);
  SpectralGap gap = spectral_gap(inst.n, inst.d, rho_prime);
  TransferConstants tight = transfer_constants(gap, DeltaMode::Tight);
  TransferConstants loose = transfer_constants(gap, DeltaMode::Max);
  CHECK(tight.c <= loose.c);
  CHECK(tight.c == BigRational(65, 729));
  CHECK(loose.c == gap.delta_max);
  // Both satisfy every pair constraint.
  for (const TransferConstants& tc : {tight, loose}) {
    for (unsigned j = 0; 2 * j <= inst.n; ++j) {
      BigRational pair = 2 * tc.c -
                         (pow_rational(rho_prime, j) + pow_rational(rho_prime, inst.n - j)) +
                         tc.theta * (gap.lambda_sdp[j] + gap.lambda_sdp[inst.n - j]);
      CHECK(pair >= 0);
    }
  }
}

TEST_CASE("default power") {
  CHECK(default_power(BigRational(1, 2)) == 1);
  CHECK(default_power(BigRational(1, 3)) == 1);
  CHECK(default_power(BigRational(1, 4)) == 1);
  CHECK(default_power(BigRational(1, 5)) == 2);
  CHECK(default_power(BigRational(1, 8)) == 2);
  CHECK(default_power(BigRational(1, 9)) == 3);
}

TEST_CASE("refutation on FR(4, 1/2) is infeasible for every admissible density") {
  FRInstance inst = make_instance(4, BigRational(1, 2));
  CHECK_FALSE(refutable(inst, {BigRational(9, 10), 0, DeltaMode::Tight}));
  CHECK_FALSE(refutable(inst, {BigRational(1), 0, DeltaMode::Tight}));
  CHECK_THROWS_AS(build_refutation(inst, {BigRational(9, 10), 0, DeltaMode::Tight}),
                  InfeasibleThreshold);
  BigRational min_alpha = min_refutable_density(inst, DeltaMode::Tight);
  CHECK(min_alpha > 1);
}

TEST_CASE("refutation on FR(4, 1/2) with a permissive synthetic density bound") {
  // The pipeline itself is exercised end to end by pretending the density
  // could exceed 1; build_refutation rejects alpha > 1, so instead verify the
  // full machinery on FR(6,1/3) at alpha = 19/20 below.
  FRInstance inst = make_instance(4, BigRational(1, 2));
  BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, inst.n);
  TransferConstants tc = transfer_constants(spectral_gap(inst.n, inst.d, rho_prime),
                                            DeltaMode::Tight);
  CHECK(tc.c == BigRational(1, 8));
}

TEST_CASE("full refutation verifies on FR(6, 1/3)") {
  FRInstance inst = make_instance(6, BigRational(1, 3));
  RefutationConfig cfg{BigRational(19, 20), 0, DeltaMode::Tight};
  REQUIRE(refutable(inst, cfg));
  Refutation ref = build_refutation(inst, cfg);
  CHECK(ref.k == 1);
  CHECK(ref.rho == BigRational(1, 3));
  DagVerdict v = verify_dag(ref.dag, ref.system);
  CHECK_MESSAGE(v.valid, to_string(v.failure), " node ", v.failing_node, ": ", v.detail);
  CHECK(ref.dag.goal.poly == SparsePoly::constant(ref.dag.space, -1));

  // Below the threshold the builder must refuse with the exact minimum.
  RefutationConfig low{BigRational(9, 10), 0, DeltaMode::Tight};
  CHECK_FALSE(refutable(inst, low));
  CHECK_THROWS_AS(build_refutation(inst, low), InfeasibleThreshold);

  // Mutating the axiom system (dropping one edge) must invalidate the proof.
  ConstraintSystem weakened(ref.system.space());
  bool dropped = false;
  for (const auto& [label, r] : ref.system.equalities()) {
    if (!dropped && label.rfind("edge:", 0) == 0) {
      dropped = true;
      continue;
    }
    weakened.add_equality(label, r);
  }
  for (const auto& [label, q] : ref.system.inequalities()) weakened.add_inequality(label, q);
  DagVerdict bad = verify_dag(ref.dag, weakened);
  CHECK_FALSE(bad.valid);
  CHECK(bad.failure == DagFailure::UnknownLabel);
}

TEST_CASE("min refutable density agrees with feasibility bisection") {
  FRInstance inst = make_instance(6, BigRational(1, 3));
  BigRational g(1, 1u << 12);
  BigRational alpha = min_refutable_density(inst, DeltaMode::Tight, g);
  CHECK(refutable(inst, {alpha, 0, DeltaMode::Tight}));
  CHECK_FALSE(refutable(inst, {alpha - g, 0, DeltaMode::Tight}));
  // Independent path: bisection over the feasibility predicate itself.
  BigInt lo = 0, hi = 1;
  while (!refutable(inst, {BigRational(hi) * g, 0, DeltaMode::Tight})) hi <<= 1;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (refutable(inst, {BigRational(mid) * g, 0, DeltaMode::Tight}))
      hi = mid;
    else
      lo = mid;
  }
  CHECK(BigRational(hi) * g == alpha);
}

TEST_CASE("exhaustive independent sets") {
  // FR(4,1/2): {(all +), (all -), one weight-1, its complement} is independent.
  unsigned mis4 = max_independent_set(4, 2);
  CHECK(mis4 >= 4);
  CHECK(mis4 < 16);
  unsigned mis6 = max_independent_set(6, 4);
  CHECK(mis6 >= 2);
  // Soundness: the refutable density always exceeds the true density.
  CHECK(min_refutable_density(make_instance(4, BigRational(1, 2)), DeltaMode::Tight) >
        BigRational(mis4, 16));
  CHECK(min_refutable_density(make_instance(6, BigRational(1, 3)), DeltaMode::Tight) >
        BigRational(mis6, 64));
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("franklrodl");

TEST_CASE("threshold is non-increasing in n at fixed gamma") {
  // gamma = 1/2 admits even distances at n = 4 and n = 8.
  BigRational a4 = min_refutable_density(make_instance(4, BigRational(1, 2)), DeltaMode::Tight);
  BigRational a8 = min_refutable_density(make_instance(8, BigRational(1, 2)), DeltaMode::Tight);
  CHECK(a8 <= a4);
  CHECK(a8 < 1);  // FR(8,1/2) is refutable at desk scale
  CHECK(refutable(make_instance(8, BigRational(1, 2)), {BigRational(9, 10), 0, DeltaMode::Tight}));
}

TEST_CASE("max-mode transfer constants are valid but weaker") {
  for (unsigned n : {4u, 6u, 8u}) {
    BigRational gamma = n == 4 ? BigRational(1, 2) : (n == 6 ? BigRational(1, 3) : BigRational(1, 4));
    FRInstance inst = make_instance(n, gamma);
    BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, n);
    SpectralGap gap = spectral_gap(n, inst.d, rho_prime);
    TransferConstants max_tc = transfer_constants(gap, DeltaMode::Max);
    // Every pair weight stays nonnegative with the single-delta constant.
    for (unsigned j = 0; 2 * j <= n; ++j) {
      BigRational pair = 2 * max_tc.c -
                         (pow_rational(rho_prime, j) + pow_rational(rho_prime, n - j)) +
                         (gap.lambda_sdp[j] + gap.lambda_sdp[n - j]);
      CHECK(pair >= 0);
    }
    // The conservative threshold exceeds 1 on all three spec instances, so the
    // max-mode pipeline reports infeasibility for every admissible density.
    CHECK(min_refutable_density(inst, DeltaMode::Max) > 1);
  }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("franklrodl");

// Independent reconstruction of the spectral-transfer inequality with the
// conservative single-bound constants: c E[f] - sum_i <f_i, T f_i> >= 0 from
// the edge and Booleanity axioms plus squared Fourier forms. This exercises
// the max-mode certificate step even though the full refutation gate is
// infeasible on the small instances.
TEST_CASE("max-mode spectral transfer node verifies standalone") {
  const unsigned n = 4;
  FRInstance inst = make_instance(n, BigRational(1, 2));
  const unsigned pts = 1u << n;
  BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, n);
  SpectralGap gap = spectral_gap(n, inst.d, rho_prime);
  TransferConstants tc = transfer_constants(gap, DeltaMode::Max);
  REQUIRE(tc.c == gap.delta_max);

  SpaceRef space = reversecert::make_cube(n, false).space;
  auto parity = [&](unsigned p) { return static_cast<unsigned>(std::popcount(p)) & 1u; };
  ConstraintSystem system(space);
  for (unsigned p = 0; p < pts; ++p) {
    SparsePoly f = SparsePoly::variable(space, p);
    system.add_equality("bool:" + std::to_string(p), f * f - f);
  }
  for (unsigned x = 0; x < pts; ++x)
    for (unsigned y = x + 1; y < pts; ++y)
      if (static_cast<unsigned>(std::popcount(x ^ y)) == inst.d)
        system.add_equality("edge:" + std::to_string(x) + "," + std::to_string(y),
                            SparsePoly::variable(space, x) * SparsePoly::variable(space, y));

  DagBuilder builder(space, &system, 4);
  std::vector<uint32_t> edges;
  std::vector<BigRational> ecoeffs;
  for (const auto& [label, r] : system.equalities())
    if (label.rfind("edge:", 0) == 0) {
      edges.push_back(builder.axiom(label));
      ecoeffs.push_back(BigRational(1, pts) / BigRational(binomial(n, inst.d)));
    }
  uint32_t z = builder.add(CombNode{std::move(edges), std::move(ecoeffs), {}});

  std::vector<uint32_t> children{z};
  std::vector<BigRational> coeffs{-tc.theta};
  for (unsigned p = 0; p < pts; ++p) {
    children.push_back(builder.axiom("bool:" + std::to_string(p)));
    coeffs.push_back(-tc.c / BigRational(pts));
  }
  SosList squares;
  for (unsigned view = 0; view < 2; ++view) {
    for (unsigned u_mask = 0; u_mask < pts; ++u_mask) {
      unsigned comp = (pts - 1) & ~u_mask;
      if (u_mask > comp) continue;
      unsigned j = static_cast<unsigned>(std::popcount(u_mask));
      BigRational w = 2 * tc.c - (pow_rational(rho_prime, j) + pow_rational(rho_prime, n - j)) +
                      tc.theta * (gap.lambda_sdp[j] + gap.lambda_sdp[n - j]);
      REQUIRE(w >= 0);
      if (w == 0) continue;
      std::vector<SparsePoly::Term> terms;
      for (unsigned x = 0; x < pts; ++x) {
        if (parity(x) != view) continue;
        bool neg = std::popcount(u_mask & x) & 1;
        terms.push_back({Monomial::variable(x), BigRational(neg ? -1 : 1, pts)});
      }
      squares.push_back({w, SparsePoly::from_terms(space, std::move(terms))});
    }
  }
  uint32_t sp = builder.add(CombNode{std::move(children), std::move(coeffs), std::move(squares)});

  // Expected conclusion built from first principles.
  SparsePoly mean = SparsePoly::zero(space);
  for (unsigned p = 0; p < pts; ++p) mean += SparsePoly::variable(space, p);
  mean = mean.scaled(BigRational(1, pts));
  SparsePoly tsum = SparsePoly::zero(space);
  for (unsigned x = 0; x < pts; ++x)
    for (unsigned y = 0; y < pts; ++y) {
      if (parity(x) != parity(y)) continue;
      tsum += (SparsePoly::variable(space, x) * SparsePoly::variable(space, y))
                  .scaled(reversecert::correlation_weight(n, std::popcount(x ^ y), rho_prime));
    }
  CHECK(builder.conclusion(sp).poly == mean.scaled(tc.c) - tsum);
  ProofDag dag = builder.finish(sp);
  CHECK(verify_dag(dag, system).valid);
}

TEST_SUITE_END();
