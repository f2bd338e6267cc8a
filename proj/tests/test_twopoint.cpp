#include "doctest.h"
#include "soscert/two_point.hpp"

using namespace soscert;
using namespace soscert::twopoint;

namespace {

SparsePoly a_var() { return SparsePoly::variable(ab_space(), 0); }
SparsePoly b_var() { return SparsePoly::variable(ab_space(), 1); }
SparsePoly t_var() { return SparsePoly::variable(t_space(), 0); }
SparsePoly t_const(long c) { return SparsePoly::constant(t_space(), BigRational(c)); }

// Independent extraction of the Q family: evaluate P_k at many rational
// (a, b) pairs, solve the Vandermonde system in s^2 per fixed t, and
// interpolate each Q_i from its values. Shares no code with compute_Q.
std::vector<std::vector<BigRational>> q_values_by_interpolation(unsigned k,
                                                                const std::vector<BigRational>& ts) {
  SparsePoly p = build_P({k, rho_star(k)});
  std::vector<std::vector<BigRational>> rows;  // rows[ti][i] = Q_i(t)
  for (const BigRational& t : ts) {
    // For fixed t pick k+1 values of s via a = s/2 + u, b = s/2 - u with
    // u^2 = s^2/4 - t; instead parametrize directly: choose a, set b so that
    // a*b = t happens only for special pairs. Simpler: a free, b = t/a.
    std::vector<BigRational> s2s, values;
    BigRational a = 1;
    while (s2s.size() < k + 1) {
      if (a != 0 && t != 0) {
        BigRational b = t / a;
        BigRational s2 = (a + b) * (a + b);
        bool fresh = true;
        for (const auto& seen : s2s) fresh = fresh && seen != s2;
        if (fresh) {
          s2s.push_back(s2);
          values.push_back(p.eval({{0, a}, {1, b}}));
        }
      } else if (t == 0) {
        BigRational b = 0;
        BigRational s2 = a * a;
        bool fresh = true;
        for (const auto& seen : s2s) fresh = fresh && seen != s2;
        if (fresh) {
          s2s.push_back(s2);
          values.push_back(p.eval({{0, a}, {1, b}}));
        }
      }
      a += 1;
    }
    // Solve sum_i row[i] * s2^i = value by Gaussian elimination.
    const std::size_t n = k + 1;
    std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
      BigRational pow = 1;
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] = pow;
        pow *= s2s[r];
      }
      m[r][n] = values[r];
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        BigRational f = m[r][col] / m[col][col];
        for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
      }
    }
    std::vector<BigRational> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = m[i][n] / m[i][i];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_SUITE_BEGIN("twopoint");

TEST_CASE("build_P pins the block weights") {
  // k=1, rho=1/2: P = a^2 b^2 + a^2 + 2ab + b^2 = (ab)^2 + (a+b)^2.
  SparsePoly p1 = build_P({1, BigRational(1, 2)});
  SparsePoly expect = (a_var() * b_var()).pow(2) + (a_var() + b_var()).pow(2);
  CHECK(p1 == expect);

  // k=3, rho=5/6 gives block weights 11/24 and 1/24.
  CHECK((BigRational(1) + BigRational(5, 6)) / 4 == BigRational(11, 24));
  CHECK((BigRational(1) - BigRational(5, 6)) / 4 == BigRational(1, 24));

  for (unsigned k = 1; k <= 4; ++k) {
    for (const BigRational& rho : {BigRational(0), rho_star(k) / 3, rho_star(k)}) {
      SparsePoly p = build_P({k, rho});
      CHECK(p.eval({{0, BigRational(0)}, {1, BigRational(0)}}) == 0);
      CHECK(p.degree() == static_cast<int>(4 * k));
    }
  }

  // P_1(1,1) = (3/8)*16 - 1 = 5 at rho = 1/2.
  CHECK(p1.eval({{0, BigRational(1)}, {1, BigRational(1)}}) == 5);

  CHECK_THROWS_AS(build_P({1, BigRational(3, 4)}), std::invalid_argument);
}

TEST_CASE("compute_Q matches the closed small cases") {
  QFamily f1 = compute_Q(1);
  CHECK(f1.q[0] == t_var() * t_var());
  CHECK(f1.q[1] == t_const(1));
  QFamily f2 = compute_Q(2);
  CHECK(f2.q[0] == t_var().pow(4) + (t_var() * t_var()).scaled(14));
  for (unsigned k = 1; k <= 10; ++k) CHECK(compute_Q(k).qtilde[k] == t_const(1));
}

TEST_CASE("Q family agrees with evaluation-interpolation oracle") {
  for (unsigned k : {1u, 2u, 3u, 4u}) {
    QFamily fam = compute_Q(k);
    std::vector<BigRational> ts{BigRational(0), BigRational(1), BigRational(-2), BigRational(1, 2),
                                BigRational(3), BigRational(-5, 3), BigRational(7),
                                BigRational(-9, 2), BigRational(11)};
    ts.resize(2 * k + 2);
    auto rows = q_values_by_interpolation(k, ts);
    for (std::size_t ti = 0; ti < ts.size(); ++ti)
      for (unsigned i = 0; i <= k; ++i)
        CHECK(fam.q[i].eval({{0, ts[ti]}}) == rows[ti][i]);
  }
}

TEST_CASE("Qi-sum identity holds for k <= 8") {
  for (unsigned k = 1; k <= 8; ++k) CHECK_NOTHROW(compute_Q(k));
}

TEST_CASE("S_poly initial values and recurrence") {
  CHECK(S_poly(0).numerator == t_const(1));
  SparsePoly n1 = S_poly(1).numerator;
  CHECK(n1 == t_var() * t_var() - t_var().scaled(6) + t_const(1));
  CHECK(check_S_recurrence(2).ok);
  CHECK(check_S_recurrence(10).ok);
  CHECK(check_S_recurrence(32).ok);

  // Mutating the middle coefficient (-2 -> -3) must break it at k = 0.
  SparsePoly lhs_mut =
      (t_var() + t_const(1)).pow(2) * S_poly(2).numerator -
      (t_var() * t_var() - t_var().scaled(6) + t_const(1)).scaled(3) *
          (t_var() + t_const(1)).pow(2) * S_poly(1).numerator +
      (t_var() + t_const(1)).pow(6) * S_poly(0).numerator;
  CHECK_FALSE(lhs_mut.is_zero());

  // S_3 satisfies the recurrence at t = 2 numerically.
  auto eval_S = [](unsigned k, const BigRational& t) {
    RationalFunction s = S_poly(k);
    return s.numerator.eval({{0, t}}) / s.denominator.eval({{0, t}});
  };
  BigRational t(2);
  CHECK(pow_rational(t + 1, 2) * eval_S(3, t) -
            BigRational(2) * (t * t - 6 * t + 1) * eval_S(2, t) +
            pow_rational(t + 1, 2) * eval_S(1, t) ==
        0);
}

TEST_CASE("Qtilde recurrence for k <= 10") {
  CHECK(check_qtilde_recurrence(10).ok);
}

TEST_CASE("Q nonnegativity evidence") {
  for (unsigned k = 1; k <= 8; ++k) {
    NonnegEvidence e0 = prove_Q0_nonneg(k);
    CHECK(e0.nonnegative);
    CHECK(e0.case1_ok);
    CHECK(e0.case2_ok);
    for (unsigned i = 1; i <= k; ++i) {
      NonnegEvidence ei = prove_Qi_nonneg(k, i);
      CHECK(ei.nonnegative);
      CHECK(ei.convexity_ok);
    }
  }
  // Case-2 endpoint value at k = 2: direct evaluation of the quadratic at
  // t = 1/12 equals (4k^2/(45(2k-1)^2)) * 187 = 16*187/405 = 2992/405.
  BigRational t(1, 12);
  BigRational q_end = BigRational(-128, 45) * 64 * t * t -
                      (BigRational(64, 45) * 2 - BigRational(16, 3)) * 16 * t +
                      (BigRational(8, 3) * 2 - 4) * 4;
  CHECK(q_end == BigRational(2992, 405));
  CHECK(q_end == BigRational(16, 405) * 187);
}

TEST_CASE("sharpness probe: rho* replaced by 1/4 at k=1") {
  QFamily probe = compute_Q(1, BigRational(1, 4));
  CHECK(probe.q[0] == t_var() * t_var() - t_var());
  NonnegVerdict v = sturm_nonneg(probe.q[0]);
  CHECK_FALSE(v.nonnegative);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness > 0);
  CHECK(*v.witness < 1);
  // The certificate pipeline must refuse to emit a certificate from it.
  CHECK_THROWS_AS(univariate_sos_decompose(probe.q[0]), NotNonnegativeError);
}

TEST_CASE("kappa polynomial") {
  SpaceRef xs = IndeterminateSpace::make({"x"});
  SparsePoly kp = kappa_poly(xs, 0);
  CHECK(kp.coefficient(Monomial()) == 1);
  CHECK(kp.coefficient(Monomial::variable(0, 2)) == BigRational(-1, 2));
  CHECK(kp.coefficient(Monomial::variable(0, 4)) == BigRational(1, 24));
  CHECK(kp.coefficient(Monomial::variable(0, 6)) == BigRational(-1, 720));
}

TEST_CASE("twopoint certificates across the rho range") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (const BigRational& rho : {BigRational(0), rho_star(k) / 3, rho_star(k)}) {
      SOSCertificate cert = twopoint_certificate({k, rho});
      CHECK(cert.degree_bound == static_cast<int>(4 * k));
      ConstraintSystem empty(ab_space());
      CHECK(verify_certificate(cert, empty).valid);
      for (const auto& [c, r] : cert.u0) {
        CHECK(r.degree_in(0) <= static_cast<int>(k));
        CHECK(r.degree_in(1) <= static_cast<int>(k));
      }
    }
  }
  // k=1 at rho*: exactly the two squares (ab)^2 + (a+b)^2.
  SOSCertificate c1 = twopoint_certificate({1, BigRational(1, 2)});
  SparsePoly sum = sos_expand(c1.u0, ab_space());
  CHECK(sum == (a_var() * b_var()).pow(2) + (a_var() + b_var()).pow(2));
}

TEST_CASE("homogenized certificates") {
  for (unsigned k = 1; k <= 2; ++k) {
    for (const BigRational& rho : {BigRational(0), rho_star(k)}) {
      TwoPointParams params{k, rho};
      SOSCertificate base = twopoint_certificate(params);
      SOSCertificate hom = homogenize_certificate(base, params);
      ConstraintSystem empty(munu_space());
      CHECK(verify_certificate(hom, empty).valid);
      CHECK(hom.degree_bound == static_cast<int>(4 * k));

      // Setting mu = nu = 1 recovers the two-point certificate's target.
      SpaceRef mn = munu_space();
      std::map<VarId, SparsePoly> dehom{
          {0, SparsePoly::constant(ab_space(), 1)},
          {1, SparsePoly::constant(ab_space(), 1)},
          {2, a_var()},
          {3, b_var()}};
      CHECK(hom.target.substitute(dehom, ab_space()) == base.target);
    }
  }
  // k=1: R = a+b lifts to nu*alpha + mu*beta.
  TwoPointParams p1{1, BigRational(1, 2)};
  SOSCertificate hom = homogenize_certificate(twopoint_certificate(p1), p1);
  SpaceRef mn = munu_space();
  SparsePoly mu = SparsePoly::variable(mn, 0), nu = SparsePoly::variable(mn, 1);
  SparsePoly al = SparsePoly::variable(mn, 2), be = SparsePoly::variable(mn, 3);
  bool found = false;
  for (const auto& [c, r] : hom.u0) found = found || r == nu * al + mu * be;
  CHECK(found);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("twopoint");

TEST_CASE("homogenization rejects per-variable degree overflow") {
  // A valid SOS identity whose square root has a-degree 2 > k = 1 cannot be
  // lifted; the per-variable degree guard must fire.
  SOSCertificate fake;
  fake.space = ab_space();
  SparsePoly a = SparsePoly::variable(ab_space(), 0);
  fake.target = a.pow(4);
  fake.u0 = {{BigRational(1), a * a}};
  fake.degree_bound = 4;
  CHECK_THROWS_AS(homogenize_certificate(fake, {1, BigRational(1, 2)}), std::logic_error);
}

TEST_SUITE_END();
