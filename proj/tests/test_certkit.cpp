#include <random>

#include "doctest.h"
#include "soscert/json_io.hpp"
#include "soscert/proof_dag.hpp"

using namespace soscert;

namespace {

SpaceRef ts() {
  static SpaceRef s = IndeterminateSpace::make({"t"});
  return s;
}

SparsePoly tvar() { return SparsePoly::variable(ts(), 0); }
SparsePoly tconst(long c) { return SparsePoly::constant(ts(), BigRational(c)); }

UniPoly uni(std::initializer_list<long> coeffs) {
  UniPoly p;
  for (long c : coeffs) p.push_back(BigRational(c));
  return uv_trim(std::move(p));
}

}  // namespace

TEST_SUITE_BEGIN("certkit");

TEST_CASE("univariate division, gcd, squarefree") {
  UniPoly a = uni({-1, 0, 1});         // t^2 - 1
  UniPoly b = uni({1, 1});             // t + 1
  auto [q, r] = uv_divmod(a, b);
  CHECK(q == uni({-1, 1}));
  CHECK(r.empty());
  CHECK(uv_gcd(a, b) == uni({1, 1}));

  // (t-1)^2 (t+2)^3
  UniPoly p = uv_mul(uv_mul(uni({-1, 1}), uni({-1, 1})),
                     uv_mul(uni({2, 1}), uv_mul(uni({2, 1}), uni({2, 1}))));
  SquareFree sf = uv_squarefree(p);
  REQUIRE(sf.factors.size() == 2);
  bool saw1 = false, saw2 = false;
  for (const auto& [fac, mult] : sf.factors) {
    if (mult == 2) {
      CHECK(fac == uni({-1, 1}));
      saw1 = true;
    }
    if (mult == 3) {
      CHECK(fac == uni({2, 1}));
      saw2 = true;
    }
  }
  CHECK(saw1);
  CHECK(saw2);
}

TEST_CASE("sturm root counting") {
  // (t-1)(t-2)(t+3)
  UniPoly p = uv_mul(uv_mul(uni({-1, 1}), uni({-2, 1})), uni({3, 1}));
  SturmChain chain = sturm_chain(p);
  CHECK(chain.count_real_roots() == 3);
  CHECK(chain.count_roots_in(BigRational(0), BigRational(5)) == 2);
  CHECK(chain.count_roots_in(BigRational(-4), BigRational(0)) == 1);
  // t^2 + 1 has no real roots.
  CHECK(sturm_chain(uni({1, 0, 1})).count_real_roots() == 0);
}

TEST_CASE("sturm_nonneg decisions") {
  CHECK(sturm_nonneg(tvar() * tvar()).nonnegative);
  CHECK(sturm_nonneg(tconst(0)).nonnegative);
  CHECK(sturm_nonneg(tvar().pow(4) + (tvar() * tvar()).scaled(14)).nonnegative);
  auto neg = sturm_nonneg(-(tvar() * tvar()));
  CHECK_FALSE(neg.nonnegative);
  REQUIRE(neg.witness.has_value());
  std::map<VarId, BigRational> pt{{0, *neg.witness}};
  CHECK((-(tvar() * tvar())).eval(pt) < 0);

  // t^2 - (2-4*rho)t with rho = 1/4 -> t^2 - t, negative inside (0,1).
  SparsePoly probe = tvar() * tvar() - tvar();
  auto v = sturm_nonneg(probe);
  CHECK_FALSE(v.nonnegative);
  REQUIRE(v.witness.has_value());
  CHECK(probe.eval({{0, *v.witness}}) < 0);
  CHECK(*v.witness > 0);
  CHECK(*v.witness < 1);

  // Even-multiplicity real roots are fine: (t-3)^2 (t^2+1).
  SparsePoly even_root =
      (tvar() - tconst(3)) * (tvar() - tconst(3)) * (tvar() * tvar() + tconst(1));
  CHECK(sturm_nonneg(even_root).nonnegative);
  // Odd degree is never nonnegative.
  CHECK_FALSE(sturm_nonneg(tvar().pow(3) + tconst(2)).nonnegative);
}

TEST_CASE("sturm against dense grid") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> deg(0, 8);
  std::uniform_int_distribution<long> coeff(-20, 20);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    UniPoly p(deg(rng) + 1);
    for (auto& c : p) c = BigRational(coeff(rng));
    p = uv_trim(std::move(p));
    SparsePoly sp = from_unipoly(p, ts(), 0);
    NonnegVerdict v = uv_sturm_nonneg(p);
    if (!v.nonnegative) {
      REQUIRE(v.witness.has_value());
      CHECK(uv_eval(p, *v.witness) < 0);
      continue;
    }
    ++checked;
    for (BigRational x(-8); x <= 8; x += BigRational(1, 64))
      CHECK(uv_eval(p, x) >= 0);
  }
  CHECK(checked > 0);
}

TEST_CASE("univariate SOS decomposition on curated inputs") {
  SosList l1 = univariate_sos_decompose(tvar() * tvar());
  REQUIRE(l1.size() == 1);
  CHECK(l1[0].coeff == 1);
  CHECK(l1[0].root == tvar());

  SparsePoly sq = (tvar() * tvar() + tconst(1)).pow(2);
  SosList l2 = univariate_sos_decompose(sq);
  REQUIRE(l2.size() == 1);
  CHECK(l2[0].coeff == 1);
  CHECK(l2[0].root == tvar() * tvar() + tconst(1));

  SparsePoly q20 = tvar().pow(4) + (tvar() * tvar()).scaled(14);
  CHECK(sos_expand(univariate_sos_decompose(q20), ts()) == q20);

  CHECK_THROWS_AS(univariate_sos_decompose(tvar() * tvar() - tvar()), NotNonnegativeError);
}

TEST_CASE("univariate SOS decomposition on random nonnegative inputs") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> half_deg(0, 20);
  std::uniform_int_distribution<long> coeff(-1000000, 1000000);
  for (int trial = 0; trial < 25; ++trial) {
    // Build a nonnegative polynomial of degree up to 40 as g^2 + h^2 + c*(t-r)^2 * s^2.
    auto rand_poly = [&](int d) {
      UniPoly p(d + 1);
      for (auto& c : p) c = BigRational(coeff(rng));
      return uv_trim(std::move(p));
    };
    UniPoly g = rand_poly(half_deg(rng));
    UniPoly h = rand_poly(half_deg(rng) / 2);
    UniPoly p = uv_add(uv_mul(g, g), uv_mul(h, h));
    if (trial % 3 == 0) {
      UniPoly lin = uni({-3, 2});  // (2t-3)^2 factor doubles a real root
      p = uv_mul(p, uv_mul(lin, lin));
    }
    if (p.empty()) continue;
    SparsePoly sp = from_unipoly(p, ts(), 0);
    SosList sos = univariate_sos_decompose(sp);
    CHECK(sos_expand(sos, ts()) == sp);
    for (const auto& [c, s] : sos) CHECK(c >= 0);
  }
}

TEST_CASE("bivariate homogeneous SOS decomposition") {
  SpaceRef xy = IndeterminateSpace::make({"x", "y"});
  SparsePoly x = SparsePoly::variable(xy, 0), y = SparsePoly::variable(xy, 1);

  SosList l1 = bivariate_homog_sos_decompose(x * x * y * y);
  CHECK(sos_expand(l1, xy) == x * x * y * y);
  REQUIRE(l1.size() == 1);
  CHECK(l1[0].root == x * y);

  // (X^2+Y^2)/2 - ((X+Y)/2)^2 = ((X-Y)/2)^2 in one square.
  SparsePoly w1 = (x * x + y * y).scaled(BigRational(1, 2)) -
                  ((x + y).scaled(BigRational(1, 2))).pow(2);
  SosList l2 = bivariate_homog_sos_decompose(w1);
  CHECK(sos_expand(l2, xy) == w1);

  // Convexity gap for k = 2, degree 4.
  SparsePoly w2 = (x.pow(4) + y.pow(4)).scaled(BigRational(1, 2)) -
                  ((x + y).scaled(BigRational(1, 2))).pow(4);
  SosList l3 = bivariate_homog_sos_decompose(w2);
  CHECK(sos_expand(l3, xy) == w2);

  CHECK_THROWS(bivariate_homog_sos_decompose(x * y));  // indefinite
  CHECK_THROWS_AS(bivariate_homog_sos_decompose(x * x * y), std::invalid_argument);
}

namespace {

// A small constrained certificate used by verifier tests:
// system {q = t >= 0, r = t^2 - 4 = 0}, target t^3 + t + (1)* (t^2-4)... built
// to reconstruct exactly: target = u0 + u1*q + v*r.
std::pair<SOSCertificate, ConstraintSystem> small_constrained_cert() {
  ConstraintSystem system(ts());
  system.add_inequality("q", tvar());
  system.add_equality("r", tvar() * tvar() - tconst(4));
  SOSCertificate cert;
  cert.space = ts();
  cert.degree_bound = 4;
  cert.u0 = {{BigRational(2), tvar()}};                    // 2 t^2
  cert.ineq_multipliers = {{"q", {{BigRational(1), tvar()}}}};  // t^2 * q = t^3
  cert.eq_multipliers = {{"r", tvar() + tconst(1)}};       // (t+1)(t^2-4)
  cert.target = (tvar() * tvar()).scaled(2) + tvar() * tvar() * tvar() +
                (tvar() + tconst(1)) * (tvar() * tvar() - tconst(4));
  return {cert, system};
}

}  // namespace

TEST_CASE("verify_certificate accepts and rejects") {
  SOSCertificate cert;
  cert.space = ts();
  cert.target = tvar() * tvar();
  cert.u0 = {{BigRational(1), tvar()}};
  cert.degree_bound = 2;
  ConstraintSystem empty(ts());
  CHECK(verify_certificate(cert, empty).valid);

  cert.degree_bound = 1;
  auto v = verify_certificate(cert, empty);
  CHECK_FALSE(v.valid);
  CHECK(v.failure == CertFailure::DegreeExceeded);

  cert.degree_bound = 2;
  cert.u0[0].coeff = BigRational(-1);
  v = verify_certificate(cert, empty);
  CHECK_FALSE(v.valid);
  CHECK(v.failure == CertFailure::NegativeCoefficient);

  cert.u0[0].coeff = BigRational(2);
  v = verify_certificate(cert, empty);
  CHECK_FALSE(v.valid);
  CHECK(v.failure == CertFailure::Residual);

  auto [ccert, csystem] = small_constrained_cert();
  CHECK(verify_certificate(ccert, csystem).valid);
  SOSCertificate bad = ccert;
  bad.ineq_multipliers[0].first = "missing";
  v = verify_certificate(bad, csystem);
  CHECK_FALSE(v.valid);
  CHECK(v.failure == CertFailure::UnknownLabel);
}

TEST_CASE("degree bookkeeping rejects iff a bound is actually crossed") {
  auto [cert, system] = small_constrained_cert();
  // Actual component degrees: u0 -> 2, u*q -> 3, v*r -> 3.
  for (int bound = 0; bound <= 6; ++bound) {
    SOSCertificate c = cert;
    c.degree_bound = bound;
    CertVerdict v = verify_certificate(c, system);
    if (bound >= 3)
      CHECK(v.valid);
    else
      CHECK(v.failure == CertFailure::DegreeExceeded);
  }
}

TEST_CASE("certificate soundness on random feasible points") {
  auto [cert, system] = small_constrained_cert();
  REQUIRE(verify_certificate(cert, system).valid);
  // Feasible points of {t >= 0, t^2 = 4}: t = 2.
  std::map<VarId, BigRational> pt{{0, BigRational(2)}};
  CHECK(cert.target.eval(pt) >= 0);
}

TEST_CASE("verify_dag core rules") {
  ConstraintSystem system(ts());
  system.add_inequality("x_ge_2", tvar() - tconst(2));

  DagBuilder builder(ts(), &system, 6);
  uint32_t sq = builder.add(SquareNode{tvar() - tconst(1)});
  CHECK(builder.conclusion(sq).poly == (tvar() - tconst(1)).pow(2));

  uint32_t ax = builder.axiom("x_ge_2");
  uint32_t pw = builder.add(PowersNode{ax, 3, BigRational(2)});
  CHECK(builder.conclusion(pw).poly == tvar().pow(3) - tconst(8));

  SparsePoly half_diff = (tvar() - tconst(1)).scaled(BigRational(1, 2));
  uint32_t cs = builder.add(SuperCsNode{
      tvar(), tconst(1), 1, {{BigRational(1), half_diff}}});
  CHECK(builder.conclusion(cs).poly ==
        (tvar() * tvar() + tconst(1)).scaled(BigRational(1, 2)) -
            ((tvar() + tconst(1)).scaled(BigRational(1, 2))).pow(2));

  uint32_t comb = builder.add(CombNode{{sq, pw, cs},
                                       {BigRational(1), BigRational(1, 2), BigRational(3)},
                                       {}});
  ProofDag dag = builder.finish(comb);
  CHECK(verify_dag(dag, system).valid);
  CHECK(verify_dag(dag, system, 4).valid);

  // Tampering with the goal must fail.
  ProofDag bad = dag;
  bad.goal.poly += tconst(1);
  auto v = verify_dag(bad, system);
  CHECK_FALSE(v.valid);
  CHECK(v.failure == DagFailure::GoalMismatch);
}

TEST_CASE("verify_dag structural failures") {
  ConstraintSystem system(ts());
  ProofDag dag;
  dag.space = ts();
  dag.degree_bound = 4;
  dag.nodes.push_back({CombNode{{1}, {BigRational(1)}, {}}, ""});
  dag.nodes.push_back({CombNode{{0}, {BigRational(1)}, {}}, ""});
  dag.root = 0;
  dag.goal = {SparsePoly::zero(ts()), Rel::EqZero};
  auto v = verify_dag(dag, system);
  CHECK_FALSE(v.valid);
  CHECK(v.failure == DagFailure::Cycle);

  ProofDag dangling;
  dangling.space = ts();
  dangling.degree_bound = 4;
  dangling.nodes.push_back({CombNode{{7}, {BigRational(1)}, {}}, ""});
  dangling.root = 0;
  dangling.goal = {SparsePoly::zero(ts()), Rel::EqZero};
  v = verify_dag(dangling, system);
  CHECK_FALSE(v.valid);
  CHECK(v.failure == DagFailure::DanglingChild);

  // Substitution below an axiom is rejected.
  ConstraintSystem sys2(ts());
  sys2.add_inequality("q", tvar());
  DagBuilder b2(ts(), &sys2, 4);
  uint32_t ax = b2.axiom("q");
  CHECK_THROWS_AS(b2.add(SubstituteNode{ax, {{0, tvar()}}}), std::logic_error);
}

TEST_CASE("identity and product rules") {
  ConstraintSystem system(ts());
  system.add_equality("r", tvar() * tvar() - tconst(4));
  DagBuilder b(ts(), &system, 5);
  uint32_t ax = b.axiom("r");
  uint32_t prod = b.add(ProductPolyNode{ax, tvar() + tconst(3)});
  CHECK(b.conclusion(prod).rel == Rel::EqZero);
  CHECK(b.conclusion(prod).poly == (tvar() + tconst(3)) * (tvar() * tvar() - tconst(4)));

  uint32_t id = b.add(IdentityNode{(tvar() + tconst(1)).pow(2),
                                   tvar() * tvar() + tvar().scaled(2) + tconst(1)});
  CHECK(b.conclusion(id).poly.is_zero());
  CHECK_THROWS_AS(b.add(IdentityNode{tvar(), tvar() + tconst(1)}), std::logic_error);

  uint32_t sq = b.add(SquareNode{tvar()});
  uint32_t ps = b.add(ProductSosNode{sq, {{BigRational(1, 3), tvar()}}});
  CHECK(b.conclusion(ps).poly == (tvar().pow(4)).scaled(BigRational(1, 3)));
}

TEST_CASE("certificate json round trip is digest stable") {
  auto [cert, system] = small_constrained_cert();
  std::string text = certificate_to_json(cert, system);
  auto [cert2, system2] = certificate_from_json(text);
  CHECK(verify_certificate(cert2, system2).valid);
  CHECK(certificate_to_json(cert2, system2) == text);
}

TEST_SUITE_END();
