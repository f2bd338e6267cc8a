#include <random>

#include "doctest.h"
#include "soscert/polynomial.hpp"
#include "soscert/univariate.hpp"

using namespace soscert;

namespace {

SpaceRef abw() {
  static SpaceRef s = IndeterminateSpace::make({"a", "b", "w"});
  return s;
}

SparsePoly pv(VarId v) { return SparsePoly::variable(abw(), v); }
SparsePoly pc(long c) { return SparsePoly::constant(abw(), BigRational(c)); }

SparsePoly random_poly(std::mt19937& rng, int max_terms = 6, int max_deg = 3,
                       long coeff_range = 9) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expd(0, max_deg);
  std::uniform_int_distribution<long> coeff(-coeff_range, coeff_range);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<SparsePoly::Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m = Monomial::from_factors({{0, static_cast<uint32_t>(expd(rng))},
                                         {1, static_cast<uint32_t>(expd(rng))},
                                         {2, static_cast<uint32_t>(expd(rng))}});
    terms.push_back({m, BigRational(coeff(rng), den(rng))});
  }
  return SparsePoly::from_terms(abw(), std::move(terms));
}

std::map<VarId, BigRational> random_point(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-7, 7);
  std::uniform_int_distribution<long> den(1, 4);
  return {{0, BigRational(num(rng), den(rng))},
          {1, BigRational(num(rng), den(rng))},
          {2, BigRational(num(rng), den(rng))}};
}

}  // namespace

TEST_SUITE_BEGIN("polycore");

TEST_CASE("rational parsing is exact and rejects decimals") {
  CHECK(parse_rational("11/24") == BigRational(11, 24));
  CHECK(parse_rational("-3") == BigRational(-3));
  CHECK(parse_rational("6/8") == BigRational(3, 4));
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("binomial and factorial helpers") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(200, 100) > BigInt(0));
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(1) == 1);
  CHECK(double_factorial(7) == 105);
}

TEST_CASE("add cancels exactly") {
  SparsePoly t2 = pv(0) * pv(0);
  CHECK((t2 + (-t2)).is_zero());
  CHECK((t2 + (-t2)).degree() == SparsePoly::kNegInfDegree);
  SparsePoly one = pc(1);
  CHECK((one + pv(0)) + (one - pv(0)) == pc(2));
}

TEST_CASE("mul matches hand expansion") {
  SparsePoly a = pv(0), b = pv(1), one = pc(1);
  CHECK((one + a) * (one - a) == one - a * a);
  CHECK((a + b).pow(2) == a * a + (a * b).scaled(2) + b * b);
  // ((1+a)(1+b))^3 against a term-by-term binomial expansion.
  SparsePoly lhs = ((one + a) * (one + b)).pow(3);
  SparsePoly rhs = SparsePoly::zero(abw());
  for (unsigned i = 0; i <= 3; ++i)
    for (unsigned j = 0; j <= 3; ++j)
      rhs += SparsePoly::monomial(abw(), Monomial::from_factors({{0, i}, {1, j}}),
                                  BigRational(binomial(3, i) * binomial(3, j)));
  CHECK(lhs == rhs);
  CHECK(lhs.term_count() == 16);
}

TEST_CASE("pow uses exact binomials") {
  SparsePoly a = pv(0), one = pc(1);
  CHECK((one + a).pow(2) == one + a.scaled(2) + a * a);
  CHECK((one + a).pow(4).coefficient(Monomial::variable(0, 2)) == 6);
  CHECK((one + a).pow(0) == one);
  // pow(1-t, 2k-2j) * pow(-4t, j) at k=2, j=1.
  SparsePoly t = pv(0);
  SparsePoly expect = t.scaled(-4) + (t * t).scaled(8) + (t * t * t).scaled(-4);
  CHECK((one - t).pow(2) * t.scaled(-4).pow(1) == expect);
}

TEST_CASE("substitute composes exactly") {
  SpaceRef rst = IndeterminateSpace::make({"r", "s", "t"});
  SparsePoly r = SparsePoly::variable(rst, 0);
  SparsePoly a = pv(0), b = pv(1);
  std::map<VarId, SparsePoly> to_ab{{0, a - b}, {1, a + b}, {2, a * b}};
  CHECK((r * r).substitute(to_ab, abw()) == a * a - (a * b).scaled(2) + b * b);
  // r^2 = s^2 - 4t as a polynomial identity under the substitution.
  SparsePoly s = SparsePoly::variable(rst, 1), t = SparsePoly::variable(rst, 2);
  CHECK((r * r).substitute(to_ab, abw()) == (s * s - t.scaled(4)).substitute(to_ab, abw()));
  // Unbound variable is an error.
  std::map<VarId, SparsePoly> partial{{0, a}};
  CHECK_THROWS_AS((r * s).substitute(partial, abw()), std::invalid_argument);
}

TEST_CASE("eval is exact and commutes with arithmetic") {
  SparsePoly t = pv(0), s = pv(1);
  std::map<VarId, BigRational> pt{{0, BigRational(2)}, {1, BigRational(1)}};
  CHECK((t * t + s * s).eval(pt) == 5);
  CHECK_THROWS_AS((t * pv(2)).eval(pt), std::invalid_argument);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    SparsePoly p = random_poly(rng), q = random_poly(rng);
    auto point = random_point(rng);
    CHECK((p + q).eval(point) == p.eval(point) + q.eval(point));
    CHECK((p * q).eval(point) == p.eval(point) * q.eval(point));
    CHECK(p.pow(3).eval(point) == pow_rational(p.eval(point), 3));
  }
}

TEST_CASE("eval commutes with substitute") {
  std::mt19937 rng(11);
  SpaceRef rst = IndeterminateSpace::make({"r", "s", "t"});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SparsePoly::Term> terms;
    std::uniform_int_distribution<int> e(0, 2);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int i = 0; i < 4; ++i)
      terms.push_back({Monomial::from_factors({{0, static_cast<uint32_t>(e(rng))},
                                               {1, static_cast<uint32_t>(e(rng))},
                                               {2, static_cast<uint32_t>(e(rng))}}),
                       BigRational(c(rng))});
    SparsePoly p = SparsePoly::from_terms(rst, std::move(terms));
    SparsePoly ba = random_poly(rng), bb = random_poly(rng), bc = random_poly(rng);
    std::map<VarId, SparsePoly> bind{{0, ba}, {1, bb}, {2, bc}};
    auto point = random_point(rng);
    std::map<VarId, BigRational> inner{{0, ba.eval(point)}, {1, bb.eval(point)}, {2, bc.eval(point)}};
    CHECK(p.substitute(bind, abw()).eval(point) == p.eval(inner));
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    SparsePoly p = random_poly(rng, 4, 2), q = random_poly(rng, 4, 2), w = random_poly(rng, 4, 2);
    CHECK((p + q) + w == p + (q + w));
    CHECK(p * (q + w) == p * q + p * w);
    CHECK(p * q == q * p);
  }
}

TEST_CASE("canonical form is idempotent and order-stable") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    SparsePoly p = random_poly(rng);
    SparsePoly renorm = SparsePoly::from_terms(abw(), p.terms());
    CHECK(renorm == p);
    CHECK(renorm.to_text() == p.to_text());
    // Descending graded-lex order.
    for (std::size_t i = 0; i + 1 < p.terms().size(); ++i)
      CHECK(Monomial::compare(p.terms()[i].first, p.terms()[i + 1].first) > 0);
  }
}

TEST_CASE("text round trip") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    SparsePoly p = random_poly(rng);
    CHECK(SparsePoly::parse(abw(), p.to_text()) == p);
  }
  // Labels with sign characters survive.
  SpaceRef cube = IndeterminateSpace::make({"f(+1,+1)", "f(+1,-1)", "f(-1,+1)", "f(-1,-1)"});
  SparsePoly p = SparsePoly::variable(cube, 1).scaled(BigRational(-3, 4)) +
                 SparsePoly::variable(cube, 2) * SparsePoly::variable(cube, 3);
  CHECK(SparsePoly::parse(cube, p.to_text()) == p);
}

TEST_CASE("space mismatch is rejected") {
  SpaceRef other = IndeterminateSpace::make({"x"});
  CHECK_THROWS_AS(pv(0) + SparsePoly::variable(other, 0), SpaceMismatchError);
  CHECK_THROWS_AS(pv(0) * SparsePoly::variable(other, 0), SpaceMismatchError);
}

TEST_CASE("homogenize and dehomogenize") {
  SparsePoly x = pv(0), one = pc(1);
  SparsePoly p = x * x + one;
  SparsePoly h = p.homogenize(1, 2);
  CHECK(h == x * x + pv(1) * pv(1));
  CHECK(h.dehomogenize(1) == p);
  CHECK_THROWS_AS(p.homogenize(1, 1), std::invalid_argument);
  CHECK_THROWS_AS((x * pv(1)).homogenize(1, 4), std::invalid_argument);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    // Round trip on polynomials free of the aux variable.
    SparsePoly q = random_poly(rng);
    q = q.dehomogenize(2);  // drop var w so aux is fresh
    if (q.is_zero()) continue;
    CHECK(q.homogenize(2, q.degree() + 2).dehomogenize(2) == q);
  }
}

TEST_CASE("even binomial pair") {
  SparsePoly a = pv(0), one = pc(1);
  CHECK(even_binomial_pair(one, a, 1) == one + a * a);
  SparsePoly t = pv(1);
  CHECK(even_binomial_pair(one + t, a, 1) == (one + t) * (one + t) + a * a);
  CHECK(even_binomial_pair(one, one, 2) == pc(8));
  std::mt19937 rng(17);
  for (unsigned k : {0u, 1u, 2u, 5u, 16u}) {
    SparsePoly c = random_poly(rng, 3, 1), d = random_poly(rng, 3, 1);
    CHECK(even_binomial_pair(c, d, k) ==
          ((c + d).pow(2 * k) + (c - d).pow(2 * k)).scaled(BigRational(1, 2)));
  }
}

TEST_CASE("degree bookkeeping") {
  CHECK(pc(0).degree() == SparsePoly::kNegInfDegree);
  CHECK(pc(5).degree() == 0);
  CHECK((pv(0) * pv(1) * pv(1)).degree() == 3);
  CHECK((pv(0) * pv(1)).degree_in(1) == 1);
}

TEST_SUITE_END();
