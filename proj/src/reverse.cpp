#include "soscert/reverse.hpp"

#include <bit>
#include <stdexcept>

namespace soscert {
namespace reversecert {

std::string point_label(unsigned n, unsigned point) {
  std::string s = "(";
  for (unsigned i = 0; i < n; ++i) {
    if (i) s += ",";
    bool minus = (point >> (n - 1 - i)) & 1u;
    s += minus ? "-1" : "+1";
  }
  return s + ")";
}

CubeIndeterminates make_cube(unsigned n, bool with_g) {
  if (n == 0 || n > 16) throw std::invalid_argument("cube dimension out of range");
  std::vector<std::string> labels;
  const unsigned pts = 1u << n;
  for (unsigned p = 0; p < pts; ++p) labels.push_back("f" + point_label(n, p));
  if (with_g)
    for (unsigned p = 0; p < pts; ++p) labels.push_back("g" + point_label(n, p));
  CubeIndeterminates cube;
  cube.space = IndeterminateSpace::make(std::move(labels));
  cube.n = n;
  cube.with_g = with_g;
  return cube;
}

BigRational correlation_weight(unsigned m, unsigned disagreements, const BigRational& rho) {
  BigRational agree = (BigRational(1) + rho) / 4;
  BigRational differ = (BigRational(1) - rho) / 4;
  return pow_rational(agree, m - disagreements) * pow_rational(differ, disagreements);
}

CorrelatedExpectation build_expectations(const CubeIndeterminates& cube, unsigned k,
                                         const BigRational& rho) {
  if (!cube.with_g) throw std::invalid_argument("build_expectations needs g indeterminates");
  if (rho < 0 || rho > twopoint::rho_star(k))
    throw std::invalid_argument("rho outside [0, 1 - 1/(2k)]");
  const unsigned pts = cube.points();
  CorrelatedExpectation out;
  out.n = cube.n;
  out.k = k;
  out.rho = rho;
  SparsePoly lhs = SparsePoly::zero(cube.space);
  for (unsigned x = 0; x < pts; ++x) {
    SparsePoly fx = SparsePoly::variable(cube.space, cube.f_var(x)).pow(2 * k);
    for (unsigned y = 0; y < pts; ++y) {
      unsigned h = static_cast<unsigned>(std::popcount(x ^ y));
      lhs += (fx * SparsePoly::variable(cube.space, cube.g_var(y)).pow(2 * k))
                 .scaled(correlation_weight(cube.n, h, rho));
    }
  }
  SparsePoly mean_f = SparsePoly::zero(cube.space);
  SparsePoly mean_g = SparsePoly::zero(cube.space);
  for (unsigned p = 0; p < pts; ++p) {
    mean_f += SparsePoly::variable(cube.space, cube.f_var(p));
    mean_g += SparsePoly::variable(cube.space, cube.g_var(p));
  }
  BigRational inv(1, pts);
  out.lhs = std::move(lhs);
  out.rhs = mean_f.scaled(inv).pow(2 * k) * mean_g.scaled(inv).pow(2 * k);
  return out;
}

SpaceRef base_space() {
  static SpaceRef space = IndeterminateSpace::make({"F0", "F1", "G0", "G1"});
  return space;
}

SOSCertificate base_case_certificate(unsigned k, const BigRational& rho) {
  twopoint::TwoPointParams params{k, rho};
  SOSCertificate hom =
      twopoint::homogenize_certificate(twopoint::twopoint_certificate(params), params);
  SpaceRef out = base_space();
  SparsePoly f0 = SparsePoly::variable(out, 0), f1 = SparsePoly::variable(out, 1);
  SparsePoly g0 = SparsePoly::variable(out, 2), g1 = SparsePoly::variable(out, 3);
  BigRational half(1, 2);
  std::map<VarId, SparsePoly> to_points{{0, (f0 + f1).scaled(half)},
                                        {1, (g0 + g1).scaled(half)},
                                        {2, (f0 - f1).scaled(half)},
                                        {3, (g0 - g1).scaled(half)}};
  SOSCertificate cert;
  cert.space = out;
  cert.degree_bound = static_cast<int>(4 * k);
  for (const auto& [c, r] : hom.u0) cert.u0.push_back({c, r.substitute(to_points, out)});

  BigRational wp = (BigRational(1) + rho) / 4;
  BigRational wm = (BigRational(1) - rho) / 4;
  unsigned e = 2 * k;
  cert.target = (f0.pow(e) * g0.pow(e) + f1.pow(e) * g1.pow(e)).scaled(wp) +
                (f0.pow(e) * g1.pow(e) + f1.pow(e) * g0.pow(e)).scaled(wm) -
                ((f0 + f1).scaled(half)).pow(e) * ((g0 + g1).scaled(half)).pow(e);
  ConstraintSystem empty(out);
  CertVerdict v = verify_certificate(cert, empty);
  if (!v.valid)
    throw std::logic_error("base_case_certificate failed to verify: " + v.detail);
  return cert;
}

namespace {

struct InductionBuilder {
  const CubeIndeterminates& cube;
  unsigned k;
  BigRational rho;
  DagBuilder& builder;
  SOSCertificate base;  // over base_space()

  SparsePoly fvar(unsigned p) const { return SparsePoly::variable(cube.space, cube.f_var(p)); }
  SparsePoly gvar(unsigned p) const { return SparsePoly::variable(cube.space, cube.g_var(p)); }

  SparsePoly mean_f(unsigned suffix_len, unsigned w) const {
    const unsigned m = cube.n - suffix_len;
    SparsePoly sum = SparsePoly::zero(cube.space);
    for (unsigned x = 0; x < (1u << m); ++x) sum += fvar((x << suffix_len) | w);
    return sum.scaled(BigRational(1, 1u << m));
  }
  SparsePoly mean_g(unsigned suffix_len, unsigned v) const {
    const unsigned m = cube.n - suffix_len;
    SparsePoly sum = SparsePoly::zero(cube.space);
    for (unsigned y = 0; y < (1u << m); ++y) sum += gvar((y << suffix_len) | v);
    return sum.scaled(BigRational(1, 1u << m));
  }

  SosList base_at(const SparsePoly& f0, const SparsePoly& f1, const SparsePoly& g0,
                  const SparsePoly& g1) const {
    std::map<VarId, SparsePoly> bind{{0, f0}, {1, f1}, {2, g0}, {3, g1}};
    SosList out;
    out.reserve(base.u0.size());
    for (const auto& [c, r] : base.u0) out.push_back({c, r.substitute(bind, cube.space)});
    return out;
  }

  // Statement node for the restriction pair (w, v) of suffix length j:
  // concludes LHS_m(w,v) - mean_f(w)^{2k} mean_g(v)^{2k} >= 0 with m = n - j.
  uint32_t statement(unsigned j, unsigned w, unsigned v) {
    const unsigned m = cube.n - j;
    if (m == 1) {
      SparsePoly f0 = fvar((0u << j) | w), f1 = fvar((1u << j) | w);
      SparsePoly g0 = gvar((0u << j) | v), g1 = gvar((1u << j) | v);
      SOSCertificate leaf;
      leaf.space = cube.space;
      leaf.degree_bound = base.degree_bound;
      leaf.u0 = base_at(f0, f1, g0, g1);
      std::map<VarId, SparsePoly> bind{{0, f0}, {1, f1}, {2, g0}, {3, g1}};
      leaf.target = base.target.substitute(bind, cube.space);
      uint32_t leaf_id = builder.add(CertLeafNode{std::move(leaf)}, "dimension-1 base case");
      return builder.add(CombNode{{leaf_id}, {BigRational(1)}, {}}, "statement m=1");
    }
    // Children on the four sign pairs of the split coordinate; bit 1 = "-1".
    std::vector<uint32_t> children;
    std::vector<BigRational> coeffs;
    for (unsigned a = 0; a < 2; ++a) {
      for (unsigned b = 0; b < 2; ++b) {
        children.push_back(statement(j + 1, (a << j) | w, (b << j) | v));
        coeffs.push_back(a == b ? (BigRational(1) + rho) / 4 : (BigRational(1) - rho) / 4);
      }
    }
    // Base inequality applied to the four restriction means; the half-sum of
    // the two child means is the parent mean, so the telescoping is exact.
    SosList inline_sos = base_at(mean_f(j + 1, (0u << j) | w), mean_f(j + 1, (1u << j) | w),
                                 mean_g(j + 1, (0u << j) | v), mean_g(j + 1, (1u << j) | v));
    return builder.add(CombNode{std::move(children), std::move(coeffs), std::move(inline_sos)},
                       "inductive step m=" + std::to_string(m));
  }
};

}  // namespace

ProofDag inductive_certificate(unsigned n, unsigned k, const BigRational& rho) {
  if (n > 6)
    throw std::invalid_argument(
        "inductive_certificate: dimension too large (flat statements over 2*2^n "
        "indeterminates; supported up to n = 6)");
  CubeIndeterminates cube = make_cube(n, true);
  ConstraintSystem empty(cube.space);
  DagBuilder builder(cube.space, &empty, static_cast<int>(4 * k));
  InductionBuilder ib{cube, k, rho, builder, base_case_certificate(k, rho)};
  uint32_t root = ib.statement(0, 0, 0);
  ProofDag dag = builder.finish(root, {{"statement", "reverse-hypercontractivity"},
                                       {"n", std::to_string(n)},
                                       {"k", std::to_string(k)},
                                       {"rho", rational_to_string(rho)}});

  CorrelatedExpectation expect = build_expectations(cube, k, rho);
  if (!(dag.goal == Conclusion{expect.lhs - expect.rhs, Rel::GeqZero}))
    throw std::logic_error("inductive_certificate: root statement mismatch");
  return dag;
}

}  // namespace reversecert
}  // namespace soscert
