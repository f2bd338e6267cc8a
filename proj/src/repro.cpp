#include "soscert/repro.hpp"

#include <bit>
#include <functional>
#include <random>

#include "soscert/frankl_rodl.hpp"
#include "soscert/hyper.hpp"
#include "soscert/json_io.hpp"
#include "soscert/reverse.hpp"
#include "soscert/two_point.hpp"

namespace soscert {

namespace {

using twopoint::rho_star;

SparsePoly appendix_expression(SosList& squares_out) {
  SpaceRef space = twopoint::ab_space();
  SparsePoly a = SparsePoly::variable(space, 0);
  SparsePoly b = SparsePoly::variable(space, 1);
  SparsePoly one = SparsePoly::constant(space, 1);
  // a^6 b^6 + 15 (a+b)^2 (1+ba)^4 + 10 (a+b)^4 (1+ba)^2
  // + 5 (a^3 b + b^2 + a^2 + a b^3)^2 + 35 a^4 b^4 + (a^3 + b^3)^2
  // + (17/3)(a^2 b + a b^2)^2 + 35 a^2 b^2 + (148/3) a^2 b^4 + (148/3) a^4 b^2
  squares_out = {
      {BigRational(1), a.pow(3) * b.pow(3)},
      {BigRational(15), (a + b) * (one + b * a).pow(2)},
      {BigRational(10), (a + b).pow(2) * (one + b * a)},
      {BigRational(5), a.pow(3) * b + b * b + a * a + a * b.pow(3)},
      {BigRational(35), a.pow(2) * b.pow(2)},
      {BigRational(1), a.pow(3) + b.pow(3)},
      {BigRational(17, 3), a.pow(2) * b + a * b.pow(2)},
      {BigRational(35), a * b},
      {BigRational(148, 3), a * b.pow(2)},
      {BigRational(148, 3), a.pow(2) * b},
  };
  return sos_expand(squares_out, space);
}

struct Runner {
  Report& report;
  unsigned jobs;

  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    Stopwatch timer;
    bool pass = false;
    std::string detail;
    try {
      auto [ok, info] = body();
      pass = ok;
      detail = std::move(info);
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("exception: ") + e.what();
    }
    report.add(name, pass, timer.seconds(), detail);
  }
};

std::pair<bool, std::string> criterion1_puzzle() {
  SosList squares;
  SparsePoly expr = appendix_expression(squares);
  SparsePoly target = twopoint::build_P({3, BigRational(5, 6)});
  bool equal = expr == target;
  // Every term a nonnegative rational times a perfect square, via the verifier.
  SOSCertificate cert;
  cert.space = twopoint::ab_space();
  cert.target = target;
  cert.u0 = squares;
  cert.degree_bound = 12;
  ConstraintSystem empty(cert.space);
  CertVerdict v = verify_certificate(cert, empty);
  // Evaluation cross-check at (a,b) = (1,2).
  std::map<VarId, BigRational> pt{{0, BigRational(1)}, {1, BigRational(2)}};
  bool eval_ok = expr.eval(pt) == target.eval(pt);
  bool origin_ok = target.eval({{0, BigRational(0)}, {1, BigRational(0)}}) == 0;
  return {equal && v.valid && eval_ok && origin_ok,
          "residual zero, " + std::to_string(squares.size()) + " squares"};
}

std::pair<bool, std::string> criterion2_twopoint() {
  unsigned count = 0;
  for (unsigned k = 1; k <= 8; ++k) {
    for (const BigRational& rho : {BigRational(0), rho_star(k) / 3, rho_star(k)}) {
      SOSCertificate cert = twopoint::twopoint_certificate({k, rho});
      ConstraintSystem empty(cert.space);
      CertVerdict v = verify_certificate(cert, empty);
      if (!v.valid || cert.degree_bound != static_cast<int>(4 * k)) return {false, v.detail};
      ++count;
    }
  }
  return {true, std::to_string(count) + " certificates, degree bound 4k"};
}

std::pair<bool, std::string> criterion3_qfacts() {
  SpaceRef ts = twopoint::t_space();
  SparsePoly t = SparsePoly::variable(ts, 0);
  twopoint::QFamily f1 = twopoint::compute_Q(1);
  if (!(f1.q[0] == t * t)) return {false, "Q_{1,0}"};
  twopoint::QFamily f2 = twopoint::compute_Q(2);
  if (!(f2.q[0] == t.pow(4) + (t * t).scaled(14))) return {false, "Q_{2,0}"};
  for (unsigned k = 1; k <= 8; ++k) twopoint::compute_Q(k);  // identity asserted inside
  for (unsigned k = 1; k <= 10; ++k)
    if (!(twopoint::compute_Q(k).qtilde[k] == SparsePoly::constant(ts, 1)))
      return {false, "Qtilde_{k,k} at k=" + std::to_string(k)};
  if (!twopoint::check_S_recurrence(32).ok) return {false, "S recurrence"};
  if (!twopoint::check_qtilde_recurrence(10).ok) return {false, "Qtilde recurrence"};
  return {true, "Q identities exact for k <= 8, recurrences to 32/10"};
}

std::pair<bool, std::string> criterion4_sharpness() {
  // rho* -> 1/4 at k=1: Q_{1,0} = t^2 - t must fail nonnegativity.
  twopoint::QFamily probe = twopoint::compute_Q(1, BigRational(1, 4));
  NonnegVerdict v = sturm_nonneg(probe.q[0]);
  if (v.nonnegative || !v.witness) return {false, "Q_{1,0} probe not rejected"};
  bool threw = false;
  try {
    univariate_sos_decompose(probe.q[0]);
  } catch (const NotNonnegativeError&) {
    threw = true;
  }
  if (!threw) return {false, "decomposition accepted a negative polynomial"};
  // Inflated moments must fail at exactly the inflated index.
  for (unsigned s = 1; s <= 6; ++s) {
    for (unsigned j = 1; j <= s; ++j) {
      hypercert::MomentSequence m = hypercert::MomentSequence::rademacher(s);
      for (unsigned i = 1; i <= s; ++i) m.even[i - 1] = hypercert::moment_bound(s, i);
      m.even[j - 1] += BigRational(1, 11);
      hypercert::TermwiseVerdict tv =
          hypercert::zfc_termwise_check(s, BigRational(1, 2 * s - 1), m);
      if (tv.ok || tv.violated_j != static_cast<int>(j))
        return {false, "termwise probe at s=" + std::to_string(s) + " j=" + std::to_string(j)};
    }
  }
  return {true, "both failure probes detected"};
}

std::pair<bool, std::string> criterion5_reverse(unsigned jobs) {
  std::mt19937 rng(20260811);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 3);
  struct Case {
    unsigned n, k;
  };
  unsigned dag_count = 0;
  for (const Case& c :
       {Case{1, 1}, Case{2, 1}, Case{2, 2}, Case{3, 1}, Case{3, 2}}) {
    for (const BigRational& rho : {rho_star(c.k), BigRational(0)}) {
      ProofDag dag = reversecert::inductive_certificate(c.n, c.k, rho);
      ConstraintSystem empty(dag.space);
      DagVerdict v = verify_dag(dag, empty, jobs);
      if (!v.valid) return {false, "dag invalid at n=" + std::to_string(c.n)};
      if (dag.leaf_count() != (1u << (2 * (c.n - 1)))) return {false, "leaf count"};
      reversecert::CubeIndeterminates cube{dag.space, c.n, true};
      reversecert::CorrelatedExpectation e = reversecert::build_expectations(cube, c.k, rho);
      if (!(dag.goal.poly == e.lhs - e.rhs)) return {false, "statement mismatch"};
      for (int trial = 0; trial < 500; ++trial) {
        std::map<VarId, BigRational> pt;
        for (unsigned var = 0; var < dag.space->size(); ++var)
          pt[var] = BigRational(num(rng), den(rng));
        if (e.lhs.eval(pt) < e.rhs.eval(pt)) return {false, "soundness violation"};
      }
      ++dag_count;
    }
  }
  return {true, std::to_string(dag_count) + " proofs, 500 sound points each"};
}

std::pair<bool, std::string> criterion6_hyper(unsigned jobs) {
  if (!hypercert::binomial_identity_check(100).ok) return {false, "binomial table"};
  if (!hypercert::check_remark_product_form(20).ok) return {false, "product form"};
  for (unsigned v : {2u, 4u, 6u, 8u}) {
    SOSCertificate cert = hypercert::amgm_lemma_certificate(v);
    ConstraintSystem empty(cert.space);
    if (!verify_certificate(cert, empty).valid)
      return {false, "amgm v=" + std::to_string(v)};
  }
  ProofDag dag = hypercert::hypercon_certificate(2, 2, BigRational(1, 3),
                                                 hypercert::MomentSequence::rademacher(2));
  ConstraintSystem empty(dag.space);
  DagVerdict v = verify_dag(dag, empty, jobs);
  if (!v.valid || dag.degree_bound != 4) return {false, "hypercontractivity proof"};
  return {true, "identity table s<=100, amgm v<=8, (n,s)=(2,2) proof"};
}

std::pair<bool, std::string> criterion7_franklrodl(unsigned jobs) {
  std::string detail;
  for (unsigned n : {4u, 6u, 8u}) {
    BigRational gamma = n == 4 ? BigRational(1, 2) : (n == 6 ? BigRational(1, 3) : BigRational(1, 4));
    franklrodl::FRInstance inst = franklrodl::make_instance(n, gamma);
    BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, n);
    franklrodl::SpectralGap gap = franklrodl::spectral_gap(n, inst.d, rho_prime);
    // Spectra two independent ways.
    for (unsigned j = 0; j <= n; ++j) {
      unsigned u_mask = (1u << j) - 1;
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
      if (gap.lambda_sd[j] != avg_at(inst.d)) return {false, "spectrum mismatch"};
      if (gap.lambda_sdp[j] != (avg_at(inst.d) + avg_at(inst.d + 1)) / 2)
        return {false, "S' spectrum mismatch"};
    }
    BigRational min_alpha = franklrodl::min_refutable_density(inst, franklrodl::DeltaMode::Tight);
    // Below the threshold: infeasible, with the exact minimum reported.
    BigRational below = min_alpha - BigRational(1, 1u << 10);
    if (below > 0) {
      bool threw = false;
      try {
        franklrodl::build_refutation(inst, {below > 1 ? BigRational(1) : below, 0,
                                            franklrodl::DeltaMode::Tight});
      } catch (const franklrodl::InfeasibleThreshold& e) {
        threw = e.min_alpha == min_alpha;
      }
      if (!threw) return {false, "infeasibility not reported at n=" + std::to_string(n)};
    }
    // Above the threshold (when an admissible density exists): full proof.
    if (min_alpha <= 1) {
      BigRational alpha = (min_alpha + 1) / 2;
      franklrodl::Refutation ref =
          franklrodl::build_refutation(inst, {alpha, 0, franklrodl::DeltaMode::Tight});
      DagVerdict v = verify_dag(ref.dag, ref.system, jobs);
      if (!v.valid)
        return {false, "refutation invalid at n=" + std::to_string(n) + ": " + v.detail};
      detail += "FR(" + std::to_string(n) + "," + rational_to_string(gamma) +
                ") alpha=" + rational_to_string(alpha) + " ok; ";
    } else {
      detail += "FR(" + std::to_string(n) + "," + rational_to_string(gamma) +
                ") not refutable for alpha <= 1 (threshold " + rational_to_string(min_alpha) +
                "); ";
    }
    // Exhaustive soundness for n <= 6.
    if (n <= 6) {
      unsigned mis = franklrodl::max_independent_set(n, inst.d);
      if (min_alpha <= BigRational(mis, 1u << n))
        return {false, "refutation clashes with the exact independence number"};
    }
  }
  return {true, detail};
}

std::pair<bool, std::string> criterion8_adversarial() {
  // A pool of valid certificates, then 50 deterministic mutations that must
  // each be rejected with the right failure category.
  struct Entry {
    SOSCertificate cert;
    ConstraintSystem system;
  };
  std::vector<Entry> pool;
  {
    SOSCertificate c = twopoint::twopoint_certificate({2, rho_star(2)});
    pool.push_back({c, ConstraintSystem(c.space)});
  }
  {
    SOSCertificate c = hypercert::amgm_lemma_certificate(4);
    pool.push_back({c, ConstraintSystem(c.space)});
  }
  {
    // Constrained certificates with inequality and equality multipliers.
    SpaceRef ts = twopoint::t_space();
    SparsePoly t = SparsePoly::variable(ts, 0);
    for (long shift = 1; shift <= 3; ++shift) {
      ConstraintSystem system(ts);
      system.add_inequality("q", t - SparsePoly::constant(ts, shift));
      system.add_equality("r", t * t - SparsePoly::constant(ts, shift * shift));
      SOSCertificate cert;
      cert.space = ts;
      cert.degree_bound = 4;
      cert.u0 = {{BigRational(shift), t}, {BigRational(1, 2), t - SparsePoly::constant(ts, 1)}};
      cert.ineq_multipliers = {{"q", {{BigRational(2), t}}}};
      cert.eq_multipliers = {{"r", t + SparsePoly::constant(ts, shift)}};
      cert.target = sos_expand(cert.u0, ts) + (t * t).scaled(2) * (*system.find_inequality("q")) +
                    (t + SparsePoly::constant(ts, shift)) * (*system.find_equality("r"));
      if (!verify_certificate(cert, system).valid) return {false, "pool construction"};
      pool.push_back({cert, std::move(system)});
    }
  }

  std::mt19937 rng(424242);
  unsigned rejected = 0;
  for (unsigned trial = 0; trial < 50; ++trial) {
    const Entry& entry = pool[trial % pool.size()];
    SOSCertificate mutant = entry.cert;
    CertFailure expected;
    switch (trial % 5) {
      case 0: {  // coefficient tweak
        std::uniform_int_distribution<std::size_t> pick(0, mutant.u0.size() - 1);
        mutant.u0[pick(rng)].coeff += BigRational(1, 97);
        expected = CertFailure::Residual;
        break;
      }
      case 1: {  // degree bound violation
        mutant.degree_bound = 1;
        expected = CertFailure::DegreeExceeded;
        break;
      }
      case 2: {  // dropped square
        mutant.u0.pop_back();
        expected = CertFailure::Residual;
        break;
      }
      case 3: {  // negative square coefficient
        mutant.u0.front().coeff = BigRational(-1, 3);
        expected = CertFailure::NegativeCoefficient;
        break;
      }
      default: {  // dangling label or dropped multiplier
        if (!mutant.ineq_multipliers.empty()) {
          mutant.ineq_multipliers.front().first = "ghost";
          expected = CertFailure::UnknownLabel;
        } else {
          mutant.u0.front().root += SparsePoly::constant(mutant.space, 1);
          expected = CertFailure::Residual;
        }
        break;
      }
    }
    CertVerdict v = verify_certificate(mutant, entry.system);
    if (v.valid || v.failure != expected)
      return {false, "mutant " + std::to_string(trial) + " expected " + to_string(expected) +
                         " got " + to_string(v.failure)};
    ++rejected;
  }
  // Dropped equality multipliers on the constrained entries.
  for (unsigned i = 0; i < 5; ++i) {
    SOSCertificate mutant = pool[2 + i % 3].cert;
    mutant.eq_multipliers.clear();
    CertVerdict v = verify_certificate(mutant, pool[2 + i % 3].system);
    if (v.valid || v.failure != CertFailure::Residual) return {false, "dropped multiplier"};
  }
  return {true, std::to_string(rejected) + "+5 mutants rejected with correct categories"};
}

}  // namespace

Report puzzle_check() {
  Report report;
  Runner runner{report, 1};
  runner.run("puzzle: appendix squares equal P_3 at 11/24,1/24", criterion1_puzzle);
  return report;
}

Report run_acceptance(unsigned jobs, unsigned only) {
  Report report;
  Runner runner{report, jobs};
  auto want = [&](unsigned idx) { return only == 0 || only == idx; };
  if (want(1)) runner.run("1 puzzle reproduction", criterion1_puzzle);
  if (want(2)) runner.run("2 two-point certificates k<=8", criterion2_twopoint);
  if (want(3)) runner.run("3 Q-family facts", criterion3_qfacts);
  if (want(4)) runner.run("4 sharpness probes", criterion4_sharpness);
  if (want(5)) runner.run("5 reverse hypercontractivity proofs", [&] { return criterion5_reverse(jobs); });
  if (want(6)) runner.run("6 forward hypercontractivity", [&] { return criterion6_hyper(jobs); });
  if (want(7)) runner.run("7 Frankl-Rodl pipeline", [&] { return criterion7_franklrodl(jobs); });
  if (want(8)) runner.run("8 verifier adversarial suite", criterion8_adversarial);
  return report;
}

}  // namespace soscert
