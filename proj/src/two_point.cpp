#include "soscert/two_point.hpp"

#include <stdexcept>

namespace soscert {
namespace twopoint {

BigRational rho_star(unsigned k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  return BigRational(2 * k - 1, 2 * k);
}

void validate(const TwoPointParams& params) {
  if (params.k == 0) throw std::invalid_argument("k must be positive");
  if (params.rho < 0 || params.rho > rho_star(params.k))
    throw std::invalid_argument("rho outside [0, 1 - 1/(2k)]");
}

SpaceRef ab_space() {
  static SpaceRef space = IndeterminateSpace::make({"a", "b"});
  return space;
}

SpaceRef munu_space() {
  static SpaceRef space = IndeterminateSpace::make({"mu", "nu", "alpha", "beta"});
  return space;
}

SpaceRef t_space() {
  static SpaceRef space = IndeterminateSpace::make({"t"});
  return space;
}

namespace {

constexpr VarId kA = 0, kB = 1;
constexpr VarId kMu = 0, kNu = 1, kAlpha = 2, kBeta = 3;
constexpr VarId kT = 0;

SparsePoly block(const SpaceRef& space, int sa, int sb, unsigned k) {
  SparsePoly one = SparsePoly::constant(space, 1);
  SparsePoly a = SparsePoly::variable(space, kA);
  SparsePoly b = SparsePoly::variable(space, kB);
  return (one + a.scaled(sa)).pow(2 * k) * (one + b.scaled(sb)).pow(2 * k);
}

// (1/2+rho/2)*C(2k,2i)(1+t)^{2k-2i}
// + (1/2-rho/2)*sum_{j>=i} C(2k,2j)(1-t)^{2k-2j} C(j,i)(-4t)^{j-i}.
// Q_{k,0} additionally subtracts 1 (the constant of P_k); the strengthened
// family never does.
SparsePoly q_formula(unsigned k, unsigned i, const BigRational& rho, bool subtract_one) {
  SpaceRef space = t_space();
  SparsePoly one = SparsePoly::constant(space, 1);
  SparsePoly t = SparsePoly::variable(space, kT);
  BigRational w_plus = (BigRational(1) + rho) / 2;
  BigRational w_minus = (BigRational(1) - rho) / 2;
  SparsePoly first = (one + t).pow(2 * k - 2 * i).scaled(BigRational(binomial(2 * k, 2 * i)));
  SparsePoly second = SparsePoly::zero(space);
  for (unsigned j = i; j <= k; ++j) {
    BigRational c = BigRational(binomial(2 * k, 2 * j)) * BigRational(binomial(j, i));
    second += ((one - t).pow(2 * k - 2 * j) * t.scaled(-4).pow(j - i)).scaled(c);
  }
  SparsePoly q = first.scaled(w_plus) + second.scaled(w_minus);
  if (i == 0 && subtract_one) q -= one;
  return q;
}

}  // namespace

SparsePoly build_P(const TwoPointParams& params) {
  validate(params);
  SpaceRef space = ab_space();
  BigRational wp = (BigRational(1) + params.rho) / 4;
  BigRational wm = (BigRational(1) - params.rho) / 4;
  SparsePoly p = block(space, +1, +1, params.k).scaled(wp) +
                 block(space, -1, -1, params.k).scaled(wp) +
                 block(space, +1, -1, params.k).scaled(wm) +
                 block(space, -1, +1, params.k).scaled(wm) -
                 SparsePoly::constant(space, 1);
  return p;
}

QFamily compute_Q(unsigned k, std::optional<BigRational> rho_override) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  BigRational rho = rho_override.value_or(rho_star(k));
  QFamily fam;
  fam.k = k;
  for (unsigned i = 0; i <= k; ++i) {
    fam.q.push_back(q_formula(k, i, rho, true));
    fam.qtilde.push_back(q_formula(k, i, BigRational(0), false));
  }
  if (!rho_override) {
    // The whole construction rests on sum_i Q_i(ab) (a+b)^{2i} = P_k; check it
    // exactly for both weightings before handing the family out. The
    // strengthened family omits the constant -1, so its sum is P_k|rho=0 + 1.
    SpaceRef space = ab_space();
    SparsePoly a = SparsePoly::variable(space, kA);
    SparsePoly b = SparsePoly::variable(space, kB);
    std::map<VarId, SparsePoly> t_to_ab{{kT, a * b}};
    SparsePoly s2 = (a + b) * (a + b);
    for (int variant = 0; variant < 2; ++variant) {
      const auto& qs = variant == 0 ? fam.q : fam.qtilde;
      SparsePoly sum = SparsePoly::zero(space);
      SparsePoly s_pow = SparsePoly::constant(space, 1);
      for (unsigned i = 0; i <= k; ++i) {
        sum += qs[i].substitute(t_to_ab, space) * s_pow;
        s_pow = s_pow * s2;
      }
      TwoPointParams p{k, variant == 0 ? rho_star(k) : BigRational(0)};
      SparsePoly expect = build_P(p);
      if (variant == 1) expect += SparsePoly::constant(space, 1);
      if (sum != expect)
        throw std::logic_error("compute_Q: s^{2i}-collection identity failed");
    }
  }
  return fam;
}

RationalFunction S_poly(unsigned k) {
  SpaceRef space = t_space();
  SparsePoly one = SparsePoly::constant(space, 1);
  SparsePoly t = SparsePoly::variable(space, kT);
  SparsePoly num = SparsePoly::zero(space);
  for (unsigned j = 0; j <= k; ++j) {
    BigRational c(binomial(2 * k, 2 * j));
    num += ((one - t).pow(2 * k - 2 * j) * t.scaled(-4).pow(j)).scaled(c);
  }
  return {num, (one + t).pow(2 * k)};
}

RecurrenceVerdict check_S_recurrence(unsigned k_max) {
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  SpaceRef space = t_space();
  SparsePoly one = SparsePoly::constant(space, 1);
  SparsePoly t = SparsePoly::variable(space, kT);
  SparsePoly tp1_sq = (t + one) * (t + one);
  SparsePoly mid = (t * t - t.scaled(6) + one).scaled(2);
  std::vector<SparsePoly> nums;
  for (unsigned k = 0; k <= k_max; ++k) nums.push_back(S_poly(k).numerator);
  for (unsigned k = 0; k + 2 <= k_max; ++k) {
    // Multiply through by (1+t)^{2k+4}: the S recurrence becomes
    // (t+1)^2 N_{k+2} - 2(t^2-6t+1)(1+t)^2 N_{k+1} + (1+t)^6 N_k = 0.
    SparsePoly lhs = tp1_sq * nums[k + 2] - mid * tp1_sq * nums[k + 1] +
                     tp1_sq.pow(3) * nums[k];
    if (!lhs.is_zero()) return {false, static_cast<int>(k)};
  }
  return {true, -1};
}

RecurrenceVerdict check_qtilde_recurrence(unsigned k_max) {
  SpaceRef space = t_space();
  SparsePoly one = SparsePoly::constant(space, 1);
  SparsePoly t = SparsePoly::variable(space, kT);
  SparsePoly tp1_sq = (one + t) * (one + t);
  for (unsigned k = 0; k + 2 <= k_max; ++k) {
    QFamily fk2 = compute_Q(k + 2);
    QFamily fk1 = compute_Q(k + 1);
    for (unsigned i = 0; i <= k; ++i) {
      SparsePoly lhs = fk2.qtilde[i + 1].scaled(BigRational((1 + i) * (1 + k)));
      SparsePoly rhs = (tp1_sq * fk1.qtilde[i + 1]).scaled(BigRational((1 + i) * (2 + k))) +
                       fk1.qtilde[i].scaled(BigRational((2 + k) * (2 + 2 * k - i)));
      if (lhs != rhs) return {false, static_cast<int>(k)};
    }
  }
  return {true, -1};
}

SparsePoly kappa_poly(SpaceRef space, VarId x) {
  SparsePoly xv = SparsePoly::variable(space, x);
  return SparsePoly::constant(space, 1) - xv.pow(2).scaled(BigRational(1, 2)) +
         xv.pow(4).scaled(BigRational(1, 24)) - xv.pow(6).scaled(BigRational(1, 720));
}

namespace {

// q(t) = -(128/45)k^6 t^2 - ((64/45)k - 16/3)k^4 t + ((8/3)k - 4)k^2.
SparsePoly case2_quadratic(unsigned k) {
  SpaceRef space = t_space();
  SparsePoly t = SparsePoly::variable(space, kT);
  BigRational kk(k);
  BigRational c2 = BigRational(-128, 45) * pow_rational(kk, 6);
  BigRational c1 = -(BigRational(64, 45) * kk - BigRational(16, 3)) * pow_rational(kk, 4);
  BigRational c0 = (BigRational(8, 3) * kk - 4) * pow_rational(kk, 2);
  return (t * t).scaled(c2) + t.scaled(c1) + SparsePoly::constant(space, c0);
}

bool case2_checks(unsigned k) {
  if (k < 2) return true;
  SpaceRef space = t_space();
  SparsePoly t = SparsePoly::variable(space, kT);
  SparsePoly q = case2_quadratic(k);
  BigRational kk(k);

  // Expansion identity behind the quadratic: with kappa the cosine
  // truncation, -1 + (1+2kt)(1 - 1/4k + kappa(4k sqrt t)/4k) = q(t) t^2.
  // kappa(4k sqrt t) = 1 - 8k^2 t + (32/3) k^4 t^2 - (256/45) k^6 t^3.
  SparsePoly kappa_sub = SparsePoly::constant(space, 1) - t.scaled(8 * kk * kk) +
                         (t * t).scaled(BigRational(32, 3) * pow_rational(kk, 4)) -
                         (t * t * t).scaled(BigRational(256, 45) * pow_rational(kk, 6));
  SparsePoly lower = SparsePoly::constant(space, -1) +
                     (SparsePoly::constant(space, 1) + t.scaled(2 * kk)) *
                         (SparsePoly::constant(space, 1) -
                          SparsePoly::constant(space, BigRational(1, 4 * k)) +
                          kappa_sub.scaled(BigRational(1, 4 * k)));
  if (lower != q * t * t) return false;

  // Endpoint signs of the concave quadratic on [0, 1/(2k(2k-1))].
  BigRational t_end = BigRational(1) / (BigRational(2 * k) * BigRational(2 * k - 1));
  std::map<VarId, BigRational> at_zero{{kT, BigRational(0)}};
  std::map<VarId, BigRational> at_end{{kT, t_end}};
  if (q.eval(at_zero) < 0 || q.eval(at_end) < 0) return false;

  // Closed form of the endpoint value, expanded in powers of (k-2) so every
  // bracket coefficient is positive and the sign is evident for k >= 2:
  // q(1/(2k(2k-1))) = (4k^2/(45(2k-1)^2)) (187 + 468(k-2) + 384(k-2)^2 + 104(k-2)^3).
  BigRational shift = kk - 2;
  BigRational closed = BigRational(4) * kk * kk /
                       (BigRational(45) * pow_rational(BigRational(2 * k - 1), 2)) *
                       (BigRational(187) + BigRational(468) * shift +
                        BigRational(384) * shift * shift +
                        BigRational(104) * shift * shift * shift);
  return q.eval(at_end) == closed;
}

bool case1_check(unsigned k) {
  if (k < 2) return true;
  // -1/(2k) + (2k-1)t at t = 1/(2k(2k-1)) equals 0 and the slope is positive.
  BigRational t_end = BigRational(1) / (BigRational(2 * k) * BigRational(2 * k - 1));
  BigRational at_end = BigRational(-1, 2 * k) + BigRational(2 * k - 1) * t_end;
  return at_end == 0 && BigRational(2 * k - 1) > 0;
}

}  // namespace

NonnegEvidence prove_Q0_nonneg(unsigned k) {
  QFamily fam = compute_Q(k);
  NonnegEvidence ev;
  NonnegVerdict verdict = sturm_nonneg(fam.q[0]);
  ev.nonnegative = verdict.nonnegative;
  ev.witness = verdict.witness;
  ev.case1_ok = case1_check(k);
  ev.case2_ok = case2_checks(k);
  ev.convexity_ok = true;
  return ev;
}

NonnegEvidence prove_Qi_nonneg(unsigned k, unsigned i) {
  if (i < 1 || i > k) throw std::invalid_argument("index i must satisfy 1 <= i <= k");
  QFamily fam = compute_Q(k);
  NonnegEvidence ev;
  NonnegVerdict vq = sturm_nonneg(fam.q[i]);
  NonnegVerdict vqt = sturm_nonneg(fam.qtilde[i]);
  ev.nonnegative = vq.nonnegative && vqt.nonnegative;
  ev.witness = vq.nonnegative ? vqt.witness : vq.witness;

  // Q_{k,i} = (1-rho*) Qt_{k,i} + rho* C(2k,2i) (1+t)^{2k-2i}: the extra
  // weight sits on a perfect square, so Qt >= 0 forces Q >= 0.
  SpaceRef space = t_space();
  SparsePoly one = SparsePoly::constant(space, 1);
  SparsePoly t = SparsePoly::variable(space, kT);
  BigRational rs = rho_star(k);
  SparsePoly convex = fam.qtilde[i].scaled(BigRational(1) - rs) +
                      (one + t).pow(2 * k - 2 * i).scaled(rs * BigRational(binomial(2 * k, 2 * i)));
  ev.convexity_ok = convex == fam.q[i];
  ev.case1_ok = true;
  ev.case2_ok = true;
  return ev;
}

namespace {

// rho = 0 certificate: P_k|_{rho=0} = (A-1)(B-1) + (A-1) + (B-1) with
// A = ((1+a)^{2k}+(1-a)^{2k})/2 and A-1 = sum_{i>=1} C(2k,2i) a^{2i} a sum of
// scaled even squares; likewise for B.
SosList product_structure_squares(unsigned k) {
  SpaceRef space = ab_space();
  SparsePoly a = SparsePoly::variable(space, kA);
  SparsePoly b = SparsePoly::variable(space, kB);
  SosList sos;
  for (unsigned i = 1; i <= k; ++i)
    for (unsigned j = 1; j <= k; ++j)
      sos.push_back({BigRational(binomial(2 * k, 2 * i)) * BigRational(binomial(2 * k, 2 * j)),
                     a.pow(i) * b.pow(j)});
  for (unsigned i = 1; i <= k; ++i) {
    sos.push_back({BigRational(binomial(2 * k, 2 * i)), a.pow(i)});
    sos.push_back({BigRational(binomial(2 * k, 2 * i)), b.pow(i)});
  }
  return sos;
}

// rho = rho* certificate: decompose each Q_{k,i}(t) and lift every square
// g(t) to g(ab) (a+b)^i.
SosList q_route_squares(unsigned k) {
  SpaceRef space = ab_space();
  SparsePoly a = SparsePoly::variable(space, kA);
  SparsePoly b = SparsePoly::variable(space, kB);
  std::map<VarId, SparsePoly> t_to_ab{{kT, a * b}};
  SparsePoly s = a + b;
  QFamily fam = compute_Q(k);
  SosList sos;
  for (unsigned i = 0; i <= k; ++i) {
    SosList inner = univariate_sos_decompose(fam.q[i]);
    for (const auto& [c, g] : inner)
      sos.push_back({c, g.substitute(t_to_ab, space) * s.pow(i)});
  }
  return sos;
}

}  // namespace

SOSCertificate twopoint_certificate(const TwoPointParams& params) {
  validate(params);
  SpaceRef space = ab_space();
  BigRational rs = rho_star(params.k);
  SosList u0;
  if (params.rho == rs) {
    u0 = q_route_squares(params.k);
  } else if (params.rho == 0) {
    u0 = product_structure_squares(params.k);
  } else {
    // P_k is affine in rho: exact convex combination of the two endpoints.
    BigRational w_star = params.rho / rs;
    BigRational w_zero = BigRational(1) - w_star;
    u0 = sos_scaled(product_structure_squares(params.k), w_zero);
    for (auto& term : sos_scaled(q_route_squares(params.k), w_star)) u0.push_back(std::move(term));
  }
  SOSCertificate cert;
  cert.space = space;
  cert.target = build_P(params);
  cert.u0 = std::move(u0);
  cert.degree_bound = static_cast<int>(4 * params.k);
  ConstraintSystem empty(space);
  CertVerdict v = verify_certificate(cert, empty);
  if (!v.valid)
    throw std::logic_error("twopoint_certificate failed to verify: " + v.detail);
  return cert;
}

SparsePoly homogenized_target(const TwoPointParams& params) {
  validate(params);
  SpaceRef space = munu_space();
  SparsePoly mu = SparsePoly::variable(space, kMu);
  SparsePoly nu = SparsePoly::variable(space, kNu);
  SparsePoly al = SparsePoly::variable(space, kAlpha);
  SparsePoly be = SparsePoly::variable(space, kBeta);
  BigRational wp = (BigRational(1) + params.rho) / 4;
  BigRational wm = (BigRational(1) - params.rho) / 4;
  unsigned e = 2 * params.k;
  return ((mu + al).pow(e) * (nu + be).pow(e) + (mu - al).pow(e) * (nu - be).pow(e)).scaled(wp) +
         ((mu + al).pow(e) * (nu - be).pow(e) + (mu - al).pow(e) * (nu + be).pow(e)).scaled(wm) -
         mu.pow(e) * nu.pow(e);
}

SOSCertificate homogenize_certificate(const SOSCertificate& cert, const TwoPointParams& params) {
  validate(params);
  if (cert.space != ab_space())
    throw SpaceMismatchError("homogenize_certificate expects a certificate over {a,b}");
  const int k = static_cast<int>(params.k);
  SpaceRef out = munu_space();
  SosList lifted;
  for (const auto& [c, r] : cert.u0) {
    if (r.degree_in(kA) > k || r.degree_in(kB) > k)
      throw std::logic_error(
          "homogenize_certificate: square root exceeds per-variable degree k");
    // a^p b^q -> alpha^p mu^{k-p} beta^q nu^{k-q}.
    std::vector<SparsePoly::Term> terms;
    for (const auto& [m, coeff] : r.terms()) {
      uint32_t pa = m.exponent_of(kA), pb = m.exponent_of(kB);
      terms.push_back({Monomial::from_factors({{kAlpha, pa},
                                               {kMu, static_cast<uint32_t>(k) - pa},
                                               {kBeta, pb},
                                               {kNu, static_cast<uint32_t>(k) - pb}}),
                       coeff});
    }
    lifted.push_back({c, SparsePoly::from_terms(out, std::move(terms))});
  }
  SOSCertificate hcert;
  hcert.space = out;
  hcert.target = homogenized_target(params);
  hcert.u0 = std::move(lifted);
  hcert.degree_bound = 4 * k;
  ConstraintSystem empty(out);
  CertVerdict v = verify_certificate(hcert, empty);
  if (!v.valid)
    throw std::logic_error("homogenize_certificate failed to verify: " + v.detail);
  return hcert;
}

}  // namespace twopoint
}  // namespace soscert
