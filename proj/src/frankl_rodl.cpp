#include "soscert/frankl_rodl.hpp"

#include <bit>
#include <memory>
#include <stdexcept>

#include "soscert/reverse.hpp"

namespace soscert {
namespace franklrodl {

FRInstance make_instance(unsigned n, const BigRational& gamma) {
  if (n == 0 || n > 12) throw std::invalid_argument("dimension out of range");
  if (gamma <= 0 || gamma > BigRational(1, 2))
    throw std::invalid_argument("gamma must lie in (0, 1/2]");
  BigRational dn = (BigRational(1) - gamma) * BigRational(n);
  if (!is_integer(dn) || numerator(dn) % 2 != 0)
    throw std::invalid_argument("(1-gamma)n must be an even integer");
  FRInstance inst;
  inst.n = n;
  inst.gamma = gamma;
  inst.d = static_cast<unsigned>(numerator(dn).convert_to<unsigned long>());
  return inst;
}

BigRational sd_eigenvalue(unsigned n, unsigned d, unsigned j) {
  if (d > n || j > n) throw std::invalid_argument("sd_eigenvalue: index out of range");
  BigInt total = 0;
  for (unsigned i = 0; i <= std::min(j, d); ++i) {
    if (d - i > n - j) continue;
    BigInt term = binomial(j, i) * binomial(n - j, d - i);
    total += (i % 2 == 0) ? term : -term;
  }
  return BigRational(total, binomial(n, d));
}

SpectralGap spectral_gap(unsigned n, unsigned d, const BigRational& rho) {
  if (d + 1 > n) throw std::invalid_argument("spectral_gap needs d + 1 <= n");
  SpectralGap gap;
  gap.n = n;
  gap.d = d;
  gap.rho = rho;
  gap.delta_max = 0;
  for (unsigned j = 0; j <= n; ++j) {
    BigRational l_d = sd_eigenvalue(n, d, j);
    BigRational l_d1 = sd_eigenvalue(n, d + 1, j);
    BigRational l_prime = (l_d + l_d1) / 2;
    gap.lambda_sd.push_back(l_d);
    gap.lambda_sdp.push_back(l_prime);
    BigRational delta = l_prime - pow_rational(rho, j);
    if (abs(delta) > gap.delta_max) gap.delta_max = abs(delta);
    gap.delta.push_back(std::move(delta));
  }
  return gap;
}

TransferConstants transfer_constants(const SpectralGap& gap, DeltaMode mode) {
  const unsigned n = gap.n;
  if (mode == DeltaMode::Max) return {gap.delta_max, BigRational(1), mode};
  // Pair classes {j, n-j}: minimize c subject to 2c >= P_j - theta L_j.
  std::vector<BigRational> p_sum, l_sum;
  for (unsigned j = 0; 2 * j <= n; ++j) {
    p_sum.push_back(pow_rational(gap.rho, j) + pow_rational(gap.rho, n - j));
    l_sum.push_back(gap.lambda_sdp[j] + gap.lambda_sdp[n - j]);
  }
  auto c_of = [&](const BigRational& theta) {
    BigRational c = (p_sum[0] - theta * l_sum[0]) / 2;
    for (std::size_t j = 1; j < p_sum.size(); ++j) {
      BigRational cand = (p_sum[j] - theta * l_sum[j]) / 2;
      if (cand > c) c = cand;
    }
    return c;
  };
  std::vector<BigRational> candidates{BigRational(0), BigRational(1)};
  for (std::size_t a = 0; a < p_sum.size(); ++a)
    for (std::size_t b = a + 1; b < p_sum.size(); ++b)
      if (l_sum[a] != l_sum[b])
        candidates.push_back((p_sum[a] - p_sum[b]) / (l_sum[a] - l_sum[b]));
  BigRational best_theta = candidates[0];
  BigRational best_c = c_of(best_theta);
  for (const BigRational& theta : candidates) {
    BigRational c = c_of(theta);
    if (c < best_c) {
      best_c = c;
      best_theta = theta;
    }
  }
  if (best_c < 0) best_c = 0;  // constraints stay satisfied, and c scales squares
  return {best_c, best_theta, mode};
}

unsigned default_power(const BigRational& gamma) {
  BigRational inv = BigRational(1) / (4 * gamma);
  return static_cast<unsigned>(rational_ceil(inv).convert_to<unsigned long>());
}

bool refutable(const FRInstance& inst, const RefutationConfig& cfg) {
  unsigned k = cfg.k ? cfg.k : default_power(inst.gamma);
  BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, inst.n);
  TransferConstants tc = transfer_constants(spectral_gap(inst.n, inst.d, rho_prime), cfg.mode);
  return pow_rational(cfg.alpha, 4 * k) * BigRational(2) >
         pow_rational(BigRational(2), 4 * k) * tc.c;
}

BigRational min_refutable_density(const FRInstance& inst, DeltaMode mode,
                                  const BigRational& granularity) {
  unsigned k = default_power(inst.gamma);
  BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, inst.n);
  TransferConstants tc = transfer_constants(spectral_gap(inst.n, inst.d, rho_prime), mode);
  BigRational threshold = pow_rational(BigRational(2), 4 * k - 1) * tc.c;
  // Smallest multiple of the granularity with alpha^{4k} > threshold.
  BigInt lo = 0, hi = 1;
  auto ok = [&](const BigInt& m) {
    return pow_rational(BigRational(m) * granularity, 4 * k) > threshold;
  };
  while (!ok(hi)) hi <<= 1;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return BigRational(hi) * granularity;
}

std::vector<std::vector<SparsePoly>> parity_views(const SpaceRef& space, unsigned n) {
  std::vector<std::vector<SparsePoly>> views(2);
  for (unsigned p = 0; p < (1u << n); ++p) {
    unsigned parity = static_cast<unsigned>(std::popcount(p)) & 1u;
    for (unsigned i = 0; i < 2; ++i)
      views[i].push_back(parity == i ? SparsePoly::variable(space, p)
                                     : SparsePoly::zero(space));
  }
  return views;
}

unsigned max_independent_set(unsigned n, unsigned d) {
  if (n > 6) throw std::invalid_argument("exhaustive search supported for n <= 6");
  const unsigned pts = 1u << n;
  std::vector<uint64_t> adj(pts, 0);
  for (unsigned x = 0; x < pts; ++x)
    for (unsigned y = 0; y < pts; ++y)
      if (x != y && static_cast<unsigned>(std::popcount(x ^ y)) == d)
        adj[x] |= uint64_t(1) << y;
  unsigned best = 0;
  auto rec = [&](auto&& self, uint64_t cand, unsigned cur) -> void {
    if (cur + static_cast<unsigned>(std::popcount(cand)) <= best) return;
    if (!cand) {
      best = std::max(best, cur);
      return;
    }
    unsigned v = static_cast<unsigned>(std::countr_zero(cand));
    uint64_t bit = uint64_t(1) << v;
    self(self, (cand & ~adj[v]) & ~bit, cur + 1);  // take v
    self(self, cand & ~bit, cur);                  // skip v
  };
  rec(rec, pts == 64 ? ~uint64_t(0) : ((uint64_t(1) << pts) - 1), 0);
  return best;
}

std::string spectrum_csv(const SpectralGap& gap) {
  std::string out = "level,lambda_sd,lambda_sdp,rho_pow,delta\n";
  for (unsigned j = 0; j <= gap.n; ++j) {
    out += std::to_string(j) + "," + rational_to_string(gap.lambda_sd[j]) + "," +
           rational_to_string(gap.lambda_sdp[j]) + "," +
           rational_to_string(pow_rational(gap.rho, j)) + "," +
           rational_to_string(gap.delta[j]) + "\n";
  }
  return out;
}

namespace {

std::string suffix_label(unsigned len, unsigned bits) {
  std::string s = "(";
  for (unsigned l = 0; l < len; ++l) {
    if (l) s += ",";
    bool minus = (bits >> (len - 1 - l)) & 1u;
    s += minus ? "-1" : "+1";
  }
  return s + ")";
}

struct RefutationBuilder {
  const FRInstance& inst;
  unsigned k;
  BigRational rho;        // 1 - 2 gamma >= 0
  BigRational rho_prime;  // -(1 - 2 gamma)
  TransferConstants tc;
  SpaceRef space;
  ConstraintSystem system;
  std::unique_ptr<DagBuilder> builder;
  SOSCertificate base;  // two-point base certificate over {F0,F1,G0,G1}
  std::vector<std::vector<SparsePoly>> views;
  std::vector<BigRational> wprime_by_disagreement;

  unsigned pts() const { return 1u << inst.n; }
  unsigned parity(unsigned p) const { return static_cast<unsigned>(std::popcount(p)) & 1u; }
  VarId mean_var(unsigned view, unsigned len, unsigned bits) const {
    return pts() + view * (pts() - 1) + ((1u << len) - 1) + bits;
  }
  SparsePoly fvar(unsigned p) const { return SparsePoly::variable(space, p); }
  SparsePoly mvar(unsigned view, unsigned len, unsigned bits) const {
    return SparsePoly::variable(space, mean_var(view, len, bits));
  }

  void make_space() {
    std::vector<std::string> labels;
    for (unsigned p = 0; p < pts(); ++p)
      labels.push_back("f" + reversecert::point_label(inst.n, p));
    for (unsigned view = 0; view < 2; ++view)
      for (unsigned len = 0; len < inst.n; ++len)
        for (unsigned bits = 0; bits < (1u << len); ++bits)
          labels.push_back("m" + std::to_string(view) + suffix_label(len, bits));
    space = IndeterminateSpace::make(std::move(labels));
  }

  SparsePoly mean_of_all() const {
    SparsePoly sum = SparsePoly::zero(space);
    for (unsigned p = 0; p < pts(); ++p) sum += fvar(p);
    return sum.scaled(BigRational(1, pts()));
  }

  void make_system(const BigRational& alpha) {
    system = ConstraintSystem(space);
    for (unsigned p = 0; p < pts(); ++p)
      system.add_equality("bool:" + reversecert::point_label(inst.n, p),
                          fvar(p) * fvar(p) - fvar(p));
    for (unsigned x = 0; x < pts(); ++x)
      for (unsigned y = x + 1; y < pts(); ++y)
        if (static_cast<unsigned>(std::popcount(x ^ y)) == inst.d)
          system.add_equality("edge:" + reversecert::point_label(inst.n, x) +
                                  reversecert::point_label(inst.n, y),
                              fvar(x) * fvar(y));
    system.add_inequality("density", mean_of_all() - SparsePoly::constant(space, alpha));
    // Definitional equalities for the restriction means of each parity view.
    for (unsigned view = 0; view < 2; ++view) {
      for (unsigned len = 0; len < inst.n; ++len) {
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
          SparsePoly lower0, lower1;
          if (len + 1 == inst.n) {
            lower0 = views[view][(0u << len) | bits];
            lower1 = views[view][(1u << len) | bits];
          } else {
            lower0 = mvar(view, len + 1, (0u << len) | bits);
            lower1 = mvar(view, len + 1, (1u << len) | bits);
          }
          system.add_equality("mean:" + std::to_string(view) + suffix_label(len, bits),
                              mvar(view, len, bits) - (lower0 + lower1).scaled(BigRational(1, 2)));
        }
      }
    }
  }

  SosList base_at(const SparsePoly& f0, const SparsePoly& f1, const SparsePoly& g0,
                  const SparsePoly& g1) const {
    std::map<VarId, SparsePoly> bind{{0, f0}, {1, f1}, {2, g0}, {3, g1}};
    SosList out;
    out.reserve(base.u0.size());
    for (const auto& [c, r] : base.u0) out.push_back({c, r.substitute(bind, space)});
    return out;
  }
  SparsePoly base_target_at(const SparsePoly& f0, const SparsePoly& f1, const SparsePoly& g0,
                            const SparsePoly& g1) const {
    std::map<VarId, SparsePoly> bind{{0, f0}, {1, f1}, {2, g0}, {3, g1}};
    return base.target.substitute(bind, space);
  }

  // sum_{i=0}^{2k-2} f^i, the cofactor of (f^2 - f) in f^{2k} - f.
  SparsePoly power_cofactor(const SparsePoly& f) const {
    SparsePoly sum = SparsePoly::zero(space);
    SparsePoly p = SparsePoly::constant(space, 1);
    for (unsigned i = 0; i + 2 <= 2 * k; ++i) {
      sum += p;
      p = p * f;
    }
    return sum;
  }

  // Ladder statement for view i and restriction pair (w, u) of suffix length
  // j: concludes Phi_{n-j}(w, u) - m_w^{2k} m_u^{2k} >= 0.
  uint32_t ladder(unsigned view, unsigned len, unsigned w, unsigned u) {
    const unsigned m = inst.n - len;
    uint32_t combo;
    SparsePoly af0, af1, ag0, ag1;  // the four lower values feeding the step
    if (m == 1) {
      af0 = views[view][(0u << len) | w];
      af1 = views[view][(1u << len) | w];
      ag0 = views[view][(1u << len) | u];
      ag1 = views[view][(0u << len) | u];
      SOSCertificate leaf;
      leaf.space = space;
      leaf.degree_bound = static_cast<int>(4 * k);
      leaf.u0 = base_at(af0, af1, ag0, ag1);
      leaf.target = base_target_at(af0, af1, ag0, ag1);
      combo = builder->add(CertLeafNode{std::move(leaf)}, "base case");
    } else {
      af0 = mvar(view, len + 1, (0u << len) | w);
      af1 = mvar(view, len + 1, (1u << len) | w);
      ag0 = mvar(view, len + 1, (1u << len) | u);
      ag1 = mvar(view, len + 1, (0u << len) | u);
      std::vector<uint32_t> children;
      std::vector<BigRational> coeffs;
      for (unsigned a = 0; a < 2; ++a) {
        for (unsigned b = 0; b < 2; ++b) {
          children.push_back(ladder(view, len + 1, (a << len) | w, ((1u - b) << len) | u));
          coeffs.push_back(a == b ? (BigRational(1) + rho) / 4 : (BigRational(1) - rho) / 4);
        }
      }
      combo = builder->add(CombNode{std::move(children), std::move(coeffs),
                                    base_at(af0, af1, ag0, ag1)},
                           "inductive step");
    }
    SparsePoly avg_f = (af0 + af1).scaled(BigRational(1, 2));
    SparsePoly avg_g = (ag0 + ag1).scaled(BigRational(1, 2));
    SparsePoly m_w = mvar(view, len, w);
    SparsePoly m_u = mvar(view, len, u);
    // m_w^{2k} m_u^{2k} - avg_f^{2k} avg_g^{2k} via the two definitional means.
    SparsePoly mult_f = SparsePoly::zero(space);
    SparsePoly mult_g = SparsePoly::zero(space);
    for (unsigned t = 0; t < 2 * k; ++t) {
      mult_f += m_w.pow(t) * avg_f.pow(2 * k - 1 - t);
      mult_g += m_u.pow(t) * avg_g.pow(2 * k - 1 - t);
    }
    uint32_t r1 = builder->add(
        ProductPolyNode{builder->axiom("mean:" + std::to_string(view) + suffix_label(len, w)),
                        mult_f * m_u.pow(2 * k)},
        "mean rewrite f");
    uint32_t r2 = builder->add(
        ProductPolyNode{builder->axiom("mean:" + std::to_string(view) + suffix_label(len, u)),
                        mult_g * avg_f.pow(2 * k)},
        "mean rewrite g");
    return builder->add(
        CombNode{{combo, r1, r2}, {BigRational(1), BigRational(-1), BigRational(-1)}, {}},
        "statement");
  }

  SparsePoly hat_form(unsigned view, unsigned u_mask) const {
    std::vector<SparsePoly::Term> terms;
    BigRational inv(1, pts());
    for (unsigned x = 0; x < pts(); ++x) {
      if (parity(x) != view) continue;
      bool neg = std::popcount(u_mask & x) & 1;
      terms.push_back({Monomial::variable(x), neg ? -inv : inv});
    }
    return SparsePoly::from_terms(space, std::move(terms));
  }

  SparsePoly t_sum() const {
    std::vector<SparsePoly::Term> terms;
    for (unsigned x = 0; x < pts(); ++x)
      for (unsigned y = 0; y < pts(); ++y) {
        if (parity(x) != parity(y)) continue;
        unsigned h = static_cast<unsigned>(std::popcount(x ^ y));
        terms.push_back({Monomial::variable(x).times(Monomial::variable(y)),
                         wprime_by_disagreement[h]});
      }
    return SparsePoly::from_terms(space, std::move(terms));
  }

  SparsePoly phi_sum() const {
    SparsePoly total = SparsePoly::zero(space);
    for (unsigned view = 0; view < 2; ++view)
      for (unsigned x = 0; x < pts(); ++x) {
        if (parity(x) != view) continue;
        SparsePoly fx = fvar(x).pow(2 * k);
        for (unsigned y = 0; y < pts(); ++y) {
          if (parity(y) != view) continue;
          unsigned h = static_cast<unsigned>(std::popcount(x ^ y));
          total += (fx * fvar(y).pow(2 * k)).scaled(wprime_by_disagreement[h]);
        }
      }
    return total;
  }

  Refutation run(const RefutationConfig& cfg) {
    const unsigned n = inst.n;
    rho = BigRational(1) - 2 * inst.gamma;
    rho_prime = -rho;
    k = cfg.k ? cfg.k : default_power(inst.gamma);
    if (rho > twopoint::rho_star(k))
      throw std::invalid_argument("rho = 1 - 2 gamma exceeds 1 - 1/(2k)");
    if (cfg.alpha <= 0 || cfg.alpha > 1)
      throw std::invalid_argument("alpha must lie in (0, 1]");
    if (n > 8)
      throw std::invalid_argument(
          "build_refutation: dimension too large (mean ladders grow as 4^n; supported up to n = 8)");

    SpectralGap gap = spectral_gap(n, inst.d, rho_prime);
    tc = transfer_constants(gap, cfg.mode);
    BigRational kappa =
        pow_rational(BigRational(2), 1 - 4 * static_cast<int>(k)) * pow_rational(cfg.alpha, 4 * k) -
        tc.c;
    if (kappa <= 0)
      throw InfeasibleThreshold(
          "density below the refutable threshold",
          min_refutable_density(inst, cfg.mode, BigRational(1, 1u << 20)));

    make_space();
    views = parity_views(space, n);
    make_system(cfg.alpha);
    for (unsigned h = 0; h <= n; ++h)
      wprime_by_disagreement.push_back(reversecert::correlation_weight(n, h, rho_prime));
    builder = std::make_unique<DagBuilder>(space, &system, static_cast<int>(4 * k));
    base = reversecert::base_case_certificate(k, rho);

    // (1) Edge axioms give sum_i <f_i, S'_d f_i> = 0.
    std::vector<uint32_t> edge_children;
    std::vector<BigRational> edge_coeffs;
    BigRational edge_coeff = BigRational(1, pts()) / BigRational(binomial(n, inst.d));
    for (const auto& [label, r] : system.equalities()) {
      if (label.rfind("edge:", 0) != 0) continue;
      edge_children.push_back(builder->axiom(label));
      edge_coeffs.push_back(edge_coeff);
    }
    uint32_t z_node = builder->add(CombNode{std::move(edge_children), std::move(edge_coeffs), {}},
                                   "edge parity sum");

    // (2) Spectral transfer: c E[f] - sum_i <f_i, T_rho' f_i> >= 0.
    {
      std::vector<uint32_t> children{z_node};
      std::vector<BigRational> coeffs{-tc.theta};
      BigRational bool_coeff = -tc.c / BigRational(pts());
      for (unsigned p = 0; p < pts(); ++p) {
        children.push_back(builder->axiom("bool:" + reversecert::point_label(n, p)));
        coeffs.push_back(bool_coeff);
      }
      SosList squares;
      const unsigned full = pts() - 1;
      for (unsigned view = 0; view < 2; ++view) {
        for (unsigned u_mask = 0; u_mask < pts(); ++u_mask) {
          unsigned comp = full & ~u_mask;
          if (u_mask > comp) continue;
          unsigned j = static_cast<unsigned>(std::popcount(u_mask));
          BigRational weight = 2 * tc.c -
                               (pow_rational(rho_prime, j) + pow_rational(rho_prime, n - j)) +
                               tc.theta * (gap.lambda_sdp[j] + gap.lambda_sdp[n - j]);
          if (weight < 0)
            throw std::logic_error("transfer constants leave a negative pair weight");
          if (weight == 0) continue;
          squares.push_back({weight, hat_form(view, u_mask)});
        }
      }
      spectral_node = builder->add(CombNode{std::move(children), std::move(coeffs), std::move(squares)},
                                   "spectral transfer");
      SparsePoly expect = mean_of_all().scaled(tc.c) - t_sum();
      if (!(builder->conclusion(spectral_node).poly == expect))
        throw std::logic_error("spectral transfer conclusion mismatch");
    }

    // (3)+(4) Reflection is absorbed into Phi; Booleanity raises first powers
    // to 2k-th powers pairwise.
    {
      std::vector<uint32_t> children;
      std::vector<BigRational> coeffs;
      for (unsigned z = 0; z < pts(); ++z) {
        SparsePoly weighted = SparsePoly::zero(space);
        for (unsigned y = 0; y < pts(); ++y) {
          if (parity(y) != parity(z)) continue;
          unsigned h = static_cast<unsigned>(std::popcount(z ^ y));
          weighted += (fvar(y) + fvar(y).pow(2 * k)).scaled(wprime_by_disagreement[h]);
        }
        SparsePoly mult = -(power_cofactor(fvar(z)) * weighted);
        children.push_back(builder->add(
            ProductPolyNode{builder->axiom("bool:" + reversecert::point_label(n, z)), mult},
            "power rewrite"));
        coeffs.push_back(1);
      }
      power_node = builder->add(CombNode{std::move(children), std::move(coeffs), {}},
                                "booleanity powers");
      SparsePoly expect = t_sum() - phi_sum();
      if (!(builder->conclusion(power_node).poly == expect))
        throw std::logic_error("booleanity power rewrite mismatch");
    }

    // (5) Reverse hypercontractivity through the mean ladders.
    uint32_t ladder0 = ladder(0, 0, 0, 0);
    uint32_t ladder1 = ladder(1, 0, 0, 0);
    {
      SparsePoly expect = phi_sum() - mvar(0, 0, 0).pow(4 * k) - mvar(1, 0, 0).pow(4 * k);
      SparsePoly got = builder->conclusion(ladder0).poly + builder->conclusion(ladder1).poly;
      if (!(got == expect)) throw std::logic_error("ladder conclusions mismatch");
    }

    // (6) m0 + m1 = E[f] from the definitional equalities.
    uint32_t mean_eq;
    {
      std::vector<uint32_t> children;
      std::vector<BigRational> coeffs;
      for (unsigned view = 0; view < 2; ++view)
        for (unsigned len = 0; len < n; ++len)
          for (unsigned bits = 0; bits < (1u << len); ++bits) {
            children.push_back(
                builder->axiom("mean:" + std::to_string(view) + suffix_label(len, bits)));
            coeffs.push_back(BigRational(1, 1u << len));
          }
      mean_eq = builder->add(CombNode{std::move(children), std::move(coeffs), {}}, "mean total");
      SparsePoly expect = mvar(0, 0, 0) + mvar(1, 0, 0) - mean_of_all();
      if (!(builder->conclusion(mean_eq).poly == expect))
        throw std::logic_error("mean telescoping mismatch");
    }

    // (7)-(9) density shift, power lift, convexity of the two parity means.
    uint32_t density_shift =
        builder->add(CombNode{{builder->axiom("density"), mean_eq},
                              {BigRational(1), BigRational(1)},
                              {}},
                     "density shift");
    uint32_t powers =
        builder->add(PowersNode{density_shift, 4 * k, cfg.alpha}, "density power lift");
    uint32_t convexity;
    {
      SpaceRef xy = IndeterminateSpace::make({"X", "Y"});
      SparsePoly xv = SparsePoly::variable(xy, 0), yv = SparsePoly::variable(xy, 1);
      SparsePoly w = (xv.pow(4 * k) + yv.pow(4 * k)).scaled(BigRational(1, 2)) -
                     ((xv + yv).scaled(BigRational(1, 2))).pow(4 * k);
      SosList witness = bivariate_homog_sos_decompose(w);
      std::map<VarId, SparsePoly> bind{{0, mvar(0, 0, 0)}, {1, mvar(1, 0, 0)}};
      SosList inst_witness;
      for (const auto& [c, r] : witness) inst_witness.push_back({c, r.substitute(bind, space)});
      convexity = builder->add(
          SuperCsNode{mvar(0, 0, 0), mvar(1, 0, 0), 2 * k, std::move(inst_witness)},
          "parity mean convexity");
    }

    // (10) Booleanity slack c - c E[f] >= 0 and the scaled contradiction.
    uint32_t bool_slack;
    {
      std::vector<uint32_t> children;
      std::vector<BigRational> coeffs;
      SosList squares;
      BigRational w = tc.c / BigRational(pts());
      for (unsigned p = 0; p < pts(); ++p) {
        children.push_back(builder->axiom("bool:" + reversecert::point_label(n, p)));
        coeffs.push_back(-w);
        if (w > 0) squares.push_back({w, SparsePoly::constant(space, 1) - fvar(p)});
      }
      bool_slack = builder->add(CombNode{std::move(children), std::move(coeffs), std::move(squares)},
                                "boolean slack");
    }

    BigRational inv_kappa = BigRational(1) / kappa;
    uint32_t root = builder->add(
        CombNode{{bool_slack, spectral_node, power_node, ladder0, ladder1, convexity, powers},
                 {inv_kappa, inv_kappa, inv_kappa, inv_kappa, inv_kappa, 2 * inv_kappa,
                  pow_rational(BigRational(2), 1 - 4 * static_cast<int>(k)) * inv_kappa},
                 {}},
        "refutation root");
    if (!(builder->conclusion(root).poly == SparsePoly::constant(space, -1)))
      throw std::logic_error("refutation did not close to -1");

    Refutation out;
    out.dag = builder->finish(root, {{"statement", "independent-set refutation"},
                                     {"n", std::to_string(n)},
                                     {"gamma", rational_to_string(inst.gamma)},
                                     {"d", std::to_string(inst.d)},
                                     {"k", std::to_string(k)},
                                     {"alpha", rational_to_string(cfg.alpha)},
                                     {"delta_mode", cfg.mode == DeltaMode::Tight ? "tight" : "max"},
                                     {"c", rational_to_string(tc.c)},
                                     {"theta", rational_to_string(tc.theta)}});
    out.system = std::move(system);
    out.constants = tc;
    out.k = k;
    out.rho = rho;
    return out;
  }

  uint32_t spectral_node = 0;
  uint32_t power_node = 0;
};

}  // namespace

Refutation build_refutation(const FRInstance& inst, const RefutationConfig& cfg) {
  RefutationBuilder rb{inst, 0, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  return rb.run(cfg);
}

}  // namespace franklrodl
}  // namespace soscert
