#include "soscert/sos_decompose.hpp"

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace soscert {

SparsePoly sos_expand(const SosList& sos, const SpaceRef& space) {
  SparsePoly total = SparsePoly::zero(space);
  for (const auto& [c, s] : sos) total += (s * s).scaled(c);
  return total;
}

SosList sos_scaled(const SosList& sos, const BigRational& c) {
  SosList out = sos;
  for (auto& t : out) t.coeff *= c;
  return out;
}

DecomposeOptions decompose_options_from_env() {
  DecomposeOptions opts;
  if (const char* cap = std::getenv("SOSCERT_PREC_CAP")) {
    long v = std::atol(cap);
    if (v >= 64) opts.max_bits = static_cast<unsigned>(v);
  }
  return opts;
}

bool ldlt_psd(std::vector<std::vector<BigRational>> m, std::vector<BigRational>& d,
              std::vector<std::vector<BigRational>>& l) {
  const std::size_t n = m.size();
  d.assign(n, BigRational(0));
  l.assign(n, std::vector<BigRational>(n, BigRational(0)));
  for (std::size_t k = 0; k < n; ++k) l[k][k] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    BigRational piv = m[k][k];
    if (piv < 0) return false;
    if (piv == 0) {
      // PSD requires the whole pivot row/column to vanish.
      for (std::size_t j = k + 1; j < n; ++j)
        if (m[k][j] != 0) return false;
      continue;
    }
    d[k] = piv;
    for (std::size_t i = k + 1; i < n; ++i) {
      BigRational f = m[i][k] / piv;
      l[i][k] = f;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

namespace {

using BigFloat = boost::multiprecision::mpf_float;

struct CF {
  BigFloat re, im;
};

CF cf_add(const CF& a, const CF& b) { return {a.re + b.re, a.im + b.im}; }
CF cf_sub(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }
CF cf_mul(const CF& a, const CF& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CF cf_div(const CF& a, const CF& b) {
  BigFloat d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
BigFloat cf_abs2(const CF& a) { return a.re * a.re + a.im * a.im; }

// Aberth-Ehrlich simultaneous root refinement. Coefficients need not be monic.
// Returns true on convergence.
bool aberth_roots(const std::vector<BigFloat>& c, unsigned bits, std::vector<CF>& roots) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) {
    roots.clear();
    return true;
  }
  BigFloat radius = 0;
  for (int i = 0; i < n; ++i) {
    BigFloat q = abs(c[i] / c[n]);
    if (q > radius) radius = q;
  }
  radius += 1;
  roots.resize(n);
  for (int i = 0; i < n; ++i) {
    double theta = 2.0 * 3.14159265358979323846 * i / n + 0.4;
    roots[i] = {radius * BigFloat(std::cos(theta)), radius * BigFloat(std::sin(theta))};
  }
  BigFloat eps = pow(BigFloat(2), -static_cast<int>(bits) + 16) * radius;
  for (int iter = 0; iter < 400; ++iter) {
    BigFloat worst = 0;
    for (int i = 0; i < n; ++i) {
      // Horner for p and p'.
      CF z = roots[i];
      CF p{BigFloat(0), BigFloat(0)}, dp{BigFloat(0), BigFloat(0)};
      for (int k = n; k >= 0; --k) {
        dp = cf_add(cf_mul(dp, z), p);
        p = cf_add(cf_mul(p, z), CF{c[k], BigFloat(0)});
      }
      if (cf_abs2(p) == 0) continue;
      CF w = cf_div(p, dp);
      CF s{BigFloat(0), BigFloat(0)};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        s = cf_add(s, cf_div(CF{BigFloat(1), BigFloat(0)}, cf_sub(z, roots[j])));
      }
      CF denom = cf_sub(CF{BigFloat(1), BigFloat(0)}, cf_mul(w, s));
      if (cf_abs2(denom) == 0) continue;
      CF corr = cf_div(w, denom);
      roots[i] = cf_sub(roots[i], corr);
      BigFloat mag = sqrt(cf_abs2(corr));
      if (mag > worst) worst = mag;
    }
    if (worst < eps) return true;
  }
  return false;
}

BigRational round_dyadic(const BigFloat& x, unsigned bits) {
  BigFloat scaled = x * pow(BigFloat(2), static_cast<int>(bits));
  BigFloat rounded = round(scaled);
  BigInt z = rounded.convert_to<BigInt>();
  BigInt den = BigInt(1) << bits;
  return BigRational(z, den);
}

// SOS list (in the univariate dense encoding) for a primitive strictly
// positive even-degree polynomial.
bool positive_definite_sos(const UniPoly& o, unsigned bits, std::vector<std::pair<BigRational, UniPoly>>& out) {
  const int deg = uv_degree(o);
  const int m = deg / 2;
  // Positivity margin: find exact rational lambda > 0 with o - lambda*(1+t^2)^m
  // strictly positive; it absorbs the later rounding residual.
  UniPoly w{BigRational(1)};
  {
    UniPoly base{BigRational(1), BigRational(0), BigRational(1)};
    for (int i = 0; i < m; ++i) w = uv_mul(w, base);
  }
  BigRational lambda = o.back() / 2;
  for (const BigRational& t : {BigRational(0), BigRational(1), BigRational(-1), BigRational(2), BigRational(-2)}) {
    BigRational v = uv_eval(o, t) / uv_eval(w, t);
    if (v < lambda) lambda = v;
  }
  lambda /= 2;
  bool margin_ok = false;
  for (int tries = 0; tries < 4096 && lambda > 0; ++tries) {
    UniPoly q = uv_sub(o, uv_scale(w, lambda));
    if (!q.empty() && uv_degree(q) == deg && q.back() > 0 && uv_eval(q, BigRational(0)) > 0 &&
        sturm_chain(q).count_real_roots() == 0) {
      margin_ok = true;
      break;
    }
    lambda /= 4;
  }
  if (!margin_ok) return false;
  UniPoly q = uv_sub(o, uv_scale(w, lambda));

  // Numeric conjugate pairing of the margin remainder.
  const unsigned digits10 = static_cast<unsigned>(bits * 0.302) + 8;
  BigFloat::default_precision(digits10);
  std::vector<BigFloat> fc(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    fc[i] = BigFloat(numerator(q[i])) / BigFloat(denominator(q[i]));
  std::vector<CF> roots;
  if (!aberth_roots(fc, bits, roots)) return false;
  std::vector<CF> upper;
  for (const auto& z : roots)
    if (z.im > 0) upper.push_back(z);
  if (static_cast<int>(upper.size()) != m) return false;
  // G = prod (t - z_j) over the upper half-plane roots, expanded as A + iB.
  std::vector<CF> g{CF{BigFloat(1), BigFloat(0)}};
  for (const auto& z : upper) {
    std::vector<CF> next(g.size() + 1, CF{BigFloat(0), BigFloat(0)});
    for (std::size_t i = 0; i < g.size(); ++i) {
      next[i + 1] = cf_add(next[i + 1], g[i]);
      next[i] = cf_sub(next[i], cf_mul(g[i], z));
    }
    g = std::move(next);
  }
  UniPoly a(m + 1), b(m + 1, BigRational(0));
  unsigned round_bits = bits / 2;
  for (int i = 0; i <= m; ++i) {
    a[i] = round_dyadic(g[i].re, round_bits);
    b[i] = round_dyadic(g[i].im, round_bits);
  }
  a[m] = 1;  // keep the paired part monic so the top coefficient matches exactly
  b = uv_trim(std::move(b));
  BigRational lc = q.back();

  // Fold the rounding residual into the margin's diagonal Gram matrix.
  UniPoly paired = uv_scale(uv_add(uv_mul(a, a), uv_mul(b, b)), lc);
  UniPoly resid = uv_sub(q, paired);
  if (uv_degree(resid) >= 2 * m) return false;
  std::vector<std::vector<BigRational>> gram(m + 1, std::vector<BigRational>(m + 1, BigRational(0)));
  for (int i = 0; i <= m; ++i) gram[i][i] = lambda * BigRational(binomial(m, i));
  for (std::size_t lpow = 0; lpow < resid.size(); ++lpow) {
    if (resid[lpow] == 0) continue;
    std::size_t i = lpow / 2, j = lpow - i;
    if (i == j) {
      gram[i][i] += resid[lpow];
    } else {
      gram[i][j] += resid[lpow] / 2;
      gram[j][i] += resid[lpow] / 2;
    }
  }
  std::vector<BigRational> d;
  std::vector<std::vector<BigRational>> lmat;
  if (!ldlt_psd(gram, d, lmat)) return false;

  out.clear();
  out.push_back({lc, a});
  if (!b.empty()) out.push_back({lc, b});
  for (std::size_t k = 0; k <= static_cast<std::size_t>(m); ++k) {
    if (d[k] == 0) continue;
    UniPoly row(m + 1, BigRational(0));
    row[k] = 1;
    for (std::size_t i = k + 1; i <= static_cast<std::size_t>(m); ++i) row[i] = lmat[i][k];
    out.push_back({d[k], uv_trim(std::move(row))});
  }
  // Exact reconstruction check before returning.
  UniPoly sum;
  for (const auto& [cc, ss] : out) sum = uv_add(sum, uv_scale(uv_mul(ss, ss), cc));
  return uv_sub(sum, o).empty();
}

}  // namespace

SosList univariate_sos_decompose(const SparsePoly& p, DecomposeOptions opts) {
  auto [u, var_opt] = to_unipoly(p);
  NonnegVerdict nn = uv_sturm_nonneg(u);
  if (!nn.nonnegative)
    throw NotNonnegativeError("polynomial is negative at t = " + rational_to_string(*nn.witness),
                              *nn.witness);
  SpaceRef space = p.space();
  if (u.empty()) return {};
  if (uv_degree(u) == 0) return {{u[0], SparsePoly::constant(space, 1)}};
  VarId var = *var_opt;

  SquareFree sf = uv_squarefree(u);
  UniPoly even_root{BigRational(1)};
  UniPoly odd_part{BigRational(1)};
  for (const auto& [fac, mult] : sf.factors) {
    for (unsigned i = 0; i < mult / 2; ++i) even_root = uv_mul(even_root, fac);
    if (mult % 2 == 1) odd_part = uv_mul(odd_part, fac);
  }
  BigRational content = sf.content;  // > 0: nonnegative with positive leading coeff

  SosList result;
  if (uv_degree(odd_part) == 0) {
    result.push_back({content * odd_part[0], from_unipoly(even_root, space, var)});
  } else {
    std::vector<std::pair<BigRational, UniPoly>> inner;
    bool done = false;
    for (unsigned bits = opts.start_bits; bits <= opts.max_bits; bits *= 2) {
      if (positive_definite_sos(odd_part, bits, inner)) {
        done = true;
        break;
      }
    }
    if (!done)
      throw PrecisionExhaustedError("univariate_sos_decompose: precision cap reached");
    for (const auto& [c, s] : inner)
      result.push_back({content * c, from_unipoly(uv_mul(s, even_root), space, var)});
  }
  if (sos_expand(result, space) != p)
    throw std::logic_error("univariate_sos_decompose: exact reconstruction failed");
  return result;
}

SosList bivariate_homog_sos_decompose(const SparsePoly& p, DecomposeOptions opts) {
  if (p.is_zero()) return {};
  const int deg = p.degree();
  if (deg % 2 != 0) throw std::invalid_argument("homogeneous SOS needs even degree");
  VarId x = 0, y = 0;
  bool seen_x = false, seen_y = false;
  for (const auto& [m, c] : p.terms()) {
    if (static_cast<int>(m.degree()) != deg)
      throw std::invalid_argument("polynomial is not homogeneous");
    for (const auto& [v, e] : m.factors()) {
      if (!seen_x) {
        x = v;
        seen_x = true;
      } else if (v != x && !seen_y) {
        y = v;
        seen_y = true;
      } else if (v != x && v != y) {
        throw std::invalid_argument("polynomial is not bivariate");
      }
    }
  }
  if (!seen_x) return {{p.coefficient(Monomial()), SparsePoly::constant(p.space(), 1)}};
  if (!seen_y) {
    // Single variable: p = c * x^deg; nonneg iff c >= 0, root = x^{deg/2}.
    SparsePoly dh = p;
    SosList inner = univariate_sos_decompose(dh, opts);
    return inner;
  }
  SparsePoly dehom = p.dehomogenize(y);
  SosList inner = univariate_sos_decompose(dehom, opts);  // throws when negative
  const unsigned half = static_cast<unsigned>(deg) / 2;
  SosList out;
  for (const auto& [c, s] : inner) {
    out.push_back({c, s.homogenize(y, static_cast<int>(half))});
  }
  if (sos_expand(out, p.space()) != p)
    throw std::logic_error("bivariate_homog_sos_decompose: reconstruction failed");
  return out;
}

}  // namespace soscert
