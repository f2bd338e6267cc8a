#include "soscert/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace soscert {

UniPoly uv_trim(UniPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int uv_degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

BigRational uv_eval(const UniPoly& p, const BigRational& x) {
  BigRational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly uv_add(const UniPoly& a, const UniPoly& b) {
  UniPoly r(std::max(a.size(), b.size()), BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return uv_trim(std::move(r));
}

UniPoly uv_sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r(std::max(a.size(), b.size()), BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return uv_trim(std::move(r));
}

UniPoly uv_mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return uv_trim(std::move(r));
}

UniPoly uv_scale(const UniPoly& a, const BigRational& c) {
  if (c == 0) return {};
  UniPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

UniPoly uv_derivative(const UniPoly& p) {
  if (p.size() <= 1) return {};
  UniPoly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * BigRational(i);
  return uv_trim(std::move(r));
}

std::pair<UniPoly, UniPoly> uv_divmod(const UniPoly& a, const UniPoly& b) {
  if (b.empty()) throw std::domain_error("univariate division by zero");
  int da = uv_degree(a), db = uv_degree(b);
  UniPoly rem = a;
  if (da < db) return {{}, uv_trim(std::move(rem))};
  UniPoly quot(da - db + 1, BigRational(0));
  for (int k = da; k >= db; --k) {
    if (rem[k] == 0) continue;
    BigRational q = rem[k] / b[db];
    quot[k - db] = q;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= q * b[j];
  }
  return {uv_trim(std::move(quot)), uv_trim(std::move(rem))};
}

UniPoly uv_divexact(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = uv_divmod(a, b);
  if (!r.empty()) throw std::logic_error("uv_divexact: nonzero remainder");
  return q;
}

std::pair<BigRational, UniPoly> uv_content_primitive(const UniPoly& p) {
  if (p.empty()) return {BigRational(0), {}};
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& c : p) {
    num_gcd = gcd(num_gcd, numerator(c));
    den_lcm = lcm(den_lcm, denominator(c));
  }
  BigRational content(num_gcd, den_lcm);
  if (p.back() < 0) content = -content;
  UniPoly prim(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) prim[i] = p[i] / content;
  return {content, std::move(prim)};
}

UniPoly uv_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = uv_content_primitive(a).second;
  UniPoly y = uv_content_primitive(b).second;
  if (x.empty()) return y;
  if (y.empty()) return x;
  if (uv_degree(x) < uv_degree(y)) std::swap(x, y);
  while (!y.empty()) {
    auto [q, r] = uv_divmod(x, y);
    x = std::move(y);
    y = uv_content_primitive(r).second;
  }
  return x;
}

SquareFree uv_squarefree(const UniPoly& p) {
  SquareFree out;
  auto [content, f] = uv_content_primitive(p);
  out.content = content;
  if (f.empty() || uv_degree(f) == 0) {
    if (!f.empty()) out.content *= f[0];
    return out;
  }
  // Yun's algorithm on the primitive part.
  UniPoly fp = uv_derivative(f);
  UniPoly g = uv_gcd(f, fp);
  UniPoly w = uv_divexact(f, g);
  UniPoly y = uv_divexact(fp, g);
  unsigned i = 1;
  while (uv_degree(w) > 0) {
    UniPoly z = uv_sub(y, uv_derivative(w));
    UniPoly ai = uv_gcd(w, z);
    if (uv_degree(ai) > 0) out.factors.push_back({ai, i});
    w = uv_divexact(w, ai.empty() ? UniPoly{BigRational(1)} : ai);
    y = uv_divexact(z, ai.empty() ? UniPoly{BigRational(1)} : ai);
    ++i;
  }
  // w is now a constant; fold it (and any factor normalization) into content.
  BigRational residue = w.empty() ? BigRational(0) : w[0];
  UniPoly rebuilt{residue};
  for (const auto& [fac, mult] : out.factors)
    for (unsigned m = 0; m < mult; ++m) rebuilt = uv_mul(rebuilt, fac);
  // p = content * f and f must equal residue * prod fac^mult exactly.
  if (uv_sub(rebuilt, f) != UniPoly{})
    throw std::logic_error("uv_squarefree: reconstruction mismatch");
  out.content *= residue;
  return out;
}

namespace {

int rational_sign(const BigRational& x) { return x.sign(); }

int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int SturmChain::variations_at(const BigRational& x) const {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(rational_sign(uv_eval(p, x)));
  return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
  std::vector<int> signs;
  for (const auto& p : chain) {
    if (p.empty()) {
      signs.push_back(0);
      continue;
    }
    int lc = rational_sign(p.back());
    signs.push_back(uv_degree(p) % 2 == 0 ? lc : -lc);
  }
  return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
  std::vector<int> signs;
  for (const auto& p : chain)
    signs.push_back(p.empty() ? 0 : rational_sign(p.back()));
  return count_variations(signs);
}

int SturmChain::count_real_roots() const {
  return variations_at_neg_inf() - variations_at_pos_inf();
}

int SturmChain::count_roots_in(const BigRational& a, const BigRational& b) const {
  return variations_at(a) - variations_at(b);
}

SturmChain sturm_chain(const UniPoly& p) {
  SturmChain s;
  UniPoly f0 = uv_content_primitive(p).second;
  if (f0.empty()) {
    s.chain.push_back(f0);
    return s;
  }
  s.chain.push_back(f0);
  UniPoly f1 = uv_content_primitive(uv_derivative(f0)).second;
  if (f1.empty()) return s;
  s.chain.push_back(f1);
  while (true) {
    const UniPoly& a = s.chain[s.chain.size() - 2];
    const UniPoly& b = s.chain.back();
    auto [q, r] = uv_divmod(a, b);
    if (r.empty()) break;
    UniPoly next = uv_content_primitive(uv_scale(r, BigRational(-1))).second;
    // content_primitive keeps the leading sign, so flip manually if needed.
    BigRational probe = uv_scale(r, BigRational(-1)).back();
    if (probe < 0) next = uv_scale(next, BigRational(-1));
    s.chain.push_back(std::move(next));
    if (uv_degree(s.chain.back()) == 0) break;
  }
  return s;
}

std::vector<std::pair<BigRational, BigRational>> uv_isolate_real_roots(const UniPoly& p) {
  std::vector<std::pair<BigRational, BigRational>> out;
  if (p.empty() || uv_degree(p) == 0) return out;
  SturmChain chain = sturm_chain(p);
  int total = chain.count_real_roots();
  if (total == 0) return out;
  // Cauchy bound: all real roots lie in [-M, M].
  BigRational m = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, BigRational(abs(p[i] / p.back())));
  BigRational bound = m + 1;
  struct Seg {
    BigRational a, b;
    int count;
  };
  std::vector<Seg> work{{-bound, bound, chain.count_roots_in(-bound, bound)}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      out.push_back({s.a, s.b});
      continue;
    }
    BigRational mid = (s.a + s.b) / 2;
    int left = chain.count_roots_in(s.a, mid);
    work.push_back({s.a, mid, left});
    work.push_back({mid, s.b, s.count - left});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

NonnegVerdict uv_sturm_nonneg(const UniPoly& p) {
  NonnegVerdict v;
  if (p.empty()) {
    v.nonnegative = true;
    return v;
  }
  if (uv_degree(p) == 0) {
    v.nonnegative = p[0] >= 0;
    if (!v.nonnegative) v.witness = BigRational(0);
    return v;
  }
  BigRational m = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, BigRational(abs(p[i] / p.back())));
  BigRational big = m + 1;
  if (uv_degree(p) % 2 == 1 || p.back() < 0) {
    // Negative somewhere near +-infinity.
    BigRational at = (p.back() < 0) ? big : -big;
    while (uv_eval(p, at) >= 0) at *= 2;  // Cauchy bound already suffices
    v.nonnegative = false;
    v.witness = at;
    return v;
  }
  // Even degree, positive leading coefficient: p < 0 somewhere iff it has a
  // real root of odd multiplicity.
  SquareFree sf = uv_squarefree(p);
  UniPoly odd_part{BigRational(1)};
  for (const auto& [fac, mult] : sf.factors)
    if (mult % 2 == 1) odd_part = uv_mul(odd_part, fac);
  if (uv_degree(odd_part) == 0) {
    v.nonnegative = true;
    return v;
  }
  SturmChain chain = sturm_chain(odd_part);
  if (chain.count_real_roots() == 0) {
    v.nonnegative = true;
    return v;
  }
  v.nonnegative = false;
  // p changes sign at each root of odd_part; shrink an isolating interval
  // until an endpoint evaluates strictly negative.
  auto intervals = uv_isolate_real_roots(odd_part);
  SturmChain pchain = sturm_chain(odd_part);
  auto [a, b] = intervals.front();
  for (int iter = 0; iter < 4000; ++iter) {
    // Probe the bracket and just outside it; the bracket keeps exactly one
    // sign change of p, so a shrinking neighborhood must expose a negative
    // value even when an endpoint sits exactly on the root.
    BigRational w = b - a;
    for (const BigRational& cand :
         {a, b, BigRational((a + b) / 2), BigRational(b + w), BigRational(a - w)}) {
      if (uv_eval(p, cand) < 0) {
        v.witness = cand;
        return v;
      }
    }
    BigRational mid = (a + b) / 2;
    if (pchain.count_roots_in(a, mid) == 1)
      b = mid;
    else
      a = mid;
  }
  throw std::logic_error("sturm_nonneg: witness search did not converge");
}

NonnegVerdict sturm_nonneg(const SparsePoly& p) {
  auto [u, var] = to_unipoly(p);
  return uv_sturm_nonneg(u);
}

std::pair<UniPoly, std::optional<VarId>> to_unipoly(const SparsePoly& p) {
  std::optional<VarId> var;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (!var)
        var = v;
      else if (*var != v)
        throw std::invalid_argument("polynomial is not univariate");
    }
  }
  UniPoly u;
  if (!p.is_zero()) {
    u.assign(static_cast<std::size_t>(p.degree()) + 1, BigRational(0));
    for (const auto& [m, c] : p.terms()) u[m.degree()] = c;
  }
  return {uv_trim(std::move(u)), var};
}

SparsePoly from_unipoly(const UniPoly& p, SpaceRef space, VarId var) {
  std::vector<SparsePoly::Term> terms;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) terms.push_back({Monomial::variable(var, static_cast<uint32_t>(i)), p[i]});
  return SparsePoly::from_terms(std::move(space), std::move(terms));
}

}  // namespace soscert
