#include "soscert/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace soscert {

namespace {

void sort_and_merge(std::vector<SparsePoly::Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return Monomial::compare(a.first, b.first) > 0;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Monomial m = terms[i].first;
    BigRational c = terms[i].second;
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].first == m) c += terms[j++].second;
    if (c != 0) terms[out++] = {std::move(m), std::move(c)};
    i = j;
  }
  terms.resize(out);
}

}  // namespace

SparsePoly SparsePoly::zero(SpaceRef space) {
  SparsePoly p;
  p.space_ = std::move(space);
  return p;
}

SparsePoly SparsePoly::constant(SpaceRef space, BigRational c) {
  SparsePoly p = zero(std::move(space));
  if (c != 0) p.terms_.push_back({Monomial(), std::move(c)});
  return p;
}

SparsePoly SparsePoly::variable(SpaceRef space, VarId v) {
  if (v >= space->size()) throw std::out_of_range("variable id outside space");
  SparsePoly p = zero(std::move(space));
  p.terms_.push_back({Monomial::variable(v), BigRational(1)});
  return p;
}

SparsePoly SparsePoly::monomial(SpaceRef space, Monomial m, BigRational c) {
  SparsePoly p = zero(std::move(space));
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

SparsePoly SparsePoly::from_terms(SpaceRef space, std::vector<Term> terms) {
  SparsePoly p = zero(std::move(space));
  sort_and_merge(terms);
  p.terms_ = std::move(terms);
  return p;
}

int SparsePoly::degree() const {
  if (terms_.empty()) return kNegInfDegree;
  return static_cast<int>(terms_.front().first.degree());
}

int SparsePoly::degree_in(VarId v) const {
  if (terms_.empty()) return kNegInfDegree;
  uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(v));
  return static_cast<int>(d);
}

BigRational SparsePoly::coefficient(const Monomial& m) const {
  for (const auto& [mm, c] : terms_)
    if (mm == m) return c;
  return 0;
}

BigRational SparsePoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

void SparsePoly::check_same_space(const SparsePoly& o) const {
  if (space_ != o.space_)
    throw SpaceMismatchError("polynomials live in different indeterminate spaces");
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  check_same_space(o);
  SparsePoly r = zero(space_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int cmp;
    if (i == terms_.size())
      cmp = -1;
    else if (j == o.terms_.size())
      cmp = 1;
    else
      cmp = Monomial::compare(terms_[i].first, o.terms_[j].first);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      BigRational c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.push_back({terms_[i].first, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  *this = *this + o;
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  *this = *this - o;
  return *this;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  check_same_space(o);
  if (is_zero() || o.is_zero()) return zero(space_);
  std::map<Monomial, BigRational, GrlexGreater> acc;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma.times(mb);
      auto [it, fresh] = acc.emplace(std::move(m), ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  }
  SparsePoly r = zero(space_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  return r;
}

SparsePoly SparsePoly::scaled(const BigRational& c) const {
  if (c == 0) return zero(space_);
  SparsePoly p = *this;
  for (auto& [m, cc] : p.terms_) cc *= c;
  return p;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly acc = constant(space_, 1);
  SparsePoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
  if (space_ != o.space_) return false;
  return terms_ == o.terms_;
}

BigRational SparsePoly::eval(const std::map<VarId, BigRational>& point) const {
  // Power cache keyed by (var, exponent) keeps repeated evaluation cheap.
  std::map<std::pair<VarId, uint32_t>, BigRational> powers;
  BigRational total = 0;
  for (const auto& [m, c] : terms_) {
    BigRational v = c;
    for (const auto& [var, e] : m.factors()) {
      auto key = std::make_pair(var, e);
      auto it = powers.find(key);
      if (it == powers.end()) {
        auto pt = point.find(var);
        if (pt == point.end())
          throw std::invalid_argument("eval: unbound variable " + space_->label(var));
        it = powers.emplace(key, pow_rational(pt->second, e)).first;
      }
      v *= it->second;
    }
    total += v;
  }
  return total;
}

SparsePoly SparsePoly::substitute(const std::map<VarId, SparsePoly>& bindings,
                                  SpaceRef out_space) const {
  for (const auto& [v, p] : bindings)
    if (p.space() != out_space)
      throw SpaceMismatchError("substitution binding lives outside the output space");
  SparsePoly total = zero(out_space);
  std::map<std::pair<VarId, uint32_t>, SparsePoly> powers;
  for (const auto& [m, c] : terms_) {
    SparsePoly v = constant(out_space, c);
    for (const auto& [var, e] : m.factors()) {
      auto key = std::make_pair(var, e);
      auto it = powers.find(key);
      if (it == powers.end()) {
        auto b = bindings.find(var);
        if (b == bindings.end())
          throw std::invalid_argument("substitute: unbound variable " + space_->label(var));
        it = powers.emplace(key, b->second.pow(e)).first;
      }
      v = v * it->second;
    }
    total += v;
  }
  return total;
}

SparsePoly SparsePoly::homogenize(VarId aux, int deg) const {
  if (degree_in(aux) > 0) throw std::invalid_argument("homogenize: aux variable occurs");
  if (!is_zero() && deg < degree()) throw std::invalid_argument("homogenize: degree too small");
  SparsePoly p = zero(space_);
  p.terms_.reserve(terms_.size());
  std::vector<Term> terms;
  for (const auto& [m, c] : terms_) {
    uint32_t pad = static_cast<uint32_t>(deg) - m.degree();
    terms.push_back({m.times(Monomial::variable(aux, pad)), c});
  }
  sort_and_merge(terms);
  p.terms_ = std::move(terms);
  return p;
}

SparsePoly SparsePoly::dehomogenize(VarId aux) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Factor> fs;
    for (const auto& f : m.factors())
      if (f.first != aux) fs.push_back(f);
    terms.push_back({Monomial::from_factors(std::move(fs)), c});
  }
  sort_and_merge(terms);
  SparsePoly p = zero(space_);
  p.terms_ = std::move(terms);
  return p;
}

std::string SparsePoly::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << rational_to_string(c);
    for (const auto& [v, e] : m.factors()) {
      out << "*" << space_->label(v);
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

namespace {

// Splits on a separator character at parenthesis depth zero so that labels
// like "f(+1,-1)" survive intact.
std::vector<std::string> split_depth0(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

SparsePoly SparsePoly::parse(SpaceRef space, const std::string& text) {
  std::string body = strip(text);
  if (body == "0" || body.empty()) return zero(space);
  std::vector<Term> terms;
  for (const std::string& raw_term : split_depth0(body, '+')) {
    std::string t = strip(raw_term);
    if (t.empty()) throw std::invalid_argument("malformed polynomial text (empty term)");
    auto factors = split_depth0(t, '*');
    BigRational coeff = parse_rational(strip(factors[0]));
    std::vector<Monomial::Factor> fs;
    for (std::size_t i = 1; i < factors.size(); ++i) {
      std::string f = strip(factors[i]);
      auto caret = f.rfind('^');
      uint32_t e = 1;
      std::string label = f;
      if (caret != std::string::npos) {
        // '^' inside a label would be unusual; exponents are plain digits.
        std::string expstr = f.substr(caret + 1);
        bool digits = !expstr.empty();
        for (char c : expstr) digits = digits && c >= '0' && c <= '9';
        if (digits) {
          e = static_cast<uint32_t>(std::stoul(expstr));
          label = f.substr(0, caret);
        }
      }
      auto v = space->find(strip(label));
      if (!v) throw std::invalid_argument("unknown indeterminate label: " + label);
      fs.push_back({*v, e});
    }
    terms.push_back({Monomial::from_factors(std::move(fs)), std::move(coeff)});
  }
  return from_terms(space, std::move(terms));
}

SparsePoly even_binomial_pair(const SparsePoly& c, const SparsePoly& d, unsigned k) {
  if (c.space() != d.space())
    throw SpaceMismatchError("even_binomial_pair: operands in different spaces");
  SpaceRef space = c.space();
  SparsePoly sum = SparsePoly::zero(space);
  for (unsigned i = 0; i <= k; ++i) {
    BigRational coeff(binomial(2 * k, 2 * i));
    sum += (c.pow(2 * k - 2 * i) * d.pow(2 * i)).scaled(coeff);
  }
  SparsePoly direct = ((c + d).pow(2 * k) + (c - d).pow(2 * k)).scaled(BigRational(1, 2));
  if (sum != direct)
    throw std::logic_error("even_binomial_pair: identity check failed");
  return sum;
}

}  // namespace soscert
