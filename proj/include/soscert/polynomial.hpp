#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "soscert/monomial.hpp"
#include "soscert/rational.hpp"

namespace soscert {

// Exact sparse multivariate polynomial over BigRational. Terms are kept in
// descending graded-lex order with no zero coefficients, so equal polynomials
// have identical representations and serialize identically.
class SparsePoly {
 public:
  using Term = std::pair<Monomial, BigRational>;
  static constexpr int kNegInfDegree = std::numeric_limits<int>::min();

  SparsePoly() = default;  // detached; only usable as a container placeholder

  static SparsePoly zero(SpaceRef space);
  static SparsePoly constant(SpaceRef space, BigRational c);
  static SparsePoly variable(SpaceRef space, VarId v);
  static SparsePoly monomial(SpaceRef space, Monomial m, BigRational c);
  static SparsePoly from_terms(SpaceRef space, std::vector<Term> terms);  // normalizes

  const SpaceRef& space() const { return space_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // kNegInfDegree on the zero polynomial
  int degree_in(VarId v) const;
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  BigRational coefficient(const Monomial& m) const;
  BigRational constant_term() const;

  SparsePoly operator-() const;
  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly scaled(const BigRational& c) const;
  SparsePoly pow(unsigned e) const;

  bool operator==(const SparsePoly& o) const;
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // All variables appearing in the polynomial must be bound.
  BigRational eval(const std::map<VarId, BigRational>& point) const;

  // Every appearing variable must be bound; bindings live in out_space.
  SparsePoly substitute(const std::map<VarId, SparsePoly>& bindings, SpaceRef out_space) const;

  // Multiplies each term by aux^(degree - term degree). aux must not occur.
  SparsePoly homogenize(VarId aux, int degree) const;
  SparsePoly dehomogenize(VarId aux) const;  // sets aux := 1

  std::string to_text() const;
  static SparsePoly parse(SpaceRef space, const std::string& text);

 private:
  void check_same_space(const SparsePoly& o) const;
  SpaceRef space_;
  std::vector<Term> terms_;  // descending grlex
};

// (1/2)((c+d)^{2k} + (c-d)^{2k}) computed as sum_i C(2k,2i) c^{2k-2i} d^{2i};
// the two routes are checked against each other before returning.
SparsePoly even_binomial_pair(const SparsePoly& c, const SparsePoly& d, unsigned k);

}  // namespace soscert
