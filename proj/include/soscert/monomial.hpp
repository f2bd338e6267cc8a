#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "soscert/indeterminates.hpp"

namespace soscert {

// Sparse power product. Factors are sorted by ascending variable id and never
// carry a zero exponent.
class Monomial {
 public:
  using Factor = std::pair<VarId, uint32_t>;

  Monomial() = default;

  static Monomial variable(VarId v, uint32_t e = 1);
  static Monomial from_factors(std::vector<Factor> factors);  // merges/normalizes

  bool is_one() const { return factors_.empty(); }
  unsigned degree() const { return degree_; }
  uint32_t exponent_of(VarId v) const;
  const std::vector<Factor>& factors() const { return factors_; }

  Monomial times(const Monomial& o) const;
  Monomial pow(uint32_t e) const;

  // Graded lexicographic: higher total degree first; ties broken by the
  // earliest variable id with differing exponent, larger exponent first.
  static int compare(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare(a, b) > 0;
  }
};

}  // namespace soscert
