#pragma once

#include <string>
#include <vector>

#include "soscert/sos_decompose.hpp"

namespace soscert {

// The axiom set A = {q_i >= 0} u {r_j = 0} over one indeterminate space.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  explicit ConstraintSystem(SpaceRef space) : space_(std::move(space)) {}

  const SpaceRef& space() const { return space_; }
  void add_inequality(std::string label, SparsePoly q);
  void add_equality(std::string label, SparsePoly r);
  const SparsePoly* find_inequality(const std::string& label) const;
  const SparsePoly* find_equality(const std::string& label) const;
  const std::vector<std::pair<std::string, SparsePoly>>& inequalities() const {
    return inequalities_;
  }
  const std::vector<std::pair<std::string, SparsePoly>>& equalities() const { return equalities_; }

 private:
  void check_label(const std::string& label) const;
  SpaceRef space_;
  std::vector<std::pair<std::string, SparsePoly>> inequalities_;
  std::vector<std::pair<std::string, SparsePoly>> equalities_;
};

// p = u0 + sum_i u_i q_i + sum_j v_j r_j with u_* SOS, all degrees <= bound.
struct SOSCertificate {
  SpaceRef space;
  SparsePoly target;
  SosList u0;
  std::vector<std::pair<std::string, SosList>> ineq_multipliers;
  std::vector<std::pair<std::string, SparsePoly>> eq_multipliers;
  int degree_bound = 0;

  std::size_t square_count() const;
  std::size_t total_terms() const;
  bool axiom_free() const { return ineq_multipliers.empty() && eq_multipliers.empty(); }
};

enum class CertFailure {
  None,
  UnknownLabel,
  SpaceMismatch,
  NegativeCoefficient,
  DegreeExceeded,
  Residual,
  Malformed,
};
std::string to_string(CertFailure f);

struct CertVerdict {
  bool valid = false;
  CertFailure failure = CertFailure::None;
  std::string detail;
};

CertVerdict verify_certificate(const SOSCertificate& cert, const ConstraintSystem& system);

}  // namespace soscert
