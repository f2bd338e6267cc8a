#include "soscert/certificate.hpp"

#include <stdexcept>

namespace soscert {

void ConstraintSystem::check_label(const std::string& label) const {
  if (find_inequality(label) || find_equality(label))
    throw std::invalid_argument("duplicate constraint label: " + label);
}

void ConstraintSystem::add_inequality(std::string label, SparsePoly q) {
  if (q.space() != space_) throw SpaceMismatchError("constraint outside system space");
  check_label(label);
  inequalities_.emplace_back(std::move(label), std::move(q));
}

void ConstraintSystem::add_equality(std::string label, SparsePoly r) {
  if (r.space() != space_) throw SpaceMismatchError("constraint outside system space");
  check_label(label);
  equalities_.emplace_back(std::move(label), std::move(r));
}

const SparsePoly* ConstraintSystem::find_inequality(const std::string& label) const {
  for (const auto& [l, q] : inequalities_)
    if (l == label) return &q;
  return nullptr;
}

const SparsePoly* ConstraintSystem::find_equality(const std::string& label) const {
  for (const auto& [l, r] : equalities_)
    if (l == label) return &r;
  return nullptr;
}

std::size_t SOSCertificate::square_count() const {
  std::size_t n = u0.size();
  for (const auto& [l, sos] : ineq_multipliers) n += sos.size();
  return n;
}

std::size_t SOSCertificate::total_terms() const {
  std::size_t n = target.term_count();
  for (const auto& [c, s] : u0) n += s.term_count();
  for (const auto& [l, sos] : ineq_multipliers)
    for (const auto& [c, s] : sos) n += s.term_count();
  for (const auto& [l, v] : eq_multipliers) n += v.term_count();
  return n;
}

std::string to_string(CertFailure f) {
  switch (f) {
    case CertFailure::None: return "none";
    case CertFailure::UnknownLabel: return "unknown-label";
    case CertFailure::SpaceMismatch: return "space-mismatch";
    case CertFailure::NegativeCoefficient: return "negative-coefficient";
    case CertFailure::DegreeExceeded: return "degree-exceeded";
    case CertFailure::Residual: return "residual-nonzero";
    case CertFailure::Malformed: return "malformed";
  }
  return "unknown";
}

CertVerdict verify_certificate(const SOSCertificate& cert, const ConstraintSystem& system) {
  auto fail = [](CertFailure f, std::string detail) {
    return CertVerdict{false, f, std::move(detail)};
  };
  if (!cert.space || !system.space()) return fail(CertFailure::Malformed, "missing space");
  if (cert.space != system.space())
    return fail(CertFailure::SpaceMismatch, "certificate space differs from system space");
  if (cert.target.space() != cert.space)
    return fail(CertFailure::SpaceMismatch, "target outside certificate space");

  // Resolve all labels first.
  for (const auto& [label, sos] : cert.ineq_multipliers)
    if (!system.find_inequality(label))
      return fail(CertFailure::UnknownLabel, "inequality label '" + label + "'");
  for (const auto& [label, v] : cert.eq_multipliers)
    if (!system.find_equality(label))
      return fail(CertFailure::UnknownLabel, "equality label '" + label + "'");

  // Square coefficients must be nonnegative rationals.
  for (const auto& [c, s] : cert.u0)
    if (c < 0) return fail(CertFailure::NegativeCoefficient, "u0 coefficient " + rational_to_string(c));
  for (const auto& [label, sos] : cert.ineq_multipliers)
    for (const auto& [c, s] : sos)
      if (c < 0)
        return fail(CertFailure::NegativeCoefficient,
                    "multiplier for '" + label + "' has coefficient " + rational_to_string(c));

  // Degree discipline: every summand of the representation stays <= bound.
  const int bound = cert.degree_bound;
  for (const auto& [c, s] : cert.u0)
    if (!s.is_zero() && 2 * s.degree() > bound)
      return fail(CertFailure::DegreeExceeded, "u0 square of degree " + std::to_string(2 * s.degree()));
  for (const auto& [label, sos] : cert.ineq_multipliers) {
    const SparsePoly& q = *system.find_inequality(label);
    for (const auto& [c, s] : sos) {
      int deg = (s.is_zero() || q.is_zero()) ? SparsePoly::kNegInfDegree
                                             : 2 * s.degree() + q.degree();
      if (deg != SparsePoly::kNegInfDegree && deg > bound)
        return fail(CertFailure::DegreeExceeded,
                    "u*q degree " + std::to_string(deg) + " for '" + label + "'");
    }
  }
  for (const auto& [label, v] : cert.eq_multipliers) {
    const SparsePoly& r = *system.find_equality(label);
    if (v.is_zero() || r.is_zero()) continue;
    if (v.degree() + r.degree() > bound)
      return fail(CertFailure::DegreeExceeded,
                  "v*r degree " + std::to_string(v.degree() + r.degree()) + " for '" + label + "'");
  }

  // Exact reconstruction identity.
  SparsePoly sum = sos_expand(cert.u0, cert.space);
  for (const auto& [label, sos] : cert.ineq_multipliers)
    sum += sos_expand(sos, cert.space) * (*system.find_inequality(label));
  for (const auto& [label, v] : cert.eq_multipliers)
    sum += v * (*system.find_equality(label));
  SparsePoly residual = cert.target - sum;
  if (!residual.is_zero()) {
    const auto& [m, c] = residual.terms().front();
    return fail(CertFailure::Residual,
                "residual leading term " + SparsePoly::monomial(cert.space, m, c).to_text());
  }
  return CertVerdict{true, CertFailure::None, ""};
}

}  // namespace soscert
