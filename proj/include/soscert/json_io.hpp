#pragma once

#include <string>

#include "soscert/proof_dag.hpp"

namespace soscert {

// Self-contained certificate / proof files: the constraint system rides along
// so a file can be checked in isolation. Polynomials are embedded in the
// canonical term-list text format, which keeps files diffable.

std::string certificate_to_json(const SOSCertificate& cert, const ConstraintSystem& system);
std::pair<SOSCertificate, ConstraintSystem> certificate_from_json(const std::string& text);

std::string dag_to_json(const ProofDag& dag, const ConstraintSystem& system);
std::pair<ProofDag, ConstraintSystem> dag_from_json(const std::string& text);

// "sos_certificate" or "proof_dag"; throws on anything else.
std::string detect_kind(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace soscert
