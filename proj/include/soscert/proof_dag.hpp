#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "soscert/certificate.hpp"

namespace soscert {

enum class Rel { GeqZero, EqZero };

struct Conclusion {
  SparsePoly poly;
  Rel rel = Rel::GeqZero;
  bool operator==(const Conclusion& o) const { return rel == o.rel && poly == o.poly; }
};

// --- Inference rules -------------------------------------------------------
// Each node concludes (polynomial, relation), re-derivable from its children.

struct AxiomNode {
  std::string label;
};
struct SquareNode {
  SparsePoly root;  // concludes root^2 >= 0
};
// sum coeffs[i]*child_i + sum sos: coefficients on >=0 children must be >= 0;
// equality children may take any rational coefficient.
struct CombNode {
  std::vector<uint32_t> children;
  std::vector<BigRational> coeffs;
  SosList sos;
};
struct ProductSosNode {
  uint32_t child;  // child must conclude >= 0
  SosList factor;
};
struct ProductPolyNode {
  uint32_t child;  // child must conclude = 0
  SparsePoly factor;
};
// Valid only below axiom-free subproofs: plugging polynomials into a
// constraint-free SOS derivation preserves it.
struct SubstituteNode {
  uint32_t child;
  std::vector<std::pair<VarId, SparsePoly>> bindings;
};
struct IdentityNode {
  SparsePoly lhs, rhs;  // checked lhs == rhs; concludes lhs - rhs = 0
};
// From p >= 0 and base c >= 0 conclude (p+c)^e - c^e >= 0, checked through the
// explicit expansion sum_i C(e,i) c^{e-i} p^i regrouped as SOS + SOS*p.
struct PowersNode {
  uint32_t child;
  unsigned exponent = 1;
  BigRational base;
};
// (x^{2k}+y^{2k})/2 - ((x+y)/2)^{2k} >= 0 with an explicit square witness.
struct SuperCsNode {
  SparsePoly x, y;
  unsigned half_power = 1;  // k
  SosList witness;
};
struct CertLeafNode {
  SOSCertificate cert;
};

using NodeRule = std::variant<AxiomNode, SquareNode, CombNode, ProductSosNode, ProductPolyNode,
                              SubstituteNode, IdentityNode, PowersNode, SuperCsNode, CertLeafNode>;

struct DagNode {
  NodeRule rule;
  std::string note;
};

struct ProofDag {
  SpaceRef space;
  std::vector<DagNode> nodes;
  uint32_t root = 0;
  Conclusion goal;
  int degree_bound = 0;
  std::map<std::string, std::string> meta;

  std::size_t leaf_count() const;  // nodes with no children
};

enum class DagFailure {
  None,
  Cycle,
  DanglingChild,
  BadRule,
  UnknownLabel,
  NegativeCoefficient,
  DegreeExceeded,
  WitnessMismatch,
  SubstitutionBelowAxiom,
  GoalMismatch,
  Malformed,
};
std::string to_string(DagFailure f);

struct DagVerdict {
  bool valid = false;
  DagFailure failure = DagFailure::None;
  int failing_node = -1;
  std::string detail;
};

DagVerdict verify_dag(const ProofDag& dag, const ConstraintSystem& system, unsigned jobs = 1,
                      std::vector<Conclusion>* conclusions_out = nullptr);

std::vector<uint32_t> dag_children(const NodeRule& rule);

// Incremental construction helper: derives each node's conclusion with the
// same rules the verifier replays, so a finished builder is coherent by
// construction.
class DagBuilder {
 public:
  DagBuilder(SpaceRef space, const ConstraintSystem* system, int degree_bound);

  uint32_t add(NodeRule rule, std::string note = "");
  const Conclusion& conclusion(uint32_t node) const { return conclusions_.at(node); }
  uint32_t axiom(const std::string& label);
  std::size_t size() const { return nodes_.size(); }

  ProofDag finish(uint32_t root, std::map<std::string, std::string> meta = {});

 private:
  SpaceRef space_;
  const ConstraintSystem* system_;
  int degree_bound_;
  std::vector<DagNode> nodes_;
  std::vector<Conclusion> conclusions_;
  std::vector<bool> axiom_free_;
  std::map<std::string, uint32_t> axiom_cache_;
};

// Applies a variable substitution to every polynomial of an axiom-free DAG
// (used for identifications such as g := f). Throws if the DAG touches axioms.
ProofDag dag_substitute_all(const ProofDag& dag, const std::map<VarId, SparsePoly>& bindings,
                            SpaceRef out_space);

}  // namespace soscert
