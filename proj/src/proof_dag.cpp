#include "soscert/proof_dag.hpp"

#include <future>
#include <stdexcept>

namespace soscert {

std::string to_string(DagFailure f) {
  switch (f) {
    case DagFailure::None: return "none";
    case DagFailure::Cycle: return "cycle";
    case DagFailure::DanglingChild: return "dangling-child";
    case DagFailure::BadRule: return "bad-rule";
    case DagFailure::UnknownLabel: return "unknown-label";
    case DagFailure::NegativeCoefficient: return "negative-coefficient";
    case DagFailure::DegreeExceeded: return "degree-exceeded";
    case DagFailure::WitnessMismatch: return "witness-mismatch";
    case DagFailure::SubstitutionBelowAxiom: return "substitution-below-axiom";
    case DagFailure::GoalMismatch: return "goal-mismatch";
    case DagFailure::Malformed: return "malformed";
  }
  return "unknown";
}

std::vector<uint32_t> dag_children(const NodeRule& rule) {
  std::vector<uint32_t> out;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, CombNode>) {
          out = r.children;
        } else if constexpr (std::is_same_v<T, ProductSosNode> ||
                             std::is_same_v<T, ProductPolyNode> ||
                             std::is_same_v<T, SubstituteNode> || std::is_same_v<T, PowersNode>) {
          out.push_back(r.child);
        }
      },
      rule);
  return out;
}

std::size_t ProofDag::leaf_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes)
    if (dag_children(node.rule).empty()) ++n;
  return n;
}

namespace {

struct NodeError {
  DagFailure failure;
  std::string detail;
};

struct DeriveContext {
  const SpaceRef& space;
  const ConstraintSystem& system;
  int degree_bound;
  const std::vector<Conclusion>& conclusions;
  const std::vector<bool>& axiom_free;
};

// Derives one node's conclusion, enforcing the local rule checks. Throws
// NodeError on any violation.
Conclusion derive_node(const NodeRule& rule, DeriveContext ctx, bool& axiom_free_out) {
  axiom_free_out = true;
  const int bound = ctx.degree_bound;
  auto degree_check = [&](int deg, const char* what) {
    if (deg != SparsePoly::kNegInfDegree && deg > bound)
      throw NodeError{DagFailure::DegreeExceeded,
                      std::string(what) + " degree " + std::to_string(deg)};
  };
  auto sos_checks = [&](const SosList& sos, const char* what) {
    for (const auto& [c, s] : sos) {
      if (c < 0)
        throw NodeError{DagFailure::NegativeCoefficient,
                        std::string(what) + " coefficient " + rational_to_string(c)};
      if (!s.is_zero()) degree_check(2 * s.degree(), what);
    }
  };

  if (const auto* ax = std::get_if<AxiomNode>(&rule)) {
    axiom_free_out = false;
    if (const SparsePoly* q = ctx.system.find_inequality(ax->label))
      return {*q, Rel::GeqZero};
    if (const SparsePoly* r = ctx.system.find_equality(ax->label))
      return {*r, Rel::EqZero};
    throw NodeError{DagFailure::UnknownLabel, "axiom '" + ax->label + "'"};
  }
  if (const auto* sq = std::get_if<SquareNode>(&rule)) {
    if (!sq->root.is_zero()) degree_check(2 * sq->root.degree(), "square");
    return {sq->root * sq->root, Rel::GeqZero};
  }
  if (const auto* comb = std::get_if<CombNode>(&rule)) {
    if (comb->children.size() != comb->coeffs.size())
      throw NodeError{DagFailure::Malformed, "children/coefficients size mismatch"};
    SparsePoly total = sos_expand(comb->sos, ctx.space);
    sos_checks(comb->sos, "combination square");
    Rel rel = comb->sos.empty() ? Rel::EqZero : Rel::GeqZero;
    for (std::size_t i = 0; i < comb->children.size(); ++i) {
      const Conclusion& child = ctx.conclusions[comb->children[i]];
      const BigRational& c = comb->coeffs[i];
      if (child.rel == Rel::GeqZero) {
        if (c < 0)
          throw NodeError{DagFailure::NegativeCoefficient,
                          "coefficient " + rational_to_string(c) + " on >=0 child"};
        rel = Rel::GeqZero;
      }
      if (!ctx.axiom_free[comb->children[i]]) axiom_free_out = false;
      total += child.poly.scaled(c);
    }
    if (comb->children.empty() && comb->sos.empty()) rel = Rel::GeqZero;  // empty sum 0
    return {std::move(total), rel};
  }
  if (const auto* ps = std::get_if<ProductSosNode>(&rule)) {
    const Conclusion& child = ctx.conclusions[ps->child];
    if (child.rel != Rel::GeqZero)
      throw NodeError{DagFailure::BadRule, "product-with-SOS child must conclude >= 0"};
    sos_checks(ps->factor, "SOS factor");
    if (!ctx.axiom_free[ps->child]) axiom_free_out = false;
    SparsePoly w = sos_expand(ps->factor, ctx.space);
    if (!w.is_zero() && !child.poly.is_zero())
      degree_check(w.degree() + child.poly.degree(), "SOS product");
    return {w * child.poly, Rel::GeqZero};
  }
  if (const auto* pp = std::get_if<ProductPolyNode>(&rule)) {
    const Conclusion& child = ctx.conclusions[pp->child];
    if (child.rel != Rel::EqZero)
      throw NodeError{DagFailure::BadRule, "product-with-poly child must conclude = 0"};
    if (!ctx.axiom_free[pp->child]) axiom_free_out = false;
    if (!pp->factor.is_zero() && !child.poly.is_zero())
      degree_check(pp->factor.degree() + child.poly.degree(), "equality product");
    return {pp->factor * child.poly, Rel::EqZero};
  }
  if (const auto* sub = std::get_if<SubstituteNode>(&rule)) {
    if (!ctx.axiom_free[sub->child])
      throw NodeError{DagFailure::SubstitutionBelowAxiom,
                      "substitution applied to an axiom-dependent derivation"};
    const Conclusion& child = ctx.conclusions[sub->child];
    std::map<VarId, SparsePoly> bindings;
    for (const auto& [v, p] : sub->bindings) bindings.emplace(v, p);
    SparsePoly out = child.poly.substitute(bindings, ctx.space);
    if (!out.is_zero()) degree_check(out.degree(), "substituted conclusion");
    return {std::move(out), child.rel};
  }
  if (const auto* id = std::get_if<IdentityNode>(&rule)) {
    if (id->lhs != id->rhs)
      throw NodeError{DagFailure::WitnessMismatch, "claimed polynomial identity does not hold"};
    return {id->lhs - id->rhs, Rel::EqZero};
  }
  if (const auto* pw = std::get_if<PowersNode>(&rule)) {
    const Conclusion& child = ctx.conclusions[pw->child];
    if (child.rel != Rel::GeqZero)
      throw NodeError{DagFailure::BadRule, "powers lemma child must conclude >= 0"};
    if (pw->base < 0)
      throw NodeError{DagFailure::NegativeCoefficient, "powers lemma base must be >= 0"};
    if (pw->exponent == 0) throw NodeError{DagFailure::BadRule, "powers lemma exponent 0"};
    if (!ctx.axiom_free[pw->child]) axiom_free_out = false;
    const SparsePoly& p = child.poly;
    // sum_{i>=1} C(e,i) c^{e-i} p^i regrouped as SOS + SOS * p.
    SparsePoly even_part = SparsePoly::zero(ctx.space);
    SparsePoly odd_part = SparsePoly::zero(ctx.space);
    for (unsigned i = 1; i <= pw->exponent; ++i) {
      BigRational coeff =
          BigRational(binomial(pw->exponent, i)) * pow_rational(pw->base, pw->exponent - i);
      if (i % 2 == 0)
        even_part += p.pow(i / 2).pow(2).scaled(coeff);
      else
        odd_part += p.pow((i - 1) / 2).pow(2).scaled(coeff);
    }
    SparsePoly concl = even_part + odd_part * p;
    if (!concl.is_zero()) degree_check(concl.degree(), "powers conclusion");
    return {std::move(concl), Rel::GeqZero};
  }
  if (const auto* sc = std::get_if<SuperCsNode>(&rule)) {
    if (sc->half_power == 0) throw NodeError{DagFailure::BadRule, "half power 0"};
    sos_checks(sc->witness, "convexity witness");
    unsigned two_k = 2 * sc->half_power;
    SparsePoly target = (sc->x.pow(two_k) + sc->y.pow(two_k)).scaled(BigRational(1, 2)) -
                        ((sc->x + sc->y).scaled(BigRational(1, 2))).pow(two_k);
    if (sos_expand(sc->witness, ctx.space) != target)
      throw NodeError{DagFailure::WitnessMismatch, "convexity witness does not expand to target"};
    if (!target.is_zero()) degree_check(target.degree(), "convexity target");
    return {std::move(target), Rel::GeqZero};
  }
  if (const auto* leaf = std::get_if<CertLeafNode>(&rule)) {
    CertVerdict v = verify_certificate(leaf->cert, ctx.system);
    if (!v.valid)
      throw NodeError{DagFailure::WitnessMismatch,
                      "leaf certificate invalid (" + to_string(v.failure) + "): " + v.detail};
    if (leaf->cert.degree_bound > bound)
      throw NodeError{DagFailure::DegreeExceeded, "leaf certificate degree bound too large"};
    axiom_free_out = leaf->cert.axiom_free();
    return {leaf->cert.target, Rel::GeqZero};
  }
  throw NodeError{DagFailure::BadRule, "unknown rule"};
}

}  // namespace

DagVerdict verify_dag(const ProofDag& dag, const ConstraintSystem& system, unsigned jobs,
                      std::vector<Conclusion>* conclusions_out) {
  auto fail = [](DagFailure f, int node, std::string detail) {
    return DagVerdict{false, f, node, std::move(detail)};
  };
  const std::size_t n = dag.nodes.size();
  if (n == 0) return fail(DagFailure::Malformed, -1, "empty proof");
  if (dag.root >= n) return fail(DagFailure::Malformed, -1, "root out of range");
  if (!dag.space || dag.space != system.space())
    return fail(DagFailure::Malformed, -1, "proof space differs from system space");

  // Children sanity + topological levels (children strictly before parents
  // in the level order; cycles leave nodes unplaced).
  std::vector<std::vector<uint32_t>> children(n);
  std::vector<int> level(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    children[i] = dag_children(dag.nodes[i].rule);
    for (uint32_t c : children[i])
      if (c >= n) return fail(DagFailure::DanglingChild, static_cast<int>(i), "child out of range");
  }
  {
    bool progress = true;
    std::size_t placed = 0;
    while (progress && placed < n) {
      progress = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (level[i] >= 0) continue;
        int lv = 0;
        bool ready = true;
        for (uint32_t c : children[i]) {
          if (level[c] < 0) {
            ready = false;
            break;
          }
          lv = std::max(lv, level[c] + 1);
        }
        if (ready) {
          level[i] = lv;
          ++placed;
          progress = true;
        }
      }
    }
    if (placed < n) {
      for (std::size_t i = 0; i < n; ++i)
        if (level[i] < 0) return fail(DagFailure::Cycle, static_cast<int>(i), "cyclic dependency");
    }
  }
  int max_level = 0;
  for (std::size_t i = 0; i < n; ++i) max_level = std::max(max_level, level[i]);
  std::vector<std::vector<uint32_t>> by_level(max_level + 1);
  for (std::size_t i = 0; i < n; ++i) by_level[level[i]].push_back(static_cast<uint32_t>(i));

  std::vector<Conclusion> conclusions(n);
  std::vector<bool> axiom_free(n, true);
  DagVerdict first_error{true, DagFailure::None, -1, ""};
  for (const auto& layer : by_level) {
    std::vector<std::pair<DagVerdict, bool>> results(layer.size(), {{true, DagFailure::None, -1, ""}, true});
    auto run = [&](std::size_t a, std::size_t b) {
      for (std::size_t idx = a; idx < b; ++idx) {
        uint32_t i = layer[idx];
        try {
          bool af = true;
          conclusions[i] = derive_node(
              dag.nodes[i].rule,
              DeriveContext{dag.space, system, dag.degree_bound, conclusions, axiom_free}, af);
          results[idx].second = af;
        } catch (const NodeError& e) {
          results[idx].first = DagVerdict{false, e.failure, static_cast<int>(i), e.detail};
        } catch (const std::exception& e) {
          results[idx].first =
              DagVerdict{false, DagFailure::Malformed, static_cast<int>(i), e.what()};
        }
      }
    };
    if (jobs <= 1 || layer.size() < 8) {
      run(0, layer.size());
    } else {
      std::vector<std::future<void>> futs;
      std::size_t chunk = (layer.size() + jobs - 1) / jobs;
      for (std::size_t a = 0; a < layer.size(); a += chunk)
        futs.push_back(std::async(std::launch::async, run, a, std::min(a + chunk, layer.size())));
      for (auto& f : futs) f.get();
    }
    for (std::size_t idx = 0; idx < layer.size(); ++idx) {
      if (!results[idx].first.valid) return results[idx].first;
      axiom_free[layer[idx]] = results[idx].second;
    }
  }

  if (!(conclusions[dag.root] == dag.goal))
    return fail(DagFailure::GoalMismatch, static_cast<int>(dag.root),
                "root conclusion differs from stated goal");
  if (conclusions_out) *conclusions_out = std::move(conclusions);
  return DagVerdict{true, DagFailure::None, -1, ""};
}

DagBuilder::DagBuilder(SpaceRef space, const ConstraintSystem* system, int degree_bound)
    : space_(std::move(space)), system_(system), degree_bound_(degree_bound) {}

uint32_t DagBuilder::add(NodeRule rule, std::string note) {
  for (uint32_t c : dag_children(rule))
    if (c >= nodes_.size()) throw std::invalid_argument("DagBuilder: child out of range");
  bool af = true;
  Conclusion concl;
  try {
    concl = derive_node(rule,
                        DeriveContext{space_, *system_, degree_bound_, conclusions_, axiom_free_},
                        af);
  } catch (const NodeError& e) {
    throw std::logic_error("DagBuilder node rejected (" + to_string(e.failure) + "): " + e.detail);
  }
  nodes_.push_back({std::move(rule), std::move(note)});
  conclusions_.push_back(std::move(concl));
  axiom_free_.push_back(af);
  return static_cast<uint32_t>(nodes_.size() - 1);
}

uint32_t DagBuilder::axiom(const std::string& label) {
  auto it = axiom_cache_.find(label);
  if (it != axiom_cache_.end()) return it->second;
  uint32_t id = add(AxiomNode{label});
  axiom_cache_.emplace(label, id);
  return id;
}

ProofDag DagBuilder::finish(uint32_t root, std::map<std::string, std::string> meta) {
  ProofDag dag;
  dag.space = space_;
  dag.nodes = std::move(nodes_);
  dag.root = root;
  dag.goal = conclusions_.at(root);
  dag.degree_bound = degree_bound_;
  dag.meta = std::move(meta);
  return dag;
}

namespace {

SparsePoly substituted(const SparsePoly& p, const std::map<VarId, SparsePoly>& bindings,
                       const SpaceRef& out_space) {
  return p.substitute(bindings, out_space);
}

SosList substituted(const SosList& sos, const std::map<VarId, SparsePoly>& bindings,
                    const SpaceRef& out_space) {
  SosList out;
  out.reserve(sos.size());
  for (const auto& [c, s] : sos) out.push_back({c, substituted(s, bindings, out_space)});
  return out;
}

}  // namespace

ProofDag dag_substitute_all(const ProofDag& dag, const std::map<VarId, SparsePoly>& bindings,
                            SpaceRef out_space) {
  ProofDag out;
  out.space = out_space;
  out.root = dag.root;
  out.degree_bound = dag.degree_bound;
  out.meta = dag.meta;
  out.goal = {substituted(dag.goal.poly, bindings, out_space), dag.goal.rel};
  out.nodes.reserve(dag.nodes.size());
  for (const auto& node : dag.nodes) {
    DagNode copy;
    copy.note = node.note;
    copy.rule = std::visit(
        [&](const auto& r) -> NodeRule {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, AxiomNode>) {
            throw std::invalid_argument("dag_substitute_all: proof uses axioms");
          } else if constexpr (std::is_same_v<T, SquareNode>) {
            return SquareNode{substituted(r.root, bindings, out_space)};
          } else if constexpr (std::is_same_v<T, CombNode>) {
            return CombNode{r.children, r.coeffs, substituted(r.sos, bindings, out_space)};
          } else if constexpr (std::is_same_v<T, ProductSosNode>) {
            return ProductSosNode{r.child, substituted(r.factor, bindings, out_space)};
          } else if constexpr (std::is_same_v<T, ProductPolyNode>) {
            return ProductPolyNode{r.child, substituted(r.factor, bindings, out_space)};
          } else if constexpr (std::is_same_v<T, SubstituteNode>) {
            throw std::invalid_argument("dag_substitute_all: nested substitution unsupported");
          } else if constexpr (std::is_same_v<T, IdentityNode>) {
            return IdentityNode{substituted(r.lhs, bindings, out_space),
                                substituted(r.rhs, bindings, out_space)};
          } else if constexpr (std::is_same_v<T, PowersNode>) {
            return PowersNode{r.child, r.exponent, r.base};
          } else if constexpr (std::is_same_v<T, SuperCsNode>) {
            return SuperCsNode{substituted(r.x, bindings, out_space),
                               substituted(r.y, bindings, out_space), r.half_power,
                               substituted(r.witness, bindings, out_space)};
          } else {
            const CertLeafNode& lf = static_cast<const CertLeafNode&>(r);
            if (!lf.cert.axiom_free())
              throw std::invalid_argument("dag_substitute_all: leaf certificate uses axioms");
            SOSCertificate cert;
            cert.space = out_space;
            cert.target = substituted(lf.cert.target, bindings, out_space);
            cert.u0 = substituted(lf.cert.u0, bindings, out_space);
            cert.degree_bound = lf.cert.degree_bound;
            return CertLeafNode{std::move(cert)};
          }
        },
        node.rule);
    out.nodes.push_back(std::move(copy));
  }
  return out;
}

}  // namespace soscert
