#include "soscert/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace soscert {

namespace {

using Json = nlohmann::ordered_json;

Json sos_to_json(const SosList& sos) {
  Json arr = Json::array();
  for (const auto& [c, s] : sos) arr.push_back({rational_to_string(c), s.to_text()});
  return arr;
}

SosList sos_from_json(const Json& arr, const SpaceRef& space) {
  SosList out;
  for (const auto& item : arr)
    out.push_back({parse_rational(item.at(0).get<std::string>()),
                   SparsePoly::parse(space, item.at(1).get<std::string>())});
  return out;
}

Json system_to_json(const ConstraintSystem& system) {
  Json j;
  Json ineq = Json::array();
  for (const auto& [label, q] : system.inequalities()) ineq.push_back({label, q.to_text()});
  Json eq = Json::array();
  for (const auto& [label, r] : system.equalities()) eq.push_back({label, r.to_text()});
  j["inequalities"] = std::move(ineq);
  j["equalities"] = std::move(eq);
  return j;
}

ConstraintSystem system_from_json(const Json& j, const SpaceRef& space) {
  ConstraintSystem system(space);
  for (const auto& item : j.at("inequalities"))
    system.add_inequality(item.at(0).get<std::string>(),
                          SparsePoly::parse(space, item.at(1).get<std::string>()));
  for (const auto& item : j.at("equalities"))
    system.add_equality(item.at(0).get<std::string>(),
                        SparsePoly::parse(space, item.at(1).get<std::string>()));
  return system;
}

Json cert_body_to_json(const SOSCertificate& cert) {
  Json j;
  j["degree_bound"] = cert.degree_bound;
  j["target"] = cert.target.to_text();
  j["u0"] = sos_to_json(cert.u0);
  Json ineq = Json::array();
  for (const auto& [label, sos] : cert.ineq_multipliers) ineq.push_back({label, sos_to_json(sos)});
  j["ineq_multipliers"] = std::move(ineq);
  Json eq = Json::array();
  for (const auto& [label, v] : cert.eq_multipliers) eq.push_back({label, v.to_text()});
  j["eq_multipliers"] = std::move(eq);
  return j;
}

SOSCertificate cert_body_from_json(const Json& j, const SpaceRef& space) {
  SOSCertificate cert;
  cert.space = space;
  cert.degree_bound = j.at("degree_bound").get<int>();
  cert.target = SparsePoly::parse(space, j.at("target").get<std::string>());
  cert.u0 = sos_from_json(j.at("u0"), space);
  for (const auto& item : j.at("ineq_multipliers"))
    cert.ineq_multipliers.push_back({item.at(0).get<std::string>(), sos_from_json(item.at(1), space)});
  for (const auto& item : j.at("eq_multipliers"))
    cert.eq_multipliers.push_back(
        {item.at(0).get<std::string>(), SparsePoly::parse(space, item.at(1).get<std::string>())});
  return cert;
}

Json rule_to_json(const NodeRule& rule) {
  Json j;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, AxiomNode>) {
          j["rule"] = "axiom";
          j["label"] = r.label;
        } else if constexpr (std::is_same_v<T, SquareNode>) {
          j["rule"] = "square";
          j["root"] = r.root.to_text();
        } else if constexpr (std::is_same_v<T, CombNode>) {
          j["rule"] = "comb";
          j["children"] = r.children;
          Json coeffs = Json::array();
          for (const auto& c : r.coeffs) coeffs.push_back(rational_to_string(c));
          j["coeffs"] = std::move(coeffs);
          if (!r.sos.empty()) j["sos"] = sos_to_json(r.sos);
        } else if constexpr (std::is_same_v<T, ProductSosNode>) {
          j["rule"] = "product_sos";
          j["child"] = r.child;
          j["factor"] = sos_to_json(r.factor);
        } else if constexpr (std::is_same_v<T, ProductPolyNode>) {
          j["rule"] = "product_poly";
          j["child"] = r.child;
          j["factor"] = r.factor.to_text();
        } else if constexpr (std::is_same_v<T, SubstituteNode>) {
          j["rule"] = "substitute";
          j["child"] = r.child;
          Json b = Json::array();
          for (const auto& [v, p] : r.bindings) b.push_back({v, p.to_text()});
          j["bindings"] = std::move(b);
        } else if constexpr (std::is_same_v<T, IdentityNode>) {
          j["rule"] = "identity";
          j["lhs"] = r.lhs.to_text();
          j["rhs"] = r.rhs.to_text();
        } else if constexpr (std::is_same_v<T, PowersNode>) {
          j["rule"] = "powers";
          j["child"] = r.child;
          j["exponent"] = r.exponent;
          j["base"] = rational_to_string(r.base);
        } else if constexpr (std::is_same_v<T, SuperCsNode>) {
          j["rule"] = "super_cs";
          j["x"] = r.x.to_text();
          j["y"] = r.y.to_text();
          j["half_power"] = r.half_power;
          j["witness"] = sos_to_json(r.witness);
        } else {
          j["rule"] = "cert_leaf";
          j["cert"] = cert_body_to_json(static_cast<const CertLeafNode&>(r).cert);
        }
      },
      rule);
  return j;
}

NodeRule rule_from_json(const Json& j, const SpaceRef& space) {
  const std::string kind = j.at("rule").get<std::string>();
  if (kind == "axiom") return AxiomNode{j.at("label").get<std::string>()};
  if (kind == "square") return SquareNode{SparsePoly::parse(space, j.at("root").get<std::string>())};
  if (kind == "comb") {
    CombNode n;
    n.children = j.at("children").get<std::vector<uint32_t>>();
    for (const auto& c : j.at("coeffs")) n.coeffs.push_back(parse_rational(c.get<std::string>()));
    if (j.contains("sos")) n.sos = sos_from_json(j.at("sos"), space);
    return n;
  }
  if (kind == "product_sos")
    return ProductSosNode{j.at("child").get<uint32_t>(), sos_from_json(j.at("factor"), space)};
  if (kind == "product_poly")
    return ProductPolyNode{j.at("child").get<uint32_t>(),
                           SparsePoly::parse(space, j.at("factor").get<std::string>())};
  if (kind == "substitute") {
    SubstituteNode n;
    n.child = j.at("child").get<uint32_t>();
    for (const auto& item : j.at("bindings"))
      n.bindings.push_back({item.at(0).get<VarId>(),
                            SparsePoly::parse(space, item.at(1).get<std::string>())});
    return n;
  }
  if (kind == "identity")
    return IdentityNode{SparsePoly::parse(space, j.at("lhs").get<std::string>()),
                        SparsePoly::parse(space, j.at("rhs").get<std::string>())};
  if (kind == "powers")
    return PowersNode{j.at("child").get<uint32_t>(), j.at("exponent").get<unsigned>(),
                      parse_rational(j.at("base").get<std::string>())};
  if (kind == "super_cs")
    return SuperCsNode{SparsePoly::parse(space, j.at("x").get<std::string>()),
                       SparsePoly::parse(space, j.at("y").get<std::string>()),
                       j.at("half_power").get<unsigned>(), sos_from_json(j.at("witness"), space)};
  if (kind == "cert_leaf") return CertLeafNode{cert_body_from_json(j.at("cert"), space)};
  throw std::invalid_argument("unknown proof rule tag: " + kind);
}

}  // namespace

std::string certificate_to_json(const SOSCertificate& cert, const ConstraintSystem& system) {
  Json j;
  j["kind"] = "sos_certificate";
  j["space"] = cert.space->labels();
  j["constraints"] = system_to_json(system);
  Json body = cert_body_to_json(cert);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j.dump(1);
}

std::pair<SOSCertificate, ConstraintSystem> certificate_from_json(const std::string& text) {
  Json j = Json::parse(text);
  if (j.at("kind") != "sos_certificate") throw std::invalid_argument("not a certificate file");
  SpaceRef space = IndeterminateSpace::make(j.at("space").get<std::vector<std::string>>());
  ConstraintSystem system = system_from_json(j.at("constraints"), space);
  SOSCertificate cert = cert_body_from_json(j, space);
  return {std::move(cert), std::move(system)};
}

std::string dag_to_json(const ProofDag& dag, const ConstraintSystem& system) {
  Json j;
  j["kind"] = "proof_dag";
  j["space"] = dag.space->labels();
  j["degree_bound"] = dag.degree_bound;
  j["constraints"] = system_to_json(system);
  j["goal"] = {{"rel", dag.goal.rel == Rel::GeqZero ? ">=0" : "=0"},
               {"poly", dag.goal.poly.to_text()}};
  j["meta"] = dag.meta;
  j["root"] = dag.root;
  Json nodes = Json::array();
  for (const auto& node : dag.nodes) {
    Json nj = rule_to_json(node.rule);
    if (!node.note.empty()) nj["note"] = node.note;
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  return j.dump(1);
}

std::pair<ProofDag, ConstraintSystem> dag_from_json(const std::string& text) {
  Json j = Json::parse(text);
  if (j.at("kind") != "proof_dag") throw std::invalid_argument("not a proof file");
  SpaceRef space = IndeterminateSpace::make(j.at("space").get<std::vector<std::string>>());
  ConstraintSystem system = system_from_json(j.at("constraints"), space);
  ProofDag dag;
  dag.space = space;
  dag.degree_bound = j.at("degree_bound").get<int>();
  dag.root = j.at("root").get<uint32_t>();
  dag.goal.rel = j.at("goal").at("rel") == ">=0" ? Rel::GeqZero : Rel::EqZero;
  dag.goal.poly = SparsePoly::parse(space, j.at("goal").at("poly").get<std::string>());
  if (j.contains("meta"))
    dag.meta = j.at("meta").get<std::map<std::string, std::string>>();
  for (const auto& nj : j.at("nodes")) {
    DagNode node;
    node.rule = rule_from_json(nj, space);
    if (nj.contains("note")) node.note = nj.at("note").get<std::string>();
    dag.nodes.push_back(std::move(node));
  }
  return {std::move(dag), std::move(system)};
}

std::string detect_kind(const std::string& text) {
  Json j = Json::parse(text);
  return j.at("kind").get<std::string>();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace soscert
