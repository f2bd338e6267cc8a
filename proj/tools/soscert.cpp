// Command-line front end: certificate generators, the exact verifier, and the
// reproduction harness. All numeric arguments are exact rationals ("3/4" or
// "2"); decimal literals are rejected. Exit codes: 0 success, 1 verification
// failure or infeasible instance, 2 malformed input.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "soscert/frankl_rodl.hpp"
#include "soscert/hyper.hpp"
#include "soscert/json_io.hpp"
#include "soscert/repro.hpp"
#include "soscert/reverse.hpp"
#include "soscert/two_point.hpp"

using namespace soscert;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitMalformed = 2;

BigRational arg_rational(const std::string& text) { return parse_rational(text); }

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << "\n";
    return;
  }
  write_file(path, content);
  std::cout << "wrote " << path << " (" << content.size() << " bytes, digest "
            << digest_hex(content) << ")\n";
}

int verify_file(const std::string& path, unsigned jobs) {
  std::string text = read_file(path);
  std::string kind = detect_kind(text);
  if (kind == "sos_certificate") {
    auto [cert, system] = certificate_from_json(text);
    CertVerdict v = verify_certificate(cert, system);
    if (v.valid) {
      std::cout << "valid certificate: " << cert.square_count() << " squares, degree bound "
                << cert.degree_bound << "\n";
      return kExitValid;
    }
    std::cout << "invalid certificate (" << to_string(v.failure) << "): " << v.detail << "\n";
    return kExitInvalid;
  }
  auto [dag, system] = dag_from_json(text);
  DagVerdict v = verify_dag(dag, system, jobs);
  if (v.valid) {
    std::cout << "valid proof: " << dag.nodes.size() << " nodes, " << dag.leaf_count()
              << " leaves, degree bound " << dag.degree_bound << "\n";
    return kExitValid;
  }
  std::cout << "invalid proof (" << to_string(v.failure) << ") at node " << v.failing_node
            << ": " << v.detail << "\n";
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact sum-of-squares certificates for hypercontractive inequalities"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "verification parallelism");

  std::string out_path;

  // --- twopoint ------------------------------------------------------------
  auto* tp = app.add_subcommand("twopoint", "two-point inequality certificates");
  tp->require_subcommand(1);
  unsigned tp_k = 1;
  std::string tp_rho = "0";
  auto* tp_gen = tp->add_subcommand("gen", "emit a certificate for P_k >= 0");
  tp_gen->add_option("--k", tp_k, "power parameter")->required();
  tp_gen->add_option("--rho", tp_rho, "noise rate in [0, 1-1/(2k)]")->required();
  tp_gen->add_option("--out", out_path, "output file");
  auto* tp_table = tp->add_subcommand("qtable", "print the Q and strengthened Q families");
  tp_table->add_option("--k", tp_k, "power parameter")->required();
  auto* tp_puzzle = tp->add_subcommand("puzzle", "reproduce and verify the k=3 square list");

  // --- reverse ---------------------------------------------------------------
  auto* rv = app.add_subcommand("reverse", "reverse hypercontractivity proofs");
  rv->require_subcommand(1);
  unsigned rv_n = 1, rv_k = 1;
  std::string rv_rho = "0", rv_file;
  auto* rv_gen = rv->add_subcommand("gen", "emit the inductive proof");
  rv_gen->add_option("--n", rv_n, "dimension")->required();
  rv_gen->add_option("--k", rv_k, "power parameter")->required();
  rv_gen->add_option("--rho", rv_rho, "noise rate")->required();
  rv_gen->add_option("--out", out_path, "output file");
  auto* rv_verify = rv->add_subcommand("verify", "verify a proof file");
  rv_verify->add_option("file", rv_file, "proof file")->required();

  // --- hyper -----------------------------------------------------------------
  auto* hy = app.add_subcommand("hyper", "forward hypercontractivity");
  hy->require_subcommand(1);
  unsigned hy_s = 1, hy_n = 1, hy_smax = 20;
  std::string hy_rho2 = "", hy_rho = "", hy_moments = "rademacher";
  auto* hy_moments_cmd = hy->add_subcommand("moments", "print the moment bounds");
  hy_moments_cmd->add_option("--s", hy_s, "half power")->required();
  auto* hy_term = hy->add_subcommand("termwise", "coefficientwise moment check");
  hy_term->add_option("--s", hy_s, "half power")->required();
  hy_term->add_option("--rho2", hy_rho2, "squared noise rate (exact rational)");
  hy_term->add_option("--rho", hy_rho, "noise rate (squared internally)");
  hy_term->add_option("--moments", hy_moments, "rademacher | gaussian");
  auto* hy_ident = hy->add_subcommand("identity", "balanced bipartition sum identity");
  hy_ident->add_option("--smax", hy_smax, "table bound")->required();
  auto* hy_gen = hy->add_subcommand("gen", "emit the inductive proof");
  hy_gen->add_option("--n", hy_n, "dimension")->required();
  hy_gen->add_option("--s", hy_s, "half power")->required();
  hy_gen->add_option("--rho2", hy_rho2, "squared noise rate");
  hy_gen->add_option("--rho", hy_rho, "noise rate (squared internally)");
  hy_gen->add_option("--moments", hy_moments, "rademacher | gaussian");
  hy_gen->add_option("--out", out_path, "output file");

  // --- fr --------------------------------------------------------------------
  auto* fr = app.add_subcommand("fr", "Frankl-Rodl refutations");
  fr->require_subcommand(1);
  unsigned fr_n = 4;
  std::string fr_gamma = "1/2", fr_alpha = "1", fr_mode = "tight", fr_csv;
  auto* fr_spec = fr->add_subcommand("spectrum", "exact spectra and per-level gaps");
  fr_spec->add_option("--n", fr_n, "dimension")->required();
  fr_spec->add_option("--gamma", fr_gamma, "distance parameter")->required();
  fr_spec->add_option("--csv", fr_csv, "write the table as CSV");
  auto* fr_ref = fr->add_subcommand("refute", "emit a degree-4k refutation");
  fr_ref->add_option("--n", fr_n, "dimension")->required();
  fr_ref->add_option("--gamma", fr_gamma, "distance parameter")->required();
  fr_ref->add_option("--alpha", fr_alpha, "density to refute")->required();
  fr_ref->add_option("--delta-mode", fr_mode, "tight | max");
  fr_ref->add_option("--out", out_path, "output file");
  auto* fr_min = fr->add_subcommand("minalpha", "smallest refutable density");
  fr_min->add_option("--n", fr_n, "dimension")->required();
  fr_min->add_option("--gamma", fr_gamma, "distance parameter")->required();
  fr_min->add_option("--delta-mode", fr_mode, "tight | max");
  fr_min->add_option("--csv", fr_csv, "write the threshold row as CSV");

  // --- verify / repro ----------------------------------------------------------
  std::string verify_path;
  auto* vf = app.add_subcommand("verify", "verify a certificate or proof file");
  vf->add_option("file", verify_path, "input file")->required();
  auto* rp = app.add_subcommand("repro", "run the acceptance suite");
  std::string rp_what = "all";
  rp->add_option("what", rp_what, "all | 1..8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitValid : kExitMalformed;
  }

  try {
    if (tp_gen->parsed()) {
      SOSCertificate cert = twopoint::twopoint_certificate({tp_k, arg_rational(tp_rho)});
      ConstraintSystem empty(cert.space);
      emit(out_path, certificate_to_json(cert, empty));
      std::cout << "valid: " << cert.square_count() << " squares, target "
                << cert.target.term_count() << " terms\n";
      return kExitValid;
    }
    if (tp_table->parsed()) {
      twopoint::QFamily fam = twopoint::compute_Q(tp_k);
      for (unsigned i = 0; i <= tp_k; ++i) {
        std::cout << "Q[" << tp_k << "," << i << "]  = " << fam.q[i].to_text() << "\n";
        std::cout << "Qt[" << tp_k << "," << i << "] = " << fam.qtilde[i].to_text() << "\n";
      }
      return kExitValid;
    }
    if (tp_puzzle->parsed()) {
      Report report = puzzle_check();
      std::cout << report.render();
      return report.all_passed() ? kExitValid : kExitInvalid;
    }
    if (rv_gen->parsed()) {
      ProofDag dag = reversecert::inductive_certificate(rv_n, rv_k, arg_rational(rv_rho));
      ConstraintSystem empty(dag.space);
      DagVerdict v = verify_dag(dag, empty, jobs);
      if (!v.valid) {
        std::cout << "internal error: generated proof failed verification\n";
        return kExitInvalid;
      }
      emit(out_path, dag_to_json(dag, empty));
      std::cout << "valid: " << dag.nodes.size() << " nodes, " << dag.leaf_count()
                << " leaves\n";
      return kExitValid;
    }
    if (rv_verify->parsed()) return verify_file(rv_file, jobs);
    if (hy_moments_cmd->parsed()) {
      for (unsigned j = 1; j <= hy_s; ++j)
        std::cout << "m_" << 2 * j << " <= " << rational_to_string(hypercert::moment_bound(hy_s, j))
                  << "\n";
      return kExitValid;
    }
    if (hy_term->parsed() || hy_gen->parsed()) {
      BigRational rho2;
      if (!hy_rho2.empty())
        rho2 = arg_rational(hy_rho2);
      else if (!hy_rho.empty())
        rho2 = arg_rational(hy_rho) * arg_rational(hy_rho);
      else
        throw std::invalid_argument("pass --rho2 or --rho");
      hypercert::MomentSequence moments;
      if (hy_moments == "gaussian") {
        moments = hypercert::MomentSequence::gaussian(hy_s);
      } else if (hy_moments == "rademacher") {
        moments = hypercert::MomentSequence::rademacher(hy_s);
      } else {
        // A file with one exact rational m_{2j} per line, j = 1..s.
        moments.s = hy_s;
        std::istringstream in(read_file(hy_moments));
        std::string line;
        while (std::getline(in, line) && moments.even.size() < hy_s)
          if (!line.empty()) moments.even.push_back(parse_rational(line));
        if (moments.even.size() != hy_s)
          throw std::invalid_argument("moments file needs " + std::to_string(hy_s) + " entries");
      }
      if (hy_term->parsed()) {
        hypercert::TermwiseVerdict v = hypercert::zfc_termwise_check(hy_s, rho2, moments);
        if (v.ok) {
          std::cout << "termwise bounds hold for all j <= " << hy_s << "\n";
          return kExitValid;
        }
        std::cout << "violated at j = " << v.violated_j << "\n";
        return kExitInvalid;
      }
      ProofDag dag = hypercert::hypercon_certificate(hy_n, hy_s, rho2, moments);
      ConstraintSystem empty(dag.space);
      DagVerdict v = verify_dag(dag, empty, jobs);
      if (!v.valid) {
        std::cout << "internal error: generated proof failed verification\n";
        return kExitInvalid;
      }
      emit(out_path, dag_to_json(dag, empty));
      std::cout << "valid: " << dag.nodes.size() << " nodes, degree " << dag.degree_bound
                << "\n";
      return kExitValid;
    }
    if (hy_ident->parsed()) {
      hypercert::TableVerdict v = hypercert::binomial_identity_check(hy_smax);
      if (v.ok) {
        std::cout << "identity exact for all 0 <= r <= s <= " << hy_smax << "\n";
        return kExitValid;
      }
      std::cout << "mismatch at s=" << v.failed_s << " r=" << v.failed_j << "\n";
      return kExitInvalid;
    }
    if (fr_spec->parsed()) {
      franklrodl::FRInstance inst = franklrodl::make_instance(fr_n, arg_rational(fr_gamma));
      BigRational rho_prime = BigRational(1) - BigRational(2 * inst.d, inst.n);
      franklrodl::SpectralGap gap = franklrodl::spectral_gap(inst.n, inst.d, rho_prime);
      std::string csv = franklrodl::spectrum_csv(gap);
      if (!fr_csv.empty())
        emit(fr_csv, csv);
      else
        std::cout << csv;
      std::cout << "delta_max = " << rational_to_string(gap.delta_max) << "\n";
      return kExitValid;
    }
    if (fr_ref->parsed() || fr_min->parsed()) {
      franklrodl::FRInstance inst = franklrodl::make_instance(fr_n, arg_rational(fr_gamma));
      franklrodl::DeltaMode mode =
          fr_mode == "max" ? franklrodl::DeltaMode::Max : franklrodl::DeltaMode::Tight;
      if (fr_min->parsed()) {
        BigRational alpha = franklrodl::min_refutable_density(inst, mode);
        std::cout << "min refutable density: " << rational_to_string(alpha);
        if (alpha > 1) std::cout << " (exceeds 1: not refutable at this scale)";
        std::cout << "\nvertex cover certification: >= N*(1 - alpha) = "
                  << rational_to_string(BigRational(1u << inst.n) * (1 - alpha)) << "\n";
        if (!fr_csv.empty()) {
          std::string row = "n,gamma,d,k,mode,min_alpha\n" + std::to_string(inst.n) + "," +
                            rational_to_string(inst.gamma) + "," + std::to_string(inst.d) + "," +
                            std::to_string(franklrodl::default_power(inst.gamma)) + "," + fr_mode +
                            "," + rational_to_string(alpha) + "\n";
          emit(fr_csv, row);
        }
        return kExitValid;
      }
      try {
        franklrodl::Refutation ref =
            franklrodl::build_refutation(inst, {arg_rational(fr_alpha), 0, mode});
        DagVerdict v = verify_dag(ref.dag, ref.system, jobs);
        if (!v.valid) {
          std::cout << "internal error: refutation failed verification\n";
          return kExitInvalid;
        }
        emit(out_path, dag_to_json(ref.dag, ref.system));
        std::cout << "valid refutation: " << ref.dag.nodes.size() << " nodes, k = " << ref.k
                  << ", transfer constant " << rational_to_string(ref.constants.c) << "\n";
        return kExitValid;
      } catch (const franklrodl::InfeasibleThreshold& e) {
        std::cout << "infeasible: smallest refutable density is "
                  << rational_to_string(e.min_alpha) << "\n";
        return kExitInvalid;
      }
    }
    if (vf->parsed()) return verify_file(verify_path, jobs);
    if (rp->parsed()) {
      unsigned only = rp_what == "all" ? 0 : static_cast<unsigned>(std::stoul(rp_what));
      Report report = run_acceptance(jobs, only);
      std::cout << report.render();
      return report.all_passed() ? kExitValid : kExitInvalid;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed file: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitMalformed;
}
