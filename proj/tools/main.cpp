// revtidy: reversible-computation toolkit.
//
// Compiles boolean programs into reversible circuits, applies the reverse
// and tidy passes, and analyzes quantum computations given as branch
// specifications: decides tidyability, constructs tidying procedures and
// accounts for erasure costs.
//
// Exit codes: 0 success (or tidyable), 2 provably untidyable, 1 error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "revtidy/circuit.hpp"
#include "revtidy/circuit_io.hpp"
#include "revtidy/report.hpp"
#include "revtidy/spec_io.hpp"
#include "revtidy/tidy.hpp"

namespace {

using namespace revtidy;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUntidyable = 2;

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("REVTIDY_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || v >= 1.0) {
    throw Error("REVTIDY_TOL must be a number in (0, 1), got '" +
                std::string(raw) + "'");
  }
  return v;
}

// Precedence: --tol flag, then REVTIDY_TOL, then the spec file's tolerance.
double resolve_tolerance(const std::optional<double>& flag, double file_tol) {
  if (flag) return *flag;
  if (auto env = env_tolerance()) return *env;
  return file_tol;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", report::round_sig(v, 10));
  return buf;
}

int cmd_compile(const std::string& prog_path, const std::string& out_path) {
  circ::BooleanProgram prog = circ::parse_blp_file(prog_path);
  circ::write_rvc_file(out_path, circ::bennett_embed(prog));
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_reverse(const std::string& circ_path, const std::string& out_path) {
  circ::write_rvc_file(out_path, circ::reverse(circ::parse_rvc_file(circ_path)));
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_tidy(const std::string& circ_path, const std::string& out_path) {
  circ::write_rvc_file(out_path,
                       circ::tidy_transform(circ::parse_rvc_file(circ_path)));
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_run(const std::string& circ_path, const std::string& input) {
  circ::ReversibleCircuit circuit = circ::parse_rvc_file(circ_path);
  circ::Bits bits = circ::bits_from_string(input);
  std::cout << circ::bits_to_string(circ::evaluate(circuit, bits)) << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& spec_path, const std::optional<double>& tol,
                bool as_json) {
  qsim::LoadedSpec loaded = qsim::load_spec_json_file(spec_path);
  double eps = resolve_tolerance(tol, loaded.tolerance);
  nlohmann::ordered_json j = report::analyzer_report(loaded.spec, eps);
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report::render_text(j);
  }
  if (!j.at("tidy_possible").get<bool>()) return kExitUntidyable;
  if (!j.at("reversible").get<bool>()) return kExitError;
  return kExitOk;
}

int cmd_tidier(const std::string& spec_path, const std::string& out_path,
               const std::optional<double>& tol) {
  qsim::LoadedSpec loaded = qsim::load_spec_json_file(spec_path);
  double eps = resolve_tolerance(tol, loaded.tolerance);
  try {
    tidy::TidyProcedure proc = tidy::construct_tidier(loaded.spec, eps);
    nlohmann::ordered_json j = report::procedure_json(loaded.spec, proc, eps);
    std::ofstream out(out_path);
    if (!out) throw Error("cannot open '" + out_path + "' for writing");
    out << j.dump(2) << "\n";
    double min_f = 1.0;
    for (const auto& f : j.at("branch_fidelities")) {
      min_f = std::min(min_f, f.get<double>());
    }
    std::cout << "wrote " << out_path << " ("
              << tidy::to_string(proc.kind) << ", " << proc.steps.size()
              << " steps, min branch fidelity " << fmt(min_f) << ")\n";
    return kExitOk;
  } catch (const tidy::NoTidierExists& e) {
    std::cerr << e.what() << "\n";
    return kExitUntidyable;
  }
}

int cmd_energy(const std::string& spec_path) {
  qsim::LoadedSpec loaded = qsim::load_spec_json_file(spec_path);
  tidy::EnergyAccount untidied = tidy::erasure_cost(loaded.spec, false);
  tidy::EnergyAccount tidied = tidy::erasure_cost(loaded.spec, true);
  std::cout << "aux register dimension: " << loaded.spec.layout().aux_dim
            << "\n";
  std::cout << "untidied: erased_bits=" << fmt(untidied.erased_bits)
            << " landauer_cost=" << fmt(untidied.landauer_cost) << " kT ln2\n";
  std::cout << "tidied:   erased_bits=" << fmt(tidied.erased_bits)
            << " landauer_cost=" << fmt(tidied.landauer_cost) << " kT ln2\n";
  std::cout << "branch entanglement entropy bounds (bits):";
  for (double h : untidied.branch_entropy_bound) std::cout << " " << fmt(h);
  std::cout << "\n";
  return kExitOk;
}

linalg::StateVector ket_plus() {
  double s = 1.0 / std::sqrt(2.0);
  return linalg::StateVector({cplx(s, 0), cplx(s, 0)});
}

int demo_noclone() {
  using linalg::StateVector;
  StateVector zero = StateVector::basis(2, 0);
  StateVector one = StateVector::basis(2, 1);
  std::vector<double> fid =
      tidy::clone_attempt({zero, one, ket_plus()}, {zero, one});
  std::cout << "Copying with a controlled-NOT built on the computational "
               "basis {|0>, |1>}:\n";
  std::cout << "  clone fidelity of |0>: " << fmt(fid[0]) << "\n";
  std::cout << "  clone fidelity of |1>: " << fmt(fid[1]) << "\n";
  std::cout << "  clone fidelity of |+>: " << fmt(fid[2]) << "\n";
  std::cout << "Basis states copy perfectly; the superposition lands on an "
               "entangled pair\ninstead of two copies, so its fidelity drops "
               "to 1/2. No unitary copies\narbitrary unknown states.\n";
  return kExitOk;
}

int demo_bennett() {
  circ::BooleanProgram prog(2);
  prog.designate_output(prog.add(circ::BoolOp::And, 0, 1));
  circ::ReversibleCircuit f = circ::bennett_embed(prog);
  circ::ReversibleCircuit tidied = circ::tidy_transform(f);

  std::cout << "AND compiled reversibly, then tidied: compute, copy the "
               "output, uncompute.\n";
  std::cout << "circuit:\n" << circ::to_rvc(tidied);
  std::cout << "evaluation over all inputs (lines: a, b, work, copy):\n";
  for (std::size_t v = 0; v < 4; ++v) {
    circ::Bits in{((v >> 1) & 1) != 0, (v & 1) != 0, false, false};
    circ::Bits out = circ::evaluate(tidied, in);
    std::cout << "  " << circ::bits_to_string(in) << " -> "
              << circ::bits_to_string(out) << "\n";
  }
  std::cout << "The work line returns to 0 and the copy line holds a AND b; "
               "no erasure needed.\n";
  return kExitOk;
}

int demo_warehouse() {
  using linalg::StateVector;
  using qsim::Branch;
  using qsim::ComputationSpec;
  using qsim::RegisterLayout;
  StateVector zero = StateVector::basis(2, 0);
  StateVector one = StateVector::basis(2, 1);

  std::cout << "Two parties share results through a quantum data "
               "warehouse.\n\n";

  std::cout << "Alice computes on orthogonal inputs {|0>, |1>}:\n";
  ComputationSpec alice(RegisterLayout{2, 2}, zero,
                        {Branch{zero, zero, zero},
                         Branch{one, ket_plus(), one}});
  tidy::TidyProcedure proc = tidy::construct_tidier(alice);
  std::vector<double> fid = tidy::verify_tidier(alice, proc);
  std::cout << "  tidy procedure: " << tidy::to_string(proc.kind) << ", "
            << proc.steps.size() << " steps\n";
  std::cout << "  branch fidelities:";
  for (double f : fid) std::cout << " " << fmt(f);
  std::cout << "\n  Alice can tidy as she goes and reuse her aux register.\n\n";

  std::cout << "Bob pulls non-orthogonal inputs {|0>, |+>} from the "
               "warehouse and maps them\nto distinct outputs {|0>, |1>}:\n";
  ComputationSpec bob(RegisterLayout{2, 2}, zero,
                      {Branch{zero, zero, zero},
                       Branch{ket_plus(), one, one}});
  tidy::TidyDecision d = tidy::check_tidy_condition(bob);
  std::cout << "  tidy possible: " << (d.possible ? "yes" : "no") << "\n";
  if (d.certificate) {
    std::cout << "  certificate: pair (" << d.certificate->i << ", "
              << d.certificate->j << "), |tidy residual| = "
              << fmt(std::abs(d.certificate->tidy_residual())) << "\n";
  }
  tidy::EnergyAccount cost = tidy::erasure_cost(bob, false);
  std::cout << "  energy account: erased_bits=" << fmt(cost.erased_bits)
            << ", landauer_cost=" << fmt(cost.landauer_cost) << " kT ln2\n";
  std::cout << "  No procedure restores Bob's aux register while keeping the "
               "output; recovering\n  it takes dissipative erasure, and the "
               "warehouse inputs cannot be restored.\n";
  return kExitOk;
}

int cmd_demo(const std::string& name) {
  if (name == "noclone") return demo_noclone();
  if (name == "bennett") return demo_bennett();
  if (name == "warehouse") return demo_warehouse();
  std::cerr << "unknown demo '" << name
            << "' (available: noclone, bennett, warehouse)\n";
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reversible-computation toolkit"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;
  std::string run_input;
  std::string demo_name;
  std::optional<double> tol;
  bool as_json = false;

  CLI::App* compile = app.add_subcommand(
      "compile", "compile a boolean program (.blp) into a reversible circuit");
  compile->add_option("program", in_path, "input .blp file")->required();
  compile->add_option("-o,--output", out_path, "output .rvc file")->required();

  CLI::App* rev = app.add_subcommand("reverse", "reverse a circuit");
  rev->add_option("circuit", in_path, "input .rvc file")->required();
  rev->add_option("-o,--output", out_path, "output .rvc file")->required();

  CLI::App* tidy_cmd = app.add_subcommand(
      "tidy", "append an output copy and the reversed circuit");
  tidy_cmd->add_option("circuit", in_path, "input .rvc file")->required();
  tidy_cmd->add_option("-o,--output", out_path, "output .rvc file")->required();

  CLI::App* run = app.add_subcommand("run", "evaluate a circuit on a bitstring");
  run->add_option("circuit", in_path, "input .rvc file")->required();
  run->add_option("--input", run_input, "bitstring, line 0 first")->required();

  CLI::App* analyze = app.add_subcommand(
      "analyze", "decide reversibility and tidyability of a branch spec");
  analyze->add_option("spec", in_path, "input .spec.json file")->required();
  analyze->add_option("--tol", tol, "tolerance override");
  analyze->add_flag("--json", as_json, "emit the JSON report");

  CLI::App* tidier = app.add_subcommand(
      "tidier", "construct and verify a tidying procedure");
  tidier->add_option("spec", in_path, "input .spec.json file")->required();
  tidier->add_option("-o,--output", out_path, "output procedure JSON")
      ->required();

  CLI::App* energy = app.add_subcommand(
      "energy", "erasure cost of leaving the spec untidied");
  energy->add_option("spec", in_path, "input .spec.json file")->required();

  CLI::App* demo = app.add_subcommand("demo", "run a scripted scenario");
  demo->add_option("name", demo_name, "noclone | bennett | warehouse")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  }

  try {
    if (app.got_subcommand(compile)) return cmd_compile(in_path, out_path);
    if (app.got_subcommand(rev)) return cmd_reverse(in_path, out_path);
    if (app.got_subcommand(tidy_cmd)) return cmd_tidy(in_path, out_path);
    if (app.got_subcommand(run)) return cmd_run(in_path, run_input);
    if (app.got_subcommand(analyze)) return cmd_analyze(in_path, tol, as_json);
    if (app.got_subcommand(tidier)) return cmd_tidier(in_path, out_path, tol);
    if (app.got_subcommand(energy)) return cmd_energy(in_path);
    if (app.got_subcommand(demo)) return cmd_demo(demo_name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
