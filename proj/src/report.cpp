#include "revtidy/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace revtidy::report {

using nlohmann::ordered_json;

double round_sig(double v, int digits) {
  if (!std::isfinite(v)) throw Error("cannot round a non-finite value");
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

namespace {

ordered_json cplx_json(cplx z) {
  return ordered_json::array({round_sig(z.real()), round_sig(z.imag())});
}

ordered_json pair_json(const tidy::PairResidual& p) {
  ordered_json j;
  j["i"] = p.i;
  j["j"] = p.j;
  j["in_overlap"] = cplx_json(p.in_overlap);
  j["out_overlap"] = cplx_json(p.out_overlap);
  j["aux_overlap"] = cplx_json(p.aux_overlap);
  j["reversible_residual"] = cplx_json(p.reversible_residual());
  j["tidy_residual"] = cplx_json(p.tidy_residual());
  return j;
}

ordered_json certificate_json(const tidy::PairResidual& p) {
  ordered_json j;
  j["pair"] = ordered_json::array({p.i, p.j});
  j["in_overlap"] = cplx_json(p.in_overlap);
  j["out_overlap"] = cplx_json(p.out_overlap);
  j["aux_overlap"] = cplx_json(p.aux_overlap);
  j["reversible_residual"] = cplx_json(p.reversible_residual());
  j["tidy_residual"] = cplx_json(p.tidy_residual());
  return j;
}

}  // namespace

ordered_json analyzer_report(const qsim::ComputationSpec& spec, double eps) {
  tidy::TidyClassification cls = tidy::classify(spec, eps);
  const std::vector<tidy::PairResidual>& pairs = cls.pair_data;

  bool reversible = std::all_of(
      pairs.begin(), pairs.end(), [eps](const tidy::PairResidual& p) {
        return std::abs(p.reversible_residual()) <= eps;
      });
  bool tidy_possible = std::all_of(
      pairs.begin(), pairs.end(), [eps](const tidy::PairResidual& p) {
        return std::abs(p.in_overlap) <= eps ||
               std::abs(cplx(1.0, 0.0) - p.out_overlap) <= eps;
      });

  const tidy::PairResidual* certificate = nullptr;
  if (!tidy_possible) {
    for (const auto& p : pairs) {
      if (!certificate || std::abs(p.tidy_residual()) >
                              std::abs(certificate->tidy_residual())) {
        certificate = &p;
      }
    }
  } else if (!reversible) {
    for (const auto& p : pairs) {
      if (!certificate || std::abs(p.reversible_residual()) >
                              std::abs(certificate->reversible_residual())) {
        certificate = &p;
      }
    }
  }

  tidy::EnergyAccount energy = tidy::erasure_cost(spec, false);

  ordered_json j;
  j["classification"] = std::string(tidy::to_string(cls.label));
  j["reversible"] = reversible;
  j["tidy_possible"] = tidy_possible;
  j["certificate"] =
      certificate ? certificate_json(*certificate) : ordered_json(nullptr);
  ordered_json je;
  je["erased_bits"] = round_sig(energy.erased_bits);
  je["landauer_cost_kTln2"] = round_sig(energy.landauer_cost);
  j["energy"] = je;
  ordered_json jp = ordered_json::array();
  for (const auto& p : pairs) jp.push_back(pair_json(p));
  j["pairs"] = jp;
  return j;
}

std::string render_text(const ordered_json& report) {
  std::ostringstream out;
  out << "classification: " << report.at("classification").get<std::string>()
      << "\n";
  out << "reversible: " << (report.at("reversible").get<bool>() ? "yes" : "no")
      << "\n";
  out << "tidy possible: "
      << (report.at("tidy_possible").get<bool>() ? "yes" : "no") << "\n";
  if (!report.at("certificate").is_null()) {
    const auto& c = report.at("certificate");
    out << "certificate: pair (" << c.at("pair")[0].get<std::size_t>() << ", "
        << c.at("pair")[1].get<std::size_t>() << ")"
        << "  |tidy residual| = "
        << std::abs(cplx(c.at("tidy_residual")[0].get<double>(),
                         c.at("tidy_residual")[1].get<double>()))
        << "  |reversible residual| = "
        << std::abs(cplx(c.at("reversible_residual")[0].get<double>(),
                         c.at("reversible_residual")[1].get<double>()))
        << "\n";
  }
  const auto& e = report.at("energy");
  out << "energy if left untidied: " << e.at("erased_bits").get<double>()
      << " erased bits, " << e.at("landauer_cost_kTln2").get<double>()
      << " kT ln2\n";
  out << "branch pairs: " << report.at("pairs").size() << "\n";
  return out.str();
}

ordered_json procedure_json(const qsim::ComputationSpec& spec,
                            const tidy::TidyProcedure& proc, double eps) {
  ordered_json j;
  j["kind"] = std::string(tidy::to_string(proc.kind));
  ordered_json jr;
  jr["out_dim"] = proc.layout.out_dim;
  jr["aux_dim"] = proc.layout.aux_dim;
  jr["copy_dim"] = proc.copy_dim;
  jr["copy_content"] = proc.copy_content == tidy::CopyContent::Output
                           ? "output"
                           : "output_aux0";
  j["registers"] = jr;

  ordered_json steps = ordered_json::array();
  for (const tidy::TidyStep& step : proc.steps) {
    ordered_json js;
    js["label"] = step.label;
    js["dim"] = step.op.dim();
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < step.op.dim(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < step.op.dim(); ++c) {
        row.push_back(cplx_json(step.op(r, c)));
      }
      rows.push_back(row);
    }
    js["matrix"] = rows;
    steps.push_back(js);
  }
  j["steps"] = steps;

  ordered_json fid = ordered_json::array();
  for (double f : tidy::verify_tidier(spec, proc, eps)) {
    fid.push_back(round_sig(f));
  }
  j["branch_fidelities"] = fid;
  return j;
}

}  // namespace revtidy::report
