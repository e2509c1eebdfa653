#pragma once

#include <json.hpp>

#include <string>

#include "revtidy/tidy.hpp"

namespace revtidy::report {

/// Rounds to the given number of significant digits so serialized reports
/// are byte-stable across runs.
double round_sig(double v, int digits = 12);

/// Analyzer report with fixed key order:
///   classification, reversible, tidy_possible, certificate, energy, pairs.
/// The certificate carries the maximal-tidy-residual pair when tidying is
/// impossible, or the worst reversibility pair when the spec admits no
/// unitary; otherwise it is null.
nlohmann::ordered_json analyzer_report(const qsim::ComputationSpec& spec,
                                       double eps);

std::string render_text(const nlohmann::ordered_json& report);

/// Serialized tidy procedure: kind, registers, per-step matrices and the
/// verified per-branch fidelities.
nlohmann::ordered_json procedure_json(const qsim::ComputationSpec& spec,
                                      const tidy::TidyProcedure& proc,
                                      double eps);

}  // namespace revtidy::report
