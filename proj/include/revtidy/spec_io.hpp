#pragma once

#include <iosfwd>
#include <string>

#include "revtidy/qsim.hpp"

namespace revtidy::qsim {

struct LoadedSpec {
  ComputationSpec spec;
  double tolerance;  // the file's tolerance, default 1e-9
};

// Spec file (.spec.json):
//   { "layout": {"out_dim": d1, "aux_dim": d2},
//     "aux0": [[re,im], ...],            (optional; defaults to basis 0)
//     "branches": [ {"input": [[re,im],...], "output": [...], "aux": [...]} ],
//     "tolerance": 1e-9 }                (optional)
// Amplitude array lengths must match the declared dims; unknown keys are
// rejected.
LoadedSpec load_spec_json(std::istream& in);
LoadedSpec load_spec_json_string(const std::string& text);
LoadedSpec load_spec_json_file(const std::string& path);

}  // namespace revtidy::qsim
