#include "revtidy/tidy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace revtidy::tidy {

using linalg::fidelity;
using linalg::inner_product;
using linalg::vec_inner;
using linalg::vec_tensor;

namespace {

std::string pair_text(const PairResidual& p) {
  return "pair (" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")";
}

// Largest |reversible_residual|, ties broken by lexicographic (i, j).
const PairResidual* worst_reversible(const std::vector<PairResidual>& pairs) {
  const PairResidual* worst = nullptr;
  for (const PairResidual& p : pairs) {
    if (!worst || std::abs(p.reversible_residual()) >
                      std::abs(worst->reversible_residual())) {
      worst = &p;
    }
  }
  return worst;
}

const PairResidual* worst_tidy(const std::vector<PairResidual>& pairs) {
  const PairResidual* worst = nullptr;
  for (const PairResidual& p : pairs) {
    if (!worst ||
        std::abs(p.tidy_residual()) > std::abs(worst->tidy_residual())) {
      worst = &p;
    }
  }
  return worst;
}

bool reversible_within(const std::vector<PairResidual>& pairs, double eps) {
  return std::all_of(pairs.begin(), pairs.end(), [eps](const PairResidual& p) {
    return std::abs(p.reversible_residual()) <= eps;
  });
}

// The pairwise tidy condition: orthogonal inputs or identical outputs
// (phase included).
bool pair_tidyable(const PairResidual& p, double eps) {
  return std::abs(p.in_overlap) <= eps ||
         std::abs(cplx(1.0, 0.0) - p.out_overlap) <= eps;
}

// Unique states under fidelity equality, in first-appearance order.
std::vector<StateVector> dedup_states(const std::vector<StateVector>& states,
                                      double eps) {
  std::vector<StateVector> unique;
  for (const StateVector& s : states) {
    bool seen = std::any_of(unique.begin(), unique.end(),
                            [&](const StateVector& u) {
                              return fidelity(u, s) >= 1.0 - eps;
                            });
    if (!seen) unique.push_back(s);
  }
  return unique;
}

bool pairwise_orthogonal(const std::vector<StateVector>& states, double eps) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (std::abs(inner_product(states[i], states[j])) > eps) return false;
    }
  }
  return true;
}

ProcedureKind select_procedure_kind(const ComputationSpec& spec,
                                    const TidyClassification& cls,
                                    double eps) {
  if (cls.label == TidyLabel::OrthogonalOutputs) {
    return ProcedureKind::BennettCopyReverse;
  }
  if (cls.label == TidyLabel::OrthogonalInputsNonOrthogonalOutputs) {
    // The conditional reset needs the distinct aux states to form an
    // orthonormal set; mixed specs fall back to the direct completion.
    std::vector<StateVector> aux;
    aux.reserve(spec.size());
    for (const auto& b : spec.branches()) aux.push_back(b.aux);
    if (pairwise_orthogonal(dedup_states(aux, eps), eps)) {
      return ProcedureKind::ModifiedCopyResetReverse;
    }
  }
  return ProcedureKind::DirectCompletion;
}

}  // namespace

std::string_view to_string(TidyLabel label) {
  switch (label) {
    case TidyLabel::OrthogonalOutputs:
      return "OrthogonalOutputs";
    case TidyLabel::OrthogonalInputsNonOrthogonalOutputs:
      return "OrthogonalInputsNonOrthogonalOutputs";
    case TidyLabel::NonOrthogonalInputs:
      return "NonOrthogonalInputs";
  }
  return "NonOrthogonalInputs";
}

std::string_view to_string(ProcedureKind kind) {
  switch (kind) {
    case ProcedureKind::BennettCopyReverse:
      return "BennettCopyReverse";
    case ProcedureKind::ModifiedCopyResetReverse:
      return "ModifiedCopyResetReverse";
    case ProcedureKind::DirectCompletion:
      return "DirectCompletion";
  }
  return "DirectCompletion";
}

NotReversible::NotReversible(PairResidual worst)
    : Error("spec is not realizable by any unitary: " + pair_text(worst) +
            " violates the reversibility condition by " +
            std::to_string(std::abs(worst.reversible_residual()))),
      worst_(worst) {}

NoTidierExists::NoTidierExists(PairResidual certificate)
    : Error("no tidying procedure exists: " + pair_text(certificate) +
            " has non-orthogonal inputs with distinct outputs, "
            "|tidy residual| = " +
            std::to_string(std::abs(certificate.tidy_residual()))),
      certificate_(certificate) {}

std::vector<PairResidual> check_reversibility(const ComputationSpec& spec,
                                              double eps) {
  (void)eps;
  const auto& branches = spec.branches();
  std::vector<PairResidual> pairs;
  pairs.reserve(branches.size() * (branches.size() - 1) / 2);
  for (std::size_t i = 0; i < branches.size(); ++i) {
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      PairResidual p;
      p.i = i;
      p.j = j;
      p.in_overlap = inner_product(branches[i].input, branches[j].input);
      p.out_overlap = inner_product(branches[i].output, branches[j].output);
      p.aux_overlap = inner_product(branches[i].aux, branches[j].aux);
      pairs.push_back(p);
    }
  }
  return pairs;
}

TidyDecision check_tidy_condition(const ComputationSpec& spec, double eps) {
  std::vector<PairResidual> pairs = check_reversibility(spec, eps);

  bool possible = std::all_of(pairs.begin(), pairs.end(),
                              [eps](const PairResidual& p) {
                                return pair_tidyable(p, eps);
                              });
  if (!possible) {
    // The tidy condition involves only the branch inputs and outputs, so
    // the impossibility verdict stands regardless of the aux states.
    TidyDecision d;
    d.possible = false;
    d.certificate = *worst_tidy(pairs);
    return d;
  }

  if (!reversible_within(pairs, eps)) {
    throw NotReversible(*worst_reversible(pairs));
  }

  TidyDecision d;
  d.possible = true;
  d.procedure = select_procedure_kind(spec, classify(spec, eps), eps);
  return d;
}

TidyClassification classify(const ComputationSpec& spec, double eps) {
  std::vector<PairResidual> pairs = check_reversibility(spec, eps);
  bool outputs_orthogonal =
      std::all_of(pairs.begin(), pairs.end(), [eps](const PairResidual& p) {
        return std::abs(p.out_overlap) <= eps;
      });
  bool inputs_orthogonal =
      std::all_of(pairs.begin(), pairs.end(), [eps](const PairResidual& p) {
        return std::abs(p.in_overlap) <= eps;
      });

  TidyLabel label = TidyLabel::NonOrthogonalInputs;
  if (outputs_orthogonal) {
    label = TidyLabel::OrthogonalOutputs;
  } else if (inputs_orthogonal) {
    label = TidyLabel::OrthogonalInputsNonOrthogonalOutputs;
  }
  return TidyClassification{label, std::move(pairs)};
}

UnitaryMatrix basis_controlled_copy(const std::vector<StateVector>& basis,
                                    std::size_t dim, double eps) {
  if (basis.empty()) throw EmptyList("basis_controlled_copy: empty basis");
  if (basis.size() > dim) {
    throw NotOrthonormal("more basis vectors than the dimension allows");
  }
  for (const StateVector& b : basis) {
    if (b.dim() != dim) {
      throw DimensionMismatch("basis vector dim " + std::to_string(b.dim()) +
                              " vs " + std::to_string(dim));
    }
  }
  if (dim * dim > qsim::kMaxTotalDim) {
    throw CapacityExceeded("copy unitary dimension exceeds the cap");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      cplx g = inner_product(basis[i], basis[j]);
      if (i == j) g -= 1.0;
      if (std::abs(g) > eps) {
        throw NotOrthonormal("copier basis is not orthonormal at pair (" +
                             std::to_string(i) + ", " + std::to_string(j) +
                             ")");
      }
    }
  }

  StateVector blank = StateVector::basis(dim, 0);
  std::vector<std::pair<StateVector, StateVector>> pairs;
  pairs.reserve(basis.size());
  for (const StateVector& b : basis) {
    pairs.emplace_back(qsim::tensor(b, blank), qsim::tensor(b, b));
  }
  return linalg::complete_to_unitary(pairs, dim * dim, eps);
}

UnitaryMatrix conditional_reset(const std::vector<StateVector>& basis,
                                const StateVector& aux0, double eps) {
  if (basis.empty()) throw EmptyList("conditional_reset: empty basis");
  std::size_t dim = basis.front().dim();
  if (aux0.dim() != dim) {
    throw DimensionMismatch("conditional_reset: aux0 dim " +
                            std::to_string(aux0.dim()) + " vs " +
                            std::to_string(dim));
  }
  if (basis.size() > dim) {
    throw NotOrthonormal("more basis vectors than the dimension allows");
  }
  if (dim * dim > qsim::kMaxTotalDim) {
    throw CapacityExceeded("reset unitary dimension exceeds the cap");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != dim) {
      throw DimensionMismatch("conditional_reset: mixed basis dims");
    }
    for (std::size_t j = i; j < basis.size(); ++j) {
      cplx g = inner_product(basis[i], basis[j]);
      if (i == j) g -= 1.0;
      if (std::abs(g) > eps) {
        throw NotOrthonormal("reset basis is not orthonormal at pair (" +
                             std::to_string(i) + ", " + std::to_string(j) +
                             ")");
      }
    }
  }

  std::vector<std::pair<StateVector, StateVector>> pairs;
  pairs.reserve(basis.size());
  for (const StateVector& b : basis) {
    pairs.emplace_back(qsim::tensor(b, b), qsim::tensor(b, aux0));
  }
  return linalg::complete_to_unitary(pairs, dim * dim, eps);
}

TidyProcedure construct_tidier(const ComputationSpec& spec, double eps) {
  TidyDecision decision = check_tidy_condition(spec, eps);
  if (!decision.possible) throw NoTidierExists(*decision.certificate);

  const qsim::RegisterLayout& layout = spec.layout();
  std::size_t out_dim = layout.out_dim;
  std::size_t aux_dim = layout.aux_dim;

  TidyProcedure proc;
  proc.kind = *decision.procedure;
  proc.layout = layout;

  switch (proc.kind) {
    case ProcedureKind::BennettCopyReverse: {
      proc.copy_dim = out_dim;
      proc.copy_content = CopyContent::Output;
      if (proc.total_dim() > qsim::kMaxTotalDim) {
        throw CapacityExceeded("tidy procedure dimension exceeds the cap");
      }
      std::vector<StateVector> outputs;
      outputs.reserve(spec.size());
      for (const auto& b : spec.branches()) outputs.push_back(b.output);

      UnitaryMatrix copier = basis_controlled_copy(outputs, out_dim, eps);
      UnitaryMatrix u_c = qsim::build_computation_unitary(spec, eps);
      std::vector<std::size_t> dims{out_dim, aux_dim, out_dim};
      proc.steps.push_back(
          {qsim::embed_on_factors(copier, dims, {0, 2}),
           "copy the output register in the output basis"});
      proc.steps.push_back(
          {qsim::embed_on_factors(u_c.adjoint(), dims, {0, 1}),
           "inverse computation"});
      break;
    }
    case ProcedureKind::ModifiedCopyResetReverse: {
      std::size_t joint_dim = layout.total();
      proc.copy_dim = joint_dim;
      proc.copy_content = CopyContent::OutputWithAux0;
      if (proc.total_dim() > qsim::kMaxTotalDim) {
        throw CapacityExceeded("tidy procedure dimension exceeds the cap");
      }
      std::vector<StateVector> joints;
      joints.reserve(spec.size());
      for (std::size_t k = 0; k < spec.size(); ++k) {
        joints.push_back(spec.joint_output(k));
      }
      std::vector<StateVector> aux;
      aux.reserve(spec.size());
      for (const auto& b : spec.branches()) aux.push_back(b.aux);
      std::vector<StateVector> aux_basis = dedup_states(aux, eps);

      // The joint outputs are orthonormal whenever the tidy condition and
      // reversibility both hold, so a copier in that basis exists.
      UnitaryMatrix copier = basis_controlled_copy(joints, joint_dim, eps);
      proc.steps.push_back({copier, "copy the joint output in its basis"});

      UnitaryMatrix reset =
          conditional_reset(aux_basis, StateVector::basis(aux_dim, 0), eps);
      std::vector<std::size_t> four{out_dim, aux_dim, out_dim, aux_dim};
      proc.steps.push_back(
          {qsim::embed_on_factors(reset, four, {1, 3}),
           "conditionally reset the copied aux against the original"});

      UnitaryMatrix u_c = qsim::build_computation_unitary(spec, eps);
      std::vector<std::size_t> two{joint_dim, joint_dim};
      proc.steps.push_back({qsim::embed_on_factors(u_c.adjoint(), two, {0}),
                            "inverse computation"});
      break;
    }
    case ProcedureKind::DirectCompletion: {
      proc.copy_dim = out_dim;
      proc.copy_content = CopyContent::Output;
      if (proc.total_dim() > qsim::kMaxTotalDim) {
        throw CapacityExceeded("tidy procedure dimension exceeds the cap");
      }
      StateVector aux_o = proc.aux_o();
      std::vector<std::pair<StateVector, StateVector>> pairs;
      pairs.reserve(spec.size());
      for (std::size_t k = 0; k < spec.size(); ++k) {
        pairs.emplace_back(qsim::tensor(spec.joint_output(k), aux_o),
                           expected_tidy_result(spec, proc, k));
      }
      proc.steps.push_back(
          {linalg::complete_to_unitary(pairs, proc.total_dim(), eps),
           "direct canonical completion"});
      break;
    }
  }

  for (double f : verify_tidier(spec, proc, eps)) {
    if (f < 1.0 - eps) {
      throw Error("constructed procedure verifies at fidelity " +
                  std::to_string(f) + ", below 1 - " + std::to_string(eps));
    }
  }
  return proc;
}

StateVector expected_tidy_result(const ComputationSpec& spec,
                                 const TidyProcedure& proc, std::size_t k) {
  const auto& branch = spec.branches().at(k);
  StateVector front = qsim::tensor(branch.input, spec.aux0());
  switch (proc.copy_content) {
    case CopyContent::Output:
      return qsim::tensor(front, branch.output);
    case CopyContent::OutputWithAux0:
      return qsim::tensor(front, qsim::tensor(branch.output, spec.aux0()));
  }
  throw Error("unreachable copy content");
}

std::vector<double> verify_tidier(const ComputationSpec& spec,
                                  const TidyProcedure& proc, double eps) {
  (void)eps;
  if (proc.layout != spec.layout()) {
    throw DimensionMismatch("procedure layout does not match the spec");
  }
  if (proc.copy_dim == 0) {
    throw DimensionMismatch("procedure has no copy register");
  }
  std::size_t total = proc.total_dim();
  for (const TidyStep& step : proc.steps) {
    if (step.op.dim() != total) {
      throw DimensionMismatch("step '" + step.label + "' has dim " +
                              std::to_string(step.op.dim()) + ", expected " +
                              std::to_string(total));
    }
  }

  StateVector aux_o = proc.aux_o();
  std::vector<double> fidelities;
  fidelities.reserve(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    std::vector<cplx> state =
        vec_tensor(spec.joint_output(k).amplitudes(), aux_o.amplitudes());
    for (const TidyStep& step : proc.steps) {
      state = linalg::matvec(step.op, state);
    }
    StateVector target = expected_tidy_result(spec, proc, k);
    fidelities.push_back(std::norm(vec_inner(target.amplitudes(), state)));
  }
  return fidelities;
}

std::vector<double> clone_attempt(const std::vector<StateVector>& states,
                                  const std::vector<StateVector>& copier_basis,
                                  double eps) {
  if (states.empty()) throw EmptyList("clone_attempt: no states");
  std::size_t dim = states.front().dim();
  for (const StateVector& s : states) {
    if (s.dim() != dim) throw DimensionMismatch("clone_attempt: mixed dims");
  }
  UnitaryMatrix copier = basis_controlled_copy(copier_basis, dim, eps);

  StateVector blank = StateVector::basis(dim, 0);
  std::vector<double> fidelities;
  fidelities.reserve(states.size());
  for (const StateVector& psi : states) {
    std::vector<cplx> got =
        linalg::matvec(copier, vec_tensor(psi.amplitudes(), blank.amplitudes()));
    std::vector<cplx> want = vec_tensor(psi.amplitudes(), psi.amplitudes());
    fidelities.push_back(std::norm(vec_inner(want, got)));
  }
  return fidelities;
}

EnergyAccount erasure_cost(const ComputationSpec& spec, bool tidied) {
  EnergyAccount account;
  account.erased_bits =
      tidied ? 0.0 : std::log2(static_cast<double>(spec.layout().aux_dim));
  account.landauer_cost = account.erased_bits;
  account.branch_entropy_bound.reserve(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    account.branch_entropy_bound.push_back(
        linalg::schmidt_entropy(spec.joint_output(k), spec.layout().out_dim,
                                spec.layout().aux_dim));
  }
  return account;
}

}  // namespace revtidy::tidy
