#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revtidy/qsim.hpp"

namespace revtidy::tidy {

using linalg::StateVector;
using linalg::UnitaryMatrix;
using qsim::ComputationSpec;

/// Pairwise inner products for one branch pair and the two residuals the
/// analyzer decides on. A computation is realizable by a unitary iff every
/// reversible_residual vanishes, and tidyable iff every tidy_residual does.
struct PairResidual {
  std::size_t i = 0;
  std::size_t j = 0;
  cplx in_overlap;   // <i|j>
  cplx out_overlap;  // <O(i)|O(j)>
  cplx aux_overlap;  // <Aux(i)|Aux(j)>

  cplx reversible_residual() const {
    return in_overlap - out_overlap * aux_overlap;
  }
  cplx tidy_residual() const { return in_overlap * (1.0 - out_overlap); }
};

enum class TidyLabel {
  OrthogonalOutputs,
  OrthogonalInputsNonOrthogonalOutputs,
  NonOrthogonalInputs,
};

std::string_view to_string(TidyLabel label);

struct TidyClassification {
  TidyLabel label;
  std::vector<PairResidual> pair_data;
};

enum class ProcedureKind {
  /// Copy the outputs in their orthonormal basis, then run the inverse
  /// computation.
  BennettCopyReverse,
  /// Copy the joint output states, conditionally reset the copied aux
  /// register against the original, then run the inverse computation.
  ModifiedCopyResetReverse,
  /// A single canonically completed unitary over all three registers.
  DirectCompletion,
};

std::string_view to_string(ProcedureKind kind);

struct TidyDecision {
  bool possible = false;
  std::optional<PairResidual> certificate;  // set when impossible
  std::optional<ProcedureKind> procedure;   // set when possible
};

class NotReversible : public Error {
 public:
  explicit NotReversible(PairResidual worst);
  const PairResidual& worst() const { return worst_; }

 private:
  PairResidual worst_;
};

class NoTidierExists : public Error {
 public:
  explicit NoTidierExists(PairResidual certificate);
  const PairResidual& certificate() const { return certificate_; }

 private:
  PairResidual certificate_;
};

/// What the copy register holds after a successful procedure.
enum class CopyContent {
  Output,          // output_k, copy register dim = out_dim
  OutputWithAux0,  // output_k (x) aux0, copy register dim = out_dim*aux_dim
};

struct TidyStep {
  UnitaryMatrix op;  // over the full output (x) aux (x) copy space
  std::string label;
};

/// A concrete tidying procedure: applied in order to
/// output_k (x) aux_k (x) auxO it yields input_k (x) aux0 (x) <copy>,
/// where auxO is basis state 0 of the copy register.
struct TidyProcedure {
  ProcedureKind kind;
  qsim::RegisterLayout layout;
  std::size_t copy_dim = 0;
  CopyContent copy_content = CopyContent::Output;
  std::vector<TidyStep> steps;

  std::size_t total_dim() const { return layout.total() * copy_dim; }
  StateVector aux_o() const { return StateVector::basis(copy_dim, 0); }
};

/// All branch pairs (i < j) with their overlaps. The spec is realizable by
/// a unitary iff max |reversible_residual| <= eps.
std::vector<PairResidual> check_reversibility(const ComputationSpec& spec,
                                              double eps = linalg::kDefaultTol);

/// Decides tidyability: possible iff every pair has orthogonal inputs or
/// identical outputs (within eps, phase included). The condition depends
/// only on the branch inputs and outputs, so an impossibility verdict is
/// returned even for non-reversible specs; NotReversible is thrown only
/// when the condition passes but the spec admits no unitary at all.
TidyDecision check_tidy_condition(const ComputationSpec& spec,
                                  double eps = linalg::kDefaultTol);

/// Three-way split: all output pairs orthogonal; else all input pairs
/// orthogonal; else non-orthogonal inputs.
TidyClassification classify(const ComputationSpec& spec,
                            double eps = linalg::kDefaultTol);

/// Unitary on dim^2 mapping b_k (x) e_0 to b_k (x) b_k for every element
/// of the orthonormal basis, canonically completed. This is the
/// controlled-NOT construction working in the given basis.
UnitaryMatrix basis_controlled_copy(const std::vector<StateVector>& basis,
                                    std::size_t dim,
                                    double eps = linalg::kDefaultTol);

/// Unitary with U_R (b_k (x) b_k) = b_k (x) aux0 for every basis element:
/// conditionally resets the second register against the first.
UnitaryMatrix conditional_reset(const std::vector<StateVector>& basis,
                                const StateVector& aux0,
                                double eps = linalg::kDefaultTol);

/// Builds the tidying procedure appropriate to the spec's class. Throws
/// NoTidierExists (with the maximal-residual certificate) when the tidy
/// condition fails, NotReversible when the spec admits no unitary.
TidyProcedure construct_tidier(const ComputationSpec& spec,
                               double eps = linalg::kDefaultTol);

/// Per-branch fidelity between the procedure applied to
/// output_k (x) aux_k (x) auxO and the expected tidy result.
std::vector<double> verify_tidier(const ComputationSpec& spec,
                                  const TidyProcedure& proc,
                                  double eps = linalg::kDefaultTol);

/// The target state input_k (x) aux0 (x) <copy content> for branch k.
StateVector expected_tidy_result(const ComputationSpec& spec,
                                 const TidyProcedure& proc, std::size_t k);

/// For each state, the fidelity |<psi (x) psi| U (psi (x) e_0)>|^2 where U
/// copies in the given orthonormal basis. Basis states copy perfectly;
/// superpositions of them do not.
std::vector<double> clone_attempt(const std::vector<StateVector>& states,
                                  const std::vector<StateVector>& copier_basis,
                                  double eps = linalg::kDefaultTol);

struct EnergyAccount {
  double erased_bits = 0.0;
  double landauer_cost = 0.0;  // multiples of kT ln 2
  std::vector<double> branch_entropy_bound;  // bits, one per branch
};

/// Cost of recovering the auxiliary register: resetting it by erasure
/// costs log2(aux_dim) bits at kT ln 2 each; a tidied computation erases
/// nothing. Per branch, the entanglement entropy of the joint output
/// across the layout cut is reported as a lower bound.
EnergyAccount erasure_cost(const ComputationSpec& spec, bool tidied);

}  // namespace revtidy::tidy
