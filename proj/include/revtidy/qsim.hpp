#pragma once

#include <cstddef>
#include <vector>

#include "revtidy/linalg.hpp"

namespace revtidy::qsim {

using linalg::StateVector;
using linalg::UnitaryMatrix;

/// Dense simulation cap on the total Hilbert-space dimension.
inline constexpr std::size_t kMaxTotalDim = std::size_t{1} << 20;

/// Two tensor factors: the output/input register (first, slow index) and
/// the auxiliary register (second, fast index).
struct RegisterLayout {
  std::size_t out_dim = 0;
  std::size_t aux_dim = 0;

  std::size_t total() const { return out_dim * aux_dim; }
  bool operator==(const RegisterLayout&) const = default;
};

void require_valid(const RegisterLayout& layout);

/// One computation branch: input_k |x| aux0 maps to output_k |x| aux_k.
struct Branch {
  StateVector input;   // dim out_dim
  StateVector output;  // dim out_dim
  StateVector aux;     // dim aux_dim
};

/// A computation given as branch mappings over a fixed register layout,
/// with the auxiliary register prepared in the fiducial state aux0.
/// Branch inputs must be pairwise distinct states.
class ComputationSpec {
 public:
  ComputationSpec(RegisterLayout layout, StateVector aux0,
                  std::vector<Branch> branches,
                  double eps = linalg::kDefaultTol);

  const RegisterLayout& layout() const { return layout_; }
  const StateVector& aux0() const { return aux0_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }

  StateVector joint_input(std::size_t k) const;   // input_k (x) aux0
  StateVector joint_output(std::size_t k) const;  // output_k (x) aux_k

 private:
  RegisterLayout layout_;
  StateVector aux0_;
  std::vector<Branch> branches_;
};

/// Eigenvalues of a reduced density matrix, descending; they sum to 1.
struct DensitySpectrum {
  std::vector<double> eigenvalues;
};

/// Kronecker product; the first factor is the slow index.
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector apply(const UnitaryMatrix& u, const StateVector& s);

/// Builds U_C with U_C (input_k (x) aux0) = output_k (x) aux_k for every
/// branch, completed canonically. Throws GramMismatch(i, j, delta) when the
/// branch pair (i, j) violates <i|j> = <O(i)|O(j)><Aux(i)|Aux(j)> by more
/// than eps, i.e. no unitary computation matches the spec.
UnitaryMatrix build_computation_unitary(const ComputationSpec& spec,
                                        double eps = linalg::kDefaultTol);

/// True iff the largest Schmidt coefficient across the layout cut is
/// >= 1 - eps.
bool is_separable(const StateVector& s, const RegisterLayout& layout,
                  double eps = linalg::kDefaultTol);

DensitySpectrum reduced_density_spectrum(const StateVector& s,
                                         const RegisterLayout& layout,
                                         linalg::Keep keep);

/// Lifts u, acting on the listed tensor factors (strictly ascending), to
/// the full space whose factor dimensions are dims.
UnitaryMatrix embed_on_factors(const UnitaryMatrix& u,
                               const std::vector<std::size_t>& dims,
                               const std::vector<std::size_t>& factors);

}  // namespace revtidy::qsim
