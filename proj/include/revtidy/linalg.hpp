#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "revtidy/errors.hpp"

namespace revtidy::linalg {

/// Default tolerance: every "orthogonal" / "equal" predicate in the toolkit
/// is a <= eps comparison against this unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

/// Normalized complex amplitude vector.
class StateVector {
 public:
  /// Validates that all amplitudes are finite and the Euclidean norm is
  /// 1 within eps.
  explicit StateVector(std::vector<cplx> amps, double eps = kDefaultTol);

  /// Scales to unit norm; throws Error on (near-)zero input.
  static StateVector normalized(std::vector<cplx> amps);

  /// Computational basis state |index> in the given dimension.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  bool operator==(const StateVector&) const = default;

 private:
  std::vector<cplx> amps_;
};

/// Square complex matrix with U'U = I within eps (max entry deviation).
/// Row-major storage.
class UnitaryMatrix {
 public:
  UnitaryMatrix(std::size_t dim, std::vector<cplx> entries,
                double eps = kDefaultTol);

  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const cplx& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  UnitaryMatrix adjoint() const;

  /// Max entry deviation of U'U from the identity.
  double unitarity_defect() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a,
                                 const UnitaryMatrix& b);

 private:
  struct Unchecked {};
  UnitaryMatrix(Unchecked, std::size_t dim, std::vector<cplx> entries);

  std::size_t dim_;
  std::vector<cplx> entries_;

  friend UnitaryMatrix unchecked_unitary(std::size_t, std::vector<cplx>);
};

/// Internal constructor for operations that preserve unitarity structurally.
UnitaryMatrix unchecked_unitary(std::size_t dim, std::vector<cplx> entries);

/// Matrix of pairwise inner products; Hermitian within eps.
class GramMatrix {
 public:
  GramMatrix(std::size_t n, std::vector<cplx> entries,
             double eps = kDefaultTol);

  std::size_t n() const { return n_; }
  const cplx& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * n_ + col];
  }

  /// Max entry |this - other|; DimensionMismatch if sizes differ.
  double max_deviation(const GramMatrix& other) const;

 private:
  std::size_t n_;
  std::vector<cplx> entries_;
};

// Raw amplitude-vector helpers shared by the higher modules.
cplx vec_inner(std::span<const cplx> a, std::span<const cplx> b);
double vec_norm(std::span<const cplx> a);
std::vector<cplx> vec_tensor(std::span<const cplx> a, std::span<const cplx> b);
std::vector<cplx> matvec(const UnitaryMatrix& u, std::span<const cplx> v);

/// <a|b> = sum_k conj(a_k) b_k.
cplx inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2; state equality for verification purposes is fidelity-based,
/// so global phase is ignored.
double fidelity(const StateVector& a, const StateVector& b);

GramMatrix gram(const std::vector<StateVector>& states);

struct GramSchmidtResult {
  std::vector<StateVector> basis;
  std::size_t rank;  // == basis.size()
};

/// Orthonormalizes in input order; vectors whose residual norm after
/// projection is < eps are dropped.
GramSchmidtResult gram_schmidt(const std::vector<StateVector>& states,
                               double eps = kDefaultTol);

/// Returns U with U in_k = out_k for every pair, completed canonically:
/// both sides are extended by computational basis vectors in index order
/// and orthonormalized, so the result is deterministic.
/// Throws GramMismatch(i, j, delta) when the pairwise inner products of
/// inputs and outputs disagree beyond eps, i.e. no such unitary exists.
UnitaryMatrix complete_to_unitary(
    const std::vector<std::pair<StateVector, StateVector>>& pairs,
    std::size_t dim, double eps = kDefaultTol);

enum class Keep { A, B };

/// Squared Schmidt coefficients of a pure state across the
/// dim_a x dim_b bipartition (first factor is the slow index), descending.
/// These are the eigenvalues of either reduced density matrix.
std::vector<double> schmidt_spectrum(const StateVector& state,
                                     std::size_t dim_a, std::size_t dim_b);

/// von Neumann entropy, in bits, of the reduced state of the kept factor.
/// Result lies in [0, log2 min(dim_a, dim_b)].
double schmidt_entropy(const StateVector& state, std::size_t dim_a,
                       std::size_t dim_b, Keep keep = Keep::A);

}  // namespace revtidy::linalg
