#include "revtidy/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace revtidy {

namespace {

std::string format_cplx(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.6g, %.6g)", z.real(), z.imag());
  return buf;
}

}  // namespace

GramMismatch::GramMismatch(std::size_t i, std::size_t j, cplx delta)
    : Error("gram mismatch at pair (" + std::to_string(i) + ", " +
            std::to_string(j) + "): inner products differ by " +
            format_cplx(delta) + ", |delta| = " +
            std::to_string(std::abs(delta))),
      i_(i),
      j_(j),
      delta_(delta) {}

}  // namespace revtidy

namespace revtidy::linalg {

namespace {

void require_finite(std::span<const cplx> v, const char* what) {
  for (const cplx& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(std::string(what) + ": non-finite entry");
    }
  }
}

using RawVec = std::vector<cplx>;

// One projection pass of v against an orthonormal set.
void project_out(const std::vector<RawVec>& basis, RawVec& v) {
  for (const RawVec& q : basis) {
    cplx coeff = vec_inner(q, v);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= coeff * q[k];
  }
}

void scale(RawVec& v, double s) {
  for (cplx& z : v) z *= s;
}

// Appends v to basis if its residual survives the drop threshold.
// Returns true when a vector was appended.
bool orthonormal_extend(std::vector<RawVec>& basis, RawVec v, double eps) {
  project_out(basis, v);
  double residual = vec_norm(v);
  if (residual < eps) return false;
  project_out(basis, v);  // second pass for numerical cleanliness
  scale(v, 1.0 / vec_norm(v));
  basis.push_back(std::move(v));
  return true;
}

}  // namespace

StateVector::StateVector(std::vector<cplx> amps, double eps)
    : amps_(std::move(amps)) {
  if (amps_.empty()) throw DimensionMismatch("StateVector: dimension must be positive");
  require_finite(amps_, "StateVector");
  double n = vec_norm(amps_);
  if (std::abs(n - 1.0) > eps) {
    throw Error("StateVector: norm " + std::to_string(n) +
                " is not 1 within tolerance " + std::to_string(eps));
  }
}

StateVector StateVector::normalized(std::vector<cplx> amps) {
  if (amps.empty()) throw DimensionMismatch("StateVector: dimension must be positive");
  require_finite(amps, "StateVector");
  double n = vec_norm(amps);
  if (n < 1e-12) throw Error("StateVector: cannot normalize a zero vector");
  for (cplx& z : amps) z /= n;
  return StateVector(std::move(amps));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (dim == 0) throw DimensionMismatch("StateVector: dimension must be positive");
  if (index >= dim) {
    throw DimensionMismatch("StateVector: basis index " + std::to_string(index) +
                            " out of range for dimension " + std::to_string(dim));
  }
  std::vector<cplx> amps(dim, cplx(0.0, 0.0));
  amps[index] = cplx(1.0, 0.0);
  return StateVector(std::move(amps));
}

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<cplx> entries,
                             double eps)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw DimensionMismatch("UnitaryMatrix: dimension must be positive");
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("UnitaryMatrix: expected " +
                            std::to_string(dim_ * dim_) + " entries, got " +
                            std::to_string(entries_.size()));
  }
  require_finite(entries_, "UnitaryMatrix");
  double defect = unitarity_defect();
  if (defect > eps) {
    throw Error("UnitaryMatrix: U'U deviates from identity by " +
                std::to_string(defect) + " (tolerance " + std::to_string(eps) +
                ")");
  }
}

UnitaryMatrix::UnitaryMatrix(Unchecked, std::size_t dim,
                             std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {}

UnitaryMatrix unchecked_unitary(std::size_t dim, std::vector<cplx> entries) {
  return UnitaryMatrix(UnitaryMatrix::Unchecked{}, dim, std::move(entries));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  if (dim == 0) throw DimensionMismatch("UnitaryMatrix: dimension must be positive");
  std::vector<cplx> e(dim * dim, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < dim; ++k) e[k * dim + k] = cplx(1.0, 0.0);
  return unchecked_unitary(dim, std::move(e));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  std::vector<cplx> e(dim_ * dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      e[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
    }
  }
  return unchecked_unitary(dim_, std::move(e));
}

double UnitaryMatrix::unitarity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < dim_; ++k) {
        acc += std::conj(entries_[k * dim_ + r]) * entries_[k * dim_ + c];
      }
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("UnitaryMatrix product: " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
  std::size_t d = a.dim();
  std::vector<cplx> e(d * d, cplx(0.0, 0.0));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      cplx arc = a(r, k);
      if (arc == cplx(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < d; ++c) e[r * d + c] += arc * b(k, c);
    }
  }
  return unchecked_unitary(d, std::move(e));
}

GramMatrix::GramMatrix(std::size_t n, std::vector<cplx> entries, double eps)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0) throw EmptyList("GramMatrix: empty");
  if (entries_.size() != n_ * n_) {
    throw DimensionMismatch("GramMatrix: expected " + std::to_string(n_ * n_) +
                            " entries, got " + std::to_string(entries_.size()));
  }
  require_finite(entries_, "GramMatrix");
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = r; c < n_; ++c) {
      cplx dev = entries_[r * n_ + c] - std::conj(entries_[c * n_ + r]);
      if (std::abs(dev) > eps) {
        throw Error("GramMatrix: not Hermitian at (" + std::to_string(r) +
                    ", " + std::to_string(c) + ")");
      }
    }
  }
}

double GramMatrix::max_deviation(const GramMatrix& other) const {
  if (n_ != other.n_) {
    throw DimensionMismatch("GramMatrix: size " + std::to_string(n_) + " vs " +
                            std::to_string(other.n_));
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
  }
  return worst;
}

cplx vec_inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("inner product: dimension " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  cplx acc(0.0, 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

double vec_norm(std::span<const cplx> a) {
  double acc = 0.0;
  for (const cplx& z : a) acc += std::norm(z);
  return std::sqrt(acc);
}

std::vector<cplx> vec_tensor(std::span<const cplx> a,
                             std::span<const cplx> b) {
  std::vector<cplx> r(a.size() * b.size());
  std::size_t idx = 0;
  for (const cplx& za : a) {
    for (const cplx& zb : b) r[idx++] = za * zb;
  }
  return r;
}

std::vector<cplx> matvec(const UnitaryMatrix& u, std::span<const cplx> v) {
  if (u.dim() != v.size()) {
    throw DimensionMismatch("matvec: matrix dim " + std::to_string(u.dim()) +
                            " vs vector dim " + std::to_string(v.size()));
  }
  std::vector<cplx> r(u.dim(), cplx(0.0, 0.0));
  for (std::size_t row = 0; row < u.dim(); ++row) {
    cplx acc(0.0, 0.0);
    for (std::size_t col = 0; col < u.dim(); ++col) acc += u(row, col) * v[col];
    r[row] = acc;
  }
  return r;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  return vec_inner(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

GramMatrix gram(const std::vector<StateVector>& states) {
  if (states.empty()) throw EmptyList("gram: empty state list");
  std::size_t dim = states.front().dim();
  for (const StateVector& s : states) {
    if (s.dim() != dim) {
      throw DimensionMismatch("gram: mixed dimensions " + std::to_string(dim) +
                              " vs " + std::to_string(s.dim()));
    }
  }
  std::size_t n = states.size();
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e[i * n + j] = inner_product(states[i], states[j]);
    }
  }
  return GramMatrix(n, std::move(e));
}

GramSchmidtResult gram_schmidt(const std::vector<StateVector>& states,
                               double eps) {
  std::size_t dim = 0;
  for (const StateVector& s : states) {
    if (dim == 0) dim = s.dim();
    if (s.dim() != dim) {
      throw DimensionMismatch("gram_schmidt: mixed dimensions");
    }
  }
  std::vector<RawVec> basis;
  for (const StateVector& s : states) {
    RawVec v(s.amplitudes().begin(), s.amplitudes().end());
    orthonormal_extend(basis, std::move(v), eps);
  }
  GramSchmidtResult result;
  result.rank = basis.size();
  result.basis.reserve(basis.size());
  for (RawVec& v : basis) result.basis.emplace_back(std::move(v));
  return result;
}

UnitaryMatrix complete_to_unitary(
    const std::vector<std::pair<StateVector, StateVector>>& pairs,
    std::size_t dim, double eps) {
  if (dim == 0) throw DimensionMismatch("complete_to_unitary: dimension must be positive");
  for (const auto& [in, out] : pairs) {
    if (in.dim() != dim || out.dim() != dim) {
      throw DimensionMismatch("complete_to_unitary: pair dimension " +
                              std::to_string(in.dim()) + "/" +
                              std::to_string(out.dim()) + " vs " +
                              std::to_string(dim));
    }
  }

  // A unitary extension exists iff the two Gram matrices agree.
  std::size_t m = pairs.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      cplx gin = inner_product(pairs[i].first, pairs[j].first);
      cplx gout = inner_product(pairs[i].second, pairs[j].second);
      cplx delta = gin - gout;
      if (std::abs(delta) > eps) throw GramMismatch(i, j, delta);
    }
  }

  // Synchronized orthonormalization of the paired families. The drop
  // decision is taken on the input side and forced on both, keeping the
  // k-th basis vectors in correspondence.
  std::vector<RawVec> in_basis;
  std::vector<RawVec> out_basis;
  for (const auto& [in, out] : pairs) {
    RawVec a(in.amplitudes().begin(), in.amplitudes().end());
    project_out(in_basis, a);
    double residual = vec_norm(a);
    if (residual < eps) continue;
    project_out(in_basis, a);
    scale(a, 1.0 / vec_norm(a));
    in_basis.push_back(std::move(a));

    RawVec b(out.amplitudes().begin(), out.amplitudes().end());
    project_out(out_basis, b);
    project_out(out_basis, b);
    scale(b, 1.0 / vec_norm(b));
    out_basis.push_back(std::move(b));
  }

  // Canonical completion: computational basis vectors in index order.
  for (std::size_t k = 0; k < dim && in_basis.size() < dim; ++k) {
    RawVec e(dim, cplx(0.0, 0.0));
    e[k] = cplx(1.0, 0.0);
    orthonormal_extend(in_basis, std::move(e), eps);
  }
  for (std::size_t k = 0; k < dim && out_basis.size() < dim; ++k) {
    RawVec e(dim, cplx(0.0, 0.0));
    e[k] = cplx(1.0, 0.0);
    orthonormal_extend(out_basis, std::move(e), eps);
  }
  if (in_basis.size() != dim || out_basis.size() != dim) {
    throw Error("complete_to_unitary: degenerate completion (rank " +
                std::to_string(in_basis.size()) + "/" +
                std::to_string(out_basis.size()) + " of " +
                std::to_string(dim) + ")");
  }

  // U = sum_k |b_k><a_k|
  std::vector<cplx> entries(dim * dim, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < dim; ++k) {
    const RawVec& a = in_basis[k];
    const RawVec& b = out_basis[k];
    for (std::size_t r = 0; r < dim; ++r) {
      if (b[r] == cplx(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        entries[r * dim + c] += b[r] * std::conj(a[c]);
      }
    }
  }
  UnitaryMatrix u(dim, std::move(entries), eps);

  for (std::size_t k = 0; k < m; ++k) {
    RawVec image = matvec(u, pairs[k].first.amplitudes());
    double f = std::norm(vec_inner(pairs[k].second.amplitudes(), image));
    if (f < 1.0 - eps) {
      throw Error("complete_to_unitary: pair " + std::to_string(k) +
                  " reproduced with fidelity " + std::to_string(f));
    }
  }
  return u;
}

std::vector<double> schmidt_spectrum(const StateVector& state,
                                     std::size_t dim_a, std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0 || state.dim() != dim_a * dim_b) {
    throw DimensionMismatch("schmidt_spectrum: state dim " +
                            std::to_string(state.dim()) + " vs layout " +
                            std::to_string(dim_a) + " x " +
                            std::to_string(dim_b));
  }
  using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const Mat> m(state.amplitudes().data(),
                          static_cast<Eigen::Index>(dim_a),
                          static_cast<Eigen::Index>(dim_b));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sigma = svd.singularValues();
  std::vector<double> lambdas(static_cast<std::size_t>(sigma.size()));
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    lambdas[static_cast<std::size_t>(k)] = sigma[k] * sigma[k];
  }
  return lambdas;  // Eigen returns singular values in descending order
}

double schmidt_entropy(const StateVector& state, std::size_t dim_a,
                       std::size_t dim_b, Keep keep) {
  (void)keep;  // both reduced states share the nonzero spectrum
  std::vector<double> lambdas = schmidt_spectrum(state, dim_a, dim_b);
  double h = 0.0;
  for (double l : lambdas) {
    if (l > 1e-18) h -= l * std::log2(l);
  }
  return std::max(h, 0.0);
}

}  // namespace revtidy::linalg
