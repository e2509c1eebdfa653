#include "revtidy/qsim.hpp"

#include <cmath>
#include <utility>

namespace revtidy::qsim {

using linalg::vec_inner;
using linalg::vec_tensor;

void require_valid(const RegisterLayout& layout) {
  if (layout.out_dim == 0 || layout.aux_dim == 0) {
    throw DimensionMismatch("register dimensions must be positive");
  }
  if (layout.total() > kMaxTotalDim) {
    throw CapacityExceeded("total dimension " + std::to_string(layout.total()) +
                           " exceeds the cap of " + std::to_string(kMaxTotalDim));
  }
}

ComputationSpec::ComputationSpec(RegisterLayout layout, StateVector aux0,
                                 std::vector<Branch> branches, double eps)
    : layout_(layout), aux0_(std::move(aux0)), branches_(std::move(branches)) {
  require_valid(layout_);
  if (aux0_.dim() != layout_.aux_dim) {
    throw DimensionMismatch("aux0 has dim " + std::to_string(aux0_.dim()) +
                            ", layout declares aux_dim " +
                            std::to_string(layout_.aux_dim));
  }
  if (branches_.empty()) throw InvalidSpec("branch list must be non-empty");
  for (std::size_t k = 0; k < branches_.size(); ++k) {
    const Branch& b = branches_[k];
    if (b.input.dim() != layout_.out_dim || b.output.dim() != layout_.out_dim) {
      throw DimensionMismatch("branch " + std::to_string(k) +
                              ": input/output dims must equal out_dim " +
                              std::to_string(layout_.out_dim));
    }
    if (b.aux.dim() != layout_.aux_dim) {
      throw DimensionMismatch("branch " + std::to_string(k) +
                              ": aux dim must equal aux_dim " +
                              std::to_string(layout_.aux_dim));
    }
  }
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      if (linalg::fidelity(branches_[i].input, branches_[j].input) >=
          1.0 - eps) {
        throw InvalidSpec("branch inputs " + std::to_string(i) + " and " +
                          std::to_string(j) + " are the same state");
      }
    }
  }
}

StateVector ComputationSpec::joint_input(std::size_t k) const {
  return tensor(branches_.at(k).input, aux0_);
}

StateVector ComputationSpec::joint_output(std::size_t k) const {
  return tensor(branches_.at(k).output, branches_.at(k).aux);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.dim() * b.dim() > kMaxTotalDim) {
    throw CapacityExceeded("tensor product dimension exceeds the cap");
  }
  return StateVector(vec_tensor(a.amplitudes(), b.amplitudes()), 1e-6);
}

StateVector apply(const UnitaryMatrix& u, const StateVector& s) {
  if (u.dim() != s.dim()) {
    throw DimensionMismatch("apply: unitary dim " + std::to_string(u.dim()) +
                            " vs state dim " + std::to_string(s.dim()));
  }
  return StateVector(linalg::matvec(u, s.amplitudes()), 1e-6);
}

UnitaryMatrix build_computation_unitary(const ComputationSpec& spec,
                                        double eps) {
  std::vector<std::pair<StateVector, StateVector>> pairs;
  pairs.reserve(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    pairs.emplace_back(spec.joint_input(k), spec.joint_output(k));
  }
  return linalg::complete_to_unitary(pairs, spec.layout().total(), eps);
}

bool is_separable(const StateVector& s, const RegisterLayout& layout,
                  double eps) {
  require_valid(layout);
  std::vector<double> lambdas =
      linalg::schmidt_spectrum(s, layout.out_dim, layout.aux_dim);
  return std::sqrt(lambdas.front()) >= 1.0 - eps;
}

DensitySpectrum reduced_density_spectrum(const StateVector& s,
                                         const RegisterLayout& layout,
                                         linalg::Keep keep) {
  require_valid(layout);
  std::vector<double> lambdas =
      linalg::schmidt_spectrum(s, layout.out_dim, layout.aux_dim);
  // Both reduced states share the nonzero spectrum; the kept factor only
  // determines how many trailing zeros the spectrum formally carries.
  std::size_t kept = keep == linalg::Keep::A ? layout.out_dim : layout.aux_dim;
  lambdas.resize(kept, 0.0);
  double sum = 0.0;
  for (double l : lambdas) sum += l;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error("reduced density spectrum does not sum to 1");
  }
  return DensitySpectrum{std::move(lambdas)};
}

UnitaryMatrix embed_on_factors(const UnitaryMatrix& u,
                               const std::vector<std::size_t>& dims,
                               const std::vector<std::size_t>& factors) {
  if (factors.empty()) throw EmptyList("embed_on_factors: no target factors");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k] >= dims.size()) {
      throw DimensionMismatch("embed_on_factors: factor index out of range");
    }
    if (k > 0 && factors[k] <= factors[k - 1]) {
      throw DimensionMismatch(
          "embed_on_factors: factors must be strictly ascending");
    }
  }

  std::size_t full = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionMismatch("embed_on_factors: zero factor dim");
    full *= d;
  }
  if (full > kMaxTotalDim) {
    throw CapacityExceeded("embedded dimension exceeds the cap");
  }
  std::size_t target = 1;
  for (std::size_t f : factors) target *= dims[f];
  if (u.dim() != target) {
    throw DimensionMismatch("embed_on_factors: unitary dim " +
                            std::to_string(u.dim()) +
                            " does not match the selected factors (" +
                            std::to_string(target) + ")");
  }

  // Row-major strides of the full space.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    stride[k - 1] = stride[k] * dims[k];
  }
  std::vector<bool> is_target(dims.size(), false);
  for (std::size_t f : factors) is_target[f] = true;

  // Enumerate environment (non-target) digit combinations.
  std::vector<std::size_t> env_factors;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!is_target[k]) env_factors.push_back(k);
  }
  std::size_t env_count = full / target;

  // Offset of a target multi-index within the full index.
  auto target_offset = [&](std::size_t t) {
    std::size_t offset = 0;
    for (std::size_t k = factors.size(); k-- > 0;) {
      std::size_t d = dims[factors[k]];
      offset += (t % d) * stride[factors[k]];
      t /= d;
    }
    return offset;
  };
  std::vector<std::size_t> target_off(target);
  for (std::size_t t = 0; t < target; ++t) target_off[t] = target_offset(t);

  auto env_offset = [&](std::size_t e) {
    std::size_t offset = 0;
    for (std::size_t k = env_factors.size(); k-- > 0;) {
      std::size_t d = dims[env_factors[k]];
      offset += (e % d) * stride[env_factors[k]];
      e /= d;
    }
    return offset;
  };

  std::vector<cplx> entries(full * full, cplx(0.0, 0.0));
  for (std::size_t e = 0; e < env_count; ++e) {
    std::size_t base = env_offset(e);
    for (std::size_t p = 0; p < target; ++p) {
      std::size_t row = base + target_off[p];
      for (std::size_t q = 0; q < target; ++q) {
        cplx v = u(p, q);
        if (v == cplx(0.0, 0.0)) continue;
        entries[row * full + base + target_off[q]] = v;
      }
    }
  }
  return linalg::unchecked_unitary(full, std::move(entries));
}

}  // namespace revtidy::qsim
