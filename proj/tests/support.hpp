#pragma once

// Shared deterministic generators for the test suites.

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "revtidy/circuit.hpp"
#include "revtidy/linalg.hpp"
#include "revtidy/qsim.hpp"

namespace testsupport {

using revtidy::cplx;
using revtidy::linalg::StateVector;
using revtidy::linalg::UnitaryMatrix;

using Rng = std::mt19937_64;

inline cplx random_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return cplx(n(rng), n(rng));
}

inline StateVector random_state(std::size_t dim, Rng& rng) {
  std::vector<cplx> v(dim);
  for (cplx& z : v) z = random_gaussian(rng);
  return StateVector::normalized(std::move(v));
}

/// Gram-Schmidt of a Gaussian matrix: a random unitary, Haar up to the
/// phase convention, which is all the tests need.
inline UnitaryMatrix random_unitary(std::size_t dim, Rng& rng) {
  std::vector<std::vector<cplx>> cols;
  while (cols.size() < dim) {
    std::vector<cplx> v(dim);
    for (cplx& z : v) z = random_gaussian(rng);
    for (const auto& q : cols) {
      cplx c = revtidy::linalg::vec_inner(q, v);
      for (std::size_t k = 0; k < dim; ++k) v[k] -= c * q[k];
    }
    double n = revtidy::linalg::vec_norm(v);
    if (n < 1e-6) continue;  // resample a degenerate draw
    for (cplx& z : v) z /= n;
    cols.push_back(std::move(v));
  }
  std::vector<cplx> entries(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) entries[r * dim + c] = cols[c][r];
  }
  return UnitaryMatrix(dim, std::move(entries));
}

/// k pairwise-orthonormal random states in the given dimension (k <= dim).
inline std::vector<StateVector> random_orthonormal(std::size_t dim,
                                                   std::size_t k, Rng& rng) {
  UnitaryMatrix u = random_unitary(dim, rng);
  std::vector<StateVector> states;
  states.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<cplx> v(dim);
    for (std::size_t r = 0; r < dim; ++r) v[r] = u(r, c);
    states.emplace_back(std::move(v), 1e-6);
  }
  return states;
}

/// Two normalized states with the prescribed complex overlap (|c| <= 1).
inline std::pair<StateVector, StateVector> states_with_overlap(
    std::size_t dim, cplx overlap, Rng& rng) {
  std::vector<StateVector> basis = random_orthonormal(dim, 2, rng);
  std::vector<cplx> second(dim);
  double rest = std::sqrt(std::max(0.0, 1.0 - std::norm(overlap)));
  for (std::size_t r = 0; r < dim; ++r) {
    second[r] = overlap * basis[0][r] + rest * basis[1][r];
  }
  return {basis[0], StateVector::normalized(std::move(second))};
}

inline revtidy::circ::ReversibleCircuit random_circuit(std::size_t width,
                                                       std::size_t n_gates,
                                                       Rng& rng) {
  using revtidy::circ::Gate;
  revtidy::circ::ReversibleCircuit c(width);
  for (std::size_t k = 0; k < width; ++k) {
    c.set_role(k, revtidy::circ::LineRole::Input);
  }
  std::uniform_int_distribution<std::size_t> pick_line(0, width - 1);
  std::uniform_int_distribution<int> pick_kind(0, width >= 3 ? 3 : (width >= 2 ? 1 : 0));
  auto distinct = [&](std::size_t a) {
    std::size_t b = pick_line(rng);
    while (b == a) b = pick_line(rng);
    return b;
  };
  for (std::size_t g = 0; g < n_gates; ++g) {
    std::size_t a = pick_line(rng);
    switch (pick_kind(rng)) {
      case 0:
        c.add_gate(Gate::make_not(a));
        break;
      case 1:
        c.add_gate(Gate::cnot(a, distinct(a)));
        break;
      case 2: {
        std::size_t b = distinct(a);
        std::size_t t = pick_line(rng);
        while (t == a || t == b) t = pick_line(rng);
        c.add_gate(Gate::toffoli(a, b, t));
        break;
      }
      default: {
        std::size_t b = distinct(a);
        std::size_t t = pick_line(rng);
        while (t == a || t == b) t = pick_line(rng);
        c.add_gate(Gate::fredkin(a, b, t));
        break;
      }
    }
  }
  return c;
}

inline revtidy::circ::BooleanProgram random_program(std::size_t max_inputs,
                                                    std::size_t max_instr,
                                                    Rng& rng) {
  using revtidy::circ::BoolOp;
  std::uniform_int_distribution<std::size_t> n_in(1, max_inputs);
  revtidy::circ::BooleanProgram prog(n_in(rng));
  std::uniform_int_distribution<std::size_t> n_ops(1, max_instr);
  std::size_t ops = n_ops(rng);
  std::uniform_int_distribution<int> op_kind(0, 3);
  for (std::size_t k = 0; k < ops; ++k) {
    std::uniform_int_distribution<std::size_t> wire(0, prog.wire_count() - 1);
    switch (op_kind(rng)) {
      case 0:
        prog.add(BoolOp::And, wire(rng), wire(rng));
        break;
      case 1:
        prog.add(BoolOp::Or, wire(rng), wire(rng));
        break;
      case 2:
        prog.add(BoolOp::Xor, wire(rng), wire(rng));
        break;
      default:
        prog.add(BoolOp::Not, wire(rng));
        break;
    }
  }
  std::uniform_int_distribution<std::size_t> n_out(
      1, std::min<std::size_t>(3, prog.wire_count()));
  std::uniform_int_distribution<std::size_t> wire(0, prog.wire_count() - 1);
  std::size_t outs = n_out(rng);
  for (std::size_t k = 0; k < outs; ++k) prog.designate_output(wire(rng));
  return prog;
}

}  // namespace testsupport
