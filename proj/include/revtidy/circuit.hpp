#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "revtidy/errors.hpp"

namespace revtidy::circ {

/// Classical register contents; index k is bit line k.
using Bits = std::vector<bool>;

Bits bits_from_string(const std::string& s);
std::string bits_to_string(const Bits& bits);

enum class GateKind { Not, Cnot, Toffoli, Fredkin };

/// A reversible gate over indexed bit lines. All four kinds are
/// self-inverse. Line indices within a gate must be pairwise distinct.
class Gate {
 public:
  static Gate make_not(std::size_t target);
  static Gate cnot(std::size_t control, std::size_t target);
  static Gate toffoli(std::size_t control1, std::size_t control2,
                      std::size_t target);
  static Gate fredkin(std::size_t control, std::size_t swap_a,
                      std::size_t swap_b);

  GateKind kind() const { return kind_; }
  std::size_t arity() const;
  std::size_t line(std::size_t k) const;
  std::size_t max_line() const;

  bool operator==(const Gate&) const = default;

 private:
  Gate(GateKind kind, std::array<std::size_t, 3> lines);

  GateKind kind_;
  std::array<std::size_t, 3> lines_;
};

enum class LineRole { Unspecified, Input, History, Output, Copy, Zero };

const char* role_name(LineRole role);

/// Ordered reversible-gate list over `width` bit lines, each line carrying
/// an optional register role.
class ReversibleCircuit {
 public:
  explicit ReversibleCircuit(std::size_t width);

  std::size_t width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  void add_gate(const Gate& g);

  LineRole role(std::size_t line) const;
  void set_role(std::size_t line, LineRole role);
  bool roles_assigned() const;
  std::vector<std::size_t> lines_with_role(LineRole r) const;  // ascending

  bool operator==(const ReversibleCircuit&) const = default;

 private:
  std::size_t width_;
  std::vector<Gate> gates_;
  std::vector<LineRole> roles_;
};

/// Applies each gate in order. Requires |bits| == width and zeros on all
/// constant-zero and copy lines.
Bits evaluate(const ReversibleCircuit& circuit, const Bits& bits);

/// Gate list reversed; every gate kind is self-inverse, so gates are kept
/// as they are. Roles are preserved.
ReversibleCircuit reverse(const ReversibleCircuit& circuit);

enum class BoolOp { And, Or, Xor, Not };

struct Instruction {
  BoolOp op;
  std::size_t a;
  std::size_t b;  // unused for Not

  bool operator==(const Instruction&) const = default;
};

/// Straight-line boolean program. Wires 0..n_inputs-1 are the inputs;
/// instruction k writes the fresh wire n_inputs + k (single assignment,
/// operands must reference earlier wires).
class BooleanProgram {
 public:
  explicit BooleanProgram(std::size_t n_inputs);

  std::size_t add(BoolOp op, std::size_t a);                 // Not
  std::size_t add(BoolOp op, std::size_t a, std::size_t b);  // And/Or/Xor
  void designate_output(std::size_t wire);

  std::size_t n_inputs() const { return n_inputs_; }
  std::size_t wire_count() const { return n_inputs_ + instructions_.size(); }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  const std::vector<std::size_t>& outputs() const { return outputs_; }

  /// Direct evaluation of the program semantics (the embedding oracle).
  std::vector<bool> eval(const std::vector<bool>& inputs) const;

 private:
  std::size_t n_inputs_;
  std::vector<Instruction> instructions_;
  std::vector<std::size_t> outputs_;
};

/// All 2^n_in output rows of a boolean function. Row r is the output for
/// the input whose bits read r in binary with wire 0 as the most
/// significant digit.
class TruthTable {
 public:
  TruthTable(std::size_t n_in, std::size_t n_out,
             std::vector<std::vector<bool>> rows);

  static TruthTable of(const BooleanProgram& prog);

  std::size_t n_in() const { return n_in_; }
  std::size_t n_out() const { return n_out_; }
  const std::vector<bool>& row(std::size_t r) const { return rows_[r]; }

  bool operator==(const TruthTable&) const = default;

 private:
  std::size_t n_in_;
  std::size_t n_out_;
  std::vector<std::vector<bool>> rows_;
};

/// Compiles a boolean program into a reversible circuit that computes all
/// designated outputs on fresh lines while never writing an input line.
/// Per instruction: And -> Toffoli onto a fresh zero line; Xor -> two
/// CNOTs onto a fresh line; Not -> CNOT then NOT of the fresh line;
/// Or -> De Morgan over fresh CNOT-copies of the operands. Designated
/// outputs get role `output` (via a fresh CNOT copy when the wire is an
/// input or already claimed); every other ancilla is `history`.
ReversibleCircuit bennett_embed(const BooleanProgram& prog);

/// Appends one fresh copy line per output line (ascending line order),
/// CNOTs each output onto its copy, then appends the reversed circuit.
/// On (i, 0...0) the result computes (i, 0...0, O(i)): history and the
/// original output lines return to zero and the copies hold the outputs.
/// Requires every line to carry a role and at least one output line.
ReversibleCircuit tidy_transform(const ReversibleCircuit& f);

}  // namespace revtidy::circ
