#include "revtidy/circuit.hpp"

#include <algorithm>

namespace revtidy::circ {

namespace {

constexpr std::size_t kMaxTableInputs = 20;

void require_distinct(std::array<std::size_t, 3> lines, std::size_t arity) {
  for (std::size_t i = 0; i < arity; ++i) {
    for (std::size_t j = i + 1; j < arity; ++j) {
      if (lines[i] == lines[j]) {
        throw InvalidGate("gate lines must be pairwise distinct (line " +
                          std::to_string(lines[i]) + " repeated)");
      }
    }
  }
}

void apply_gate(const Gate& g, Bits& bits) {
  switch (g.kind()) {
    case GateKind::Not:
      bits[g.line(0)] = !bits[g.line(0)];
      break;
    case GateKind::Cnot:
      if (bits[g.line(0)]) bits[g.line(1)] = !bits[g.line(1)];
      break;
    case GateKind::Toffoli:
      if (bits[g.line(0)] && bits[g.line(1)]) bits[g.line(2)] = !bits[g.line(2)];
      break;
    case GateKind::Fredkin:
      if (bits[g.line(0)]) {
        bool tmp = bits[g.line(1)];
        bits[g.line(1)] = bits[g.line(2)];
        bits[g.line(2)] = tmp;
      }
      break;
  }
}

}  // namespace

Bits bits_from_string(const std::string& s) {
  Bits bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c == '0') {
      bits.push_back(false);
    } else if (c == '1') {
      bits.push_back(true);
    } else {
      throw ParseError(std::string("bitstring: unexpected character '") + c +
                       "'");
    }
  }
  return bits;
}

std::string bits_to_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Gate::Gate(GateKind kind, std::array<std::size_t, 3> lines)
    : kind_(kind), lines_(lines) {}

Gate Gate::make_not(std::size_t target) {
  return Gate(GateKind::Not, {target, 0, 0});
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
  std::array<std::size_t, 3> lines{control, target, 0};
  require_distinct(lines, 2);
  return Gate(GateKind::Cnot, lines);
}

Gate Gate::toffoli(std::size_t control1, std::size_t control2,
                   std::size_t target) {
  std::array<std::size_t, 3> lines{control1, control2, target};
  require_distinct(lines, 3);
  return Gate(GateKind::Toffoli, lines);
}

Gate Gate::fredkin(std::size_t control, std::size_t swap_a,
                   std::size_t swap_b) {
  std::array<std::size_t, 3> lines{control, swap_a, swap_b};
  require_distinct(lines, 3);
  return Gate(GateKind::Fredkin, lines);
}

std::size_t Gate::arity() const {
  switch (kind_) {
    case GateKind::Not:
      return 1;
    case GateKind::Cnot:
      return 2;
    case GateKind::Toffoli:
    case GateKind::Fredkin:
      return 3;
  }
  return 0;
}

std::size_t Gate::line(std::size_t k) const { return lines_[k]; }

std::size_t Gate::max_line() const {
  std::size_t m = 0;
  for (std::size_t k = 0; k < arity(); ++k) m = std::max(m, lines_[k]);
  return m;
}

const char* role_name(LineRole role) {
  switch (role) {
    case LineRole::Unspecified:
      return "unspecified";
    case LineRole::Input:
      return "input";
    case LineRole::History:
      return "history";
    case LineRole::Output:
      return "output";
    case LineRole::Copy:
      return "copy";
    case LineRole::Zero:
      return "zero";
  }
  return "unspecified";
}

ReversibleCircuit::ReversibleCircuit(std::size_t width)
    : width_(width), roles_(width, LineRole::Unspecified) {
  if (width_ == 0) throw WidthMismatch("circuit width must be positive");
}

void ReversibleCircuit::add_gate(const Gate& g) {
  if (g.max_line() >= width_) {
    throw WidthMismatch("gate line " + std::to_string(g.max_line()) +
                        " out of range for width " + std::to_string(width_));
  }
  gates_.push_back(g);
}

LineRole ReversibleCircuit::role(std::size_t line) const {
  if (line >= width_) {
    throw WidthMismatch("line " + std::to_string(line) +
                        " out of range for width " + std::to_string(width_));
  }
  return roles_[line];
}

void ReversibleCircuit::set_role(std::size_t line, LineRole role) {
  if (line >= width_) {
    throw WidthMismatch("line " + std::to_string(line) +
                        " out of range for width " + std::to_string(width_));
  }
  roles_[line] = role;
}

bool ReversibleCircuit::roles_assigned() const {
  return std::none_of(roles_.begin(), roles_.end(), [](LineRole r) {
    return r == LineRole::Unspecified;
  });
}

std::vector<std::size_t> ReversibleCircuit::lines_with_role(LineRole r) const {
  std::vector<std::size_t> lines;
  for (std::size_t k = 0; k < width_; ++k) {
    if (roles_[k] == r) lines.push_back(k);
  }
  return lines;
}

Bits evaluate(const ReversibleCircuit& circuit, const Bits& bits) {
  if (bits.size() != circuit.width()) {
    throw WidthMismatch("input has " + std::to_string(bits.size()) +
                        " bits, circuit width is " +
                        std::to_string(circuit.width()));
  }
  for (std::size_t k = 0; k < circuit.width(); ++k) {
    LineRole r = circuit.role(k);
    if ((r == LineRole::Zero || r == LineRole::Copy) && bits[k]) {
      throw NonZeroAncilla("line " + std::to_string(k) + " has role '" +
                           role_name(r) + "' and must start at 0");
    }
  }
  Bits state = bits;
  for (const Gate& g : circuit.gates()) apply_gate(g, state);
  return state;
}

ReversibleCircuit reverse(const ReversibleCircuit& circuit) {
  ReversibleCircuit rev(circuit.width());
  const auto& gates = circuit.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) rev.add_gate(*it);
  for (std::size_t k = 0; k < circuit.width(); ++k) {
    rev.set_role(k, circuit.role(k));
  }
  return rev;
}

BooleanProgram::BooleanProgram(std::size_t n_inputs) : n_inputs_(n_inputs) {
  if (n_inputs_ == 0) {
    throw MalformedProgram("program must have at least one input");
  }
}

std::size_t BooleanProgram::add(BoolOp op, std::size_t a) {
  if (op != BoolOp::Not) {
    throw MalformedProgram("binary operation needs two operands");
  }
  return add(op, a, a);
}

std::size_t BooleanProgram::add(BoolOp op, std::size_t a, std::size_t b) {
  std::size_t fresh = wire_count();
  if (a >= fresh || (op != BoolOp::Not && b >= fresh)) {
    throw MalformedProgram("instruction for wire w" + std::to_string(fresh) +
                           " references a wire that is not yet defined");
  }
  instructions_.push_back(Instruction{op, a, op == BoolOp::Not ? a : b});
  return fresh;
}

void BooleanProgram::designate_output(std::size_t wire) {
  if (wire >= wire_count()) {
    throw MalformedProgram("output wire w" + std::to_string(wire) +
                           " is not defined");
  }
  outputs_.push_back(wire);
}

std::vector<bool> BooleanProgram::eval(const std::vector<bool>& inputs) const {
  if (inputs.size() != n_inputs_) {
    throw WidthMismatch("program expects " + std::to_string(n_inputs_) +
                        " inputs, got " + std::to_string(inputs.size()));
  }
  std::vector<bool> wires = inputs;
  wires.reserve(wire_count());
  for (const Instruction& ins : instructions_) {
    bool a = wires[ins.a];
    bool b = wires[ins.b];
    bool v = false;
    switch (ins.op) {
      case BoolOp::And:
        v = a && b;
        break;
      case BoolOp::Or:
        v = a || b;
        break;
      case BoolOp::Xor:
        v = a != b;
        break;
      case BoolOp::Not:
        v = !a;
        break;
    }
    wires.push_back(v);
  }
  std::vector<bool> out;
  out.reserve(outputs_.size());
  for (std::size_t w : outputs_) out.push_back(wires[w]);
  return out;
}

TruthTable::TruthTable(std::size_t n_in, std::size_t n_out,
                       std::vector<std::vector<bool>> rows)
    : n_in_(n_in), n_out_(n_out), rows_(std::move(rows)) {
  if (n_in_ > kMaxTableInputs) {
    throw CapacityExceeded("truth table over " + std::to_string(n_in_) +
                           " inputs exceeds the cap of " +
                           std::to_string(kMaxTableInputs));
  }
  if (rows_.size() != (std::size_t{1} << n_in_)) {
    throw DimensionMismatch("truth table must have exactly 2^n_in rows");
  }
  for (const auto& r : rows_) {
    if (r.size() != n_out_) {
      throw DimensionMismatch("truth table row width mismatch");
    }
  }
}

TruthTable TruthTable::of(const BooleanProgram& prog) {
  std::size_t n = prog.n_inputs();
  if (n > kMaxTableInputs) {
    throw CapacityExceeded("truth table over " + std::to_string(n) +
                           " inputs exceeds the cap of " +
                           std::to_string(kMaxTableInputs));
  }
  std::vector<std::vector<bool>> rows;
  rows.reserve(std::size_t{1} << n);
  for (std::size_t r = 0; r < (std::size_t{1} << n); ++r) {
    std::vector<bool> in(n);
    for (std::size_t k = 0; k < n; ++k) in[k] = (r >> (n - 1 - k)) & 1;
    rows.push_back(prog.eval(in));
  }
  return TruthTable(n, prog.outputs().size(), std::move(rows));
}

ReversibleCircuit bennett_embed(const BooleanProgram& prog) {
  if (prog.outputs().empty()) throw MalformedProgram("no outputs");

  std::vector<Gate> gates;
  std::vector<LineRole> roles(prog.n_inputs(), LineRole::Input);
  std::vector<std::size_t> wire_line(prog.n_inputs());
  for (std::size_t k = 0; k < prog.n_inputs(); ++k) wire_line[k] = k;

  auto fresh_line = [&roles](LineRole role) {
    roles.push_back(role);
    return roles.size() - 1;
  };

  for (const Instruction& ins : prog.instructions()) {
    std::size_t a = wire_line[ins.a];
    std::size_t b = wire_line[ins.b];
    std::size_t result = 0;
    switch (ins.op) {
      case BoolOp::And: {
        result = fresh_line(LineRole::History);
        if (a == b) {
          gates.push_back(Gate::cnot(a, result));  // x AND x == x
        } else {
          gates.push_back(Gate::toffoli(a, b, result));
        }
        break;
      }
      case BoolOp::Xor: {
        result = fresh_line(LineRole::History);
        gates.push_back(Gate::cnot(a, result));
        gates.push_back(Gate::cnot(b, result));
        break;
      }
      case BoolOp::Not: {
        result = fresh_line(LineRole::History);
        gates.push_back(Gate::cnot(a, result));
        gates.push_back(Gate::make_not(result));
        break;
      }
      case BoolOp::Or: {
        // De Morgan on fresh copies; the operand lines are never written.
        std::size_t copy_a = fresh_line(LineRole::History);
        std::size_t copy_b = fresh_line(LineRole::History);
        result = fresh_line(LineRole::History);
        gates.push_back(Gate::cnot(a, copy_a));
        gates.push_back(Gate::cnot(b, copy_b));
        gates.push_back(Gate::make_not(copy_a));
        gates.push_back(Gate::make_not(copy_b));
        gates.push_back(Gate::toffoli(copy_a, copy_b, result));
        gates.push_back(Gate::make_not(result));
        break;
      }
    }
    wire_line.push_back(result);
  }

  for (std::size_t w : prog.outputs()) {
    std::size_t line = wire_line[w];
    if (roles[line] == LineRole::History) {
      roles[line] = LineRole::Output;
    } else {
      // Input wires (and wires already claimed by an earlier output
      // designation) are exported through a fresh copy line.
      std::size_t copy = fresh_line(LineRole::Output);
      gates.push_back(Gate::cnot(line, copy));
    }
  }

  ReversibleCircuit circuit(roles.size());
  for (const Gate& g : gates) circuit.add_gate(g);
  for (std::size_t k = 0; k < roles.size(); ++k) circuit.set_role(k, roles[k]);
  return circuit;
}

ReversibleCircuit tidy_transform(const ReversibleCircuit& f) {
  if (!f.roles_assigned()) {
    throw MissingRoles("every line needs a role before tidying");
  }
  std::vector<std::size_t> out_lines = f.lines_with_role(LineRole::Output);
  if (out_lines.empty()) {
    throw MissingRoles("circuit has no output lines to copy");
  }

  std::size_t width = f.width() + out_lines.size();
  ReversibleCircuit tidied(width);
  for (const Gate& g : f.gates()) tidied.add_gate(g);
  for (std::size_t k = 0; k < out_lines.size(); ++k) {
    tidied.add_gate(Gate::cnot(out_lines[k], f.width() + k));
  }
  const auto& gates = f.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    tidied.add_gate(*it);
  }

  for (std::size_t k = 0; k < f.width(); ++k) tidied.set_role(k, f.role(k));
  for (std::size_t k = f.width(); k < width; ++k) {
    tidied.set_role(k, LineRole::Copy);
  }
  return tidied;
}

}  // namespace revtidy::circ
