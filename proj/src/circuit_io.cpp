#include "revtidy/circuit_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace revtidy::circ {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string content = line;
  if (auto pos = content.find('#'); pos != std::string::npos) {
    content.resize(pos);
  }
  std::istringstream iss(content);
  std::vector<std::string> tokens;
  std::string tok;
  while (iss >> tok) tokens.push_back(tok);
  return tokens;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
  if (tok.empty()) fail(line_no, "empty index");
  for (char c : tok) {
    if (c < '0' || c > '9') {
      fail(line_no, "expected a decimal index, got '" + tok + "'");
    }
  }
  if (tok.size() > 9) fail(line_no, "index '" + tok + "' is too large");
  return static_cast<std::size_t>(std::stoul(tok));
}

std::size_t line_index(const std::string& tok, std::size_t width,
                       std::size_t line_no) {
  std::size_t idx = parse_index(tok, line_no);
  if (idx >= width) {
    fail(line_no, "line index " + tok + " out of range for width " +
                      std::to_string(width));
  }
  return idx;
}

std::optional<LineRole> role_from_token(const std::string& tok) {
  if (tok == "input") return LineRole::Input;
  if (tok == "history") return LineRole::History;
  if (tok == "output") return LineRole::Output;
  if (tok == "copy") return LineRole::Copy;
  if (tok == "zero") return LineRole::Zero;
  return std::nullopt;
}

std::size_t parse_wire(const std::string& tok, std::size_t line_no) {
  if (tok.size() < 2 || tok[0] != 'w') {
    fail(line_no, "expected a wire like w3, got '" + tok + "'");
  }
  return parse_index(tok.substr(1), line_no);
}

}  // namespace

ReversibleCircuit parse_rvc(std::istream& in) {
  std::optional<ReversibleCircuit> circuit;
  std::vector<bool> role_seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;

    if (!circuit) {
      if (tok[0] != "lines") fail(line_no, "expected 'lines <n>' header");
      if (tok.size() != 2) fail(line_no, "'lines' takes exactly one count");
      std::size_t width = parse_index(tok[1], line_no);
      if (width == 0) fail(line_no, "width must be positive");
      circuit.emplace(width);
      role_seen.assign(width, false);
      continue;
    }

    const std::string& kw = tok[0];
    std::size_t width = circuit->width();
    try {
      if (kw == "role") {
        if (tok.size() != 3) fail(line_no, "'role' takes a line and a role name");
        std::size_t line = line_index(tok[1], width, line_no);
        auto role = role_from_token(tok[2]);
        if (!role) fail(line_no, "unknown role '" + tok[2] + "'");
        if (role_seen[line]) {
          fail(line_no, "role for line " + tok[1] + " already declared");
        }
        role_seen[line] = true;
        circuit->set_role(line, *role);
      } else if (kw == "not") {
        if (tok.size() != 2) fail(line_no, "'not' takes one line");
        circuit->add_gate(Gate::make_not(line_index(tok[1], width, line_no)));
      } else if (kw == "cnot") {
        if (tok.size() != 3) fail(line_no, "'cnot' takes two lines");
        circuit->add_gate(Gate::cnot(line_index(tok[1], width, line_no),
                                     line_index(tok[2], width, line_no)));
      } else if (kw == "toffoli") {
        if (tok.size() != 4) fail(line_no, "'toffoli' takes three lines");
        circuit->add_gate(Gate::toffoli(line_index(tok[1], width, line_no),
                                        line_index(tok[2], width, line_no),
                                        line_index(tok[3], width, line_no)));
      } else if (kw == "fredkin") {
        if (tok.size() != 4) fail(line_no, "'fredkin' takes three lines");
        circuit->add_gate(Gate::fredkin(line_index(tok[1], width, line_no),
                                        line_index(tok[2], width, line_no),
                                        line_index(tok[3], width, line_no)));
      } else if (kw == "lines") {
        fail(line_no, "duplicate 'lines' header");
      } else {
        fail(line_no, "unknown token '" + kw + "'");
      }
    } catch (const InvalidGate& e) {
      fail(line_no, e.what());
    }
  }
  if (!circuit) throw ParseError("empty circuit file: missing 'lines' header");
  return *circuit;
}

ReversibleCircuit parse_rvc_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_rvc(in);
}

void write_rvc(std::ostream& out, const ReversibleCircuit& circuit) {
  out << "lines " << circuit.width() << "\n";
  for (std::size_t k = 0; k < circuit.width(); ++k) {
    LineRole r = circuit.role(k);
    if (r == LineRole::Unspecified) continue;
    out << "role " << k << " " << role_name(r) << "\n";
  }
  for (const Gate& g : circuit.gates()) {
    switch (g.kind()) {
      case GateKind::Not:
        out << "not " << g.line(0) << "\n";
        break;
      case GateKind::Cnot:
        out << "cnot " << g.line(0) << " " << g.line(1) << "\n";
        break;
      case GateKind::Toffoli:
        out << "toffoli " << g.line(0) << " " << g.line(1) << " " << g.line(2)
            << "\n";
        break;
      case GateKind::Fredkin:
        out << "fredkin " << g.line(0) << " " << g.line(1) << " " << g.line(2)
            << "\n";
        break;
    }
  }
}

std::string to_rvc(const ReversibleCircuit& circuit) {
  std::ostringstream oss;
  write_rvc(oss, circuit);
  return oss.str();
}

void write_rvc_file(const std::string& path, const ReversibleCircuit& circuit) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_rvc(out, circuit);
}

BooleanProgram parse_blp(std::istream& in) {
  std::optional<BooleanProgram> prog;
  bool outputs_seen = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;

    if (!prog) {
      if (tok[0] != "inputs") fail(line_no, "expected 'inputs <n>' header");
      if (tok.size() != 2) fail(line_no, "'inputs' takes exactly one count");
      std::size_t n = parse_index(tok[1], line_no);
      if (n == 0) fail(line_no, "input count must be positive");
      prog.emplace(n);
      continue;
    }
    if (outputs_seen) fail(line_no, "content after the 'outputs' line");

    if (tok[0] == "outputs") {
      if (tok.size() < 2) fail(line_no, "'outputs' needs at least one wire");
      for (std::size_t k = 1; k < tok.size(); ++k) {
        std::size_t w = parse_wire(tok[k], line_no);
        if (w >= prog->wire_count()) {
          fail(line_no, "output wire " + tok[k] + " is not defined");
        }
        prog->designate_output(w);
      }
      outputs_seen = true;
      continue;
    }

    // w<k> = <op> w<i> [w<j>]
    if (tok.size() < 4 || tok[1] != "=") {
      fail(line_no, "expected 'w<k> = <op> w<i> [w<j>]'");
    }
    std::size_t lhs = parse_wire(tok[0], line_no);
    if (lhs != prog->wire_count()) {
      fail(line_no, "wire w" + std::to_string(lhs) +
                        " must be the next fresh wire w" +
                        std::to_string(prog->wire_count()));
    }
    const std::string& op = tok[2];
    auto operand = [&](std::size_t k) {
      std::size_t w = parse_wire(tok[k], line_no);
      if (w >= prog->wire_count()) {
        fail(line_no, "operand " + tok[k] + " is not defined yet");
      }
      return w;
    };
    if (op == "not") {
      if (tok.size() != 4) fail(line_no, "'not' takes one operand");
      prog->add(BoolOp::Not, operand(3));
    } else if (op == "and" || op == "or" || op == "xor") {
      if (tok.size() != 5) fail(line_no, "'" + op + "' takes two operands");
      BoolOp kind = op == "and" ? BoolOp::And
                                : (op == "or" ? BoolOp::Or : BoolOp::Xor);
      prog->add(kind, operand(3), operand(4));
    } else {
      fail(line_no, "unknown operation '" + op + "'");
    }
  }
  if (!prog) throw ParseError("empty program file: missing 'inputs' header");
  if (!outputs_seen) throw MalformedProgram("no outputs");
  return *prog;
}

BooleanProgram parse_blp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_blp(in);
}

}  // namespace revtidy::circ
