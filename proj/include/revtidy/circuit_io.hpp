#pragma once

#include <iosfwd>
#include <string>

#include "revtidy/circuit.hpp"

namespace revtidy::circ {

// Circuit text format (.rvc), line oriented, '#' starts a comment:
//   lines <n>
//   role <line> <input|history|output|copy|zero>
//   not <t> | cnot <c> <t> | toffoli <c1> <c2> <t> | fredkin <c> <a> <b>
// Parsing is strict: unknown tokens, wrong arity, out-of-range indices and
// duplicate role declarations are rejected.
ReversibleCircuit parse_rvc(std::istream& in);
ReversibleCircuit parse_rvc_file(const std::string& path);
void write_rvc(std::ostream& out, const ReversibleCircuit& circuit);
std::string to_rvc(const ReversibleCircuit& circuit);
void write_rvc_file(const std::string& path, const ReversibleCircuit& circuit);

// Boolean program format (.blp):
//   inputs <n>
//   w<k> = and|or|xor w<i> w<j>
//   w<k> = not w<i>
//   outputs w<i> ...
// Each instruction must define the next fresh wire; exactly one outputs
// line is required and it must come last.
BooleanProgram parse_blp(std::istream& in);
BooleanProgram parse_blp_file(const std::string& path);

}  // namespace revtidy::circ
