#pragma once

#include <iosfwd>
#include <string>

#include "pfsa/automaton.hpp"

namespace pfsa {

// Automaton documents are JSON:
//
//   {
//     "format": "pfsa-sr",
//     "version": 1,
//     "states": 2,
//     "initial_state": 0,
//     "symbols": [
//       {"name": "swap", "transition": [[0.5, 0.5], [0.5, 0.5]], "reveal": [0, 1]},
//       {"name": "rev",  "transition": [[1, 0], [0, 1]],         "reveal": [0]}
//     ]
//   }
//
// `transition` lists the rows of the column-stochastic matrix, so
// transition[i][j] = P(next = i | current = j). `reveal` lists the consistent
// state indices. Numbers are written with round-trip precision, so
// write -> read reproduces the automaton exactly.

// Parses and validates; throws std::invalid_argument on schema or invariant
// violations.
Pfsa read_automaton(std::istream& in);
Pfsa read_automaton_file(const std::string& path);

// Reads the document without validating invariants (schema errors still throw).
AutomatonSpec read_automaton_spec(std::istream& in);

void write_automaton(std::ostream& out, const Pfsa& automaton);
std::string automaton_to_string(const Pfsa& automaton);

}  // namespace pfsa
