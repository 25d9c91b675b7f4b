// Structural compilation of valid programs into CF-GKAT automata with
// start dynamics.
#pragma once

#include "cfgkat/automata.hpp"
#include "cfgkat/syntax.hpp"

namespace cfgkat {

// True iff label l occurs as a Label node in e (a goto is not a definition).
bool contains_label(const Exp& e, const LabelId& l);

// Thompson construction: compiles by structural induction, one automaton
// state per primitive action occurrence. Requires a valid program; throws
// InvalidProgramError otherwise.
CfAutomaton thompson(const Exp& e, const Alphabets& alphabets);

}  // namespace cfgkat
