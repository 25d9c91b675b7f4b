// Graphviz export for both automaton kinds.
#pragma once

#include <string>

#include "cfgkat/automata.hpp"

namespace cfgkat {

std::string to_dot(const CfAutomaton& a, const Alphabets& alphabets,
                   const std::string& title = "cf_gkat");
std::string to_dot(const GkatAutomaton& a, const Alphabets& alphabets,
                   const std::string& title = "gkat");

}  // namespace cfgkat
