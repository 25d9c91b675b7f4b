// GKAT automaton semantics: dead-state normalization, union-find
// bisimulation equivalence with counterexample extraction, and bounded
// language enumeration.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfgkat/automata.hpp"

namespace cfgkat {

// States from which no accepting entry is reachable. A dead state is
// language-equivalent to explicit rejection.
std::vector<bool> dead_states(const GkatAutomaton& a);

// Rewrites every step into a dead state to reject; the language is
// unchanged and bisimilarity afterwards coincides with language equality.
GkatAutomaton normalize(const GkatAutomaton& a);

struct EquivVerdict {
  bool equivalent = true;
  // Prefix w.b such that the automata accept/step differently at (w, b);
  // present iff inequivalent. The final atom is the diverging one.
  std::optional<GuardedWord> counterexample;
  std::string divergence;
  size_t union_ops = 0;
};

// Decides language equality of two *normalized* automata over the same
// alphabets by Hopcroft-Karp style union-find with a FIFO worklist (so
// counterexamples are shortest-first). Throws AlphabetMismatchError when
// the atom or action spaces differ.
EquivVerdict bisim_equiv(const GkatAutomaton& a0, const GkatAutomaton& a1,
                         const Alphabets* alphabets = nullptr);

// All guarded words of at most `bound` actions accepted from `from`
// (default: the start state).
Lang enumerate_language(const GkatAutomaton& a, size_t bound,
                        std::optional<StateId> from = std::nullopt);

}  // namespace cfgkat
