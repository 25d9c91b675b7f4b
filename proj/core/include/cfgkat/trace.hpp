// Guarded words and trace continuations, the shared vocabulary of the
// denotational oracle and the automaton pipeline.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cfgkat/boolean.hpp"
#include "cfgkat/syntax.hpp"

namespace cfgkat {

enum class ContKind : uint8_t { Acc, Brk, Ret, Jmp };

// acc i | brk i | ret | jmp(l, i), with i and l as alphabet indices.
struct Continuation {
  ContKind kind = ContKind::Acc;
  uint32_t ind = 0;    // meaningful for Acc, Brk, Jmp
  uint32_t label = 0;  // meaningful for Jmp

  static Continuation acc(uint32_t i) { return {ContKind::Acc, i, 0}; }
  static Continuation brk(uint32_t i) { return {ContKind::Brk, i, 0}; }
  static Continuation ret() { return {ContKind::Ret, 0, 0}; }
  static Continuation jmp(uint32_t label, uint32_t i) { return {ContKind::Jmp, i, label}; }

  auto operator<=>(const Continuation&) const = default;

  std::string str(const Alphabets& alphabets) const;
};

// brk i becomes acc i at loop exits; everything else is unchanged.
Continuation floor_continuation(Continuation c);

// Alternating sequence a1 p1 a2 ... pn a(n+1); always one more atom than
// actions. Ordering is lexicographic, giving canonical sorted sets.
struct GuardedWord {
  std::vector<AtomIdx> atoms;
  std::vector<uint32_t> actions;

  static GuardedWord single(AtomIdx atom) { return {{atom}, {}}; }

  size_t num_actions() const { return actions.size(); }
  AtomIdx first_atom() const { return atoms.front(); }
  AtomIdx last_atom() const { return atoms.back(); }

  // Coalesced concatenation: requires last_atom() == other.first_atom().
  GuardedWord append(const GuardedWord& other) const;

  auto operator<=>(const GuardedWord&) const = default;

  std::string str(const Alphabets& alphabets) const;
};

struct GuardedWordC {
  GuardedWord word;
  Continuation cont;

  auto operator<=>(const GuardedWordC&) const = default;

  std::string str(const Alphabets& alphabets) const;
};

}  // namespace cfgkat
