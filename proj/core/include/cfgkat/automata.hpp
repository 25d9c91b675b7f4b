// CF-GKAT dynamics and automata, iteration lifting, jump resolution,
// uniform continuation, break lifting, iterated start dynamics, and the
// lowering onto plain GKAT automata.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "cfgkat/boolean.hpp"
#include "cfgkat/oracle.hpp"
#include "cfgkat/trace.hpp"

namespace cfgkat {

using StateId = uint32_t;

// One cell of a dynamics table: reject, offer a continuation, or execute an
// action and move to a state with a new indicator value.
struct DynamicsEntry {
  enum class Tag : uint8_t { Reject, Cont, Step };

  Tag tag = Tag::Reject;
  Continuation continuation{};  // Tag::Cont
  uint32_t action = 0;          // Tag::Step
  StateId state = 0;            // Tag::Step
  uint32_t ind = 0;             // Tag::Step

  static DynamicsEntry reject() { return {}; }
  static DynamicsEntry cont(Continuation c) {
    DynamicsEntry e;
    e.tag = Tag::Cont;
    e.continuation = c;
    return e;
  }
  static DynamicsEntry step(uint32_t action, StateId state, uint32_t ind) {
    DynamicsEntry e;
    e.tag = Tag::Step;
    e.action = action;
    e.state = state;
    e.ind = ind;
    return e;
  }

  bool is_jump() const { return tag == Tag::Cont && continuation.kind == ContKind::Jmp; }
  bool is_acc() const { return tag == Tag::Cont && continuation.kind == ContKind::Acc; }

  bool operator==(const DynamicsEntry&) const = default;

  std::string str(const Alphabets& alphabets) const;
};

// Dense table (I x At) -> DynamicsEntry.
class Dynamics {
public:
  Dynamics() = default;
  Dynamics(size_t num_indicators, size_t num_atoms,
           DynamicsEntry fill = DynamicsEntry::reject())
      : num_indicators_(num_indicators),
        num_atoms_(num_atoms),
        table_(num_indicators * num_atoms, fill) {}

  size_t num_indicators() const { return num_indicators_; }
  size_t num_atoms() const { return num_atoms_; }

  DynamicsEntry& at(uint32_t indicator, AtomIdx atom) {
    return table_[size_t{indicator} * num_atoms_ + atom];
  }
  const DynamicsEntry& at(uint32_t indicator, AtomIdx atom) const {
    return table_[size_t{indicator} * num_atoms_ + atom];
  }

  // Same table with every Step target shifted; used for disjoint unions.
  Dynamics offset_states(StateId offset) const;

  bool operator==(const Dynamics&) const = default;

private:
  size_t num_indicators_ = 0;
  size_t num_atoms_ = 0;
  std::vector<DynamicsEntry> table_;
};

struct StartDynamics { Dynamics dynamics; };
struct StartState { StateId state; };

struct CfAutomaton {
  size_t num_indicators = 0;
  size_t num_atoms = 0;
  size_t num_actions = 0;

  std::vector<Dynamics> states;    // delta
  std::vector<Dynamics> jump_map;  // lambda, one row per label
  std::variant<StartDynamics, StartState> start;

  const Dynamics& start_dynamics() const { return std::get<StartDynamics>(start).dynamics; }
  StateId start_state() const { return std::get<StartState>(start).state; }
};

struct GkatTransition {
  enum class Tag : uint8_t { Reject, Accept, Step };

  Tag tag = Tag::Reject;
  uint32_t action = 0;
  StateId state = 0;

  static GkatTransition reject() { return {}; }
  static GkatTransition accept() { return {GkatTransition::Tag::Accept, 0, 0}; }
  static GkatTransition step(uint32_t action, StateId state) {
    return {GkatTransition::Tag::Step, action, state};
  }

  bool operator==(const GkatTransition&) const = default;
};

struct GkatAutomaton {
  size_t num_atoms = 0;
  size_t num_actions = 0;
  std::vector<std::vector<GkatTransition>> states;  // [state][atom]
  StateId start = 0;

  size_t num_states() const { return states.size(); }
};

// --- iteration lifting -----------------------------------------------------
//
// Iterates a step function over a finite domain until an exit value is
// produced or an element repeats (an unproductive cycle, which yields
// "bottom", i.e. std::nullopt). Results are memoized with a three-state
// cell per element, so the step function is applied at most once per
// element across all queries.

template <typename Exit>
struct IterStep {
  bool continues = false;
  size_t next = 0;
  std::optional<Exit> exit{};

  static IterStep cont(size_t next) { return {true, next, std::nullopt}; }
  static IterStep stop(Exit e) { return {false, 0, std::move(e)}; }
  static IterStep bottom() { return {false, 0, std::nullopt}; }
};

template <typename Exit>
class Iteration {
public:
  using StepFn = std::function<IterStep<Exit>(size_t)>;

  Iteration(size_t domain_size, StepFn step)
      : step_(std::move(step)), cell_(domain_size, Cell::Unresolved), value_(domain_size) {}

  const std::optional<Exit>& resolve(size_t x) {
    if (cell_[x] == Cell::Resolved) return value_[x];
    path_.clear();
    std::optional<Exit> result;
    size_t cur = x;
    while (true) {
      if (cell_[cur] == Cell::Resolved) {
        result = value_[cur];
        break;
      }
      if (cell_[cur] == Cell::InProgress) break;  // cycle: everything on the path is bottom
      cell_[cur] = Cell::InProgress;
      path_.push_back(cur);
      ++steps_;
      IterStep<Exit> s = step_(cur);
      if (s.continues) {
        cur = s.next;
        continue;
      }
      result = std::move(s.exit);
      break;
    }
    for (size_t y : path_) {
      cell_[y] = Cell::Resolved;
      value_[y] = result;
    }
    return value_[x];
  }

  // Number of step-function applications; bounded by the domain size.
  size_t steps_taken() const { return steps_; }

private:
  enum class Cell : uint8_t { Unresolved, InProgress, Resolved };

  StepFn step_;
  std::vector<Cell> cell_;
  std::vector<std::optional<Exit>> value_;
  std::vector<size_t> path_;
  size_t steps_ = 0;
};

// --- dynamics combinators ----------------------------------------------------

// Chases jmp continuations through the jump map until a non-jump entry is
// found; jmp cycles resolve to reject. The result never contains a jump.
std::vector<Dynamics> resolve_jumps(const std::vector<Dynamics>& jump_map,
                                    size_t num_indicators, size_t num_atoms);

// h1[h2]: accepting entries of h1 are rerouted into h2 at the accepted
// indicator; everything else is h1.
Dynamics uniform_continuation(const Dynamics& h1, const Dynamics& h2);

// h^b: repeats the start of a loop body under guard b until an entry other
// than immediate acceptance shows up; guard failure accepts, revisiting an
// input rejects.
Dynamics iterated_start(const Dynamics& h, const TestDenotation& guard);

// Pointwise floor: brk i entries become acc i.
Dynamics floor_dynamics(const Dynamics& h);

// Converts start dynamics into a fresh appended start state.
CfAutomaton add_start_state(CfAutomaton automaton);

// Lowers a CF-GKAT automaton (with start state) to a GKAT automaton over
// state set S x I: jumps are substituted via the resolved jump map, brk
// rejects, ret and acc accept, and steps land in (state, indicator) pairs.
// Lowered state ids are state * |I| + indicator.
GkatAutomaton lower(const CfAutomaton& automaton, uint32_t start_indicator);

inline StateId lowered_state_id(const CfAutomaton& a, StateId s, uint32_t ind) {
  return static_cast<StateId>(size_t{s} * a.num_indicators + ind);
}

// Bounded walk of the automaton's tables collecting words-with-continuations;
// the automaton-side mirror of the oracle's continuation semantics.
IndexedFamilyC enumerate_continuation_semantics(const CfAutomaton& automaton,
                                                const Dynamics& dynamics, size_t bound);
LabeledFamilyC enumerate_labeled_semantics(const CfAutomaton& automaton, size_t bound);

}  // namespace cfgkat
