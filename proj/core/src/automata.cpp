#include "cfgkat/automata.hpp"

#include <cassert>

namespace cfgkat {

std::string DynamicsEntry::str(const Alphabets& alphabets) const {
  switch (tag) {
    case Tag::Reject: return "reject";
    case Tag::Cont: return continuation.str(alphabets);
    case Tag::Step:
      return alphabets.actions[action] + " -> s" + std::to_string(state) + "," +
             alphabets.indicators[ind].str();
  }
  return "?";
}

Dynamics Dynamics::offset_states(StateId offset) const {
  Dynamics out = *this;
  for (DynamicsEntry& e : out.table_)
    if (e.tag == DynamicsEntry::Tag::Step) e.state += offset;
  return out;
}

std::vector<Dynamics> resolve_jumps(const std::vector<Dynamics>& jump_map, size_t num_indicators,
                                    size_t num_atoms) {
  const size_t nl = jump_map.size();
  std::vector<Dynamics> resolved(nl, Dynamics(num_indicators, num_atoms));
  if (nl == 0) return resolved;

  // The chased atom never changes, so each atom gets its own iteration
  // over the (label, indicator) plane.
  for (AtomIdx atom = 0; atom < num_atoms; ++atom) {
    auto step = [&](size_t x) -> IterStep<DynamicsEntry> {
      size_t label = x / num_indicators;
      uint32_t ind = static_cast<uint32_t>(x % num_indicators);
      const DynamicsEntry& e = jump_map[label].at(ind, atom);
      if (e.is_jump())
        return IterStep<DynamicsEntry>::cont(size_t{e.continuation.label} * num_indicators +
                                             e.continuation.ind);
      return IterStep<DynamicsEntry>::stop(e);
    };
    Iteration<DynamicsEntry> iter(nl * num_indicators, step);
    for (size_t l = 0; l < nl; ++l)
      for (uint32_t i = 0; i < num_indicators; ++i) {
        const std::optional<DynamicsEntry>& r = iter.resolve(l * num_indicators + i);
        resolved[l].at(i, atom) = r ? *r : DynamicsEntry::reject();
      }
  }
  return resolved;
}

Dynamics uniform_continuation(const Dynamics& h1, const Dynamics& h2) {
  assert(h1.num_indicators() == h2.num_indicators() && h1.num_atoms() == h2.num_atoms());
  Dynamics out = h1;
  for (uint32_t i = 0; i < h1.num_indicators(); ++i)
    for (AtomIdx a = 0; a < h1.num_atoms(); ++a) {
      const DynamicsEntry& e = h1.at(i, a);
      if (e.is_acc()) out.at(i, a) = h2.at(e.continuation.ind, a);
    }
  return out;
}

Dynamics iterated_start(const Dynamics& h, const TestDenotation& guard) {
  const size_t ni = h.num_indicators();
  const size_t na = h.num_atoms();
  Dynamics out(ni, na);
  for (AtomIdx atom = 0; atom < na; ++atom) {
    auto step = [&](size_t i) -> IterStep<DynamicsEntry> {
      uint32_t ind = static_cast<uint32_t>(i);
      if (!guard.holds(ind, atom))
        return IterStep<DynamicsEntry>::stop(DynamicsEntry::cont(Continuation::acc(ind)));
      const DynamicsEntry& e = h.at(ind, atom);
      if (e.is_acc()) return IterStep<DynamicsEntry>::cont(e.continuation.ind);
      return IterStep<DynamicsEntry>::stop(e);
    };
    Iteration<DynamicsEntry> iter(ni, step);
    for (uint32_t i = 0; i < ni; ++i) {
      const std::optional<DynamicsEntry>& r = iter.resolve(i);
      out.at(i, atom) = r ? *r : DynamicsEntry::reject();
    }
  }
  return out;
}

Dynamics floor_dynamics(const Dynamics& h) {
  Dynamics out = h;
  for (uint32_t i = 0; i < h.num_indicators(); ++i)
    for (AtomIdx a = 0; a < h.num_atoms(); ++a) {
      DynamicsEntry& e = out.at(i, a);
      if (e.tag == DynamicsEntry::Tag::Cont) e.continuation = floor_continuation(e.continuation);
    }
  return out;
}

CfAutomaton add_start_state(CfAutomaton automaton) {
  StartDynamics start = std::get<StartDynamics>(std::move(automaton.start));
  automaton.states.push_back(std::move(start.dynamics));
  automaton.start = StartState{static_cast<StateId>(automaton.states.size() - 1)};
  return automaton;
}

GkatAutomaton lower(const CfAutomaton& automaton, uint32_t start_indicator) {
  const size_t ni = automaton.num_indicators;
  const size_t na = automaton.num_atoms;
  const size_t ns = automaton.states.size();

  std::vector<Dynamics> resolved = resolve_jumps(automaton.jump_map, ni, na);

  GkatAutomaton out;
  out.num_atoms = na;
  out.num_actions = automaton.num_actions;
  out.states.assign(ns * ni, std::vector<GkatTransition>(na));
  out.start = lowered_state_id(automaton, automaton.start_state(), start_indicator);

  for (StateId s = 0; s < ns; ++s) {
    for (uint32_t i = 0; i < ni; ++i) {
      std::vector<GkatTransition>& row = out.states[size_t{s} * ni + i];
      for (AtomIdx a = 0; a < na; ++a) {
        DynamicsEntry e = automaton.states[s].at(i, a);
        // Substitute the resolved jump map for jump continuations; the
        // target indicator of the jump picks the row of lambda.
        if (e.is_jump()) e = resolved[e.continuation.label].at(e.continuation.ind, a);
        switch (e.tag) {
          case DynamicsEntry::Tag::Reject:
            row[a] = GkatTransition::reject();
            break;
          case DynamicsEntry::Tag::Cont:
            switch (e.continuation.kind) {
              case ContKind::Brk: row[a] = GkatTransition::reject(); break;
              case ContKind::Ret:
              case ContKind::Acc: row[a] = GkatTransition::accept(); break;
              case ContKind::Jmp: row[a] = GkatTransition::reject(); break;  // unreachable
            }
            break;
          case DynamicsEntry::Tag::Step:
            row[a] = GkatTransition::step(e.action, lowered_state_id(automaton, e.state, e.ind));
            break;
        }
      }
    }
  }
  return out;
}

namespace {

void walk_dynamics(const CfAutomaton& automaton, const Dynamics& dynamics, uint32_t ind,
                   size_t bound, const GuardedWord& prefix, LangC& out) {
  for (AtomIdx a = 0; a < automaton.num_atoms; ++a) {
    GuardedWord here = prefix;
    here.atoms.push_back(a);
    const DynamicsEntry& e = dynamics.at(ind, a);
    switch (e.tag) {
      case DynamicsEntry::Tag::Reject:
        break;
      case DynamicsEntry::Tag::Cont:
        out.insert({here, e.continuation});
        break;
      case DynamicsEntry::Tag::Step:
        if (here.num_actions() < bound) {
          here.actions.push_back(e.action);
          walk_dynamics(automaton, automaton.states[e.state], e.ind, bound, here, out);
        }
        break;
    }
  }
}

}  // namespace

IndexedFamilyC enumerate_continuation_semantics(const CfAutomaton& automaton,
                                                const Dynamics& dynamics, size_t bound) {
  IndexedFamilyC fam(automaton.num_indicators);
  for (uint32_t i = 0; i < automaton.num_indicators; ++i)
    walk_dynamics(automaton, dynamics, i, bound, GuardedWord{{}, {}}, fam.by_indicator[i]);
  return fam;
}

LabeledFamilyC enumerate_labeled_semantics(const CfAutomaton& automaton, size_t bound) {
  LabeledFamilyC out;
  const Dynamics& start = std::holds_alternative<StartDynamics>(automaton.start)
                              ? automaton.start_dynamics()
                              : automaton.states[automaton.start_state()];
  out.start = enumerate_continuation_semantics(automaton, start, bound);
  for (const Dynamics& lam : automaton.jump_map)
    out.by_label.push_back(enumerate_continuation_semantics(automaton, lam, bound));
  return out;
}

}  // namespace cfgkat
