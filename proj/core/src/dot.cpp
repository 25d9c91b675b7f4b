#include "cfgkat/dot.hpp"

#include <sstream>

namespace cfgkat {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const CfAutomaton& a, const Alphabets& alphabets, const std::string& title) {
  std::ostringstream os;
  os << "digraph \"" << escape(title) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";

  int sink = 0;
  auto emit_dynamics = [&](const std::string& from, const Dynamics& d) {
    for (uint32_t i = 0; i < a.num_indicators; ++i)
      for (AtomIdx atom = 0; atom < a.num_atoms; ++atom) {
        const DynamicsEntry& e = d.at(i, atom);
        std::string guard = alphabets.indicators[i].str() + "," + atom_str(atom, alphabets);
        if (e.tag == DynamicsEntry::Tag::Step) {
          os << "  \"" << from << "\" -> \"s" << e.state << "\" [label=\"" << escape(guard)
             << " | " << escape(alphabets.actions[e.action]) << ","
             << escape(alphabets.indicators[e.ind].str()) << "\"];\n";
        } else if (e.tag == DynamicsEntry::Tag::Cont) {
          std::string id = "c" + std::to_string(sink++);
          os << "  \"" << id << "\" [shape=plaintext,label=\"" << escape(e.continuation.str(alphabets))
             << "\"];\n";
          os << "  \"" << from << "\" -> \"" << id << "\" [style=bold,arrowhead=onormal,label=\""
             << escape(guard) << "\"];\n";
        }
      }
  };

  for (StateId s = 0; s < a.states.size(); ++s) {
    std::string name = "s" + std::to_string(s);
    os << "  \"" << name << "\";\n";
    emit_dynamics(name, a.states[s]);
  }
  if (std::holds_alternative<StartState>(a.start)) {
    os << "  \"start\" [shape=point];\n  \"start\" -> \"s" << a.start_state() << "\";\n";
  } else {
    os << "  \"start\" [shape=point,label=\"\"];\n";
    emit_dynamics("start", a.start_dynamics());
  }
  for (size_t l = 0; l < a.jump_map.size(); ++l) {
    std::string name = "label " + alphabets.labels[l];
    os << "  \"" << escape(name) << "\" [shape=box];\n";
    emit_dynamics(name, a.jump_map[l]);
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const GkatAutomaton& a, const Alphabets& alphabets, const std::string& title) {
  std::ostringstream os;
  os << "digraph \"" << escape(title) << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  const size_t ni = alphabets.indicators.size();
  auto state_name = [&](StateId s) {
    if (ni > 0 && a.num_states() % ni == 0) {
      // Lowered automata use the (state, indicator) encoding.
      return "(" + std::to_string(s / ni) + "," + alphabets.indicators[s % ni].str() + ")";
    }
    return std::to_string(static_cast<unsigned long>(s));
  };
  int sink = 0;
  for (StateId s = 0; s < a.num_states(); ++s) {
    os << "  \"" << escape(state_name(s)) << "\";\n";
    for (AtomIdx atom = 0; atom < a.num_atoms; ++atom) {
      const GkatTransition& t = a.states[s][atom];
      if (t.tag == GkatTransition::Tag::Step) {
        os << "  \"" << escape(state_name(s)) << "\" -> \"" << escape(state_name(t.state))
           << "\" [label=\"" << escape(atom_str(atom, alphabets)) << " | "
           << escape(alphabets.actions[t.action]) << "\"];\n";
      } else if (t.tag == GkatTransition::Tag::Accept) {
        std::string id = "acc" + std::to_string(sink++);
        os << "  \"" << id << "\" [shape=plaintext,label=\"accept\"];\n";
        os << "  \"" << escape(state_name(s)) << "\" -> \"" << id
           << "\" [style=bold,arrowhead=onormal,label=\"" << escape(atom_str(atom, alphabets))
           << "\"];\n";
      }
    }
  }
  os << "  \"start\" [shape=point];\n  \"start\" -> \"" << escape(state_name(a.start)) << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace cfgkat
