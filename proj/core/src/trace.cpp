#include "cfgkat/trace.hpp"

#include <cassert>

namespace cfgkat {

std::string Continuation::str(const Alphabets& alphabets) const {
  switch (kind) {
    case ContKind::Acc: return "acc " + alphabets.indicators[ind].str();
    case ContKind::Brk: return "brk " + alphabets.indicators[ind].str();
    case ContKind::Ret: return "ret";
    case ContKind::Jmp:
      return "jmp(" + alphabets.labels[label] + "," + alphabets.indicators[ind].str() + ")";
  }
  return "?";
}

Continuation floor_continuation(Continuation c) {
  if (c.kind == ContKind::Brk) return Continuation::acc(c.ind);
  return c;
}

GuardedWord GuardedWord::append(const GuardedWord& other) const {
  assert(!atoms.empty() && !other.atoms.empty());
  assert(last_atom() == other.first_atom());
  GuardedWord out = *this;
  out.atoms.insert(out.atoms.end(), other.atoms.begin() + 1, other.atoms.end());
  out.actions.insert(out.actions.end(), other.actions.begin(), other.actions.end());
  return out;
}

std::string GuardedWord::str(const Alphabets& alphabets) const {
  std::string out;
  for (size_t k = 0; k < atoms.size(); ++k) {
    out += atom_str(atoms[k], alphabets);
    if (k < actions.size()) {
      out += " ";
      out += alphabets.actions[actions[k]];
      out += " ";
    }
  }
  return out;
}

std::string GuardedWordC::str(const Alphabets& alphabets) const {
  return word.str(alphabets) + " . " + cont.str(alphabets);
}

}  // namespace cfgkat
