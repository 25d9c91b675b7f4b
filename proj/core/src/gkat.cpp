#include "cfgkat/gkat.hpp"

#include <deque>
#include <numeric>

namespace cfgkat {

std::vector<bool> dead_states(const GkatAutomaton& a) {
  const size_t n = a.num_states();
  std::vector<std::vector<StateId>> predecessors(n);
  std::deque<StateId> queue;
  std::vector<bool> live(n, false);

  for (StateId s = 0; s < n; ++s) {
    bool accepts = false;
    for (const GkatTransition& t : a.states[s]) {
      if (t.tag == GkatTransition::Tag::Accept) accepts = true;
      if (t.tag == GkatTransition::Tag::Step) predecessors[t.state].push_back(s);
    }
    if (accepts) {
      live[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId p : predecessors[s]) {
      if (!live[p]) {
        live[p] = true;
        queue.push_back(p);
      }
    }
  }

  std::vector<bool> dead(n);
  for (size_t s = 0; s < n; ++s) dead[s] = !live[s];
  return dead;
}

GkatAutomaton normalize(const GkatAutomaton& a) {
  std::vector<bool> dead = dead_states(a);
  GkatAutomaton out = a;
  for (auto& row : out.states)
    for (GkatTransition& t : row)
      if (t.tag == GkatTransition::Tag::Step && dead[t.state]) t = GkatTransition::reject();
  return out;
}

namespace {

class UnionFind {
public:
  explicit UnionFind(size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when already merged.
  bool unite(size_t x, size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    ++unions_;
    return true;
  }

  size_t unions() const { return unions_; }

private:
  std::vector<size_t> parent_;
  std::vector<size_t> rank_;
  size_t unions_ = 0;
};

struct PendingPair {
  StateId left, right;
  // Back pointer for counterexample reconstruction: the worklist index of
  // the pair this one was reached from, plus the atom/action taken.
  size_t parent;
  AtomIdx atom;
  uint32_t action;
};

std::string transition_str(const GkatTransition& t, const Alphabets* alphabets) {
  switch (t.tag) {
    case GkatTransition::Tag::Reject: return "rejects";
    case GkatTransition::Tag::Accept: return "accepts";
    case GkatTransition::Tag::Step:
      return "steps on " +
             (alphabets ? alphabets->actions[t.action] : "action#" + std::to_string(t.action));
  }
  return "?";
}

}  // namespace

EquivVerdict bisim_equiv(const GkatAutomaton& a0, const GkatAutomaton& a1,
                         const Alphabets* alphabets) {
  if (a0.num_atoms != a1.num_atoms)
    throw AlphabetMismatchError("atom spaces differ: " + std::to_string(a0.num_atoms) + " vs " +
                                std::to_string(a1.num_atoms));
  if (a0.num_actions != a1.num_actions)
    throw AlphabetMismatchError("action alphabets differ: " + std::to_string(a0.num_actions) +
                                " vs " + std::to_string(a1.num_actions));

  const size_t n0 = a0.num_states();
  UnionFind uf(n0 + a1.num_states());

  constexpr size_t kNoParent = static_cast<size_t>(-1);
  std::vector<PendingPair> pairs;
  pairs.push_back({a0.start, a1.start, kNoParent, 0, 0});
  size_t head = 0;  // FIFO over `pairs`, so shortest counterexamples come first

  EquivVerdict verdict;
  while (head < pairs.size()) {
    const size_t at = head++;
    PendingPair p = pairs[at];
    if (!uf.unite(p.left, size_t{p.right} + n0)) continue;

    const auto& row0 = a0.states[p.left];
    const auto& row1 = a1.states[p.right];
    for (AtomIdx atom = 0; atom < a0.num_atoms; ++atom) {
      const GkatTransition& t0 = row0[atom];
      const GkatTransition& t1 = row1[atom];
      bool diverges = t0.tag != t1.tag ||
                      (t0.tag == GkatTransition::Tag::Step && t0.action != t1.action);
      if (diverges) {
        verdict.equivalent = false;
        verdict.union_ops = uf.unions();
        // Rebuild the guarded-word prefix leading here, ending in the
        // diverging atom.
        GuardedWord w;
        w.atoms.push_back(atom);
        for (size_t k = at; pairs[k].parent != kNoParent; k = pairs[k].parent) {
          w.atoms.insert(w.atoms.begin(), pairs[k].atom);
          w.actions.insert(w.actions.begin(), pairs[k].action);
        }
        verdict.counterexample = w;
        std::string atom_text =
            alphabets ? atom_str(atom, *alphabets) : "atom#" + std::to_string(atom);
        verdict.divergence = "at " + atom_text + ": left " + transition_str(t0, alphabets) +
                             ", right " + transition_str(t1, alphabets);
        return verdict;
      }
      if (t0.tag == GkatTransition::Tag::Step)
        pairs.push_back({t0.state, t1.state, at, atom, t0.action});
    }
  }
  verdict.union_ops = uf.unions();
  return verdict;
}

namespace {

void enumerate_from(const GkatAutomaton& a, StateId state, size_t bound, GuardedWord& prefix,
                    Lang& out) {
  for (AtomIdx atom = 0; atom < a.num_atoms; ++atom) {
    const GkatTransition& t = a.states[state][atom];
    switch (t.tag) {
      case GkatTransition::Tag::Reject:
        break;
      case GkatTransition::Tag::Accept: {
        GuardedWord w = prefix;
        w.atoms.push_back(atom);
        out.insert(std::move(w));
        break;
      }
      case GkatTransition::Tag::Step:
        if (prefix.actions.size() < bound) {
          prefix.atoms.push_back(atom);
          prefix.actions.push_back(t.action);
          enumerate_from(a, t.state, bound, prefix, out);
          prefix.atoms.pop_back();
          prefix.actions.pop_back();
        }
        break;
    }
  }
}

}  // namespace

Lang enumerate_language(const GkatAutomaton& a, size_t bound, std::optional<StateId> from) {
  Lang out;
  GuardedWord prefix{{}, {}};
  enumerate_from(a, from.value_or(a.start), bound, prefix, out);
  return out;
}

}  // namespace cfgkat
