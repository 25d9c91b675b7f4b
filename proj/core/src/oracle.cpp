#include "cfgkat/oracle.hpp"

#include <unordered_map>
#include <variant>

#include "cfgkat/boolean.hpp"

namespace cfgkat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Words of h grouped by starting indicator and first atom, for coalescing.
using FirstAtomIndex = std::vector<std::unordered_map<AtomIdx, std::vector<const GuardedWordC*>>>;

FirstAtomIndex index_by_first_atom(const IndexedFamilyC& h) {
  FirstAtomIndex index(h.num_indicators());
  for (size_t j = 0; j < h.num_indicators(); ++j)
    for (const GuardedWordC& w : h.by_indicator[j])
      index[j][w.word.first_atom()].push_back(&w);
  return index;
}

}  // namespace

IndexedFamilyC seq_families(const IndexedFamilyC& g, const IndexedFamilyC& h, size_t bound) {
  IndexedFamilyC out(g.num_indicators());
  FirstAtomIndex h_index = index_by_first_atom(h);
  for (size_t i = 0; i < g.num_indicators(); ++i) {
    for (const GuardedWordC& gw : g.by_indicator[i]) {
      if (gw.cont.kind != ContKind::Acc) {
        out.by_indicator[i].insert(gw);  // brk/ret/jmp words pass through
        continue;
      }
      uint32_t j = gw.cont.ind;
      auto it = h_index[j].find(gw.word.last_atom());
      if (it == h_index[j].end()) continue;
      for (const GuardedWordC* hw : it->second) {
        if (gw.word.num_actions() + hw->word.num_actions() > bound) continue;
        out.by_indicator[i].insert({gw.word.append(hw->word), hw->cont});
      }
    }
  }
  return out;
}

namespace {

struct SemanticsBuilder {
  const Alphabets& alphabets;
  size_t bound;
  size_t ni, na, nl;

  LabeledFamilyC empty_family() const {
    LabeledFamilyC f;
    f.start = IndexedFamilyC(ni);
    f.by_label.assign(nl, IndexedFamilyC(ni));
    return f;
  }

  // All single-atom words with a continuation derived from (i, atom).
  template <typename MakeCont>
  IndexedFamilyC atoms_with(MakeCont make) const {
    IndexedFamilyC fam(ni);
    for (uint32_t i = 0; i < ni; ++i)
      for (AtomIdx a = 0; a < na; ++a) {
        std::optional<Continuation> c = make(i, a);
        if (c) fam.by_indicator[i].insert({GuardedWord::single(a), *c});
      }
    return fam;
  }

  LabeledFamilyC build(const Exp& e) const {
    return std::visit(
        overloaded{
            [&](const Exp::Assert& node) {
              LabeledFamilyC f = empty_family();
              TestDenotation d = denote(*node.test, alphabets);
              f.start = atoms_with([&](uint32_t i, AtomIdx a) -> std::optional<Continuation> {
                if (!d.holds(i, a)) return std::nullopt;
                return Continuation::acc(i);
              });
              return f;
            },
            [&](const Exp::Act& node) {
              LabeledFamilyC f = empty_family();
              auto p = alphabets.action_index(node.action);
              if (!p) throw UnknownIdError(node.action);
              if (bound >= 1) {
                for (uint32_t i = 0; i < ni; ++i)
                  for (AtomIdx a = 0; a < na; ++a)
                    for (AtomIdx b = 0; b < na; ++b)
                      f.start.by_indicator[i].insert({{{a, b}, {*p}}, Continuation::acc(i)});
              }
              return f;
            },
            [&](const Exp::Assign& node) {
              LabeledFamilyC f = empty_family();
              auto j = alphabets.indicator_index(node.value);
              if (!j) throw UnknownIdError("indicator " + node.value.str());
              f.start = atoms_with([&](uint32_t, AtomIdx) { return Continuation::acc(*j); });
              return f;
            },
            [&](const Exp::Break&) {
              LabeledFamilyC f = empty_family();
              f.start = atoms_with([&](uint32_t i, AtomIdx) { return Continuation::brk(i); });
              return f;
            },
            [&](const Exp::Return&) {
              LabeledFamilyC f = empty_family();
              f.start = atoms_with([&](uint32_t, AtomIdx) { return Continuation::ret(); });
              return f;
            },
            [&](const Exp::Goto& node) {
              LabeledFamilyC f = empty_family();
              auto l = alphabets.label_index(node.label);
              if (!l) throw UnknownIdError("label " + node.label);
              f.start = atoms_with([&](uint32_t i, AtomIdx) { return Continuation::jmp(*l, i); });
              return f;
            },
            [&](const Exp::Label& node) {
              LabeledFamilyC f = empty_family();
              auto l = alphabets.label_index(node.label);
              if (!l) throw UnknownIdError("label " + node.label);
              IndexedFamilyC accept =
                  atoms_with([&](uint32_t i, AtomIdx) { return Continuation::acc(i); });
              f.start = accept;
              f.by_label[*l] = accept;
              return f;
            },
            [&](const Exp::Seq& node) {
              LabeledFamilyC f1 = build(*node.first);
              LabeledFamilyC f2 = build(*node.second);
              LabeledFamilyC f = empty_family();
              f.start = seq_families(f1.start, f2.start, bound);
              for (size_t l = 0; l < nl; ++l) {
                f.by_label[l] = seq_families(f1.by_label[l], f2.start, bound);
                for (size_t i = 0; i < ni; ++i)
                  for (const auto& w : f2.by_label[l].by_indicator[i])
                    f.by_label[l].by_indicator[i].insert(w);
              }
              return f;
            },
            [&](const Exp::If& node) {
              TestDenotation d = denote(*node.guard, alphabets);
              LabeledFamilyC f1 = build(*node.then_branch);
              LabeledFamilyC f2 = build(*node.else_branch);
              LabeledFamilyC f = empty_family();
              for (size_t i = 0; i < ni; ++i) {
                for (const auto& w : f1.start.by_indicator[i])
                  if (d.holds(i, w.word.first_atom())) f.start.by_indicator[i].insert(w);
                for (const auto& w : f2.start.by_indicator[i])
                  if (!d.holds(i, w.word.first_atom())) f.start.by_indicator[i].insert(w);
              }
              // Starting from a label disregards the guard.
              for (size_t l = 0; l < nl; ++l)
                for (size_t i = 0; i < ni; ++i) {
                  auto& dst = f.by_label[l].by_indicator[i];
                  const auto& s1 = f1.by_label[l].by_indicator[i];
                  const auto& s2 = f2.by_label[l].by_indicator[i];
                  dst.insert(s1.begin(), s1.end());
                  dst.insert(s2.begin(), s2.end());
                }
              return f;
            },
            [&](const Exp::While& node) {
              TestDenotation d = denote(*node.guard, alphabets);
              LabeledFamilyC body = build(*node.body);
              LabeledFamilyC f = empty_family();

              // Least fixed point of the loop rules, saturated within the
              // action bound: guard failure accepts immediately, and body
              // words satisfying the guard are prepended to loop words,
              // flooring brk at the exit.
              IndexedFamilyC loop(ni);
              for (uint32_t i = 0; i < ni; ++i)
                for (AtomIdx a = 0; a < na; ++a)
                  if (!d.holds(i, a))
                    loop.by_indicator[i].insert({GuardedWord::single(a), Continuation::acc(i)});
              bool changed = true;
              while (changed) {
                changed = false;
                IndexedFamilyC comp = seq_families(body.start, loop, bound);
                for (size_t i = 0; i < ni; ++i)
                  for (const auto& w : comp.by_indicator[i]) {
                    if (!d.holds(i, w.word.first_atom())) continue;
                    GuardedWordC floored{w.word, floor_continuation(w.cont)};
                    if (loop.by_indicator[i].insert(floored).second) changed = true;
                  }
              }
              f.start = loop;

              for (size_t l = 0; l < nl; ++l) {
                IndexedFamilyC comp = seq_families(body.by_label[l], loop, bound);
                for (size_t i = 0; i < ni; ++i)
                  for (const auto& w : comp.by_indicator[i])
                    f.by_label[l].by_indicator[i].insert({w.word, floor_continuation(w.cont)});
              }
              return f;
            },
        },
        e.node);
  }
};

}  // namespace

LabeledFamilyC cont_semantics(const Exp& e, const Alphabets& alphabets, size_t bound) {
  SemanticsBuilder builder{alphabets, bound, alphabets.indicators.size(), alphabets.num_atoms(),
                           alphabets.labels.size()};
  return builder.build(e);
}

LabeledLanguages resolve(const LabeledFamilyC& g, size_t bound) {
  const size_t ni = g.start.num_indicators();
  const size_t nl = g.by_label.size();
  LabeledLanguages r;
  r.start.assign(ni, {});
  r.by_label.assign(nl, std::vector<Lang>(ni));

  // One pass over every source word; repeated until the jmp-stitching rule
  // stops producing new words.
  auto pass = [&](const IndexedFamilyC& src, std::vector<Lang>& dst) {
    bool changed = false;
    for (size_t i = 0; i < ni; ++i) {
      for (const GuardedWordC& w : src.by_indicator[i]) {
        switch (w.cont.kind) {
          case ContKind::Acc:
          case ContKind::Ret:
            if (dst[i].insert(w.word).second) changed = true;
            break;
          case ContKind::Jmp: {
            const Lang& target = r.by_label[w.cont.label][w.cont.ind];
            for (const GuardedWord& x : target) {
              if (x.first_atom() != w.word.last_atom()) continue;
              if (w.word.num_actions() + x.num_actions() > bound) continue;
              if (dst[i].insert(w.word.append(x)).second) changed = true;
            }
            break;
          }
          case ContKind::Brk:
            break;  // cannot occur at the top level of a valid program
        }
      }
    }
    return changed;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t l = 0; l < nl; ++l) changed |= pass(g.by_label[l], r.by_label[l]);
    changed |= pass(g.start, r.start);
  }
  return r;
}

Lang trace_language(const Exp& e, uint32_t indicator, const Alphabets& alphabets, size_t bound) {
  LabeledLanguages r = resolve(cont_semantics(e, alphabets, bound), bound);
  return r.start.at(indicator);
}

}  // namespace cfgkat
