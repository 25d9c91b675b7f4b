#include "cfgkat/thompson.hpp"

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

}  // namespace

bool contains_label(const Exp& e, const LabelId& l) {
  return std::visit(
      overloaded{
          [&](const Exp::Seq& s) { return contains_label(*s.first, l) || contains_label(*s.second, l); },
          [&](const Exp::If& i) {
            return contains_label(*i.then_branch, l) || contains_label(*i.else_branch, l);
          },
          [&](const Exp::While& w) { return contains_label(*w.body, l); },
          [&](const Exp::Label& lab) { return lab.label == l; },
          [&](const auto&) { return false; },
      },
      e.node);
}

namespace {

struct Builder {
  const Alphabets& alphabets;
  size_t ni, na, nl;

  CfAutomaton leaf() const {
    CfAutomaton a;
    a.num_indicators = ni;
    a.num_atoms = na;
    a.num_actions = alphabets.actions.size();
    a.jump_map.assign(nl, Dynamics(ni, na));
    a.start = StartDynamics{Dynamics(ni, na)};
    return a;
  }

  Dynamics& start_of(CfAutomaton& a) const { return std::get<StartDynamics>(a.start).dynamics; }

  // Start dynamics filled uniformly from (i, atom).
  template <typename MakeEntry>
  CfAutomaton leaf_with(MakeEntry make) const {
    CfAutomaton a = leaf();
    Dynamics& s = start_of(a);
    for (uint32_t i = 0; i < ni; ++i)
      for (AtomIdx atom = 0; atom < na; ++atom) s.at(i, atom) = make(i, atom);
    return a;
  }

  CfAutomaton build(const Exp& e) const {
    return std::visit(
        overloaded{
            [&](const Exp::Assert& node) {
              TestDenotation d = denote(*node.test, alphabets);
              return leaf_with([&](uint32_t i, AtomIdx a) {
                return d.holds(i, a) ? DynamicsEntry::cont(Continuation::acc(i))
                                     : DynamicsEntry::reject();
              });
            },
            [&](const Exp::Act& node) {
              auto p = alphabets.action_index(node.action);
              if (!p) throw UnknownIdError(node.action);
              CfAutomaton a = leaf_with(
                  [&](uint32_t i, AtomIdx) { return DynamicsEntry::step(*p, 0, i); });
              Dynamics accept(ni, na);
              for (uint32_t i = 0; i < ni; ++i)
                for (AtomIdx atom = 0; atom < na; ++atom)
                  accept.at(i, atom) = DynamicsEntry::cont(Continuation::acc(i));
              a.states.push_back(std::move(accept));
              return a;
            },
            [&](const Exp::Assign& node) {
              auto j = alphabets.indicator_index(node.value);
              if (!j) throw UnknownIdError("indicator " + node.value.str());
              return leaf_with([&](uint32_t, AtomIdx) {
                return DynamicsEntry::cont(Continuation::acc(*j));
              });
            },
            [&](const Exp::Break&) {
              return leaf_with(
                  [&](uint32_t i, AtomIdx) { return DynamicsEntry::cont(Continuation::brk(i)); });
            },
            [&](const Exp::Return&) {
              return leaf_with(
                  [&](uint32_t, AtomIdx) { return DynamicsEntry::cont(Continuation::ret()); });
            },
            [&](const Exp::Goto& node) {
              auto l = alphabets.label_index(node.label);
              if (!l) throw UnknownIdError("label " + node.label);
              return leaf_with([&](uint32_t i, AtomIdx) {
                return DynamicsEntry::cont(Continuation::jmp(*l, i));
              });
            },
            [&](const Exp::Label& node) {
              auto l = alphabets.label_index(node.label);
              if (!l) throw UnknownIdError("label " + node.label);
              CfAutomaton a = leaf_with(
                  [&](uint32_t i, AtomIdx) { return DynamicsEntry::cont(Continuation::acc(i)); });
              a.jump_map[*l] = start_of(a);
              return a;
            },
            [&](const Exp::If& node) {
              TestDenotation d = denote(*node.guard, alphabets);
              CfAutomaton a1 = build(*node.then_branch);
              CfAutomaton a2 = build(*node.else_branch);
              StateId offset = static_cast<StateId>(a1.states.size());

              CfAutomaton a = leaf();
              a.states = std::move(a1.states);
              for (const Dynamics& s : a2.states) a.states.push_back(s.offset_states(offset));

              Dynamics& start = start_of(a);
              const Dynamics& i1 = start_of(a1);
              Dynamics i2 = start_of(a2).offset_states(offset);
              for (uint32_t i = 0; i < ni; ++i)
                for (AtomIdx atom = 0; atom < na; ++atom)
                  start.at(i, atom) = d.holds(i, atom) ? i1.at(i, atom) : i2.at(i, atom);

              for (size_t l = 0; l < nl; ++l) {
                if (contains_label(*node.then_branch, alphabets.labels[l]))
                  a.jump_map[l] = a1.jump_map[l];
                else if (contains_label(*node.else_branch, alphabets.labels[l]))
                  a.jump_map[l] = a2.jump_map[l].offset_states(offset);
              }
              return a;
            },
            [&](const Exp::Seq& node) {
              CfAutomaton a1 = build(*node.first);
              CfAutomaton a2 = build(*node.second);
              StateId offset = static_cast<StateId>(a1.states.size());
              Dynamics i2 = start_of(a2).offset_states(offset);

              CfAutomaton a = leaf();
              a.start = StartDynamics{uniform_continuation(start_of(a1), i2)};
              for (const Dynamics& s : a1.states)
                a.states.push_back(uniform_continuation(s, i2));
              for (const Dynamics& s : a2.states) a.states.push_back(s.offset_states(offset));

              for (size_t l = 0; l < nl; ++l) {
                if (contains_label(*node.first, alphabets.labels[l]))
                  a.jump_map[l] = uniform_continuation(a1.jump_map[l], i2);
                else if (contains_label(*node.second, alphabets.labels[l]))
                  a.jump_map[l] = a2.jump_map[l].offset_states(offset);
              }
              return a;
            },
            [&](const Exp::While& node) {
              TestDenotation d = denote(*node.guard, alphabets);
              CfAutomaton a1 = build(*node.body);
              Dynamics hb = iterated_start(start_of(a1), d);

              CfAutomaton a = leaf();
              a.start = StartDynamics{floor_dynamics(hb)};
              for (const Dynamics& s : a1.states)
                a.states.push_back(floor_dynamics(uniform_continuation(s, hb)));
              // Break resolution happens after the uniform continuation, so
              // a jump that immediately breaks continues after the loop.
              for (size_t l = 0; l < nl; ++l)
                a.jump_map[l] = floor_dynamics(uniform_continuation(a1.jump_map[l], hb));
              return a;
            },
        },
        e.node);
  }
};

}  // namespace

CfAutomaton thompson(const Exp& e, const Alphabets& alphabets) {
  ValidationReport report = validate(e);
  if (!report.ok()) throw InvalidProgramError(report.str());
  Builder builder{alphabets, alphabets.indicators.size(), alphabets.num_atoms(),
                  alphabets.labels.size()};
  return builder.build(e);
}

}  // namespace cfgkat
