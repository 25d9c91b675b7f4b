#include "doctest.h"

#include "cfgkat/driver.hpp"
#include "cfgkat/gkat.hpp"
#include "cfgkat/oracle.hpp"
#include "cfgkat/thompson.hpp"
#include "helpers.hpp"

using namespace cfgkat;
using namespace testutil;

namespace {

// if (t and x = 1) { x := 2; label l; p } else { x := 1; goto l }
ExpPtr branching_example() {
  return exp::if_(
      bexp::and_(bexp::prim("t"), bexp::ind_eq(Indicator::of(1))),
      exp::seq_all({exp::assign(Indicator::of(2)), exp::label("l"), exp::act("p")}),
      exp::seq(exp::assign(Indicator::of(1)), exp::goto_("l")));
}

size_t count_actions(const Exp& e) {
  size_t n = 0;
  std::function<void(const Exp&)> walk = [&](const Exp& x) {
    if (std::holds_alternative<Exp::Act>(x.node)) ++n;
    if (auto* s = std::get_if<Exp::Seq>(&x.node)) {
      walk(*s->first);
      walk(*s->second);
    }
    if (auto* i = std::get_if<Exp::If>(&x.node)) {
      walk(*i->then_branch);
      walk(*i->else_branch);
    }
    if (auto* w = std::get_if<Exp::While>(&x.node)) walk(*w->body);
  };
  walk(e);
  return n;
}

}  // namespace

TEST_CASE("thompson builds the branching example automaton") {
  Alphabets al = make_alphabets({"p"}, {"t"}, {"l"}, {1, 2}, false);
  CfAutomaton a = thompson(*branching_example(), al);

  REQUIRE(a.states.size() == 1);  // one primitive action occurrence
  const Dynamics& iota = a.start_dynamics();
  const AtomIdx no_t = 0, with_t = 1;
  const uint32_t ind1 = 0, ind2 = 1;

  CHECK(iota.at(ind1, with_t) == DynamicsEntry::step(0, 0, ind2));
  CHECK(iota.at(ind1, no_t) == DynamicsEntry::cont(Continuation::jmp(0, ind1)));
  CHECK(iota.at(ind2, no_t) == DynamicsEntry::cont(Continuation::jmp(0, ind1)));
  CHECK(iota.at(ind2, with_t) == DynamicsEntry::cont(Continuation::jmp(0, ind1)));

  for (uint32_t i = 0; i < 2; ++i)
    for (AtomIdx atom = 0; atom < 2; ++atom) {
      CHECK(a.states[0].at(i, atom) == DynamicsEntry::cont(Continuation::acc(i)));
      CHECK(a.jump_map[0].at(i, atom) == DynamicsEntry::step(0, 0, i));
    }
}

TEST_CASE("the branching example has the continuation semantics from the worked example") {
  Alphabets al = make_alphabets({"p"}, {"t"}, {"l"}, {1, 2}, false);
  CfAutomaton a = thompson(*branching_example(), al);
  LabeledFamilyC sem = enumerate_labeled_semantics(a, 6);

  const AtomIdx no_t = 0, with_t = 1;
  const uint32_t ind1 = 0, ind2 = 1, p = 0, l = 0;

  CHECK(sem.start.by_indicator[ind1] ==
        langc({wc({no_t}, {}, Continuation::jmp(l, ind1)),
               wc({with_t, no_t}, {p}, Continuation::acc(ind2)),
               wc({with_t, with_t}, {p}, Continuation::acc(ind2))}));
  CHECK(sem.start.by_indicator[ind2] == langc({wc({no_t}, {}, Continuation::jmp(l, ind1)),
                                               wc({with_t}, {}, Continuation::jmp(l, ind1))}));
  for (uint32_t i = 0; i < 2; ++i) {
    LangC expected;
    for (AtomIdx x = 0; x < 2; ++x)
      for (AtomIdx y = 0; y < 2; ++y) expected.insert(wc({x, y}, {p}, Continuation::acc(i)));
    CHECK(sem.by_label[l].by_indicator[i] == expected);
  }
}

TEST_CASE("lowering the branching example matches the worked transition table") {
  Alphabets al = make_alphabets({"p"}, {"t"}, {"l"}, {1, 2}, false);
  CfAutomaton a = add_start_state(thompson(*branching_example(), al));
  REQUIRE(a.states.size() == 2);  // s = 0, start = 1

  GkatAutomaton g = lower(a, 0);
  const AtomIdx no_t = 0, with_t = 1;
  auto id = [&](StateId s, uint32_t i) { return lowered_state_id(a, s, i); };

  // From (start, 1): {t} steps into (s, 2); {} resolves the jump into (s, 1).
  CHECK(g.start == id(1, 0));
  CHECK(g.states[id(1, 0)][with_t] == GkatTransition::step(0, id(0, 1)));
  CHECK(g.states[id(1, 0)][no_t] == GkatTransition::step(0, id(0, 0)));
  // Both copies of s accept on both atoms.
  for (AtomIdx atom = 0; atom < 2; ++atom) {
    CHECK(g.states[id(0, 0)][atom] == GkatTransition::accept());
    CHECK(g.states[id(0, 1)][atom] == GkatTransition::accept());
  }
}

TEST_CASE("thompson of an assignment accepts with the assigned value") {
  Alphabets al = make_alphabets({}, {}, {}, {3}, true);
  CfAutomaton a = thompson(*exp::assign(Indicator::of(3)), al);
  CHECK(a.states.empty());
  for (uint32_t i = 0; i < 2; ++i)
    CHECK(a.start_dynamics().at(i, 0) == DynamicsEntry::cont(Continuation::acc(0)));
}

TEST_CASE("thompson floors the iterated start of the worked loop example") {
  // while true { if x = 0 then x := 1 else if x = 1 then break else assert true }
  Alphabets al = make_alphabets({}, {}, {}, {0, 1}, true);  // values 0, 1 plus 2 behaves freshly
  ExpPtr body = exp::if_(bexp::ind_eq(Indicator::of(0)), exp::assign(Indicator::of(1)),
                         exp::if_(bexp::ind_eq(Indicator::of(1)), exp::break_(), exp::skip()));
  ExpPtr loop = exp::while_(bexp::true_(), body);
  CfAutomaton a = thompson(*loop, al);
  const Dynamics& iota = a.start_dynamics();
  CHECK(iota.at(0, 0) == DynamicsEntry::cont(Continuation::acc(1)));  // brk 1 floored
  CHECK(iota.at(1, 0) == DynamicsEntry::cont(Continuation::acc(1)));
  CHECK(iota.at(2, 0) == DynamicsEntry::reject());  // unproductive spin
}

TEST_CASE("thompson rejects invalid programs") {
  Alphabets al = make_alphabets({"p"}, {}, {"l"}, {}, true);
  CHECK_THROWS_AS(thompson(*exp::goto_("l"), al), InvalidProgramError);
}

TEST_CASE("state count equals the number of action occurrences") {
  GeneratorLimits limits;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    ExpPtr e = random_program(seed, limits);
    Alphabets al = collect_alphabets(*e, *e);
    CfAutomaton a = thompson(*e, al);
    CHECK(a.states.size() == count_actions(*e));
    CHECK(a.states.size() <= exp_size(*e));
  }
}

TEST_CASE("every step target stays inside the arena, before and after lowering") {
  GeneratorLimits limits;
  for (uint64_t seed = 400; seed < 480; ++seed) {
    ExpPtr e = random_program(seed, limits);
    Alphabets al = collect_alphabets(*e, *e);
    CfAutomaton a = add_start_state(thompson(*e, al));
    auto check_dynamics = [&](const Dynamics& d) {
      for (uint32_t i = 0; i < al.indicators.size(); ++i)
        for (AtomIdx atom = 0; atom < al.num_atoms(); ++atom) {
          const DynamicsEntry& entry = d.at(i, atom);
          if (entry.tag == DynamicsEntry::Tag::Step) CHECK(entry.state < a.states.size());
        }
    };
    for (const Dynamics& d : a.states) check_dynamics(d);
    for (const Dynamics& d : a.jump_map) check_dynamics(d);

    GkatAutomaton g = lower(a, 0);
    for (const auto& row : g.states)
      for (const GkatTransition& t : row)
        if (t.tag == GkatTransition::Tag::Step) {
          CHECK(t.state < g.num_states());
          CHECK(t.action < al.actions.size());
        }
  }
}

TEST_CASE("labels absent from the program have a rejecting jump row") {
  Alphabets al = make_alphabets({"p"}, {}, {"l", "m"}, {}, true);
  ExpPtr e = exp::seq(exp::label("l"), exp::act("p"));
  CfAutomaton a = thompson(*e, al);
  for (uint32_t i = 0; i < al.indicators.size(); ++i)
    CHECK(a.jump_map[1].at(i, 0) == DynamicsEntry::reject());
}

TEST_CASE("thompson preserves the continuation semantics on random programs") {
  GeneratorLimits limits;
  const size_t bound = 6;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    ExpPtr e = random_program(seed, limits);
    Alphabets al = collect_alphabets(*e, *e);
    CfAutomaton a = thompson(*e, al);
    LabeledFamilyC automaton_sem = enumerate_labeled_semantics(a, bound);
    LabeledFamilyC oracle_sem = cont_semantics(*e, al, bound);
    bool equal = automaton_sem == oracle_sem;
    CHECK(equal);
    if (!equal) {
      CAPTURE(seed);
      CAPTURE(to_string(*e));
      break;
    }
  }
}

TEST_CASE("lowered automata accept exactly the oracle trace language") {
  GeneratorLimits limits;
  const size_t bound = 6;
  for (uint64_t seed = 1000; seed < 1080; ++seed) {
    ExpPtr e = random_program(seed, limits);
    Alphabets al = collect_alphabets(*e, *e);
    CfAutomaton a = add_start_state(thompson(*e, al));
    GkatAutomaton g = lower(a, 0);
    for (uint32_t i = 0; i < al.indicators.size(); ++i) {
      g.start = lowered_state_id(a, a.start_state(), i);
      Lang from_automaton = enumerate_language(g, bound);
      Lang from_oracle = trace_language(*e, i, al, bound);
      bool equal = from_automaton == from_oracle;
      CHECK(equal);
      if (!equal) {
        CAPTURE(seed);
        CAPTURE(i);
        CAPTURE(to_string(*e));
        return;
      }
    }
  }
}
