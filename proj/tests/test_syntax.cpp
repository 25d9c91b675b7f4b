#include "doctest.h"

#include <variant>

#include "cfgkat/syntax.hpp"
#include "cfgkat/thompson.hpp"
#include "helpers.hpp"

using namespace cfgkat;
using namespace testutil;

namespace {

// label l0; if !t goto l1; p; if t goto l1; q; goto l0; label l1
ExpPtr goto_program() {
  std::vector<ExpPtr> stmts = {
      exp::label("l0"),
      exp::if_(bexp::not_(bexp::prim("t")), exp::goto_("l1"), exp::skip()),
      exp::act("p"),
      exp::if_(bexp::prim("t"), exp::goto_("l1"), exp::skip()),
      exp::act("q"),
      exp::goto_("l0"),
      exp::label("l1"),
  };
  return exp::seq_all(stmts);
}

// while t { p; if !t q else break }
ExpPtr break_program() {
  return exp::while_(bexp::prim("t"),
                     exp::seq(exp::act("p"), exp::if_(bexp::not_(bexp::prim("t")), exp::act("q"),
                                                      exp::break_())));
}

}  // namespace

TEST_CASE("validate flags duplicate labels") {
  // label l; if t { label l; p } else q
  ExpPtr e = exp::seq(exp::label("l"),
                      exp::if_(bexp::prim("t"), exp::seq(exp::label("l"), exp::act("p")),
                               exp::act("q")));
  ValidationReport r = validate(*e);
  REQUIRE(r.violations.size() == 1);
  auto* d = std::get_if<Violation::DuplicateLabel>(&r.violations[0].detail);
  REQUIRE(d != nullptr);
  CHECK(d->label == "l");
}

TEST_CASE("validate flags undefined goto targets") {
  ExpPtr e = exp::seq(exp::while_(bexp::true_(), exp::act("p")), exp::goto_("l"));
  ValidationReport r = validate(*e);
  REQUIRE(r.violations.size() == 1);
  auto* u = std::get_if<Violation::UndefinedGotoTarget>(&r.violations[0].detail);
  REQUIRE(u != nullptr);
  CHECK(u->label == "l");
}

TEST_CASE("validate flags break outside a loop") {
  ExpPtr e = exp::if_(bexp::prim("t"), exp::break_(), exp::act("p"));
  ValidationReport r = validate(*e);
  REQUIRE(r.violations.size() == 1);
  CHECK(std::get_if<Violation::BreakOutsideLoop>(&r.violations[0].detail) != nullptr);
}

TEST_CASE("validate accepts the break-based loop program") {
  CHECK(validate(*break_program()).ok());
  CHECK(validate(*goto_program()).ok());
}

TEST_CASE("collect_alphabets gathers ids plus a fresh indicator") {
  ExpPtr e = goto_program();
  ExpPtr f = break_program();
  Alphabets al = collect_alphabets(*e, *f);
  CHECK(al.actions == std::vector<ActionId>{"p", "q"});
  CHECK(al.tests == std::vector<TestId>{"t"});
  CHECK(al.labels == std::vector<LabelId>{"l0", "l1"});
  REQUIRE(al.indicators.size() == 1);
  CHECK(al.indicators[0].is_fresh());
}

TEST_CASE("collect_alphabets gathers indicator constants in walk order") {
  // x:=1; while !(x=0) { if (x=1 and t) { p; x:=2 } else if (x=2 and !t) { q; x:=1 } else x:=0 }
  ExpPtr inner = exp::if_(
      bexp::and_(bexp::ind_eq(Indicator::of(2)), bexp::not_(bexp::prim("t"))),
      exp::seq(exp::act("q"), exp::assign(Indicator::of(1))), exp::assign(Indicator::of(0)));
  ExpPtr body = exp::if_(bexp::and_(bexp::ind_eq(Indicator::of(1)), bexp::prim("t")),
                         exp::seq(exp::act("p"), exp::assign(Indicator::of(2))), inner);
  ExpPtr e = exp::seq(exp::assign(Indicator::of(1)),
                      exp::while_(bexp::not_(bexp::ind_eq(Indicator::of(0))), body));
  Alphabets al = collect_alphabets(*e, *e);
  REQUIRE(al.indicators.size() == 4);
  // Pre-order walk, guards before bodies: 1 (assign), 0 (loop guard), 2.
  CHECK(al.indicators[0] == Indicator::of(1));
  CHECK(al.indicators[1] == Indicator::of(0));
  CHECK(al.indicators[2] == Indicator::of(2));
  CHECK(al.indicators[3].is_fresh());
}

TEST_CASE("collect_alphabets of a bare assertion is just the fresh indicator") {
  ExpPtr e = exp::skip();
  Alphabets al = collect_alphabets(*e, *e);
  CHECK(al.actions.empty());
  CHECK(al.tests.empty());
  CHECK(al.labels.empty());
  REQUIRE(al.indicators.size() == 1);
  CHECK(al.indicators[0].is_fresh());
}

TEST_CASE("collect_alphabets is symmetric up to ordering") {
  ExpPtr e = goto_program();
  ExpPtr f = break_program();
  Alphabets ef = collect_alphabets(*e, *f);
  Alphabets fe = collect_alphabets(*f, *e);
  auto as_sets = [](const Alphabets& al) {
    return std::tuple(std::set<std::string>(al.actions.begin(), al.actions.end()),
                      std::set<std::string>(al.tests.begin(), al.tests.end()),
                      std::set<std::string>(al.labels.begin(), al.labels.end()));
  };
  CHECK(as_sets(ef) == as_sets(fe));
}

TEST_CASE("exp_size counts Exp constructors only") {
  CHECK(exp_size(*exp::skip()) == 1);
  CHECK(exp_size(*exp::seq(exp::act("p"), exp::act("q"))) == 3);
  // while t { p; if !t q else break }: While, Seq, p, If, q, Break.
  CHECK(exp_size(*break_program()) == 6);
}

TEST_CASE("validate is stable under renaming of actions and tests") {
  ExpPtr e1 = exp::seq(exp::while_(bexp::prim("t"), exp::break_()), exp::goto_("missing"));
  ExpPtr e2 = exp::seq(exp::while_(bexp::prim("u"), exp::break_()), exp::goto_("missing"));
  ValidationReport r1 = validate(*e1);
  ValidationReport r2 = validate(*e2);
  REQUIRE(r1.violations.size() == r2.violations.size());
  for (size_t k = 0; k < r1.violations.size(); ++k)
    CHECK(r1.violations[k].message() == r2.violations[k].message());
}

TEST_CASE("contains_label sees definitions, not gotos") {
  CHECK(contains_label(*exp::label("l"), "l"));
  CHECK_FALSE(contains_label(*exp::goto_("l"), "l"));
  CHECK(contains_label(*exp::seq(exp::act("p"), exp::label("l")), "l"));
}
