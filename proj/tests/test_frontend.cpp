#include "doctest.h"

#include <variant>

#include "cfgkat/driver.hpp"
#include "cfgkat/frontend.hpp"
#include "cfgkat/oracle.hpp"
#include "helpers.hpp"

using namespace cfgkat;
using namespace testutil;

TEST_CASE("parses a bare pact call") {
  SourceFunction fn = parse_function("void f(){ pact(1); }", "f");
  const auto& block = std::get<CStmt::Block>(fn.body->node);
  REQUIRE(block.stmts.size() == 1);
  const auto* pact = std::get_if<CStmt::Pact>(&block.stmts[0]->node);
  REQUIRE(pact != nullptr);
  CHECK(pact->id == 1);
}

TEST_CASE("parses an if without else") {
  SourceFunction fn = parse_function("void f(){ if (pbool(83)) { pact(194); } }", "f");
  const auto& block = std::get<CStmt::Block>(fn.body->node);
  REQUIRE(block.stmts.size() == 1);
  const auto* iff = std::get_if<CStmt::If>(&block.stmts[0]->node);
  REQUIRE(iff != nullptr);
  CHECK(iff->else_branch == nullptr);
  CHECK(std::get_if<CCond::Pbool>(&iff->cond->node) != nullptr);
}

TEST_CASE("switch and continue are unsupported") {
  CHECK_THROWS_AS(parse_function("void f(){ switch(x){} }", "f"), UnsupportedConstructError);
  CHECK_THROWS_AS(parse_function("void f(){ while (pbool(1)) { continue; } }", "f"),
                  UnsupportedConstructError);
  CHECK_THROWS_AS(parse_function("void f(){ x = pbool(1) ? 1 : 2; }", "f"),
                  UnsupportedConstructError);
}

TEST_CASE("hex and decimal pact ids agree") {
  SourceFunction hex = parse_function("void f(){ pact(0xc5); }", "f");
  SourceFunction dec = parse_function("void f(){ pact(197); }", "f");
  ExpPtr eh = lift_to_exp(hex, std::nullopt);
  ExpPtr ed = lift_to_exp(dec, std::nullopt);
  CHECK(to_string(*eh) == to_string(*ed));
}

TEST_CASE("comments and prototypes are skipped") {
  const char* src =
      "// leading comment\n"
      "void pact(int);\n"
      "bool pbool(int);\n"
      "/* block\n comment */\n"
      "void f(void){ pact(1); /* inline */ pact(2); }\n";
  auto fns = parse_file(src);
  REQUIRE(fns.size() == 1);
  CHECK(fns[0].name == "f");
}

TEST_CASE("indicator detection follows the qualification rules") {
  SUBCASE("a constant-assigned, comparison-read variable qualifies") {
    const char* src =
        "void f(){ int factor_found = 0; while (pbool(83)) {"
        " if (pbool(1)) { factor_found = 1; }"
        " if (factor_found == 0) { pact(173); } } }";
    SourceFunction fn = parse_function(src, "f");
    CHECK(detect_indicator(fn) == std::string("factor_found"));
  }
  SUBCASE("appearing inside raw text disqualifies") {
    const char* src = "void f(){ int k = 0; if (k % 32 == 1) { pact(1); } }";
    SourceFunction fn = parse_function(src, "f");
    CHECK_FALSE(detect_indicator(fn).has_value());
    IndicatorScan scan = scan_indicators(fn);
    CHECK(scan.rejected == std::vector<std::string>{"k"});
  }
  SUBCASE("ties break by declaration order") {
    const char* src = "void f(){ int a = 0; int b = 1; a = 2; b = 3; }";
    SourceFunction fn = parse_function(src, "f");
    IndicatorScan scan = scan_indicators(fn);
    CHECK(scan.chosen == std::string("a"));
    CHECK(scan.qualifying == std::vector<std::string>{"a", "b"});
  }
}

TEST_CASE("do-while is partially unrolled") {
  SourceFunction fn = parse_function("void f(){ do { pact(1); } while (pbool(2)); }", "f");
  ExpPtr e = lift_to_exp(fn, std::nullopt);
  // body; while (cond) body
  ExpPtr expected = exp::seq(exp::act("1"), exp::while_(bexp::prim("2"), exp::act("1")));
  CHECK(to_string(*e) == to_string(*expected));
}

TEST_CASE("for without condition loops on true") {
  SourceFunction fn = parse_function("void f(){ for(;;) { pact(1); } }", "f");
  ExpPtr e = lift_to_exp(fn, std::nullopt);
  CHECK(to_string(*e) == to_string(*exp::while_(bexp::true_(), exp::act("1"))));
}

TEST_CASE("do-while bodies with break or label are rejected") {
  SourceFunction with_break =
      parse_function("void f(){ do { pact(1); break; } while (pbool(2)); }", "f");
  CHECK_THROWS_AS(lift_to_exp(with_break, std::nullopt), DoWhileWithBreakOrLabelError);
  SourceFunction with_label =
      parse_function("void f(){ do { l: pact(1); } while (pbool(2)); }", "f");
  CHECK_THROWS_AS(lift_to_exp(with_label, std::nullopt), DoWhileWithBreakOrLabelError);
}

TEST_CASE("indicator assignments and comparisons map to indicator operations") {
  const char* src = "void f(){ int x; x = 2; if (x == 1) { pact(7); } }";
  SourceFunction fn = parse_function(src, "f");
  ExpPtr e = lift_to_exp(fn, detect_indicator(fn));
  ExpPtr expected = exp::seq(exp::assign(Indicator::of(2)),
                             exp::if_(bexp::ind_eq(Indicator::of(1)), exp::act("7"), exp::skip()));
  CHECK(to_string(*e) == to_string(*expected));
}

TEST_CASE("unblinded statements error without a blinding table") {
  SourceFunction fn = parse_function("void f(){ mpz_set(y, x); }", "f");
  CHECK_THROWS_AS(lift_to_exp(fn, std::nullopt), NonBlindableStatementError);
}

TEST_CASE("auto blinding shares ids across both inputs") {
  SUBCASE("identical statements get the same action id") {
    SourceFunction a = parse_function("void f(){ mpz_set(y, x); }", "f");
    SourceFunction b = parse_function("void f(){ mpz_set(y, x); }", "f");
    AutoBlindResult r = auto_blind(a, b);
    ExpPtr ea = lift_to_exp(r.first, r.first_indicator, &r.table);
    ExpPtr eb = lift_to_exp(r.second, r.second_indicator, &r.table);
    CHECK(to_string(*ea) == to_string(*eb));
    CHECK(r.table.actions.size() == 1);
  }
  SUBCASE("textually different statements get distinct ids") {
    SourceFunction a = parse_function("void f(){ a++; }", "f");
    SourceFunction b = parse_function("void f(){ a += 1; }", "f");
    AutoBlindResult r = auto_blind(a, b);
    CHECK(r.table.actions.size() == 2);
  }
  SUBCASE("identical conditions get the same test id") {
    SourceFunction a =
        parse_function("void f(){ while (mpz_cmp_ui(n,1) != 0) { pact(1); } }", "f");
    SourceFunction b =
        parse_function("void f(){ while (mpz_cmp_ui(n,1) != 0) { pact(1); } }", "f");
    AutoBlindResult r = auto_blind(a, b);
    REQUIRE(r.table.tests.size() == 1);
    CHECK(r.table.tests.begin()->first == "mpz_cmp_ui ( n , 1 ) != 0");
    ExpPtr ea = lift_to_exp(r.first, r.first_indicator, &r.table);
    ExpPtr eb = lift_to_exp(r.second, r.second_indicator, &r.table);
    CHECK(to_string(*ea) == to_string(*eb));
  }
  SUBCASE("fresh ids start above explicit ones") {
    SourceFunction a = parse_function("void f(){ pact(50); foo(); }", "f");
    SourceFunction b = parse_function("void f(){ pact(50); }", "f");
    AutoBlindResult r = auto_blind(a, b);
    REQUIRE(r.table.actions.size() == 1);
    CHECK(r.table.actions.begin()->second == 51);
  }
}

TEST_CASE("lifted functions always validate") {
  const char* sources[] = {
      "void f(){ pact(1); if (pbool(2)) { pact(3); } else { pact(4); } }",
      "void f(){ l0: if (!pbool(1)) goto l1; pact(1); goto l0; l1: ; }",
      "void f(){ while (pbool(1)) { if (pbool(2)) { break; } pact(3); } pact(4); }",
      "void f(){ int x = 0; for (; x == 0;) { pact(1); x = 1; } }",
      "void f(){ do { pact(1); } while (0); pact(2); }",
  };
  for (const char* src : sources) {
    SourceFunction fn = parse_function(src, "f");
    ExpPtr e = lift_to_exp(fn, detect_indicator(fn));
    CHECK(validate(*e).ok());
  }
}

TEST_CASE("assignment factoring works end to end with auto blinding") {
  const char* inside =
      "void f(){ int x; if (y != 0) { x = 42; pact(1); } else { x = 42; pact(2); } }";
  const char* outside = "void f(){ int x; x = 42; if (y != 0) { pact(1); } else { pact(2); } }";
  SourceFunction a = parse_function(inside, "f");
  SourceFunction b = parse_function(outside, "f");
  AutoBlindResult r = auto_blind(a, b);
  CHECK(r.first_indicator == std::string("x"));
  ExpPtr ea = lift_to_exp(r.first, r.first_indicator, &r.table);
  ExpPtr eb = lift_to_exp(r.second, r.second_indicator, &r.table);
  CHECK(equiv(*ea, *eb).equivalent);
}

TEST_CASE("loop normalization preserves bounded traces") {
  const size_t bound = 6;

  SUBCASE("do-while against its direct unrolling") {
    // do { p1; if (t2) p3; } while (t4);
    SourceFunction fn = parse_function(
        "void f(){ do { pact(1); if (pbool(2)) { pact(3); } } while (pbool(4)); }", "f");
    ExpPtr image = lift_to_exp(fn, std::nullopt);

    ExpPtr body = exp::seq(exp::act("1"), exp::if_(bexp::prim("2"), exp::act("3"), exp::skip()));
    BExpPtr cond = bexp::prim("4");
    ExpPtr unrolled = exp::assert_(bexp::false_());
    for (size_t k = 0; k <= bound; ++k)
      unrolled = exp::seq(body, exp::if_(cond, unrolled, exp::skip()));

    Alphabets al = collect_alphabets(*image, *unrolled);
    for (uint32_t i = 0; i < al.indicators.size(); ++i)
      CHECK(trace_language(*image, i, al, bound) == trace_language(*unrolled, i, al, bound));
  }

  SUBCASE("for-loop against its direct unrolling") {
    // for (pact(1); pbool(2); pact(3)) { pact(4); }
    SourceFunction fn =
        parse_function("void f(){ for (pact(1); pbool(2); pact(3)) { pact(4); } }", "f");
    ExpPtr image = lift_to_exp(fn, std::nullopt);

    ExpPtr body_step = exp::seq(exp::act("4"), exp::act("3"));
    BExpPtr cond = bexp::prim("2");
    ExpPtr unrolled = exp::assert_(bexp::false_());
    for (size_t k = 0; k <= bound; ++k)
      unrolled = exp::if_(cond, exp::seq(body_step, unrolled), exp::skip());
    unrolled = exp::seq(exp::act("1"), unrolled);

    Alphabets al = collect_alphabets(*image, *unrolled);
    for (uint32_t i = 0; i < al.indicators.size(); ++i)
      CHECK(trace_language(*image, i, al, bound) == trace_language(*unrolled, i, al, bound));
  }

  SUBCASE("do-while(0) runs its body exactly once") {
    SourceFunction fn =
        parse_function("void f(){ do { if (pbool(83)) { pact(194); } } while (0); }", "f");
    ExpPtr image = lift_to_exp(fn, std::nullopt);
    ExpPtr once = exp::if_(bexp::prim("83"), exp::act("194"), exp::skip());
    Alphabets al = collect_alphabets(*image, *once);
    for (uint32_t i = 0; i < al.indicators.size(); ++i)
      CHECK(trace_language(*image, i, al, bound) == trace_language(*once, i, al, bound));
  }
}

TEST_CASE("detection is unaffected by unrelated statement removal") {
  const char* with_noise =
      "void f(){ int x = 0; pact(1); if (x == 0) { pact(2); } mpz_clears(P, t2); }";
  const char* without_noise = "void f(){ int x = 0; if (x == 0) { pact(2); } }";
  SourceFunction a = parse_function(with_noise, "f");
  SourceFunction b = parse_function(without_noise, "f");
  CHECK(detect_indicator(a) == detect_indicator(b));
}

TEST_CASE("parse errors carry locations") {
  try {
    parse_function("void f(){ if pbool(1) { pact(2); } }", "f");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.loc.line == 1);
    CHECK(e.loc.column > 1);
  }
}
