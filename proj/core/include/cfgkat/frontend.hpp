// Parser for the blinded-C subset, indicator variable detection, lifting
// to CF-GKAT expressions, and the textual auto-blinder.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cfgkat/errors.hpp"
#include "cfgkat/syntax.hpp"

namespace cfgkat {

struct CCond;
struct CStmt;
using CCondPtr = std::shared_ptr<const CCond>;
using CStmtPtr = std::shared_ptr<const CStmt>;

struct CCond {
  struct Pbool { long long id; };
  // var == value, or var != value when negated.
  struct Compare { std::string var; bool negated; long long value; };
  struct Not { CCondPtr arg; };
  struct And { CCondPtr lhs, rhs; };
  struct Or { CCondPtr lhs, rhs; };
  struct ConstBool { bool value; };
  // Condition text outside the subset; only usable with a blinding table.
  struct Raw { std::string text; };

  using Node = std::variant<Pbool, Compare, Not, And, Or, ConstBool, Raw>;
  Node node;
  SourceLoc loc;
};

struct CStmt {
  struct Block { std::vector<CStmtPtr> stmts; };
  struct Pact { long long id; };
  struct AssignInt { std::string var; long long value; };
  struct Decl { std::string var; std::optional<long long> init; };
  struct If { CCondPtr cond; CStmtPtr then_branch; CStmtPtr else_branch; };  // else may be null
  struct While { CCondPtr cond; CStmtPtr body; };
  struct For { CStmtPtr init; CCondPtr cond; CStmtPtr step; CStmtPtr body; };  // any of init/cond/step may be null
  struct DoWhile { CStmtPtr body; CCondPtr cond; };
  struct Goto { std::string label; };
  struct LabelStmt { std::string label; CStmtPtr stmt; };
  struct Break {};
  struct Return {};
  struct Empty {};
  // Statement text outside the subset; only usable with a blinding table.
  struct Raw { std::string text; };
  // A bare condition in statement position (e.g. a for-step); tests are
  // pure, so this is a no-op.
  struct CondExpr { CCondPtr cond; };

  using Node = std::variant<Block, Pact, AssignInt, Decl, If, While, For, DoWhile, Goto,
                            LabelStmt, Break, Return, Empty, Raw, CondExpr>;
  Node node;
  SourceLoc loc;
};

struct SourceFunction {
  std::string name;
  CStmtPtr body;  // always a Block
  // Integer variable declarations in source order.
  std::vector<std::pair<std::string, SourceLoc>> int_decls;
};

// Shared across the two inputs of one equivalence check: identical
// canonical text always maps to the same id.
struct BlindingTable {
  std::map<std::string, long long> actions;  // canonical statement text -> pact id
  std::map<std::string, long long> tests;    // canonical condition text -> pbool id
  long long next_id = 0;
};

// Whitespace-collapsed, trimmed, trailing-semicolon-stripped key text.
std::string canonical_text(const std::string& text);

// Parses every function in a UTF-8 source file. Throws SyntaxError or
// UnsupportedConstructError.
std::vector<SourceFunction> parse_file(const std::string& text);

// Parses the one function named `name`.
SourceFunction parse_function(const std::string& text, const std::string& name);

struct IndicatorScan {
  std::optional<std::string> chosen;      // first qualifying, declaration order
  std::vector<std::string> qualifying;    // all qualifying variables
  std::vector<std::string> rejected;      // declared ints that do not qualify
};

// A variable qualifies as the indicator when it is integer-typed, all its
// assignments use constant literals, all its reads are ==/!= comparisons
// against constant literals, and it never appears inside raw (unblinded)
// text.
IndicatorScan scan_indicators(const SourceFunction& fn);
std::optional<std::string> detect_indicator(const SourceFunction& fn);

// Lifts a parsed function to a CF-GKAT expression. pact(n) becomes an
// action, pbool(n) a primitive test, indicator accesses become indicator
// assignments/tests, for-loops are rewritten to while-loops, and do-while
// loops are partially unrolled (body; while (c) body) — admissible only
// when the body contains no break and no label. Raw statements and
// conditions are looked up in `blinding` when given; otherwise they raise
// NonBlindableStatementError.
ExpPtr lift_to_exp(const SourceFunction& fn, const std::optional<std::string>& indicator,
                   const BlindingTable* blinding = nullptr);

struct AutoBlindResult {
  BlindingTable table;
  SourceFunction first;
  SourceFunction second;
  // Indicators detected on the *unblinded* inputs; blinding can make other
  // variables look unused, so detection must not be re-run afterwards.
  std::optional<std::string> first_indicator;
  std::optional<std::string> second_indicator;
};

// Replaces every non-control-flow, non-indicator statement/condition in
// both functions with pact(n)/pbool(n), assigning ids from one shared
// table keyed by canonical source text. Indicator detection runs per
// function; fresh ids start above any explicit pact/pbool id present.
AutoBlindResult auto_blind(const SourceFunction& a, const SourceFunction& b);

}  // namespace cfgkat
