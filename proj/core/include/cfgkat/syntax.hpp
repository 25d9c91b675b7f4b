// Abstract syntax of CF-GKAT tests and expressions, program validity,
// alphabet collection, and structural utilities.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cfgkat/errors.hpp"

namespace cfgkat {

using ActionId = std::string;
using TestId = std::string;
using LabelId = std::string;

// Indicator values are integer constants drawn from the program text, plus
// one reserved out-of-band value (`*`) that no program text can denote.
class Indicator {
public:
  static Indicator of(long long v) { return Indicator(false, v); }
  static Indicator fresh() { return Indicator(true, 0); }

  bool is_fresh() const { return fresh_; }
  long long value() const { return value_; }
  std::string str() const { return fresh_ ? "*" : std::to_string(value_); }

  auto operator<=>(const Indicator&) const = default;

private:
  Indicator(bool fresh, long long v) : fresh_(fresh), value_(v) {}
  bool fresh_;
  long long value_;
};

struct BExp;
struct Exp;
using BExpPtr = std::shared_ptr<const BExp>;
using ExpPtr = std::shared_ptr<const Exp>;

struct BExp {
  struct False {};
  struct True {};
  struct Prim { TestId test; };
  struct IndEq { Indicator value; };
  struct Or { BExpPtr lhs, rhs; };
  struct And { BExpPtr lhs, rhs; };
  struct Not { BExpPtr arg; };

  using Node = std::variant<False, True, Prim, IndEq, Or, And, Not>;
  Node node;
  SourceLoc loc;
};

struct Exp {
  struct Assert { BExpPtr test; };
  struct Act { ActionId action; };
  struct Assign { Indicator value; };
  struct Seq { ExpPtr first, second; };
  struct If { BExpPtr guard; ExpPtr then_branch, else_branch; };
  struct While { BExpPtr guard; ExpPtr body; };
  struct Break {};
  struct Return {};
  struct Goto { LabelId label; };
  struct Label { LabelId label; };

  using Node = std::variant<Assert, Act, Assign, Seq, If, While, Break, Return, Goto, Label>;
  Node node;
  SourceLoc loc;
};

namespace bexp {
BExpPtr false_(SourceLoc loc = {});
BExpPtr true_(SourceLoc loc = {});
BExpPtr prim(TestId test, SourceLoc loc = {});
BExpPtr ind_eq(Indicator value, SourceLoc loc = {});
BExpPtr or_(BExpPtr lhs, BExpPtr rhs, SourceLoc loc = {});
BExpPtr and_(BExpPtr lhs, BExpPtr rhs, SourceLoc loc = {});
BExpPtr not_(BExpPtr arg, SourceLoc loc = {});
}  // namespace bexp

namespace exp {
ExpPtr assert_(BExpPtr test, SourceLoc loc = {});
ExpPtr skip(SourceLoc loc = {});  // assert true
ExpPtr act(ActionId action, SourceLoc loc = {});
ExpPtr assign(Indicator value, SourceLoc loc = {});
ExpPtr seq(ExpPtr first, ExpPtr second, SourceLoc loc = {});
// Balanced fold of a statement list; keeps tree depth logarithmic.
ExpPtr seq_all(std::vector<ExpPtr> items, SourceLoc loc = {});
ExpPtr if_(BExpPtr guard, ExpPtr then_branch, ExpPtr else_branch, SourceLoc loc = {});
ExpPtr while_(BExpPtr guard, ExpPtr body, SourceLoc loc = {});
ExpPtr break_(SourceLoc loc = {});
ExpPtr return_(SourceLoc loc = {});
ExpPtr goto_(LabelId label, SourceLoc loc = {});
ExpPtr label(LabelId label, SourceLoc loc = {});
}  // namespace exp

std::string to_string(const BExp& b);
std::string to_string(const Exp& e);

// The collected alphabets of an equivalence query. Element order is
// first-occurrence order of a pre-order walk (guards before subtrees);
// `indicators` always ends with the reserved fresh value.
struct Alphabets {
  std::vector<ActionId> actions;
  std::vector<TestId> tests;
  std::vector<LabelId> labels;
  std::vector<Indicator> indicators;

  size_t num_atoms() const { return size_t{1} << tests.size(); }

  std::optional<uint32_t> action_index(const ActionId& a) const;
  std::optional<uint32_t> test_index(const TestId& t) const;
  std::optional<uint32_t> label_index(const LabelId& l) const;
  std::optional<uint32_t> indicator_index(const Indicator& i) const;

  void rebuild_index();

private:
  std::unordered_map<std::string, uint32_t> action_idx_, test_idx_, label_idx_;
  std::unordered_map<long long, uint32_t> ind_idx_;
  std::optional<uint32_t> fresh_idx_;
};

Alphabets collect_alphabets(const Exp& e, const Exp& f);

struct Violation {
  struct DuplicateLabel { LabelId label; SourceLoc first, second; };
  struct UndefinedGotoTarget { LabelId label; SourceLoc loc; };
  struct BreakOutsideLoop { SourceLoc loc; };

  std::variant<DuplicateLabel, UndefinedGotoTarget, BreakOutsideLoop> detail;
  std::string message() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// A valid program has no duplicate labels, no goto to an undefined label,
// and no break outside a loop. Violations are data, not failures.
ValidationReport validate(const Exp& e);

// Number of Exp constructors; tests inside guards are not counted.
size_t exp_size(const Exp& e);

}  // namespace cfgkat
