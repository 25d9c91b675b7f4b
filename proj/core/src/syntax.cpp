#include "cfgkat/syntax.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace cfgkat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

namespace bexp {

BExpPtr false_(SourceLoc loc) { return std::make_shared<BExp>(BExp{BExp::False{}, loc}); }
BExpPtr true_(SourceLoc loc) { return std::make_shared<BExp>(BExp{BExp::True{}, loc}); }
BExpPtr prim(TestId test, SourceLoc loc) {
  return std::make_shared<BExp>(BExp{BExp::Prim{std::move(test)}, loc});
}
BExpPtr ind_eq(Indicator value, SourceLoc loc) {
  return std::make_shared<BExp>(BExp{BExp::IndEq{value}, loc});
}
BExpPtr or_(BExpPtr lhs, BExpPtr rhs, SourceLoc loc) {
  return std::make_shared<BExp>(BExp{BExp::Or{std::move(lhs), std::move(rhs)}, loc});
}
BExpPtr and_(BExpPtr lhs, BExpPtr rhs, SourceLoc loc) {
  return std::make_shared<BExp>(BExp{BExp::And{std::move(lhs), std::move(rhs)}, loc});
}
BExpPtr not_(BExpPtr arg, SourceLoc loc) {
  return std::make_shared<BExp>(BExp{BExp::Not{std::move(arg)}, loc});
}

}  // namespace bexp

namespace exp {

ExpPtr assert_(BExpPtr test, SourceLoc loc) {
  return std::make_shared<Exp>(Exp{Exp::Assert{std::move(test)}, loc});
}
ExpPtr skip(SourceLoc loc) { return assert_(bexp::true_(loc), loc); }
ExpPtr act(ActionId action, SourceLoc loc) {
  return std::make_shared<Exp>(Exp{Exp::Act{std::move(action)}, loc});
}
ExpPtr assign(Indicator value, SourceLoc loc) {
  return std::make_shared<Exp>(Exp{Exp::Assign{value}, loc});
}
ExpPtr seq(ExpPtr first, ExpPtr second, SourceLoc loc) {
  return std::make_shared<Exp>(Exp{Exp::Seq{std::move(first), std::move(second)}, loc});
}

ExpPtr seq_all(std::vector<ExpPtr> items, SourceLoc loc) {
  if (items.empty()) return skip(loc);
  // Balanced fold: keeps both compilation recursion and shared_ptr
  // destruction shallow for long statement lists.
  std::function<ExpPtr(size_t, size_t)> fold = [&](size_t lo, size_t hi) -> ExpPtr {
    if (hi - lo == 1) return items[lo];
    size_t mid = lo + (hi - lo) / 2;
    return seq(fold(lo, mid), fold(mid, hi), loc);
  };
  return fold(0, items.size());
}

ExpPtr if_(BExpPtr guard, ExpPtr then_branch, ExpPtr else_branch, SourceLoc loc) {
  return std::make_shared<Exp>(
      Exp{Exp::If{std::move(guard), std::move(then_branch), std::move(else_branch)}, loc});
}
ExpPtr while_(BExpPtr guard, ExpPtr body, SourceLoc loc) {
  return std::make_shared<Exp>(Exp{Exp::While{std::move(guard), std::move(body)}, loc});
}
ExpPtr break_(SourceLoc loc) { return std::make_shared<Exp>(Exp{Exp::Break{}, loc}); }
ExpPtr return_(SourceLoc loc) { return std::make_shared<Exp>(Exp{Exp::Return{}, loc}); }
ExpPtr goto_(LabelId label, SourceLoc loc) {
  return std::make_shared<Exp>(Exp{Exp::Goto{std::move(label)}, loc});
}
ExpPtr label(LabelId label, SourceLoc loc) {
  return std::make_shared<Exp>(Exp{Exp::Label{std::move(label)}, loc});
}

}  // namespace exp

std::string to_string(const BExp& b) {
  return std::visit(
      overloaded{
          [](const BExp::False&) -> std::string { return "false"; },
          [](const BExp::True&) -> std::string { return "true"; },
          [](const BExp::Prim& p) -> std::string { return p.test; },
          [](const BExp::IndEq& i) -> std::string { return "x=" + i.value.str(); },
          [](const BExp::Or& o) -> std::string {
            return "(" + to_string(*o.lhs) + " or " + to_string(*o.rhs) + ")";
          },
          [](const BExp::And& a) -> std::string {
            return "(" + to_string(*a.lhs) + " and " + to_string(*a.rhs) + ")";
          },
          [](const BExp::Not& n) -> std::string { return "not " + to_string(*n.arg); },
      },
      b.node);
}

std::string to_string(const Exp& e) {
  return std::visit(
      overloaded{
          [](const Exp::Assert& a) -> std::string { return "assert " + to_string(*a.test); },
          [](const Exp::Act& a) -> std::string { return a.action; },
          [](const Exp::Assign& a) -> std::string { return "x:=" + a.value.str(); },
          [](const Exp::Seq& s) -> std::string {
            return to_string(*s.first) + "; " + to_string(*s.second);
          },
          [](const Exp::If& i) -> std::string {
            return "if " + to_string(*i.guard) + " { " + to_string(*i.then_branch) + " } else { " +
                   to_string(*i.else_branch) + " }";
          },
          [](const Exp::While& w) -> std::string {
            return "while " + to_string(*w.guard) + " { " + to_string(*w.body) + " }";
          },
          [](const Exp::Break&) -> std::string { return "break"; },
          [](const Exp::Return&) -> std::string { return "return"; },
          [](const Exp::Goto& g) -> std::string { return "goto " + g.label; },
          [](const Exp::Label& l) -> std::string { return "label " + l.label; },
      },
      e.node);
}

std::optional<uint32_t> Alphabets::action_index(const ActionId& a) const {
  auto it = action_idx_.find(a);
  if (it == action_idx_.end()) return std::nullopt;
  return it->second;
}
std::optional<uint32_t> Alphabets::test_index(const TestId& t) const {
  auto it = test_idx_.find(t);
  if (it == test_idx_.end()) return std::nullopt;
  return it->second;
}
std::optional<uint32_t> Alphabets::label_index(const LabelId& l) const {
  auto it = label_idx_.find(l);
  if (it == label_idx_.end()) return std::nullopt;
  return it->second;
}
std::optional<uint32_t> Alphabets::indicator_index(const Indicator& i) const {
  if (i.is_fresh()) return fresh_idx_;
  auto it = ind_idx_.find(i.value());
  if (it == ind_idx_.end()) return std::nullopt;
  return it->second;
}

void Alphabets::rebuild_index() {
  action_idx_.clear();
  test_idx_.clear();
  label_idx_.clear();
  ind_idx_.clear();
  fresh_idx_.reset();
  for (uint32_t k = 0; k < actions.size(); ++k) action_idx_.emplace(actions[k], k);
  for (uint32_t k = 0; k < tests.size(); ++k) test_idx_.emplace(tests[k], k);
  for (uint32_t k = 0; k < labels.size(); ++k) label_idx_.emplace(labels[k], k);
  for (uint32_t k = 0; k < indicators.size(); ++k) {
    if (indicators[k].is_fresh())
      fresh_idx_ = k;
    else
      ind_idx_.emplace(indicators[k].value(), k);
  }
}

namespace {

struct Collector {
  Alphabets& out;
  std::unordered_set<std::string> seen_actions, seen_tests, seen_labels;
  std::unordered_set<long long> seen_inds;

  void add_indicator(Indicator i) {
    if (!i.is_fresh() && seen_inds.insert(i.value()).second) out.indicators.push_back(i);
  }

  void walk(const BExp& b) {
    std::visit(overloaded{
                   [&](const BExp::Prim& p) {
                     if (seen_tests.insert(p.test).second) out.tests.push_back(p.test);
                   },
                   [&](const BExp::IndEq& i) { add_indicator(i.value); },
                   [&](const BExp::Or& o) {
                     walk(*o.lhs);
                     walk(*o.rhs);
                   },
                   [&](const BExp::And& a) {
                     walk(*a.lhs);
                     walk(*a.rhs);
                   },
                   [&](const BExp::Not& n) { walk(*n.arg); },
                   [&](const auto&) {},
               },
               b.node);
  }

  void walk(const Exp& e) {
    std::visit(overloaded{
                   [&](const Exp::Assert& a) { walk(*a.test); },
                   [&](const Exp::Act& a) {
                     if (seen_actions.insert(a.action).second) out.actions.push_back(a.action);
                   },
                   [&](const Exp::Assign& a) { add_indicator(a.value); },
                   [&](const Exp::Seq& s) {
                     walk(*s.first);
                     walk(*s.second);
                   },
                   [&](const Exp::If& i) {
                     walk(*i.guard);
                     walk(*i.then_branch);
                     walk(*i.else_branch);
                   },
                   [&](const Exp::While& w) {
                     walk(*w.guard);
                     walk(*w.body);
                   },
                   [&](const Exp::Goto& g) {
                     if (seen_labels.insert(g.label).second) out.labels.push_back(g.label);
                   },
                   [&](const Exp::Label& l) {
                     if (seen_labels.insert(l.label).second) out.labels.push_back(l.label);
                   },
                   [&](const auto&) {},
               },
               e.node);
  }
};

}  // namespace

Alphabets collect_alphabets(const Exp& e, const Exp& f) {
  Alphabets out;
  Collector c{out, {}, {}, {}, {}};
  c.walk(e);
  c.walk(f);
  out.indicators.push_back(Indicator::fresh());
  out.rebuild_index();
  return out;
}

std::string Violation::message() const {
  return std::visit(
      overloaded{
          [](const DuplicateLabel& d) {
            return "duplicate label '" + d.label + "' at " + d.first.str() + " and " +
                   d.second.str();
          },
          [](const UndefinedGotoTarget& u) {
            return "goto to undefined label '" + u.label + "' at " + u.loc.str();
          },
          [](const BreakOutsideLoop& b) { return "break outside a loop at " + b.loc.str(); },
      },
      detail);
}

std::string ValidationReport::str() const {
  std::string out;
  for (const auto& v : violations) {
    out += v.message();
    out += '\n';
  }
  return out;
}

namespace {

struct Validator {
  ValidationReport& report;
  std::unordered_map<std::string, SourceLoc> defined_labels;
  std::vector<std::pair<LabelId, SourceLoc>> gotos;

  void walk(const Exp& e, bool in_loop) {
    std::visit(overloaded{
                   [&](const Exp::Seq& s) {
                     walk(*s.first, in_loop);
                     walk(*s.second, in_loop);
                   },
                   [&](const Exp::If& i) {
                     walk(*i.then_branch, in_loop);
                     walk(*i.else_branch, in_loop);
                   },
                   [&](const Exp::While& w) { walk(*w.body, true); },
                   [&](const Exp::Break&) {
                     if (!in_loop)
                       report.violations.push_back({Violation::BreakOutsideLoop{e.loc}});
                   },
                   [&](const Exp::Goto& g) { gotos.emplace_back(g.label, e.loc); },
                   [&](const Exp::Label& l) {
                     auto [it, inserted] = defined_labels.emplace(l.label, e.loc);
                     if (!inserted)
                       report.violations.push_back(
                           {Violation::DuplicateLabel{l.label, it->second, e.loc}});
                   },
                   [&](const auto&) {},
               },
               e.node);
  }
};

}  // namespace

ValidationReport validate(const Exp& e) {
  ValidationReport report;
  Validator v{report, {}, {}};
  v.walk(e, false);
  std::unordered_set<std::string> reported;
  for (const auto& [label, loc] : v.gotos) {
    if (!v.defined_labels.count(label) && reported.insert(label).second)
      report.violations.push_back({Violation::UndefinedGotoTarget{label, loc}});
  }
  return report;
}

size_t exp_size(const Exp& e) {
  return 1 + std::visit(overloaded{
                            [](const Exp::Seq& s) { return exp_size(*s.first) + exp_size(*s.second); },
                            [](const Exp::If& i) {
                              return exp_size(*i.then_branch) + exp_size(*i.else_branch);
                            },
                            [](const Exp::While& w) { return exp_size(*w.body); },
                            [](const auto&) { return size_t{0}; },
                        },
                        e.node);
}

}  // namespace cfgkat
