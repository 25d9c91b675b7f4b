#include "cfgkat/driver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <functional>

namespace cfgkat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

EquivalenceReport equiv(const Exp& e, const Exp& f, const EquivOptions& options) {
  ValidationReport ve = validate(e);
  if (!ve.ok()) throw InvalidProgramError(ve.str());
  ValidationReport vf = validate(f);
  if (!vf.ok()) throw InvalidProgramError(vf.str());

  EquivalenceReport report;
  auto t0 = std::chrono::steady_clock::now();
  report.alphabets = options.alphabets ? *options.alphabets : collect_alphabets(e, f);
  report.alphabets.rebuild_index();
  report.timings.collect_seconds = seconds_since(t0);

  const Alphabets& al = report.alphabets;
  if (al.tests.size() > options.max_tests)
    throw Error("test alphabet has " + std::to_string(al.tests.size()) +
                " tests, above the cap of " + std::to_string(options.max_tests) +
                " (atom space is 2^|T|)");

  t0 = std::chrono::steady_clock::now();
  CfAutomaton cf0 = add_start_state(thompson(e, al));
  CfAutomaton cf1 = add_start_state(thompson(f, al));
  report.state_counts.left_thompson = cf0.states.size() - 1;
  report.state_counts.right_thompson = cf1.states.size() - 1;

  // With the label-start comparison enabled, each label gets a pseudo state
  // carrying its jump dynamics, so lowered label entry points are ordinary
  // states. These are unreachable from the start and do not affect it.
  std::vector<StateId> label_states0, label_states1;
  if (options.compare_labels) {
    for (const Dynamics& lam : cf0.jump_map) {
      label_states0.push_back(static_cast<StateId>(cf0.states.size()));
      cf0.states.push_back(lam);
    }
    for (const Dynamics& lam : cf1.jump_map) {
      label_states1.push_back(static_cast<StateId>(cf1.states.size()));
      cf1.states.push_back(lam);
    }
  }
  report.timings.thompson_seconds = seconds_since(t0);

  // The lowered table is independent of the starting indicator; build it
  // once per side and swap start states per indicator below.
  t0 = std::chrono::steady_clock::now();
  GkatAutomaton g0 = lower(cf0, 0);
  GkatAutomaton g1 = lower(cf1, 0);
  report.state_counts.left_lowered = g0.num_states();
  report.state_counts.right_lowered = g1.num_states();
  report.timings.lower_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  g0 = normalize(g0);
  g1 = normalize(g1);
  report.timings.normalize_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const size_t ni = al.indicators.size();
  for (uint32_t i = 0; i < ni; ++i) {
    g0.start = lowered_state_id(cf0, cf0.start_state(), i);
    g1.start = lowered_state_id(cf1, cf1.start_state(), i);
    EquivVerdict v = bisim_equiv(g0, g1, &report.alphabets);
    report.total_union_ops += v.union_ops;
    report.equivalent = report.equivalent && v.equivalent;
    report.per_indicator.emplace_back(al.indicators[i], std::move(v));
  }
  if (options.compare_labels) {
    for (size_t l = 0; l < al.labels.size(); ++l)
      for (uint32_t i = 0; i < ni; ++i) {
        g0.start = lowered_state_id(cf0, label_states0[l], i);
        g1.start = lowered_state_id(cf1, label_states1[l], i);
        EquivVerdict v = bisim_equiv(g0, g1, &report.alphabets);
        report.per_label.emplace_back(std::make_pair(al.labels[l], al.indicators[i]),
                                      std::move(v));
      }
  }
  report.timings.bisim_seconds = seconds_since(t0);
  return report;
}

ExpPtr single_loop_normal_form(const GkatAutomaton& a, const Alphabets& alphabets,
                               long long code_base) {
  const size_t ns = a.num_states();
  auto enc = [&](StateId s) { return Indicator::of(code_base + static_cast<long long>(s)); };
  const Indicator halt = Indicator::of(code_base + static_cast<long long>(ns));
  const Indicator dead = Indicator::of(code_base + static_cast<long long>(ns) + 1);

  auto atom_test = [&](AtomIdx atom) {
    BExpPtr t = bexp::true_();
    for (uint32_t k = 0; k < alphabets.tests.size(); ++k) {
      BExpPtr lit = atom_has_test(atom, k) ? bexp::prim(alphabets.tests[k])
                                           : bexp::not_(bexp::prim(alphabets.tests[k]));
      t = (k == 0) ? lit : bexp::and_(t, lit);
    }
    return t;
  };

  // Innermost else: unmatched configurations (in particular x = DEAD) keep
  // looping without an accepting case, i.e. they diverge.
  ExpPtr body = exp::assign(dead);
  for (size_t s = ns; s-- > 0;) {
    for (size_t atom = a.num_atoms; atom-- > 0;) {
      const GkatTransition& t = a.states[s][atom];
      ExpPtr handler;
      switch (t.tag) {
        case GkatTransition::Tag::Accept:
          handler = exp::assign(halt);
          break;
        case GkatTransition::Tag::Reject:
          handler = exp::assign(dead);
          break;
        case GkatTransition::Tag::Step:
          handler = exp::seq(exp::act(alphabets.actions[t.action]), exp::assign(enc(t.state)));
          break;
      }
      BExpPtr guard = bexp::and_(bexp::ind_eq(enc(static_cast<StateId>(s))),
                                 atom_test(static_cast<AtomIdx>(atom)));
      body = exp::if_(guard, handler, body);
    }
  }

  return exp::seq(exp::assign(enc(a.start)),
                  exp::while_(bexp::not_(bexp::ind_eq(halt)), body));
}

namespace {

struct Generator {
  std::mt19937_64 rng;
  GeneratorLimits limits;
  std::vector<LabelId> planned_labels;
  std::vector<LabelId> unplaced;  // labels still available for a Label node
  bool used_goto = false;

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }

  ActionId action() { return "p" + std::to_string(pick(limits.num_actions)); }
  TestId test() { return "t" + std::to_string(pick(limits.num_tests)); }
  Indicator indicator() {
    return Indicator::of(static_cast<long long>(pick(limits.num_indicators)));
  }

  BExpPtr bexp(size_t depth) {
    if (depth == 0 || pick(2) == 0) {
      switch (pick(4)) {
        case 0: return bexp::true_();
        case 1: return bexp::false_();
        case 2: return limits.num_tests > 0 ? bexp::prim(test()) : bexp::true_();
        default:
          return limits.num_indicators > 0 ? bexp::ind_eq(indicator()) : bexp::false_();
      }
    }
    switch (pick(3)) {
      case 0: return bexp::and_(bexp(depth - 1), bexp(depth - 1));
      case 1: return bexp::or_(bexp(depth - 1), bexp(depth - 1));
      default: return bexp::not_(bexp(depth - 1));
    }
  }

  ExpPtr leaf(bool in_loop) {
    while (true) {
      switch (pick(7)) {
        case 0: return exp::assert_(bexp(1));
        case 1:
          if (limits.num_actions > 0) return exp::act(action());
          break;
        case 2:
          if (limits.num_indicators > 0) return exp::assign(indicator());
          break;
        case 3: return exp::return_();
        case 4:
          if (!planned_labels.empty()) {
            used_goto = true;
            return exp::goto_(planned_labels[pick(planned_labels.size())]);
          }
          break;
        case 5:
          if (!unplaced.empty()) {
            LabelId l = unplaced.back();
            unplaced.pop_back();
            return exp::label(l);
          }
          break;
        default:
          if (in_loop) return exp::break_();
          break;
      }
    }
  }

  ExpPtr gen(size_t budget, bool in_loop) {
    if (budget <= 1) return leaf(in_loop);
    switch (pick(5)) {
      case 0:
        return leaf(in_loop);
      case 1: {  // seq
        size_t left = 1 + pick(budget - 1);
        return exp::seq(gen(left, in_loop), gen(budget - left, in_loop));
      }
      case 2: {  // if
        if (budget < 3) return leaf(in_loop);
        size_t left = 1 + pick(budget - 2);
        return exp::if_(bexp(1), gen(left, in_loop), gen(budget - 1 - left, in_loop));
      }
      default:
        return exp::while_(bexp(1), gen(budget - 1, true));
    }
  }
};

}  // namespace

ExpPtr random_program(uint64_t seed, const GeneratorLimits& limits) {
  Generator g{std::mt19937_64(seed), limits, {}, {}, false};
  size_t num_labels = limits.num_labels == 0 ? 0 : g.pick(limits.num_labels + 1);
  for (size_t k = 0; k < num_labels; ++k) g.planned_labels.push_back("l" + std::to_string(k));
  g.unplaced = g.planned_labels;

  ExpPtr e = g.gen(std::max<size_t>(limits.max_nodes, 1), false);

  // Any referenced-but-unplaced label becomes a jump to the program end.
  for (const LabelId& l : g.planned_labels)
    if (!contains_label(*e, l) && g.used_goto) e = exp::seq(e, exp::label(l));

  assert(validate(*e).ok());
  return e;
}

namespace {

// Paths to subtrees, as sequences of child indices.
using Path = std::vector<int>;

void collect_paths(const Exp& e, Path& cur, std::vector<std::pair<Path, int>>& out) {
  // kind: 0 any node, 1 if node, 2 reassociable seq
  out.emplace_back(cur, 0);
  std::visit(overloaded{
                 [&](const Exp::Seq& s) {
                   if (std::holds_alternative<Exp::Seq>(s.first->node) ||
                       std::holds_alternative<Exp::Seq>(s.second->node))
                     out.emplace_back(cur, 2);
                   cur.push_back(0);
                   collect_paths(*s.first, cur, out);
                   cur.back() = 1;
                   collect_paths(*s.second, cur, out);
                   cur.pop_back();
                 },
                 [&](const Exp::If& i) {
                   out.emplace_back(cur, 1);
                   cur.push_back(0);
                   collect_paths(*i.then_branch, cur, out);
                   cur.back() = 1;
                   collect_paths(*i.else_branch, cur, out);
                   cur.pop_back();
                 },
                 [&](const Exp::While& w) {
                   cur.push_back(0);
                   collect_paths(*w.body, cur, out);
                   cur.pop_back();
                 },
                 [&](const auto&) {},
             },
             e.node);
}

ExpPtr rewrite_at(const Exp& e, const Path& path, size_t depth,
                  const std::function<ExpPtr(const Exp&)>& apply) {
  if (depth == path.size()) return apply(e);
  return std::visit(
      overloaded{
          [&](const Exp::Seq& s) {
            return path[depth] == 0
                       ? exp::seq(rewrite_at(*s.first, path, depth + 1, apply), s.second, e.loc)
                       : exp::seq(s.first, rewrite_at(*s.second, path, depth + 1, apply), e.loc);
          },
          [&](const Exp::If& i) {
            return path[depth] == 0
                       ? exp::if_(i.guard, rewrite_at(*i.then_branch, path, depth + 1, apply),
                                  i.else_branch, e.loc)
                       : exp::if_(i.guard, i.then_branch,
                                  rewrite_at(*i.else_branch, path, depth + 1, apply), e.loc);
          },
          [&](const Exp::While& w) {
            return exp::while_(w.guard, rewrite_at(*w.body, path, depth + 1, apply), e.loc);
          },
          [&](const auto&) -> ExpPtr { throw Error("rewrite path mismatch"); },
      },
      e.node);
}

}  // namespace

ExpPtr random_rewrite(const Exp& e, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };

  std::vector<std::pair<Path, int>> all;
  Path cur;
  collect_paths(e, cur, all);

  std::vector<std::pair<Path, int>> ifs, seqs;
  for (auto& p : all) {
    if (p.second == 1) ifs.push_back(p);
    if (p.second == 2) seqs.push_back(p);
  }

  size_t rule = pick(3);
  if (rule == 1 && ifs.empty()) rule = 0;
  if (rule == 2 && seqs.empty()) rule = 0;

  if (rule == 1) {  // branch swap with negated guard
    const Path& path = ifs[pick(ifs.size())].first;
    return rewrite_at(e, path, 0, [&](const Exp& n) {
      const auto& i = std::get<Exp::If>(n.node);
      return exp::if_(bexp::not_(i.guard), i.else_branch, i.then_branch, n.loc);
    });
  }
  if (rule == 2) {  // seq reassociation
    const Path& path = seqs[pick(seqs.size())].first;
    return rewrite_at(e, path, 0, [&](const Exp& n) {
      const auto& s = std::get<Exp::Seq>(n.node);
      if (std::holds_alternative<Exp::Seq>(s.first->node)) {
        const auto& inner = std::get<Exp::Seq>(s.first->node);
        return exp::seq(inner.first, exp::seq(inner.second, s.second), n.loc);
      }
      const auto& inner = std::get<Exp::Seq>(s.second->node);
      return exp::seq(exp::seq(s.first, inner.first), inner.second, n.loc);
    });
  }

  // No-op label insertion at a random position, with a label id that does
  // not collide with existing ones.
  int k = 0;
  while (contains_label(e, "rw" + std::to_string(k))) ++k;
  LabelId fresh = "rw" + std::to_string(k);
  const Path& path = all[pick(all.size())].first;
  return rewrite_at(e, path, 0,
                    [&](const Exp& n) { return exp::seq(exp::label(fresh), std::make_shared<Exp>(n)); });
}

}  // namespace cfgkat
