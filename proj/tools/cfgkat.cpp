// cfgkat - trace equivalence checking of blinded-C control flow.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cfgkat/dot.hpp"
#include "cfgkat/driver.hpp"
#include "cfgkat/frontend.hpp"
#include "cfgkat/gkat.hpp"
#include "cfgkat/oracle.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace cfgkat;

namespace {

constexpr int kExitEquivalent = 0;
constexpr int kExitInequivalent = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LiftedFunction {
  std::string name;
  ExpPtr exp;
  std::optional<std::string> indicator;
  IndicatorScan scan;
};

// Parse + detect + (optionally) blind + lift one paired function.
std::pair<LiftedFunction, LiftedFunction> lift_pair(const SourceFunction& a,
                                                    const SourceFunction& b, bool blind,
                                                    const std::optional<std::string>& forced) {
  LiftedFunction la{a.name, nullptr, forced ? forced : detect_indicator(a), scan_indicators(a)};
  LiftedFunction lb{b.name, nullptr, forced ? forced : detect_indicator(b), scan_indicators(b)};
  if (blind) {
    AutoBlindResult r = auto_blind(a, b);
    if (!forced) {
      la.indicator = r.first_indicator;
      lb.indicator = r.second_indicator;
    }
    la.exp = lift_to_exp(r.first, la.indicator, &r.table);
    lb.exp = lift_to_exp(r.second, lb.indicator, &r.table);
  } else {
    la.exp = lift_to_exp(a, la.indicator);
    lb.exp = lift_to_exp(b, lb.indicator);
  }
  return {std::move(la), std::move(lb)};
}

ordered_json alphabets_json(const Alphabets& al) {
  ordered_json j;
  j["actions"] = al.actions;
  j["tests"] = al.tests;
  j["labels"] = al.labels;
  ordered_json inds = ordered_json::array();
  for (const Indicator& i : al.indicators) inds.push_back(i.str());
  j["indicators"] = inds;
  j["atom_count"] = al.num_atoms();
  return j;
}

ordered_json report_json(const std::string& fn, const EquivalenceReport& r) {
  ordered_json j;
  j["function"] = fn;
  j["equivalent"] = r.equivalent;
  j["alphabets"] = alphabets_json(r.alphabets);
  ordered_json per = ordered_json::array();
  for (const auto& [ind, v] : r.per_indicator) {
    ordered_json e;
    e["indicator"] = ind.str();
    e["equivalent"] = v.equivalent;
    if (v.counterexample) {
      e["counterexample"] = v.counterexample->str(r.alphabets);
      e["divergence"] = v.divergence;
    }
    per.push_back(e);
  }
  j["per_indicator"] = per;
  ordered_json counts;
  counts["left_thompson"] = r.state_counts.left_thompson;
  counts["right_thompson"] = r.state_counts.right_thompson;
  counts["left_lowered"] = r.state_counts.left_lowered;
  counts["right_lowered"] = r.state_counts.right_lowered;
  j["state_counts"] = counts;
  ordered_json times;
  times["collect"] = r.timings.collect_seconds;
  times["thompson"] = r.timings.thompson_seconds;
  times["lower"] = r.timings.lower_seconds;
  times["normalize"] = r.timings.normalize_seconds;
  times["bisim"] = r.timings.bisim_seconds;
  j["timings_seconds"] = times;
  j["union_ops"] = r.total_union_ops;
  return j;
}

struct EquivArgs {
  std::string left, right;
  std::string fn_filter;
  bool auto_blind_flag = false;
  bool json = false;
  bool compare_labels = false;
  size_t max_tests = 16;
  std::string forced_indicator;
};

int run_equiv(const EquivArgs& args) {
  auto left_fns = parse_file(read_file(args.left));
  auto right_fns = parse_file(read_file(args.right));

  std::vector<std::pair<SourceFunction, SourceFunction>> pairs;
  std::vector<std::string> unpaired;
  for (const auto& lf : left_fns) {
    if (!args.fn_filter.empty() && lf.name != args.fn_filter) continue;
    auto it = std::find_if(right_fns.begin(), right_fns.end(),
                           [&](const SourceFunction& rf) { return rf.name == lf.name; });
    if (it == right_fns.end()) {
      unpaired.push_back(lf.name + " (only in " + args.left + ")");
      continue;
    }
    pairs.emplace_back(lf, *it);
  }
  for (const auto& rf : right_fns) {
    if (!args.fn_filter.empty() && rf.name != args.fn_filter) continue;
    if (std::none_of(left_fns.begin(), left_fns.end(),
                     [&](const SourceFunction& lf) { return lf.name == rf.name; }))
      unpaired.push_back(rf.name + " (only in " + args.right + ")");
  }
  for (const std::string& u : unpaired)
    std::cerr << "warning: skipping unpaired function " << u << "\n";
  if (pairs.empty()) {
    std::cerr << "error: no paired functions to compare\n";
    return kExitError;
  }

  std::optional<std::string> forced;
  if (!args.forced_indicator.empty()) forced = args.forced_indicator;

  EquivOptions options;
  options.max_tests = args.max_tests;
  options.compare_labels = args.compare_labels;

  bool all_equivalent = true;
  ordered_json out;
  out["left"] = args.left;
  out["right"] = args.right;
  out["functions"] = ordered_json::array();

  for (const auto& [a, b] : pairs) {
    auto [la, lb] = lift_pair(a, b, args.auto_blind_flag, forced);
    ValidationReport va = validate(*la.exp);
    if (!va.ok()) throw InvalidProgramError(args.left + ":" + a.name + "\n" + va.str());
    ValidationReport vb = validate(*lb.exp);
    if (!vb.ok()) throw InvalidProgramError(args.right + ":" + b.name + "\n" + vb.str());

    Alphabets al = collect_alphabets(*la.exp, *lb.exp);
    std::ostream& note = args.json ? std::cerr : std::cout;
    note << a.name << ": |T| = " << al.tests.size() << ", atom space 2^" << al.tests.size()
         << " = " << al.num_atoms() << "\n";

    EquivalenceReport r = equiv(*la.exp, *lb.exp, options);
    all_equivalent = all_equivalent && r.equivalent;

    if (args.json) {
      out["functions"].push_back(report_json(a.name, r));
    } else {
      std::cout << a.name << ": " << (r.equivalent ? "equivalent" : "inequivalent") << "\n";
      if (!r.equivalent) {
        for (const auto& [ind, v] : r.per_indicator)
          if (!v.equivalent && v.counterexample) {
            std::cout << "  starting indicator " << ind.str() << ": diverges after "
                      << v.counterexample->str(r.alphabets) << "\n    " << v.divergence << "\n";
            break;
          }
      }
      if (args.compare_labels)
        for (const auto& [key, v] : r.per_label)
          std::cout << "  label " << key.first << ", indicator " << key.second.str() << ": "
                    << (v.equivalent ? "equivalent" : "inequivalent") << "\n";
    }
  }

  if (args.json) {
    out["equivalent"] = all_equivalent;
    std::cout << out.dump(2) << "\n";
  }
  return all_equivalent ? kExitEquivalent : kExitInequivalent;
}

struct CheckArgs {
  std::string file;
  std::string fn_filter;
};

int run_check(const CheckArgs& args) {
  auto fns = parse_file(read_file(args.file));
  if (fns.empty()) {
    std::cerr << "error: no functions in " << args.file << "\n";
    return kExitError;
  }
  bool all_valid = true;
  for (const auto& fn : fns) {
    if (!args.fn_filter.empty() && fn.name != args.fn_filter) continue;
    IndicatorScan scan = scan_indicators(fn);
    std::cout << fn.name << ":\n";
    std::cout << "  indicator: " << (scan.chosen ? *scan.chosen : "(none)") << "\n";
    for (const std::string& q : scan.qualifying)
      if (scan.chosen && q != *scan.chosen)
        std::cout << "  also qualifying (not picked): " << q << "\n";
    for (const std::string& rj : scan.rejected)
      std::cout << "  declared but not qualifying: " << rj << "\n";

    // Blinding against itself makes any function liftable for inspection.
    AutoBlindResult blinded = auto_blind(fn, fn);
    ExpPtr e = lift_to_exp(blinded.first, blinded.first_indicator, &blinded.table);
    ValidationReport report = validate(*e);
    if (!report.ok()) {
      all_valid = false;
      std::cout << report.str();
      continue;
    }
    Alphabets al = collect_alphabets(*e, *e);
    std::cout << "  actions: " << al.actions.size() << ", tests: " << al.tests.size()
              << " (atoms " << al.num_atoms() << "), labels: " << al.labels.size()
              << ", indicators:";
    for (const Indicator& i : al.indicators) std::cout << " " << i.str();
    std::cout << "\n  valid\n";
  }
  return all_valid ? kExitEquivalent : kExitError;
}

struct DotArgs {
  std::string file;
  std::string out_dir;
  std::string fn_filter;
};

int run_dot(const DotArgs& args) {
  auto fns = parse_file(read_file(args.file));
  fs::create_directories(args.out_dir);
  for (const auto& fn : fns) {
    if (!args.fn_filter.empty() && fn.name != args.fn_filter) continue;
    AutoBlindResult blinded = auto_blind(fn, fn);
    ExpPtr e = lift_to_exp(blinded.first, blinded.first_indicator, &blinded.table);
    ValidationReport report = validate(*e);
    if (!report.ok()) {
      std::cerr << "error: " << fn.name << " is not a valid program\n" << report.str();
      return kExitError;
    }
    Alphabets al = collect_alphabets(*e, *e);
    CfAutomaton cf = add_start_state(thompson(*e, al));

    fs::path base = fs::path(args.out_dir) / fn.name;
    std::ofstream(base.string() + ".cf.dot") << to_dot(cf, al, fn.name);
    for (uint32_t i = 0; i < al.indicators.size(); ++i) {
      GkatAutomaton g = lower(cf, i);
      std::ofstream(base.string() + ".i" + std::to_string(i) + ".dot")
          << to_dot(g, al, fn.name + " from " + al.indicators[i].str());
    }
    std::cout << "wrote " << base.string() << ".cf.dot and " << al.indicators.size()
              << " lowered automata\n";
  }
  return kExitEquivalent;
}

struct CrosscheckArgs {
  std::string file;
  std::string fn_filter;
  size_t bound = 4;
  bool mutate = false;
};

int run_crosscheck(const CrosscheckArgs& args) {
  auto fns = parse_file(read_file(args.file));
  bool all_equal = true;
  for (const auto& fn : fns) {
    if (!args.fn_filter.empty() && fn.name != args.fn_filter) continue;
    AutoBlindResult blinded = auto_blind(fn, fn);
    ExpPtr e = lift_to_exp(blinded.first, blinded.first_indicator, &blinded.table);
    ValidationReport report = validate(*e);
    if (!report.ok()) {
      std::cerr << "error: " << fn.name << " is not a valid program\n" << report.str();
      return kExitError;
    }
    Alphabets al = collect_alphabets(*e, *e);
    CfAutomaton cf = add_start_state(thompson(*e, al));
    GkatAutomaton g = lower(cf, 0);
    if (args.mutate) {
      // Negative control: corrupt one transition and expect a witness.
      for (auto& row : g.states)
        for (auto& t : row)
          if (t.tag != GkatTransition::Tag::Reject) {
            t = GkatTransition::reject();
            goto mutated;
          }
    mutated:;
    }
    for (uint32_t i = 0; i < al.indicators.size(); ++i) {
      g.start = lowered_state_id(cf, cf.start_state(), i);
      Lang from_automaton = enumerate_language(g, args.bound);
      Lang from_oracle = trace_language(*e, i, al, args.bound);
      if (from_automaton == from_oracle) continue;
      all_equal = false;
      Lang diff;
      std::set_symmetric_difference(from_automaton.begin(), from_automaton.end(),
                                    from_oracle.begin(), from_oracle.end(),
                                    std::inserter(diff, diff.begin()));
      std::cout << fn.name << ": mismatch at indicator " << al.indicators[i].str()
                << ", witness " << diff.begin()->str(al) << "\n";
      break;
    }
    if (all_equal)
      std::cout << fn.name << ": pipeline and oracle agree at bound " << args.bound << "\n";
  }
  return all_equal ? kExitEquivalent : kExitInequivalent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CF-GKAT trace equivalence checker for blinded C control flow"};
  app.require_subcommand(1);

  EquivArgs equiv_args;
  CLI::App* cmd_equiv = app.add_subcommand("equiv", "Check two C files for trace equivalence");
  cmd_equiv->add_option("left", equiv_args.left, "First C file")->required();
  cmd_equiv->add_option("right", equiv_args.right, "Second C file")->required();
  cmd_equiv->add_option("--fn", equiv_args.fn_filter, "Only check the named function");
  cmd_equiv->add_flag("--auto-blind", equiv_args.auto_blind_flag,
                      "Replace unrecognized statements/conditions with pact/pbool");
  cmd_equiv->add_flag("--json", equiv_args.json, "Emit a JSON report on stdout");
  cmd_equiv->add_option("--max-tests", equiv_args.max_tests,
                        "Cap on |T| (the atom space is 2^|T|)");
  cmd_equiv->add_option("--indicator", equiv_args.forced_indicator,
                        "Force the indicator variable name for both inputs");
  cmd_equiv->add_flag("--compare-labels", equiv_args.compare_labels,
                      "Also compare label-start behavior (experimental; not part of the verdict)");

  CheckArgs check_args;
  CLI::App* cmd_check = app.add_subcommand("check", "Parse and validate a C file");
  cmd_check->add_option("file", check_args.file, "C file")->required();
  cmd_check->add_option("--fn", check_args.fn_filter, "Only check the named function");

  DotArgs dot_args;
  CLI::App* cmd_dot = app.add_subcommand("dot", "Export automata as Graphviz files");
  cmd_dot->add_option("file", dot_args.file, "C file")->required();
  cmd_dot->add_option("--out", dot_args.out_dir, "Output directory")->required();
  cmd_dot->add_option("--fn", dot_args.fn_filter, "Only export the named function");

  CrosscheckArgs cross_args;
  CLI::App* cmd_cross = app.add_subcommand(
      "crosscheck", "Compare the automaton pipeline against the brute-force oracle");
  cmd_cross->add_option("file", cross_args.file, "C file")->required();
  cmd_cross->add_option("--bound", cross_args.bound, "Maximum actions per trace")->required();
  cmd_cross->add_option("--fn", cross_args.fn_filter, "Only check the named function");
  cmd_cross->add_flag("--mutate", cross_args.mutate,
                      "Corrupt the pipeline first (negative control for the oracle)");

  try {
    app.parse(argc, argv);
    if (*cmd_equiv) return run_equiv(equiv_args);
    if (*cmd_check) return run_check(check_args);
    if (*cmd_dot) return run_dot(dot_args);
    if (*cmd_cross) return run_crosscheck(cross_args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
