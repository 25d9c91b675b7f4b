// End-to-end trace-equivalence decision, the single-loop normal form, and
// random program generation for property suites.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cfgkat/gkat.hpp"
#include "cfgkat/syntax.hpp"
#include "cfgkat/thompson.hpp"

namespace cfgkat {

struct EquivOptions {
  // Atoms are enumerated exhaustively; equivalence is exponential in |T|.
  size_t max_tests = 16;
  // Also compare the label-start semantics of both programs. This is
  // experimental and beyond the trace-equivalence contract; the verdict
  // field is not affected.
  bool compare_labels = false;
  // Alphabet override for experiments (e.g. adding unused indicator
  // values); collected from the inputs when absent.
  std::optional<Alphabets> alphabets;
};

struct StageTimings {
  double collect_seconds = 0;
  double thompson_seconds = 0;
  double lower_seconds = 0;
  double normalize_seconds = 0;
  double bisim_seconds = 0;
};

struct StateCounts {
  size_t left_thompson = 0;
  size_t right_thompson = 0;
  size_t left_lowered = 0;
  size_t right_lowered = 0;
};

struct EquivalenceReport {
  bool equivalent = true;  // conjunction of the per-indicator verdicts
  std::vector<std::pair<Indicator, EquivVerdict>> per_indicator;
  // Filled only with EquivOptions::compare_labels: one verdict per
  // (label, indicator) start.
  std::vector<std::pair<std::pair<LabelId, Indicator>, EquivVerdict>> per_label;
  Alphabets alphabets;
  StageTimings timings;
  StateCounts state_counts;
  size_t total_union_ops = 0;
};

// The four-step decision procedure: collect alphabets (with a fresh
// indicator), compile both programs, lower at every indicator value, and
// check bisimulation of the normalized GKAT automata. True iff every check
// agrees. Throws InvalidProgramError on invalid inputs.
EquivalenceReport equiv(const Exp& e, const Exp& f, const EquivOptions& options = {});

// Rebuilds an automaton as one while loop driven by an indicator variable
// that encodes the current state: enc(s) for each state, plus HALT and a
// DEAD value with no accepting case (divergence). Indicator codes start at
// `code_base`; pick a base disjoint from any program the result will be
// compared against.
ExpPtr single_loop_normal_form(const GkatAutomaton& a, const Alphabets& alphabets,
                               long long code_base = 0);

struct GeneratorLimits {
  size_t max_nodes = 15;
  size_t num_actions = 3;
  size_t num_tests = 2;
  size_t num_indicators = 3;
  size_t num_labels = 2;
};

// Grammar-directed sampling of valid programs: break only under a loop,
// labels unique, gotos always target a label present in the result.
// Deterministic in the seed.
ExpPtr random_program(uint64_t seed, const GeneratorLimits& limits = {});

// A random semantics-preserving rewrite of a valid program: no-op label
// insertion, branch swap with negated guard, or seq reassociation. The
// result is valid and trace-equivalent to the input.
ExpPtr random_rewrite(const Exp& e, uint64_t seed);

}  // namespace cfgkat
