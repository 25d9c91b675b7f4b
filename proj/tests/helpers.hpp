// Shared helpers for the test suites.
#pragma once

#include <string>
#include <vector>

#include "cfgkat/oracle.hpp"
#include "cfgkat/syntax.hpp"
#include "cfgkat/trace.hpp"

namespace testutil {

using namespace cfgkat;

inline Alphabets make_alphabets(std::vector<std::string> actions, std::vector<std::string> tests,
                                std::vector<std::string> labels, std::vector<long long> indicators,
                                bool add_fresh = true) {
  Alphabets al;
  al.actions = std::move(actions);
  al.tests = std::move(tests);
  al.labels = std::move(labels);
  for (long long v : indicators) al.indicators.push_back(Indicator::of(v));
  if (add_fresh) al.indicators.push_back(Indicator::fresh());
  al.rebuild_index();
  return al;
}

inline GuardedWord word(std::vector<AtomIdx> atoms, std::vector<uint32_t> actions = {}) {
  return GuardedWord{std::move(atoms), std::move(actions)};
}

inline GuardedWordC wc(std::vector<AtomIdx> atoms, std::vector<uint32_t> actions,
                       Continuation cont) {
  return GuardedWordC{word(std::move(atoms), std::move(actions)), cont};
}

inline LangC langc(std::initializer_list<GuardedWordC> items) { return LangC(items); }
inline Lang lang(std::initializer_list<GuardedWord> items) { return Lang(items); }

}  // namespace testutil
