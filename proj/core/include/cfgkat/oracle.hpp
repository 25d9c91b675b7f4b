// Brute-force, bounded-depth reference semantics: indexed and labeled
// families of guarded words with continuations, sequencing, loop fixpoints,
// label-start semantics, and jump flattening. Exponential on purpose; this
// is the correctness oracle, not the checker.
#pragma once

#include <set>
#include <vector>

#include "cfgkat/trace.hpp"

namespace cfgkat {

using LangC = std::set<GuardedWordC>;
using Lang = std::set<GuardedWord>;

// One guarded language with continuations per starting indicator value.
struct IndexedFamilyC {
  std::vector<LangC> by_indicator;

  explicit IndexedFamilyC(size_t num_indicators = 0) : by_indicator(num_indicators) {}
  size_t num_indicators() const { return by_indicator.size(); }
  bool operator==(const IndexedFamilyC&) const = default;
};

// Families keyed by starting point: program start plus each label.
struct LabeledFamilyC {
  IndexedFamilyC start;
  std::vector<IndexedFamilyC> by_label;

  bool operator==(const LabeledFamilyC&) const = default;
};

// Guarded languages (continuations resolved) keyed the same way.
struct LabeledLanguages {
  std::vector<Lang> start;                 // by indicator
  std::vector<std::vector<Lang>> by_label; // [label][indicator]

  bool operator==(const LabeledLanguages&) const = default;
};

// Sequencing of indexed families: accepting words of `g` are coalesced with
// words of `h` starting at the matching indicator and boundary atom; words
// of `g` ending in brk/ret/jmp are copied through. Words that would exceed
// `bound` actions are dropped.
IndexedFamilyC seq_families(const IndexedFamilyC& g, const IndexedFamilyC& h, size_t bound);

// The full continuation semantics of a valid program, truncated to words of
// at most `bound` actions. Loop families are least fixed points, iterated
// until the bounded fragment stabilizes.
LabeledFamilyC cont_semantics(const Exp& e, const Alphabets& alphabets, size_t bound);

// Flattens a labeled family into guarded languages: acc/ret words drop their
// continuation, jmp words are stitched to resolved words of their target
// label, and everything else is discarded. Least fixed point within `bound`.
LabeledLanguages resolve(const LabeledFamilyC& g, size_t bound);

// resolve(cont_semantics(e)) at the program start for one indicator.
Lang trace_language(const Exp& e, uint32_t indicator, const Alphabets& alphabets, size_t bound);

}  // namespace cfgkat
