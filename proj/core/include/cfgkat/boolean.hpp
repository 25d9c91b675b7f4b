// Atoms over the test alphabet and the Boolean semantics of tests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfgkat/syntax.hpp"

namespace cfgkat {

// An atom is a complete truth assignment to the tests in T, packed as a
// bitmask: bit k set  <=>  tests[k] holds. Atom indices therefore run over
// 0 .. 2^|T|-1 in ascending bitmask order.
using AtomIdx = uint32_t;

bool atom_has_test(AtomIdx atom, uint32_t test);
std::string atom_str(AtomIdx atom, const Alphabets& alphabets);

// The subset of I x At satisfied by a test, stored densely: one bit per
// (indicator, atom) pair.
class TestDenotation {
public:
  TestDenotation(size_t num_indicators, size_t num_atoms, bool fill = false)
      : num_indicators_(num_indicators),
        num_atoms_(num_atoms),
        bits_(num_indicators * num_atoms, fill) {}

  size_t num_indicators() const { return num_indicators_; }
  size_t num_atoms() const { return num_atoms_; }

  bool holds(uint32_t indicator, AtomIdx atom) const {
    return bits_[size_t{indicator} * num_atoms_ + atom];
  }
  void set(uint32_t indicator, AtomIdx atom, bool value) {
    bits_[size_t{indicator} * num_atoms_ + atom] = value;
  }

  size_t count() const;

  bool operator==(const TestDenotation&) const = default;

private:
  size_t num_indicators_;
  size_t num_atoms_;
  std::vector<bool> bits_;
};

// Structural recursion over the test: false/true are the empty/full set,
// a primitive test selects the atoms containing it, an indicator test
// selects one indicator row, and or/and/not act as set algebra on I x At.
// Throws UnknownIdError when the test mentions an id outside `alphabets`.
TestDenotation denote(const BExp& b, const Alphabets& alphabets);

inline bool holds(const TestDenotation& d, uint32_t indicator, AtomIdx atom) {
  return d.holds(indicator, atom);
}

}  // namespace cfgkat
