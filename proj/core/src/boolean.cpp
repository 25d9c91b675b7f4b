#include "cfgkat/boolean.hpp"

#include <variant>

namespace cfgkat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

bool atom_has_test(AtomIdx atom, uint32_t test) { return (atom >> test) & 1u; }

std::string atom_str(AtomIdx atom, const Alphabets& alphabets) {
  std::string out = "{";
  bool first = true;
  for (uint32_t k = 0; k < alphabets.tests.size(); ++k) {
    if (!atom_has_test(atom, k)) continue;
    if (!first) out += ",";
    out += alphabets.tests[k];
    first = false;
  }
  out += "}";
  return out;
}

size_t TestDenotation::count() const {
  size_t n = 0;
  for (bool b : bits_)
    if (b) ++n;
  return n;
}

TestDenotation denote(const BExp& b, const Alphabets& alphabets) {
  const size_t ni = alphabets.indicators.size();
  const size_t na = alphabets.num_atoms();
  return std::visit(
      overloaded{
          [&](const BExp::False&) { return TestDenotation(ni, na, false); },
          [&](const BExp::True&) { return TestDenotation(ni, na, true); },
          [&](const BExp::Prim& p) {
            auto t = alphabets.test_index(p.test);
            if (!t) throw UnknownIdError(p.test);
            TestDenotation d(ni, na);
            for (uint32_t i = 0; i < ni; ++i)
              for (AtomIdx a = 0; a < na; ++a)
                if (atom_has_test(a, *t)) d.set(i, a, true);
            return d;
          },
          [&](const BExp::IndEq& eq) {
            auto i = alphabets.indicator_index(eq.value);
            if (!i) throw UnknownIdError("indicator " + eq.value.str());
            TestDenotation d(ni, na);
            for (AtomIdx a = 0; a < na; ++a) d.set(*i, a, true);
            return d;
          },
          [&](const BExp::Or& o) {
            TestDenotation l = denote(*o.lhs, alphabets), r = denote(*o.rhs, alphabets);
            for (uint32_t i = 0; i < ni; ++i)
              for (AtomIdx a = 0; a < na; ++a) l.set(i, a, l.holds(i, a) || r.holds(i, a));
            return l;
          },
          [&](const BExp::And& an) {
            TestDenotation l = denote(*an.lhs, alphabets), r = denote(*an.rhs, alphabets);
            for (uint32_t i = 0; i < ni; ++i)
              for (AtomIdx a = 0; a < na; ++a) l.set(i, a, l.holds(i, a) && r.holds(i, a));
            return l;
          },
          [&](const BExp::Not& n) {
            TestDenotation d = denote(*n.arg, alphabets);
            for (uint32_t i = 0; i < ni; ++i)
              for (AtomIdx a = 0; a < na; ++a) d.set(i, a, !d.holds(i, a));
            return d;
          },
      },
      b.node);
}

}  // namespace cfgkat
