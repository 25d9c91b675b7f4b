#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cfgkat {

struct SourceLoc {
  uint32_t line = 0;
  uint32_t column = 0;

  auto operator<=>(const SourceLoc&) const = default;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input text does not match the blinded-C grammar.
class SyntaxError : public Error {
public:
  SyntaxError(SourceLoc loc, const std::string& expected)
      : Error("syntax error at " + loc.str() + ": expected " + expected), loc(loc) {}
  SourceLoc loc;
};

// switch / continue / ternary and friends.
class UnsupportedConstructError : public Error {
public:
  UnsupportedConstructError(SourceLoc loc, const std::string& construct)
      : Error("unsupported construct at " + loc.str() + ": " + construct),
        loc(loc),
        construct(construct) {}
  SourceLoc loc;
  std::string construct;
};

// A test or expression mentions an id outside the collected alphabets.
class UnknownIdError : public Error {
public:
  explicit UnknownIdError(const std::string& id) : Error("unknown id: " + id), id(id) {}
  std::string id;
};

// An expression failed validity checking where a valid program is required.
class InvalidProgramError : public Error {
public:
  explicit InvalidProgramError(const std::string& report)
      : Error("invalid program:\n" + report) {}
};

class AlphabetMismatchError : public Error {
public:
  explicit AlphabetMismatchError(const std::string& what) : Error("alphabet mismatch: " + what) {}
};

// do-while bodies with break or a label cannot be unrolled soundly.
class DoWhileWithBreakOrLabelError : public Error {
public:
  explicit DoWhileWithBreakOrLabelError(SourceLoc loc)
      : Error("do-while body with break or label at " + loc.str()), loc(loc) {}
  SourceLoc loc;
};

// A statement is neither pact/pbool, indicator access, nor control flow,
// and no blinding table was supplied to map it.
class NonBlindableStatementError : public Error {
public:
  NonBlindableStatementError(SourceLoc loc, const std::string& text)
      : Error("statement at " + loc.str() + " is not blinded and no blinding table given: " + text),
        loc(loc) {}
  SourceLoc loc;
};

}  // namespace cfgkat
