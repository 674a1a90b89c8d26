// Concrete syntax and name handling for process terms.
//
// Grammar (whitespace-insensitive, `#` starts a line comment):
//
//   file     := def* "main" "=" proc [";"] def*
//   def      := IDENT "=" proc ";"
//   proc     := choice ("|" choice)*
//   choice   := guarded ("+" guarded)* | atom
//   guarded  := NAME ("?" | "!") ["." cont]
//   cont     := guarded | atom
//   atom     := "0" | IDENT | "(" proc ")" | "new" NAME "in" choice
//             | "{" proc "/" proc "}"
//             | "wu" "(" proc ";" proc ";" NAME ")"
//
// Under Webpi a bare `x!` (or `x!.0`) is an asynchronous output atom.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reconfig/term.hpp"

namespace reconfig {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnguardedRecursion : public Error {
 public:
  using Error::Error;
};

struct Program {
  Term main;
  DefinitionEnv env;
  Calculus calculus = Calculus::CCSdp;
};

Program parse(std::string_view text, Calculus calculus);

/// Parses a single process expression (no definitions, no `main =`).
Term parse_term(std::string_view text, Calculus calculus);

std::string pretty_print(const Term& term);
/// Definitions in name order followed by `main = ...`.
std::string pretty_print(const Program& program);

NameSet free_names(const Term& term, const DefinitionEnv& env);

/// Capture-avoiding renaming of free occurrences of `from` to `to`.
/// Constants are global definitions and are left untouched.
Term substitute(const Term& term, const Name& from, const Name& to);

/// True iff the terms differ only in the choice of restricted names.
/// A constant inside a restriction may use the restricted name, so without an
/// environment constants only match under identically named binders.
bool alpha_equivalent(const Term& a, const Term& b);
/// As above, but consults the free names of each constant's definition.
bool alpha_equivalent(const Term& a, const Term& b, const DefinitionEnv& env);

struct Violation {
  Kind kind;
  std::string message;
};

std::vector<Violation> validate_calculus(const Term& term, Calculus calculus);

/// Throws CalculusViolation if `term` or any definition is illegal for
/// `calculus`, UnboundConstant if a constant is undefined, and
/// UnguardedRecursion if some constant can reach itself without passing a
/// prefix.
void check_program(const Term& main, const DefinitionEnv& env, Calculus calculus);

/// Returns a name with the given stem that is not in `avoid`.
Name fresh_name(const Name& stem, const NameSet& avoid);

}  // namespace reconfig
