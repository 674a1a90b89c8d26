// Process terms shared by CCS^dp and Webpi-infinity.
//
// A Term is an immutable, reference-counted syntax tree. Copies are cheap and
// terms may be shared freely between threads.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reconfig {

enum class Calculus { CCSdp, WebPi };

std::string_view to_string(Calculus c);
Calculus calculus_from_string(std::string_view text);

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalculusViolation : public Error {
 public:
  using Error::Error;
};

class UnboundConstant : public Error {
 public:
  explicit UnboundConstant(const std::string& name)
      : Error("unbound constant '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Channel, trigger or constant identifier: `[a-zA-Z][a-zA-Z0-9_']*`.
class Name {
 public:
  Name() = default;
  explicit Name(std::string text);

  const std::string& text() const { return text_; }
  bool empty() const { return text_.empty(); }

  static bool is_valid(std::string_view text);

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;

 private:
  std::string text_;
};

using NameSet = std::set<Name>;

enum class Kind : std::uint8_t {
  Nil,
  Constant,
  OutputAtom,
  Input,
  Output,
  Sum,
  Restriction,
  Workunit,
  Fraction,
  Parallel,
};

std::string_view to_string(Kind k);

class Term {
 public:
  /// The inert process 0.
  Term();

  static Term nil();
  static Term input(Name channel, Term continuation);
  static Term output(Name channel, Term continuation);
  static Term output_atom(Name channel);
  static Term sum(std::vector<Term> branches);
  static Term parallel(std::vector<Term> components);
  static Term restriction(Name name, Term body);
  static Term constant(Name name);
  static Term fraction(Term numerator, Term denominator);
  static Term workunit(Term body, Term handler, Name trigger);

  Kind kind() const;
  bool is_nil() const { return kind() == Kind::Nil; }
  bool is_prefix() const {
    return kind() == Kind::Input || kind() == Kind::Output;
  }

  /// Channel of a prefix or atom, bound name of a restriction, trigger of a
  /// workunit, identifier of a constant. Empty otherwise.
  const Name& name() const;

  const std::vector<Term>& children() const;

  const Term& continuation() const;  // Input, Output
  const Term& body() const;          // Restriction, Workunit
  const Term& handler() const;       // Workunit
  const Term& numerator() const;     // Fraction
  const Term& denominator() const;   // Fraction
  const std::vector<Term>& branches() const { return children(); }
  const std::vector<Term>& components() const { return children(); }

  std::size_t hash() const;
  std::size_t size() const;  // node count

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);
  static Term make(Kind kind, Name name, std::vector<Term> kids);

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Builds a parallel composition from `components`, flattening nested
/// parallels and dropping 0. Returns 0 or the sole component when fewer than
/// two remain.
Term make_parallel(std::vector<Term> components);

/// Collects the components of `t` seen as a flattened parallel (0 dropped).
std::vector<Term> parallel_components(const Term& t);

/// Named, parameterless process definitions.
class DefinitionEnv {
 public:
  DefinitionEnv() = default;
  explicit DefinitionEnv(std::map<std::string, Term> bindings);

  bool contains(const std::string& name) const;
  const Term& lookup(const std::string& name) const;  // throws UnboundConstant
  const std::map<std::string, Term>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

  /// Free names of the unfolding of constant `name`, computed to fixpoint.
  const NameSet& constant_free_names(const std::string& name) const;
  /// Union of the free names of every definition.
  const NameSet& all_free_names() const { return all_free_names_; }

 private:
  std::map<std::string, Term> bindings_;
  std::map<std::string, NameSet> free_names_;
  NameSet all_free_names_;
};

}  // namespace reconfig
