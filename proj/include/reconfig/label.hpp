// Transition labels for both calculi.

#pragma once

#include <compare>
#include <string>

#include "reconfig/term.hpp"

namespace reconfig {

enum class LabelKind : std::uint8_t {
  Input,     // open input on a channel
  Output,    // open output on a channel
  Tau,       // CCS^dp synchronisation
  Reconfig,  // CCS^dp fraction replacement
  Comm,      // Webpi communication (direct or across a workunit boundary)
  Trigger,   // Webpi handler activation
  Body,      // Webpi reduction inside a workunit body
};

class Label {
 public:
  static Label input(Name channel);
  static Label output(Name channel);
  static Label tau();
  /// `numerator` replaces `target`; both are kept for diagnostics only.
  static Label reconfig(Term numerator, Term target);
  static Label comm(Name channel, bool across_workunit);
  static Label trigger(Name channel);
  static Label body(const Label& inner);

  LabelKind kind() const { return kind_; }
  const Name& channel() const { return channel_; }
  const Term& numerator() const { return numerator_; }
  const Term& target() const { return target_; }
  bool across_workunit() const { return across_; }

  /// Internal actions: everything but open input and output.
  bool is_silent() const;

  /// `in a`, `out a`, `tau`, `rcf`, `comm`, `trigger`, `body`.
  /// Reconfiguration payloads are erased, so this is also the label class
  /// used for bisimulation.
  std::string serialize() const;

  /// Like serialize() but keeps the channel of Webpi steps, e.g. `comm v`.
  std::string describe() const;

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label&, const Label&);

 private:
  LabelKind kind_ = LabelKind::Tau;
  Name channel_;
  Term numerator_;
  Term target_;
  bool across_ = false;
  std::string inner_;  // describe() of the wrapped step, Body only
};

/// How a fraction denominator is compared with candidate components.
class MatchMode {
 public:
  enum class Kind { Syntactic, Congruence, Bisim };

  static constexpr unsigned kDefaultUnfoldDepth = 8;
  static constexpr std::size_t kDefaultStateBound = 10000;

  static MatchMode syntactic() { return MatchMode(Kind::Syntactic, 0, 0); }
  static MatchMode congruence(unsigned unfold_depth = kDefaultUnfoldDepth);
  static MatchMode bisim(std::size_t state_bound = kDefaultStateBound);

  Kind kind() const { return kind_; }
  unsigned unfold_depth() const { return unfold_depth_; }
  std::size_t state_bound() const { return state_bound_; }

  std::string to_string() const;

  friend bool operator==(const MatchMode&, const MatchMode&) = default;

 private:
  MatchMode(Kind kind, unsigned depth, std::size_t bound)
      : kind_(kind), unfold_depth_(depth), state_bound_(bound) {}

  Kind kind_;
  unsigned unfold_depth_;
  std::size_t state_bound_;
};

}  // namespace reconfig
