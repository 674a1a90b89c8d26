#include "reconfig/label.hpp"

#include <utility>

namespace reconfig {

Label Label::input(Name channel) {
  Label l;
  l.kind_ = LabelKind::Input;
  l.channel_ = std::move(channel);
  return l;
}

Label Label::output(Name channel) {
  Label l;
  l.kind_ = LabelKind::Output;
  l.channel_ = std::move(channel);
  return l;
}

Label Label::tau() { return Label(); }

Label Label::reconfig(Term numerator, Term target) {
  Label l;
  l.kind_ = LabelKind::Reconfig;
  l.numerator_ = std::move(numerator);
  l.target_ = std::move(target);
  return l;
}

Label Label::comm(Name channel, bool across_workunit) {
  Label l;
  l.kind_ = LabelKind::Comm;
  l.channel_ = std::move(channel);
  l.across_ = across_workunit;
  return l;
}

Label Label::trigger(Name channel) {
  Label l;
  l.kind_ = LabelKind::Trigger;
  l.channel_ = std::move(channel);
  return l;
}

Label Label::body(const Label& inner) {
  Label l;
  l.kind_ = LabelKind::Body;
  l.channel_ = inner.channel_;
  l.inner_ = inner.describe();
  return l;
}

bool Label::is_silent() const {
  return kind_ != LabelKind::Input && kind_ != LabelKind::Output;
}

std::string Label::serialize() const {
  switch (kind_) {
    case LabelKind::Input: return "in " + channel_.text();
    case LabelKind::Output: return "out " + channel_.text();
    case LabelKind::Tau: return "tau";
    case LabelKind::Reconfig: return "rcf";
    case LabelKind::Comm: return "comm";
    case LabelKind::Trigger: return "trigger";
    case LabelKind::Body: return "body";
  }
  return "?";
}

std::string Label::describe() const {
  switch (kind_) {
    case LabelKind::Comm:
    case LabelKind::Trigger:
      return serialize() + " " + channel_.text();
    case LabelKind::Body:
      return "body " + inner_;
    default:
      return serialize();
  }
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.channel_ <=> b.channel_; c != 0) return c;
  if (auto c = a.numerator_ <=> b.numerator_; c != 0) return c;
  if (auto c = a.target_ <=> b.target_; c != 0) return c;
  if (auto c = a.across_ <=> b.across_; c != 0) return c;
  return a.inner_ <=> b.inner_;
}

MatchMode MatchMode::congruence(unsigned unfold_depth) {
  if (unfold_depth == 0) throw Error("congruence unfold depth must be positive");
  return MatchMode(Kind::Congruence, unfold_depth, 0);
}

MatchMode MatchMode::bisim(std::size_t state_bound) {
  if (state_bound == 0) throw Error("bisimulation state bound must be positive");
  return MatchMode(Kind::Bisim, 0, state_bound);
}

std::string MatchMode::to_string() const {
  switch (kind_) {
    case Kind::Syntactic: return "syntactic";
    case Kind::Congruence: return "congruence(" + std::to_string(unfold_depth_) + ")";
    case Kind::Bisim: return "bisim(" + std::to_string(state_bound_) + ")";
  }
  return "?";
}

}  // namespace reconfig
