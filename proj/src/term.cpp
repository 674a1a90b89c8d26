#include "reconfig/term.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace reconfig {

std::string_view to_string(Calculus c) {
  return c == Calculus::CCSdp ? "ccsdp" : "webpi";
}

Calculus calculus_from_string(std::string_view text) {
  if (text == "ccsdp") return Calculus::CCSdp;
  if (text == "webpi") return Calculus::WebPi;
  throw Error("unknown calculus '" + std::string(text) + "'");
}

Name::Name(std::string text) : text_(std::move(text)) {
  if (!is_valid(text_)) throw Error("invalid name '" + text_ + "'");
}

bool Name::is_valid(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  if (!alpha(text[0])) return false;
  return std::all_of(text.begin() + 1, text.end(), [&](char c) {
    return alpha(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'';
  });
}

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Nil: return "nil";
    case Kind::Constant: return "constant";
    case Kind::OutputAtom: return "output-atom";
    case Kind::Input: return "input";
    case Kind::Output: return "output";
    case Kind::Sum: return "sum";
    case Kind::Restriction: return "restriction";
    case Kind::Workunit: return "workunit";
    case Kind::Fraction: return "fraction";
    case Kind::Parallel: return "parallel";
  }
  return "?";
}

struct Term::Node {
  Kind kind;
  Name name;
  std::vector<Term> kids;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::vector<Term>& no_children() {
  static const std::vector<Term> empty;
  return empty;
}

const Name& no_name() {
  static const Name empty;
  return empty;
}

}  // namespace

Term::Term() : Term(nil()) {}

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term Term::make(Kind kind, Name name, std::vector<Term> kids) {
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1,
                      std::hash<std::string>{}(name.text()));
  std::size_t size = 1;
  for (const Term& k : kids) {
    h = mix(h, k.hash());
    size += k.size();
  }
  return Term(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(kids), h, size}));
}

Term Term::nil() {
  static const Term zero(std::make_shared<const Node>(
      Node{Kind::Nil, Name(), {}, mix(static_cast<std::size_t>(Kind::Nil) + 1,
                                      std::hash<std::string>{}("")),
           1}));
  return zero;
}

Term Term::input(Name channel, Term continuation) {
  return make(Kind::Input, std::move(channel), {std::move(continuation)});
}

Term Term::output(Name channel, Term continuation) {
  return make(Kind::Output, std::move(channel), {std::move(continuation)});
}

Term Term::output_atom(Name channel) {
  return make(Kind::OutputAtom, std::move(channel), {});
}

Term Term::sum(std::vector<Term> branches) {
  if (branches.empty()) throw Error("sum needs at least one branch");
  for (const Term& b : branches) {
    if (b.kind() != Kind::Input && b.kind() != Kind::Output &&
        b.kind() != Kind::OutputAtom)
      throw Error("sum branches must be prefix-guarded");
  }
  return make(Kind::Sum, Name(), std::move(branches));
}

Term Term::parallel(std::vector<Term> components) {
  if (components.size() < 2)
    throw Error("parallel composition needs at least two components");
  return make(Kind::Parallel, Name(), std::move(components));
}

Term Term::restriction(Name name, Term body) {
  return make(Kind::Restriction, std::move(name), {std::move(body)});
}

Term Term::constant(Name name) {
  return make(Kind::Constant, std::move(name), {});
}

Term Term::fraction(Term numerator, Term denominator) {
  return make(Kind::Fraction, Name(),
              {std::move(numerator), std::move(denominator)});
}

Term Term::workunit(Term body, Term handler, Name trigger) {
  return make(Kind::Workunit, std::move(trigger),
              {std::move(body), std::move(handler)});
}

Kind Term::kind() const { return node_->kind; }

const Name& Term::name() const { return node_ ? node_->name : no_name(); }

const std::vector<Term>& Term::children() const {
  return node_ ? node_->kids : no_children();
}

const Term& Term::continuation() const { return node_->kids.at(0); }
const Term& Term::body() const { return node_->kids.at(0); }
const Term& Term::handler() const { return node_->kids.at(1); }
const Term& Term::numerator() const { return node_->kids.at(0); }
const Term& Term::denominator() const { return node_->kids.at(1); }

std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  const auto& ka = a.children();
  const auto& kb = b.children();
  if (auto c = ka.size() <=> kb.size(); c != 0) return c;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (auto c = ka[i] <=> kb[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<Term> parallel_components(const Term& t) {
  std::vector<Term> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (u.kind() == Kind::Parallel) {
      for (const Term& c : u.components()) walk(c);
    } else if (!u.is_nil()) {
      out.push_back(u);
    }
  };
  walk(t);
  return out;
}

Term make_parallel(std::vector<Term> components) {
  std::vector<Term> flat;
  for (const Term& c : components) {
    auto parts = parallel_components(c);
    flat.insert(flat.end(), parts.begin(), parts.end());
  }
  if (flat.empty()) return Term::nil();
  if (flat.size() == 1) return flat.front();
  return Term::parallel(std::move(flat));
}

namespace {

// Free names of `t`, with constants contributing whatever `constant_fn`
// currently knows about them.
void collect_free_names(const Term& t, const std::map<std::string, NameSet>& constant_fn,
                        NameSet& out) {
  switch (t.kind()) {
    case Kind::Nil:
      return;
    case Kind::Constant: {
      auto it = constant_fn.find(t.name().text());
      if (it != constant_fn.end()) out.insert(it->second.begin(), it->second.end());
      return;
    }
    case Kind::OutputAtom:
      out.insert(t.name());
      return;
    case Kind::Input:
    case Kind::Output:
      out.insert(t.name());
      collect_free_names(t.continuation(), constant_fn, out);
      return;
    case Kind::Restriction: {
      NameSet inner;
      collect_free_names(t.body(), constant_fn, inner);
      inner.erase(t.name());
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Kind::Workunit:
      out.insert(t.name());
      [[fallthrough]];
    case Kind::Sum:
    case Kind::Parallel:
    case Kind::Fraction:
      for (const Term& k : t.children()) collect_free_names(k, constant_fn, out);
      return;
  }
}

}  // namespace

DefinitionEnv::DefinitionEnv(std::map<std::string, Term> bindings)
    : bindings_(std::move(bindings)) {
  for (const auto& [name, body] : bindings_) free_names_[name];
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, body] : bindings_) {
      NameSet fn;
      collect_free_names(body, free_names_, fn);
      if (fn != free_names_[name]) {
        free_names_[name] = std::move(fn);
        changed = true;
      }
    }
  }
  for (const auto& [name, fn] : free_names_)
    all_free_names_.insert(fn.begin(), fn.end());
}

bool DefinitionEnv::contains(const std::string& name) const {
  return bindings_.count(name) != 0;
}

const Term& DefinitionEnv::lookup(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw UnboundConstant(name);
  return it->second;
}

const NameSet& DefinitionEnv::constant_free_names(const std::string& name) const {
  auto it = free_names_.find(name);
  if (it == free_names_.end()) throw UnboundConstant(name);
  return it->second;
}

}  // namespace reconfig
