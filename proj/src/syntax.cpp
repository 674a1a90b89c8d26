#include "reconfig/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace reconfig {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Ident,
  Zero,
  Query,
  Bang,
  Dot,
  Plus,
  Bar,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Slash,
  Semi,
  Equals,
  KwNew,
  KwIn,
  KwWu,
  KwMain,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Zero: return "'0'";
    case Tok::Query: return "'?'";
    case Tok::Bang: return "'!'";
    case Tok::Dot: return "'.'";
    case Tok::Plus: return "'+'";
    case Tok::Bar: return "'|'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Slash: return "'/'";
    case Tok::Semi: return "';'";
    case Tok::Equals: return "'='";
    case Tok::KwNew: return "'new'";
    case Tok::KwIn: return "'in'";
    case Tok::KwWu: return "'wu'";
    case Tok::KwMain: return "'main'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&]() {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    int tl = line;
    int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' ||
              src[i] == '\''))
        advance();
      std::string word(src.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "new") kind = Tok::KwNew;
      else if (word == "in") kind = Tok::KwIn;
      else if (word == "wu") kind = Tok::KwWu;
      else if (word == "main") kind = Tok::KwMain;
      out.push_back({kind, std::move(word), tl, tc});
      continue;
    }
    Tok kind;
    switch (c) {
      case '0': kind = Tok::Zero; break;
      case '?': kind = Tok::Query; break;
      case '!': kind = Tok::Bang; break;
      case '.': kind = Tok::Dot; break;
      case '+': kind = Tok::Plus; break;
      case '|': kind = Tok::Bar; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '/': kind = Tok::Slash; break;
      case ';': kind = Tok::Semi; break;
      case '=': kind = Tok::Equals; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
    }
    advance();
    if (kind == Tok::Zero && i < src.size() &&
        std::isalnum(static_cast<unsigned char>(src[i])))
      throw ParseError("names must start with a letter", tl, tc);
    out.push_back({kind, std::string(1, c), tl, tc});
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view src, Calculus calculus)
      : toks_(lex(src)), calculus_(calculus) {}

  Program parse_file() {
    std::map<std::string, Term> defs;
    std::optional<Term> main;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::KwMain) {
        const Token& at = next();
        if (main) throw ParseError("duplicate definition of 'main'", at.line, at.column);
        expect(Tok::Equals);
        main = parse_proc();
        if (peek().kind == Tok::Semi) next();
        continue;
      }
      const Token& id = expect(Tok::Ident);
      expect(Tok::Equals);
      Term body = parse_proc();
      expect(Tok::Semi);
      if (!defs.emplace(id.text, body).second)
        throw ParseError("duplicate definition of '" + id.text + "'", id.line,
                         id.column);
    }
    if (!main) {
      const Token& end = peek();
      throw ParseError("missing 'main = ...' entry point", end.line, end.column);
    }
    return Program{*main, DefinitionEnv(std::move(defs)), calculus_};
  }

  Term parse_single() {
    Term t = parse_proc();
    if (peek().kind != Tok::End) fail("expected end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? describe(t.kind) : "'" + t.text + "'";
    throw ParseError(message + ", found " + found, t.line, t.column);
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind) fail("expected " + describe(kind));
    return next();
  }

  bool at_guarded() const {
    return peek().kind == Tok::Ident &&
           (peek(1).kind == Tok::Query || peek(1).kind == Tok::Bang);
  }

  Term parse_proc() {
    std::vector<Term> parts{parse_choice()};
    while (peek().kind == Tok::Bar) {
      next();
      parts.push_back(parse_choice());
    }
    if (parts.size() == 1) return parts.front();
    return Term::parallel(std::move(parts));
  }

  Term parse_choice() {
    if (!at_guarded()) {
      Term t = parse_atom();
      if (peek().kind == Tok::Plus) fail("unguarded sum branch: '+' must join prefixed processes");
      return t;
    }
    std::vector<Term> branches{parse_guarded()};
    while (peek().kind == Tok::Plus) {
      next();
      if (!at_guarded()) fail("unguarded sum branch: expected 'name?' or 'name!'");
      branches.push_back(parse_guarded());
    }
    if (branches.size() == 1) return branches.front();
    return Term::sum(std::move(branches));
  }

  Term parse_guarded() {
    const Token& id = expect(Tok::Ident);
    Name channel(id.text);
    bool is_input = next().kind == Tok::Query;
    Term cont = Term::nil();
    bool has_cont = false;
    if (peek().kind == Tok::Dot) {
      next();
      cont = at_guarded() ? parse_guarded() : parse_atom();
      has_cont = true;
    }
    if (is_input) return Term::input(channel, cont);
    if (calculus_ == Calculus::WebPi) {
      if (!cont.is_nil()) {
        throw CalculusViolation(std::to_string(id.line) + ":" + std::to_string(id.column) +
                                ": output '" + id.text +
                                "!' cannot have a continuation in webpi (outputs are asynchronous)");
      }
      return Term::output_atom(channel);
    }
    (void)has_cont;
    return Term::output(channel, cont);
  }

  Term parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero:
        next();
        return Term::nil();
      case Tok::Ident:
        next();
        return Term::constant(Name(t.text));
      case Tok::LParen: {
        next();
        Term inner = parse_proc();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::KwNew: {
        next();
        Name bound(expect(Tok::Ident).text);
        expect(Tok::KwIn);
        return Term::restriction(bound, parse_choice());
      }
      case Tok::LBrace: {
        next();
        Term num = parse_proc();
        expect(Tok::Slash);
        Term den = parse_proc();
        expect(Tok::RBrace);
        return Term::fraction(num, den);
      }
      case Tok::KwWu: {
        next();
        expect(Tok::LParen);
        Term body = parse_proc();
        expect(Tok::Semi);
        Term handler = parse_proc();
        expect(Tok::Semi);
        Name trigger(expect(Tok::Ident).text);
        expect(Tok::RParen);
        return Term::workunit(body, handler, trigger);
      }
      default:
        fail("expected a process");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Calculus calculus_;
};

// ---------------------------------------------------------------------------
// Printer

void print_proc(const Term& t, std::string& out);
void print_choice(const Term& t, std::string& out);
void print_unit(const Term& t, std::string& out);

void print_guarded(const Term& t, std::string& out);

void print_cont(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Kind::Input:
    case Kind::Output:
    case Kind::OutputAtom:
      print_guarded(t, out);
      return;
    case Kind::Nil:
    case Kind::Constant:
    case Kind::Fraction:
    case Kind::Workunit:
      print_unit(t, out);
      return;
    default:
      out += '(';
      print_proc(t, out);
      out += ')';
  }
}

void print_guarded(const Term& t, std::string& out) {
  out += t.name().text();
  if (t.kind() == Kind::OutputAtom) {
    out += '!';
    return;
  }
  out += t.kind() == Kind::Input ? "?." : "!.";
  print_cont(t.continuation(), out);
}

void print_unit(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Kind::Nil:
      out += '0';
      return;
    case Kind::Constant:
      out += t.name().text();
      return;
    case Kind::Input:
    case Kind::Output:
    case Kind::OutputAtom:
      print_guarded(t, out);
      return;
    case Kind::Fraction:
      out += "{ ";
      print_proc(t.numerator(), out);
      out += " / ";
      print_proc(t.denominator(), out);
      out += " }";
      return;
    case Kind::Workunit:
      out += "wu(";
      print_proc(t.body(), out);
      out += " ; ";
      print_proc(t.handler(), out);
      out += " ; ";
      out += t.name().text();
      out += ')';
      return;
    case Kind::Restriction:
      out += "new ";
      out += t.name().text();
      out += " in ";
      if (t.body().kind() == Kind::Parallel) {
        out += '(';
        print_proc(t.body(), out);
        out += ')';
      } else {
        print_choice(t.body(), out);
      }
      return;
    case Kind::Sum:
    case Kind::Parallel:
      out += '(';
      print_proc(t, out);
      out += ')';
      return;
  }
}

void print_choice(const Term& t, std::string& out) {
  if (t.kind() != Kind::Sum) {
    print_unit(t, out);
    return;
  }
  bool first = true;
  for (const Term& b : t.branches()) {
    if (!first) out += " + ";
    first = false;
    print_guarded(b, out);
  }
}

void print_proc(const Term& t, std::string& out) {
  if (t.kind() != Kind::Parallel) {
    print_choice(t, out);
    return;
  }
  bool first = true;
  for (const Term& c : t.components()) {
    if (!first) out += " | ";
    first = false;
    print_choice(c, out);
  }
}

// ---------------------------------------------------------------------------
// Names

void free_names_into(const Term& t, const DefinitionEnv* env, NameSet& out) {
  switch (t.kind()) {
    case Kind::Nil:
      return;
    case Kind::Constant:
      if (env) {
        const NameSet& fn = env->constant_free_names(t.name().text());
        out.insert(fn.begin(), fn.end());
      }
      return;
    case Kind::OutputAtom:
      out.insert(t.name());
      return;
    case Kind::Input:
    case Kind::Output:
      out.insert(t.name());
      free_names_into(t.continuation(), env, out);
      return;
    case Kind::Restriction: {
      NameSet inner;
      free_names_into(t.body(), env, inner);
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
      for (const Term& k : t.children()) free_names_into(k, env, out);
      return;
  }
}

Name rename(const Name& n, const Name& from, const Name& to) {
  return n == from ? to : n;
}

Term substitute_impl(const Term& t, const Name& from, const Name& to) {
  switch (t.kind()) {
    case Kind::Nil:
    case Kind::Constant:
      return t;
    case Kind::OutputAtom:
      return t.name() == from ? Term::output_atom(to) : t;
    case Kind::Input:
      return Term::input(rename(t.name(), from, to),
                         substitute_impl(t.continuation(), from, to));
    case Kind::Output:
      return Term::output(rename(t.name(), from, to),
                          substitute_impl(t.continuation(), from, to));
    case Kind::Sum:
    case Kind::Parallel: {
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const Term& k : t.children()) kids.push_back(substitute_impl(k, from, to));
      return t.kind() == Kind::Sum ? Term::sum(std::move(kids))
                                   : Term::parallel(std::move(kids));
    }
    case Kind::Fraction:
      return Term::fraction(substitute_impl(t.numerator(), from, to),
                            substitute_impl(t.denominator(), from, to));
    case Kind::Workunit:
      return Term::workunit(substitute_impl(t.body(), from, to),
                            substitute_impl(t.handler(), from, to),
                            rename(t.name(), from, to));
    case Kind::Restriction: {
      if (t.name() == from) return t;
      NameSet fn;
      free_names_into(t.body(), nullptr, fn);
      if (fn.count(from) == 0) return t;
      if (t.name() == to) {
        NameSet avoid = fn;
        avoid.insert(from);
        avoid.insert(to);
        Name fresh = fresh_name(t.name(), avoid);
        Term body = substitute_impl(t.body(), t.name(), fresh);
        return Term::restriction(fresh, substitute_impl(body, from, to));
      }
      return Term::restriction(t.name(), substitute_impl(t.body(), from, to));
    }
  }
  return t;
}

using Binders = std::vector<Name>;

// Index of the innermost binder of `n` counted from the top, or -1 if free.
long binder_index(const Binders& b, const Name& n) {
  for (std::size_t i = b.size(); i-- > 0;) {
    if (b[i] == n) return static_cast<long>(i);
  }
  return -1;
}

bool same_name(const Name& x, const Binders& bx, const Name& y, const Binders& by) {
  long ix = binder_index(bx, x);
  long iy = binder_index(by, y);
  if (ix != iy) return false;
  return ix >= 0 || x == y;
}

// A constant sees the binders of its context through its free names, so each
// of those must resolve the same way on both sides. Without an environment
// every bound name is assumed to be used.
bool same_constant(const Term& a, const Binders& ba, const Term& b, const Binders& bb,
                   const DefinitionEnv* env) {
  if (a.name() != b.name()) return false;
  auto resolves_alike = [&](const Name& n) { return binder_index(ba, n) == binder_index(bb, n); };
  if (env && env->contains(a.name().text())) {
    const NameSet& used = env->constant_free_names(a.name().text());
    return std::all_of(used.begin(), used.end(), resolves_alike);
  }
  return std::all_of(ba.begin(), ba.end(), resolves_alike) &&
         std::all_of(bb.begin(), bb.end(), resolves_alike);
}

bool alpha_impl(const Term& a, Binders& ba, const Term& b, Binders& bb,
                const DefinitionEnv* env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Nil:
      return true;
    case Kind::Constant:
      return same_constant(a, ba, b, bb, env);
    case Kind::OutputAtom:
      return same_name(a.name(), ba, b.name(), bb);
    case Kind::Input:
    case Kind::Output:
      return same_name(a.name(), ba, b.name(), bb) &&
             alpha_impl(a.continuation(), ba, b.continuation(), bb, env);
    case Kind::Workunit:
      if (!same_name(a.name(), ba, b.name(), bb)) return false;
      [[fallthrough]];
    case Kind::Sum:
    case Kind::Parallel:
    case Kind::Fraction: {
      const auto& ka = a.children();
      const auto& kb = b.children();
      if (ka.size() != kb.size()) return false;
      for (std::size_t i = 0; i < ka.size(); ++i) {
        if (!alpha_impl(ka[i], ba, kb[i], bb, env)) return false;
      }
      return true;
    }
    case Kind::Restriction: {
      ba.push_back(a.name());
      bb.push_back(b.name());
      bool ok = alpha_impl(a.body(), ba, b.body(), bb, env);
      ba.pop_back();
      bb.pop_back();
      return ok;
    }
  }
  return false;
}

void validate_into(const Term& t, Calculus calculus, std::vector<Violation>& out) {
  const std::string where = " is not allowed in " + std::string(to_string(calculus));
  switch (t.kind()) {
    case Kind::Fraction:
      if (calculus != Calculus::CCSdp)
        out.push_back({t.kind(), "fraction '" + pretty_print(t) + "'" + where});
      break;
    case Kind::Workunit:
      if (calculus != Calculus::WebPi)
        out.push_back({t.kind(), "workunit '" + pretty_print(t) + "'" + where});
      break;
    case Kind::OutputAtom:
      if (calculus != Calculus::WebPi)
        out.push_back({t.kind(), "asynchronous output '" + pretty_print(t) + "'" + where});
      break;
    case Kind::Output:
      if (calculus != Calculus::CCSdp && !t.continuation().is_nil())
        out.push_back({t.kind(), "output prefix with continuation '" + pretty_print(t) + "'" + where});
      break;
    default:
      break;
  }
  for (const Term& k : t.children()) validate_into(k, calculus, out);
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Kind::Constant) out.insert(t.name().text());
  for (const Term& k : t.children()) collect_constants(k, out);
}

// Constants reachable from `t` without passing through a prefix. Fraction
// operands and workunit handlers are inactive and count as guarded.
void unguarded_constants(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Kind::Constant:
      out.insert(t.name().text());
      return;
    case Kind::Parallel:
      for (const Term& c : t.components()) unguarded_constants(c, out);
      return;
    case Kind::Restriction:
    case Kind::Workunit:
      unguarded_constants(t.body(), out);
      return;
    default:
      return;
  }
}

}  // namespace

Program parse(std::string_view text, Calculus calculus) {
  Parser parser(text, calculus);
  Program program = parser.parse_file();
  check_program(program.main, program.env, calculus);
  return program;
}

Term parse_term(std::string_view text, Calculus calculus) {
  Parser parser(text, calculus);
  return parser.parse_single();
}

std::string pretty_print(const Term& term) {
  std::string out;
  print_proc(term, out);
  return out;
}

std::string pretty_print(const Program& program) {
  std::string out;
  for (const auto& [name, body] : program.env.bindings()) {
    out += name + " = " + pretty_print(body) + ";\n";
  }
  out += "main = " + pretty_print(program.main) + "\n";
  return out;
}

NameSet free_names(const Term& term, const DefinitionEnv& env) {
  NameSet out;
  free_names_into(term, &env, out);
  return out;
}

Term substitute(const Term& term, const Name& from, const Name& to) {
  if (from == to) return term;
  return substitute_impl(term, from, to);
}

bool alpha_equivalent(const Term& a, const Term& b) {
  if (a == b) return true;
  Binders ba;
  Binders bb;
  return alpha_impl(a, ba, b, bb, nullptr);
}

bool alpha_equivalent(const Term& a, const Term& b, const DefinitionEnv& env) {
  if (a == b) return true;
  Binders ba;
  Binders bb;
  return alpha_impl(a, ba, b, bb, &env);
}

std::vector<Violation> validate_calculus(const Term& term, Calculus calculus) {
  std::vector<Violation> out;
  validate_into(term, calculus, out);
  return out;
}

void check_program(const Term& main, const DefinitionEnv& env, Calculus calculus) {
  auto check_body = [&](const Term& body, const std::string& where) {
    auto violations = validate_calculus(body, calculus);
    if (!violations.empty())
      throw CalculusViolation("calculus violation in " + where + ": " +
                              violations.front().message);
    std::set<std::string> used;
    collect_constants(body, used);
    for (const std::string& c : used) {
      if (!env.contains(c))
        throw UnboundConstant(c);
    }
  };
  for (const auto& [name, body] : env.bindings()) check_body(body, "definition '" + name + "'");
  check_body(main, "main");

  // Reject cycles in the unguarded-reference graph.
  std::map<std::string, std::set<std::string>> graph;
  for (const auto& [name, body] : env.bindings()) unguarded_constants(body, graph[name]);
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  std::function<void(const std::string&, std::vector<std::string>&)> visit =
      [&](const std::string& n, std::vector<std::string>& path) {
        mark[n] = Mark::Grey;
        path.push_back(n);
        for (const std::string& m : graph[n]) {
          if (mark[m] == Mark::Grey) {
            std::string cycle;
            auto it = std::find(path.begin(), path.end(), m);
            for (; it != path.end(); ++it) cycle += *it + " -> ";
            throw UnguardedRecursion("unguarded recursion: " + cycle + m);
          }
          if (mark[m] == Mark::White) visit(m, path);
        }
        path.pop_back();
        mark[n] = Mark::Black;
      };
  for (const auto& [name, body] : env.bindings()) {
    if (mark[name] == Mark::White) {
      std::vector<std::string> path;
      visit(name, path);
    }
  }
}

Name fresh_name(const Name& stem, const NameSet& avoid) {
  for (unsigned i = 1;; ++i) {
    Name candidate(stem.text() + std::to_string(i));
    if (avoid.count(candidate) == 0) return candidate;
  }
}

}  // namespace reconfig
