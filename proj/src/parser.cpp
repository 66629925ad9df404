#include "qmlfix/parser.hpp"

#include <cctype>
#include <optional>

#include "qmlfix/error.hpp"

namespace qmlfix {
namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  Comma,
  Dot,
  Tilde,
  Amp,
  Bar,
  Arrow,
  DoubleArrow,
  Hash,
  LowerIdent,
  UpperIdent,
  KwTrue,
  KwFalse,
  KwForall,
  KwExists,
  KwBox,
  KwDia,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, "", start};
    const char c = src_[pos_];
    auto single = [&](Tok t) {
      ++pos_;
      return Token{t, std::string(1, c), start};
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case '.': return single(Tok::Dot);
      case '~': return single(Tok::Tilde);
      case '&': return single(Tok::Amp);
      case '|': return single(Tok::Bar);
      case '#': return single(Tok::Hash);
      default: break;
    }
    if (src_.substr(pos_, 3) == "<->") {
      pos_ += 3;
      return {Tok::DoubleArrow, "<->", start};
    }
    if (src_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return {Tok::Arrow, "->", start};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      std::string word(src_.substr(start, pos_ - start));
      if (std::isupper(static_cast<unsigned char>(c)) != 0) return {Tok::UpperIdent, word, start};
      if (word == "true") return {Tok::KwTrue, word, start};
      if (word == "false") return {Tok::KwFalse, word, start};
      if (word == "forall") return {Tok::KwForall, word, start};
      if (word == "exists") return {Tok::KwExists, word, start};
      if (word == "box") return {Tok::KwBox, word, start};
      if (word == "dia") return {Tok::KwDia, word, start};
      return {Tok::LowerIdent, word, start};
    }
    throw Error(ErrorCode::Syntax,
                "unexpected character '" + std::string(1, c) + "' at position " + std::to_string(start));
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, const PredicateSignature* fixed)
      : lexer_(src), fixed_(fixed) {
    advance();
  }

  Formula parse_all() {
    Formula f = parse_iff();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Syntax, what + " at position " + std::to_string(cur_.pos));
  }

  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (cur_.kind == Tok::DoubleArrow) {
      advance();
      Formula rhs = parse_implies();
      lhs = iff(lhs, rhs);
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (cur_.kind == Tok::Arrow) {
      advance();
      return implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (cur_.kind == Tok::Bar) {
      advance();
      lhs = disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (cur_.kind == Tok::Amp) {
      advance();
      lhs = conj(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  std::string parse_var() {
    if (cur_.kind != Tok::LowerIdent) fail("expected variable");
    std::string name = cur_.text;
    advance();
    return name;
  }

  Formula parse_unary() {
    switch (cur_.kind) {
      case Tok::Tilde:
        advance();
        return neg(parse_unary());
      case Tok::KwBox:
        advance();
        return box(parse_unary());
      case Tok::KwDia:
        advance();
        return dia(parse_unary());
      case Tok::KwForall:
      case Tok::KwExists: {
        const bool universal = cur_.kind == Tok::KwForall;
        advance();
        std::string var = parse_var();
        expect(Tok::Dot, "'.' after quantified variable");
        Formula body = parse_unary();
        return universal ? forall(std::move(var), std::move(body))
                         : exists(std::move(var), std::move(body));
      }
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (cur_.kind) {
      case Tok::KwTrue:
        advance();
        return top();
      case Tok::KwFalse:
        advance();
        return bottom();
      case Tok::Hash: {
        advance();
        if (cur_.kind != Tok::LowerIdent) fail("expected propositional variable name after '#'");
        std::string name = cur_.text;
        advance();
        return prop(std::move(name));
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::UpperIdent:
        return parse_atom();
      case Tok::LowerIdent:
        fail("individual variable '" + cur_.text + "' used as a formula (propositional variables are written #" +
             cur_.text + ")");
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + cur_.text + "'");
    }
  }

  Formula parse_atom() {
    const std::size_t at = cur_.pos;
    std::string pred = cur_.text;
    advance();
    std::vector<Term> args;
    if (cur_.kind == Tok::LParen) {
      advance();
      args.push_back(Term::variable(parse_var()));
      while (cur_.kind == Tok::Comma) {
        advance();
        args.push_back(Term::variable(parse_var()));
      }
      expect(Tok::RParen, "')' closing argument list");
    }
    if (fixed_ != nullptr) {
      auto arity = fixed_->arity(pred);
      if (!arity) {
        throw Error(ErrorCode::UnknownPredicate,
                    "unknown predicate " + pred + " at position " + std::to_string(at));
      }
      if (*arity != args.size()) {
        throw Error(ErrorCode::ArityMismatch, "predicate " + pred + " expects " + std::to_string(*arity) +
                                                  " arguments, got " + std::to_string(args.size()) +
                                                  " at position " + std::to_string(at));
      }
    } else {
      inferred_.declare(pred, args.size());
    }
    return atom(std::move(pred), std::move(args));
  }

  Lexer lexer_;
  Token cur_{Tok::End, "", 0};
  const PredicateSignature* fixed_;
  PredicateSignature inferred_;
};

// Binding strength used by the printer; higher binds tighter.
int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not:
    case Op::Box:
    case Op::Forall:
    case Op::Exists: return 4;
    default: return 5;
  }
}

void print(const Formula& f, std::string& out);

void print_wrapped(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Top:
      out += "true";
      return;
    case Op::Bottom:
      out += "false";
      return;
    case Op::PropVar:
      out += '#';
      out += f.name();
      return;
    case Op::Atom: {
      out += f.name();
      if (f.args().empty()) return;
      out += '(';
      bool first = true;
      for (const Term& t : f.args()) {
        if (!first) out += ", ";
        first = false;
        if (!t.is_variable()) out += '@';
        out += t.name;
      }
      out += ')';
      return;
    }
    case Op::Not:
      out += '~';
      print_wrapped(f.body(), precedence(f.body()) < 4, out);
      return;
    case Op::Box:
      out += "box ";
      print_wrapped(f.body(), precedence(f.body()) < 4, out);
      return;
    case Op::Forall:
    case Op::Exists:
      out += f.op() == Op::Forall ? "forall " : "exists ";
      out += f.name();
      out += ". ";
      print_wrapped(f.body(), precedence(f.body()) < 4, out);
      return;
    case Op::Implies:
      print_wrapped(f.lhs(), precedence(f.lhs()) <= 1, out);
      out += " -> ";
      print_wrapped(f.rhs(), precedence(f.rhs()) < 1, out);
      return;
    case Op::Or:
    case Op::And: {
      const int p = precedence(f);
      print_wrapped(f.lhs(), precedence(f.lhs()) < p, out);
      out += f.op() == Op::And ? " & " : " | ";
      print_wrapped(f.rhs(), precedence(f.rhs()) <= p, out);
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text, const PredicateSignature& sig) {
  return Parser(text, &sig).parse_all();
}

Formula parse(std::string_view text) { return Parser(text, nullptr).parse_all(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace qmlfix
