#include "lcr/parser.hpp"

#include <cctype>
#include <charconv>

namespace lcr {

namespace {

enum class Tok {
  Ident, True, False, Tilde, Cond, Iff, Imp, Bar, Amp, OPlus, OTimes, OMinus,
  J, I, LBrace, RBrace, Slash, Number, LParen, RParen, End
};

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, s.substr(i, len), {i, i + len}});
    i += len;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' && i + 2 < s.size() && s[i + 2] == ')' &&
        (s[i + 1] == '+' || s[i + 1] == '*' || s[i + 1] == '-')) {
      push(s[i + 1] == '+' ? Tok::OPlus : s[i + 1] == '*' ? Tok::OTimes : Tok::OMinus, 3);
      continue;
    }
    if (s.substr(i, 2) == "=>") { push(Tok::Cond, 2); continue; }
    if (s.substr(i, 3) == "<->") { push(Tok::Iff, 3); continue; }
    if (s.substr(i, 2) == "->") { push(Tok::Imp, 2); continue; }
    switch (c) {
    case '~': push(Tok::Tilde, 1); continue;
    case '|': push(Tok::Bar, 1); continue;
    case '&': push(Tok::Amp, 1); continue;
    case '{': push(Tok::LBrace, 1); continue;
    case '}': push(Tok::RBrace, 1); continue;
    case '/': push(Tok::Slash, 1); continue;
    case '(': push(Tok::LParen, 1); continue;
    case ')': push(Tok::RParen, 1); continue;
    default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      push(Tok::Number, j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      const std::string_view word = s.substr(i, j - i);
      if (std::islower(static_cast<unsigned char>(c))) { push(Tok::Ident, j - i); continue; }
      if (word == "T") { push(Tok::True, 1); continue; }
      if (word == "F") { push(Tok::False, 1); continue; }
      if (word == "J") { push(Tok::J, 1); continue; }
      if (word == "I") { push(Tok::I, 1); continue; }
      throw ParseError("invalid identifier '" + std::string(word) + "'", {i, j});
    }
    throw ParseError(std::string("unexpected character '") + c + "'", {i, i + 1});
  }
  out.push_back({Tok::End, {}, {s.size(), s.size()}});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula parse_all() {
    Formula f = conditional();
    if (peek().kind == Tok::RParen) throw ParseError("unbalanced parenthesis", peek().span);
    if (peek().kind != Tok::End) throw ParseError(unexpected(peek()), peek().span);
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  static std::string unexpected(const Token& t) {
    if (t.kind == Tok::End) return "unexpected end of input";
    return "unexpected token '" + std::string(t.text) + "'";
  }

  Formula conditional() {
    Formula lhs = biconditional();
    if (peek().kind != Tok::Cond) return lhs;
    take();
    Formula rhs = biconditional();
    if (peek().kind == Tok::Cond) {
      throw ParseError("'=>' is non-associative; add parentheses", peek().span);
    }
    return Formula::cond(std::move(lhs), std::move(rhs));
  }

  Formula biconditional() {
    Formula lhs = implication();
    if (peek().kind != Tok::Iff) return lhs;
    take();
    Formula rhs = implication();
    if (peek().kind == Tok::Iff) {
      throw ParseError("'<->' is non-associative; add parentheses", peek().span);
    }
    return Formula::iff(std::move(lhs), std::move(rhs));
  }

  Formula implication() {
    Formula lhs = left_assoc(0);
    if (peek().kind != Tok::Imp) return lhs;
    take();
    return Formula::imp(std::move(lhs), implication());
  }

  // Left-associative levels, loosest first.
  static constexpr std::pair<Tok, Kind> kLeftLevels[] = {
      {Tok::Bar, Kind::Or},         {Tok::Amp, Kind::And},       {Tok::OPlus, Kind::OPlus},
      {Tok::OTimes, Kind::OTimes}, {Tok::OMinus, Kind::OMinus},
  };

  Formula left_assoc(std::size_t level) {
    if (level == std::size(kLeftLevels)) return unary();
    const auto [tok, kind] = kLeftLevels[level];
    Formula acc = left_assoc(level + 1);
    while (peek().kind == tok) {
      take();
      acc = Formula::binary(kind, std::move(acc), left_assoc(level + 1));
    }
    return acc;
  }

  Formula unary() {
    if (peek().kind == Tok::Tilde) {
      take();
      return Formula::neg(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token& t = take();
    switch (t.kind) {
    case Tok::Ident: return Formula::var(std::string(t.text));
    case Tok::True: return Formula::top();
    case Tok::False: return Formula::bot();
    case Tok::J:
    case Tok::I: {
      const Rational idx = index();
      const Token& open = take();
      if (open.kind != Tok::LParen) throw ParseError("expected '(' after index", open.span);
      Formula body = conditional();
      close(open);
      return Formula::indexed(t.kind == Tok::J ? Kind::J : Kind::I, idx, std::move(body));
    }
    case Tok::LParen: {
      Formula inner = conditional();
      close(t);
      return inner;
    }
    case Tok::RParen: throw ParseError("unbalanced parenthesis", t.span);
    default: throw ParseError(unexpected(t), t.span);
    }
  }

  void close(const Token& open) {
    const Token& t = peek();
    if (t.kind == Tok::RParen) {
      take();
      return;
    }
    if (t.kind == Tok::End) throw ParseError("unbalanced parenthesis", open.span);
    throw ParseError(unexpected(t), t.span);
  }

  static std::int64_t number(const Token& t, SourceSpan whole) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      throw ParseError("malformed index", whole);
    }
    return v;
  }

  Rational index() {
    const Token& open = take();
    if (open.kind != Tok::LBrace) throw ParseError("malformed index: expected '{'", open.span);
    const std::size_t start = open.span.start;
    const Token& num = take();
    if (num.kind != Tok::Number) throw ParseError("malformed index", {start, num.span.end});
    std::int64_t den = 1;
    const std::int64_t k = number(num, {start, num.span.end});
    if (peek().kind == Tok::Slash) {
      take();
      const Token& d = take();
      if (d.kind != Tok::Number) throw ParseError("malformed index", {start, d.span.end});
      den = number(d, {start, d.span.end});
    }
    const Token& shut = take();
    if (shut.kind != Tok::RBrace) throw ParseError("malformed index", {start, shut.span.end});
    const SourceSpan whole{start, shut.span.end};
    if (den == 0) throw ParseError("malformed index: zero denominator", whole);
    if (k > den) throw ParseError("malformed index: exceeds 1", whole);
    return Rational(k, den);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(Kind k) {
  switch (k) {
  case Kind::Cond: return 1;
  case Kind::Iff: return 2;
  case Kind::Imp: return 3;
  case Kind::Or: return 4;
  case Kind::And: return 5;
  case Kind::OPlus: return 6;
  case Kind::OTimes: return 7;
  case Kind::OMinus: return 8;
  case Kind::Not: return 9;
  default: return 10;
  }
}

const char* symbol(Kind k) {
  switch (k) {
  case Kind::Cond: return " => ";
  case Kind::Iff: return " <-> ";
  case Kind::Imp: return " -> ";
  case Kind::Or: return " | ";
  case Kind::And: return " & ";
  case Kind::OPlus: return " (+) ";
  case Kind::OTimes: return " (*) ";
  case Kind::OMinus: return " (-) ";
  default: return "";
  }
}

void emit(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f.kind());
  const bool wrap = p < min_prec;
  if (wrap) out += '(';
  switch (f.kind()) {
  case Kind::Var: out += f.name(); break;
  case Kind::Top: out += 'T'; break;
  case Kind::Bot: out += 'F'; break;
  case Kind::Not:
    out += '~';
    emit(f.lhs(), p, out);
    break;
  case Kind::J:
  case Kind::I:
    out += f.kind() == Kind::J ? "J{" : "I{";
    out += f.index().den() == 1 ? std::to_string(f.index().num()) : f.index().str();
    out += "}(";
    emit(f.lhs(), 0, out);
    out += ')';
    break;
  case Kind::Cond:
  case Kind::Iff:
    emit(f.lhs(), p + 1, out);
    out += symbol(f.kind());
    emit(f.rhs(), p + 1, out);
    break;
  case Kind::Imp:
    emit(f.lhs(), p + 1, out);
    out += symbol(f.kind());
    emit(f.rhs(), p, out);
    break;
  default:
    emit(f.lhs(), p, out);
    out += symbol(f.kind());
    emit(f.rhs(), p + 1, out);
    break;
  }
  if (wrap) out += ')';
}

} // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  emit(f, 0, out);
  return out;
}

std::vector<Formula> parse_corpus(std::string_view text) {
  std::vector<Formula> out;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(offset, eol - offset);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(parse(line));
      } catch (const ParseError& e) {
        const SourceSpan s = e.span();
        throw ParseError(std::string("corpus line: ") + e.what(),
                         {s.start + offset, s.end + offset});
      }
    }
    offset = eol + 1;
  }
  return out;
}

} // namespace lcr
