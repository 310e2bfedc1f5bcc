#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>

#include <fmt/format.h>

#include "vf/program/program.hpp"

namespace vf::program {

bool operator==(const Tuple& a, const Tuple& b) { return a.items == b.items; }
bool operator==(const List& a, const List& b) { return a.items == b.items; }
bool operator==(const NestedCall& a, const NestedCall& b) {
  if (!a.call || !b.call) return a.call == b.call;
  return *a.call == *b.call;
}

std::string_view to_string(SourceKind kind) {
  return kind == SourceKind::Canonical ? "canonical" : "traced-script";
}

ParseError::ParseError(SourcePos pos, const std::string& message)
    : std::runtime_error(fmt::format("{}:{}: {}", pos.line, pos.column, message)), pos_(pos), detail_(message) {}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

enum class Tok { Ident, Number, String, LParen, RParen, LBracket, RBracket, Comma, Equals, Dot, Newline, End };

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Dot: return "'.'";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int depth = 0;
    while (true) {
      skip_blank();
      const SourcePos pos = here();
      if (at_end()) {
        out.push_back({Tok::End, "", 0, pos});
        return out;
      }
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (c == '\n' || c == ';') {
        advance();
        if (depth == 0) out.push_back({Tok::Newline, "", 0, pos});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) id += advance();
        out.push_back({Tok::Ident, id, 0, pos});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        out.push_back(number(pos));
        continue;
      }
      if (c == '"' || c == '\'') {
        out.push_back(string(pos));
        continue;
      }
      advance();
      switch (c) {
        case '(': ++depth; out.push_back({Tok::LParen, "(", 0, pos}); break;
        case '[': ++depth; out.push_back({Tok::LBracket, "[", 0, pos}); break;
        case ')': --depth; out.push_back({Tok::RParen, ")", 0, pos}); break;
        case ']': --depth; out.push_back({Tok::RBracket, "]", 0, pos}); break;
        case ',': out.push_back({Tok::Comma, ",", 0, pos}); break;
        case '=': out.push_back({Tok::Equals, "=", 0, pos}); break;
        case '.': out.push_back({Tok::Dot, ".", 0, pos}); break;
        default: throw ParseError(pos, fmt::format("unexpected character '{}'", c));
      }
      if (depth < 0) depth = 0;
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }
  SourcePos here() const { return {line_, col_}; }
  char advance() {
    const char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_blank() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  Token number(SourcePos pos) {
    std::string text;
    if (peek() == '-' || peek() == '+') text += advance();
    auto digits = [&] {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    };
    digits();
    if (peek() == '.') {
      text += advance();
      digits();
    }
    if (peek() == 'e' || peek() == 'E') {
      text += advance();
      if (peek() == '-' || peek() == '+') text += advance();
      digits();
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
      throw ParseError(pos, fmt::format("malformed number '{}'", text));
    return {Tok::Number, text, v, pos};
  }

  Token string(SourcePos pos) {
    const char quote = advance();
    std::string s;
    while (true) {
      if (at_end() || peek() == '\n') throw ParseError(pos, "unterminated string");
      char c = advance();
      if (c == quote) break;
      if (c == '\\') {
        if (at_end()) throw ParseError(pos, "unterminated string");
        const char e = advance();
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '\\': case '"': case '\'': c = e; break;
          default: throw ParseError(pos, fmt::format("unknown escape '\\{}'", e));
        }
      }
      s += c;
    }
    return {Tok::String, s, 0, pos};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<Call> program() {
    std::vector<Call> calls;
    while (true) {
      while (at(Tok::Newline)) ++i_;
      if (at(Tok::End)) return calls;
      calls.push_back(statement());
      if (calls.size() > kMaxCalls) throw ProgramTooLarge(fmt::format("program exceeds {} calls", kMaxCalls));
      if (!at(Tok::Newline) && !at(Tok::End))
        throw ParseError(cur().pos, fmt::format("expected end of line, found {}", what(cur())));
    }
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool at(Tok k) const { return cur().kind == k; }
  static std::string what(const Token& t) {
    return t.kind == Tok::Ident || t.kind == Tok::Number ? fmt::format("'{}'", t.text) : std::string(describe(t.kind));
  }
  const Token& expect(Tok k) {
    if (!at(k)) throw ParseError(cur().pos, fmt::format("expected {}, found {}", describe(k), what(cur())));
    return toks_[i_++];
  }

  Call statement() {
    const SourcePos pos = cur().pos;
    std::vector<std::string> names;
    names.push_back(expect(Tok::Ident).text);
    while (at(Tok::Comma)) {
      ++i_;
      names.push_back(expect(Tok::Ident).text);
    }
    Call call;
    if (at(Tok::Equals)) {
      ++i_;
      call.targets = std::move(names);
      call.pos = cur().pos;
      call.function = expect(Tok::Ident).text;
    } else if (names.size() == 1 && at(Tok::LParen)) {
      call.function = names.front();
      call.pos = pos;
    } else {
      throw ParseError(cur().pos, fmt::format("expected '(' or '=', found {}", what(cur())));
    }
    arguments(call);
    return call;
  }

  void arguments(Call& call) {
    expect(Tok::LParen);
    bool named = false;
    while (!at(Tok::RParen)) {
      Argument arg;
      if (at(Tok::Ident) && toks_[i_ + 1].kind == Tok::Equals) {
        arg.name = cur().text;
        i_ += 2;
        named = true;
      } else if (named) {
        throw ParseError(cur().pos, "positional argument follows keyword argument");
      }
      arg.value = value();
      call.args.push_back(std::move(arg));
      if (at(Tok::Comma)) ++i_;
      else if (!at(Tok::RParen))
        throw ParseError(cur().pos, fmt::format("expected ',' or ')', found {}", what(cur())));
    }
    ++i_;
  }

  std::vector<Value> sequence(Tok close, bool& trailing_comma) {
    std::vector<Value> items;
    trailing_comma = false;
    while (!at(close)) {
      items.push_back(value());
      trailing_comma = false;
      if (at(Tok::Comma)) {
        ++i_;
        trailing_comma = true;
      } else if (!at(close)) {
        throw ParseError(cur().pos, fmt::format("expected ',' or {}, found {}", describe(close), what(cur())));
      }
    }
    ++i_;
    return items;
  }

  Value value() {
    const Token& t = cur();
    Value v;
    v.pos = t.pos;
    switch (t.kind) {
      case Tok::Number:
        ++i_;
        v.data = t.number;
        return v;
      case Tok::String:
        ++i_;
        v.data = t.text;
        return v;
      case Tok::LBracket: {
        ++i_;
        bool trailing;
        v.data = List{sequence(Tok::RBracket, trailing)};
        return v;
      }
      case Tok::LParen: {
        ++i_;
        bool trailing;
        auto items = sequence(Tok::RParen, trailing);
        if (items.size() == 1 && !trailing) {
          Value inner = std::move(items.front());
          inner.pos = v.pos;
          return inner;
        }
        v.data = Tuple{std::move(items)};
        return v;
      }
      case Tok::Ident: {
        ++i_;
        if (t.text == "True" || t.text == "False") {
          v.data = t.text == "True";
          return v;
        }
        if (at(Tok::Dot)) {
          ++i_;
          v.data = EnumToken{t.text, expect(Tok::Ident).text};
          return v;
        }
        if (at(Tok::LParen)) {
          auto call = std::make_shared<Call>();
          call->function = t.text;
          call->pos = t.pos;
          arguments(*call);
          v.data = NestedCall{std::move(call)};
          return v;
        }
        v.data = Identifier{t.text};
        return v;
      }
      default:
        throw ParseError(t.pos, fmt::format("expected a value, found {}", what(t)));
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::optional<ProgramMeta> parse_header(std::string_view text) {
  constexpr std::string_view kTag = "#vfprog";
  if (text.substr(0, kTag.size()) != kTag) return std::nullopt;
  const std::string_view line = text.substr(0, text.find('\n'));
  ProgramMeta meta;
  meta.source_hash = fnv1a64(text);
  std::size_t at = kTag.size();
  while (at < line.size()) {
    while (at < line.size() && line[at] == ' ') ++at;
    const std::size_t end = std::min(line.find(' ', at), line.size());
    const std::string_view field = line.substr(at, end - at);
    at = end;
    if (field.empty() || field == "v1") continue;
    const std::size_t eq = field.find('=');
    const SourcePos pos{1, static_cast<int>(end - field.size()) + 1};
    if (eq == std::string_view::npos) throw ParseError(pos, fmt::format("malformed header field '{}'", field));
    const std::string_view key = field.substr(0, eq), val = field.substr(eq + 1);
    if (key == "source") {
      if (val == "canonical") meta.source = SourceKind::Canonical;
      else if (val == "traced-script") meta.source = SourceKind::TracedScript;
      else throw ParseError(pos, fmt::format("unknown source kind '{}'", val));
    } else if (key == "hash") {
      std::uint64_t h = 0;
      const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), h, 16);
      if (ec != std::errc() || ptr != val.data() + val.size()) throw ParseError(pos, "malformed hash");
      meta.source_hash = h;
    }
  }
  if (line.find(" v1") == std::string_view::npos) throw ParseError({1, 1}, "unsupported program version");
  return meta;
}

}  // namespace

SceneProgram parse_program(std::string_view text) {
  SceneProgram program;
  const auto header = parse_header(text);
  if (!header && text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError({1, 1}, "empty program");
  program.meta = header.value_or(ProgramMeta{SourceKind::Canonical, fnv1a64(text)});
  program.calls = Parser(Lexer(text).run()).program();
  return program;
}

}  // namespace vf::program
