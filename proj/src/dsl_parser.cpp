#include <algorithm>
#include <cctype>
#include <set>

#include "fibkit/dsl.hpp"

namespace fibkit::dsl {

namespace {

enum class Tok { Int, Ident, LParen, RParen, Comma, Plus, Minus, Star, Caret, EqEq, End, Bad };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
  case Tok::End:
    return "end of input";
  default:
    return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src, SourcePos pos) {
  std::vector<Token> out;
  int line = pos.line;
  int col = 1 + pos.column_offset;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(src.substr(i, len)), line, col});
    i += len;
    col += static_cast<int>(len);
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      push(Tok::Int, j - i);
      // Juxtaposition such as "2p" or "3F(m)" means multiplication.
      if (i < src.size() && (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        out.push_back({Tok::Star, "*", line, col});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    switch (c) {
    case '(': push(Tok::LParen, 1); break;
    case ')': push(Tok::RParen, 1); break;
    case ',': push(Tok::Comma, 1); break;
    case '+': push(Tok::Plus, 1); break;
    case '-': push(Tok::Minus, 1); break;
    case '*': push(Tok::Star, 1); break;
    case '^': push(Tok::Caret, 1); break;
    case '=':
      if (i + 1 < src.size() && src[i + 1] == '=') {
        push(Tok::EqEq, 2);
        break;
      }
      [[fallthrough]];
    default:
      push(Tok::Bad, 1);
      break;
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct FunctionSig {
  std::string_view name;
  NodeKind kind;
  int arity;
};

constexpr FunctionSig kFunctions[] = {
    {"F", NodeKind::Fib, 1},          {"L", NodeKind::Lucas, 1},         {"G", NodeKind::Gen, 1},
    {"sign", NodeKind::Sign, 1},      {"pow5floor", NodeKind::Pow5Floor, 1}, {"binom", NodeKind::Binom, 2},
    {"sum", NodeKind::Sum, 4},
};

const FunctionSig* lookup_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name)
      return &f;
  return nullptr;
}

class Parser {
public:
  Parser(std::string_view src, const std::vector<std::string>& params, SourcePos pos)
      : toks_(lex(src, pos)), params_(params) {}

  NodePtr expression_only() {
    NodePtr e = expr();
    expect(Tok::End, "end of input");
    return e;
  }

  std::pair<NodePtr, NodePtr> identity() {
    NodePtr l = expr();
    expect(Tok::EqEq, "'=='");
    NodePtr r = expr();
    expect(Tok::End, "end of input");
    return {l, r};
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw SyntaxError(t.line, t.column, std::move(expected), describe(t));
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail({what});
    return advance();
  }

  NodePtr expr() {
    NodePtr left = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      NodeKind k = advance().kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      left = binary(k, left, term());
    }
    return left;
  }

  NodePtr term() {
    NodePtr left = unary_expr();
    while (peek().kind == Tok::Star) {
      advance();
      left = binary(NodeKind::Mul, left, unary_expr());
    }
    return left;
  }

  NodePtr unary_expr() {
    if (peek().kind == Tok::Minus) {
      advance();
      return unary(NodeKind::Neg, unary_expr());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek().kind == Tok::Caret) {
      advance();
      return binary(NodeKind::Pow, base, unary_expr());
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::Int:
      advance();
      return lit(BigInt(t.text, 10));
    case Tok::LParen: {
      advance();
      NodePtr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    case Tok::Ident:
      return identifier();
    default:
      fail({"integer", "identifier", "'('", "'-'"});
    }
  }

  NodePtr identifier() {
    const Token t = advance();
    if (const FunctionSig* f = lookup_function(t.text))
      return call(*f);
    if (!in_scope(t.text))
      throw UnboundSymbolError(t.text, t.line, t.column);
    return sym(t.text);
  }

  NodePtr call(const FunctionSig& f) {
    expect(Tok::LParen, "'('");
    if (f.kind == NodeKind::Sum) {
      const Token var = expect(Tok::Ident, "identifier");
      if (lookup_function(var.text) || in_scope(var.text))
        throw SyntaxError(var.line, var.column, {"fresh summation variable"}, describe(var));
      expect(Tok::Comma, "','");
      NodePtr lo = expr();
      expect(Tok::Comma, "','");
      NodePtr hi = expr();
      expect(Tok::Comma, "','");
      bound_.push_back(var.text);
      NodePtr body = expr();
      bound_.pop_back();
      expect(Tok::RParen, "')'");
      return sum(var.text, lo, hi, body);
    }
    std::vector<NodePtr> args{expr()};
    for (int i = 1; i < f.arity; ++i) {
      expect(Tok::Comma, "','");
      args.push_back(expr());
    }
    expect(Tok::RParen, "')'");
    return f.arity == 1 ? unary(f.kind, args[0]) : binary(f.kind, args[0], args[1]);
  }

  bool in_scope(const std::string& s) const {
    return std::find(params_.begin(), params_.end(), s) != params_.end() ||
           std::find(bound_.begin(), bound_.end(), s) != bound_.end();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& params_;
  std::vector<std::string> bound_;
};

std::string join_expected(const std::vector<std::string>& expected) {
  std::string s;
  for (const auto& e : expected)
    s += (s.empty() ? "" : ", ") + e;
  return s;
}

} // namespace

SyntaxError::SyntaxError(int line, int column, std::vector<std::string> expected, std::string found)
    : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": expected " + join_expected(expected) + ", found " + found),
      line_(line), column_(column), expected_(std::move(expected)), found_(std::move(found)) {}

UnboundSymbolError::UnboundSymbolError(std::string symbol, int line, int column)
    : std::runtime_error("unbound symbol '" + symbol + "' at line " + std::to_string(line) + ", column " +
                         std::to_string(column)),
      symbol_(std::move(symbol)) {}

CatalogError::CatalogError(int line, const std::string& what)
    : std::runtime_error("catalog line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

void check_params(const std::vector<std::string>& params) {
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (p.empty() || !(std::isalpha(static_cast<unsigned char>(p[0])) || p[0] == '_') ||
        !std::all_of(p.begin(), p.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
      throw std::invalid_argument("invalid parameter name '" + p + "'");
    if (lookup_function(p))
      throw std::invalid_argument("parameter name '" + p + "' is reserved");
    if (!seen.insert(p).second)
      throw std::invalid_argument("duplicate parameter '" + p + "'");
  }
}

} // namespace

NodePtr parse_expression(std::string_view text, const std::vector<std::string>& params, SourcePos pos) {
  check_params(params);
  return Parser(text, params, pos).expression_only();
}

Identity parse_identity(std::string_view text, std::vector<std::string> params, std::string name,
                        std::string paper_tag, SourcePos pos) {
  check_params(params);
  auto [l, r] = Parser(text, params, pos).identity();
  return Identity{std::move(name), std::move(l), std::move(r), std::move(params), std::move(paper_tag), std::nullopt};
}

} // namespace fibkit::dsl
