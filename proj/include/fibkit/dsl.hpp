#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fibkit/bigint.hpp"

// A small expression language for Fibonacci-family identities.
//
//   identity := expr '==' expr
//   expr     := term (('+' | '-') term)*
//   term     := unary ('*' unary)*          -- "2p" is read as 2*p
//   unary    := '-' unary | power
//   power    := primary ('^' unary)?
//   primary  := INT | IDENT | '(' expr ')'
//             | F(e) | L(e) | G(e) | sign(e) | pow5floor(e)
//             | binom(e, e) | sum(IDENT, e, e, e)
namespace fibkit::dsl {

enum class NodeKind {
  Literal,
  Symbol,
  Neg,
  Add,
  Sub,
  Mul,
  Pow,
  Fib,
  Lucas,
  Gen,
  Binom,
  Sign,      // (-1)^e
  Pow5Floor, // 5^floor(e/2)
  Sum,       // sum over name = args[0] .. args[1] of args[2]
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. `literal` is set for Literal; `name` for Symbol and for
/// the bound variable of Sum.
struct Node {
  NodeKind kind;
  BigInt literal;
  std::string name;
  std::vector<NodePtr> args;

  friend bool operator==(const Node& a, const Node& b);
};

bool equal(const NodePtr& a, const NodePtr& b);

NodePtr lit(Index v);
NodePtr lit(BigInt v);
NodePtr sym(std::string name);
NodePtr unary(NodeKind kind, NodePtr arg);
NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs);
NodePtr sum(std::string var, NodePtr lo, NodePtr hi, NodePtr body);

/// Where a catalog entry comes from: `parent` instantiated with each of its
/// parameters bound to an expression over this entry's parameters.
struct Expansion {
  std::string parent;
  std::vector<std::pair<std::string, NodePtr>> bindings;
};

struct Identity {
  std::string name;
  NodePtr lhs;
  NodePtr rhs;
  std::vector<std::string> params;
  std::string paper_tag;
  std::optional<Expansion> expands;
};

enum class Side { Lhs, Rhs };

inline const NodePtr& side_of(const Identity& id, Side s) { return s == Side::Lhs ? id.lhs : id.rhs; }

/// Free parameters that appear in a sum bound ("rank" parameters).
std::vector<std::string> rank_params(const Identity& id);
bool uses_gen(const Identity& id);

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(int line, int column, std::vector<std::string> expected, std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
  std::string found_;
};

class UnboundSymbolError : public std::runtime_error {
public:
  UnboundSymbolError(std::string symbol, int line, int column);
  const std::string& symbol() const { return symbol_; }

private:
  std::string symbol_;
};

/// Malformed catalog stanza (missing field, duplicate name, unknown key).
class CatalogError : public std::runtime_error {
public:
  CatalogError(int line, const std::string& what);
  int line() const { return line_; }

private:
  int line_;
};

/// Positions in error messages start at `line`, column 1 + `column_offset`.
struct SourcePos {
  int line = 1;
  int column_offset = 0;
};

NodePtr parse_expression(std::string_view text, const std::vector<std::string>& params, SourcePos pos = {});
Identity parse_identity(std::string_view text, std::vector<std::string> params, std::string name = "",
                        std::string paper_tag = "", SourcePos pos = {});

/// Minimal-parenthesis text; parse_expression(print(x)) is structurally x.
std::string print(const NodePtr& node);
/// "lhs == rhs".
std::string pretty_print(const Identity& id);

class Catalog {
public:
  Catalog() = default;
  /// Throws CatalogError on duplicate names.
  explicit Catalog(std::vector<Identity> entries);

  const std::vector<Identity>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const Identity* find(std::string_view name) const;
  std::vector<const Identity*> find_by_tag(std::string_view tag) const;

private:
  std::vector<Identity> entries_;
};

Catalog parse_catalog(std::string_view text);
Catalog load_catalog_file(const std::string& path);
/// Stanza text that parse_catalog reads back to an equal catalog.
std::string print_catalog(const Catalog& catalog);

/// The catalog shipped in catalog/identities.cat, compiled in.
const Catalog& builtin_catalog();
std::string_view builtin_catalog_text();

} // namespace fibkit::dsl
