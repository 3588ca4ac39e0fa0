#include <algorithm>
#include <set>

#include "fibkit/dsl.hpp"

namespace fibkit::dsl {

bool operator==(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size())
    return false;
  if (a.kind == NodeKind::Literal && a.literal != b.literal)
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(a.args[i], b.args[i]))
      return false;
  return true;
}

bool equal(const NodePtr& a, const NodePtr& b) {
  if (a == b)
    return true;
  if (!a || !b)
    return false;
  return *a == *b;
}

NodePtr lit(Index v) { return lit(big(v)); }

NodePtr lit(BigInt v) {
  if (sgn(v) < 0)
    return unary(NodeKind::Neg, lit(BigInt(-v)));
  return std::make_shared<const Node>(Node{NodeKind::Literal, std::move(v), {}, {}});
}

NodePtr sym(std::string name) { return std::make_shared<const Node>(Node{NodeKind::Symbol, 0, std::move(name), {}}); }

NodePtr unary(NodeKind kind, NodePtr arg) { return std::make_shared<const Node>(Node{kind, 0, {}, {std::move(arg)}}); }

NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
  return std::make_shared<const Node>(Node{kind, 0, {}, {std::move(lhs), std::move(rhs)}});
}

NodePtr sum(std::string var, NodePtr lo, NodePtr hi, NodePtr body) {
  return std::make_shared<const Node>(
      Node{NodeKind::Sum, 0, std::move(var), {std::move(lo), std::move(hi), std::move(body)}});
}

namespace {

void collect_symbols(const NodePtr& n, std::set<std::string>& out) {
  if (n->kind == NodeKind::Symbol)
    out.insert(n->name);
  for (const auto& a : n->args)
    collect_symbols(a, out);
}

void collect_bound_symbols(const NodePtr& n, std::set<std::string>& out) {
  if (n->kind == NodeKind::Sum) {
    collect_symbols(n->args[0], out);
    collect_symbols(n->args[1], out);
  }
  for (const auto& a : n->args)
    collect_bound_symbols(a, out);
}

bool contains_kind(const NodePtr& n, NodeKind k) {
  return n->kind == k || std::any_of(n->args.begin(), n->args.end(), [k](const NodePtr& a) { return contains_kind(a, k); });
}

int precedence(const Node& n) {
  switch (n.kind) {
  case NodeKind::Add:
  case NodeKind::Sub:
    return 1;
  case NodeKind::Mul:
    return 2;
  case NodeKind::Neg:
    return 3;
  case NodeKind::Pow:
    return 4;
  default:
    return 5;
  }
}

std::string print_at(const NodePtr& n, int min_prec);

std::string call(std::string_view fn, const NodePtr& n) {
  std::string s(fn);
  s += "(";
  if (n->kind == NodeKind::Sum)
    s += n->name + ", ";
  for (std::size_t i = 0; i < n->args.size(); ++i)
    s += (i ? ", " : "") + print_at(n->args[i], 0);
  return s + ")";
}

std::string print_node(const NodePtr& n) {
  const auto& a = n->args;
  switch (n->kind) {
  case NodeKind::Literal:
    return to_decimal(n->literal);
  case NodeKind::Symbol:
    return n->name;
  case NodeKind::Neg:
    return "-" + print_at(a[0], 3);
  case NodeKind::Add:
    return print_at(a[0], 1) + " + " + print_at(a[1], 2);
  case NodeKind::Sub:
    return print_at(a[0], 1) + " - " + print_at(a[1], 2);
  case NodeKind::Mul:
    return print_at(a[0], 2) + "*" + print_at(a[1], 3);
  case NodeKind::Pow:
    return print_at(a[0], 5) + "^" + print_at(a[1], 3);
  case NodeKind::Fib:
    return call("F", n);
  case NodeKind::Lucas:
    return call("L", n);
  case NodeKind::Gen:
    return call("G", n);
  case NodeKind::Binom:
    return call("binom", n);
  case NodeKind::Sign:
    return call("sign", n);
  case NodeKind::Pow5Floor:
    return call("pow5floor", n);
  case NodeKind::Sum:
    return call("sum", n);
  }
  return {};
}

std::string print_at(const NodePtr& n, int min_prec) {
  std::string s = print_node(n);
  return precedence(*n) < min_prec ? "(" + s + ")" : s;
}

} // namespace

std::vector<std::string> rank_params(const Identity& id) {
  std::set<std::string> bounds;
  collect_bound_symbols(id.lhs, bounds);
  collect_bound_symbols(id.rhs, bounds);
  std::vector<std::string> out;
  for (const auto& p : id.params)
    if (bounds.count(p))
      out.push_back(p);
  return out;
}

bool uses_gen(const Identity& id) { return contains_kind(id.lhs, NodeKind::Gen) || contains_kind(id.rhs, NodeKind::Gen); }

std::string print(const NodePtr& node) { return print_at(node, 0); }

std::string pretty_print(const Identity& id) { return print(id.lhs) + " == " + print(id.rhs); }

} // namespace fibkit::dsl
