#include "geomlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace geomlab {

double ExprNode::eval(const double* x) const {
  switch (kind) {
    case ExprKind::constant: return value;
    case ExprKind::variable: return x[var];
    case ExprKind::add: return a->eval(x) + b->eval(x);
    case ExprKind::sub: return a->eval(x) - b->eval(x);
    case ExprKind::mul: return a->eval(x) * b->eval(x);
    case ExprKind::div: return a->eval(x) / b->eval(x);
    case ExprKind::pow: return std::pow(a->eval(x), b->eval(x));
    case ExprKind::neg: return -a->eval(x);
    case ExprKind::sign: {
      const double v = a->eval(x);
      return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
    case ExprKind::log: return std::log(a->eval(x));
    case ExprKind::call: {
      const double v = a->eval(x);
      if (fn == "sin") return std::sin(v);
      if (fn == "cos") return std::cos(v);
      if (fn == "sinh") return std::sinh(v);
      if (fn == "cosh") return std::cosh(v);
      if (fn == "exp") return std::exp(v);
      if (fn == "sqrt") return std::sqrt(v);
      if (fn == "abs") return std::abs(v);
      throw std::runtime_error("unknown function: " + fn);
    }
    case ExprKind::piecewise: {
      const double l = cond_l->eval(x), r = cond_r->eval(x);
      bool c = false;
      switch (cmp) {
        case CmpOp::lt: c = l < r; break;
        case CmpOp::le: c = l <= r; break;
        case CmpOp::gt: c = l > r; break;
        case CmpOp::ge: c = l >= r; break;
        case CmpOp::eq: c = l == r; break;
      }
      return c ? a->eval(x) : b->eval(x);
    }
  }
  return 0.0;
}

ExprPtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::constant;
  n->value = v;
  return n;
}

namespace {

ExprPtr node(ExprKind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_const(const ExprPtr& e, double v) {
  return e->kind == ExprKind::constant && e->value == v;
}

ExprPtr add(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->kind == ExprKind::constant && b->kind == ExprKind::constant)
    return make_const(a->value + b->value);
  return node(ExprKind::add, std::move(a), std::move(b));
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, 0.0)) return a;
  if (a->kind == ExprKind::constant && b->kind == ExprKind::constant)
    return make_const(a->value - b->value);
  if (is_const(a, 0.0)) return node(ExprKind::neg, std::move(b));
  return node(ExprKind::sub, std::move(a), std::move(b));
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->kind == ExprKind::constant && b->kind == ExprKind::constant)
    return make_const(a->value * b->value);
  return node(ExprKind::mul, std::move(a), std::move(b));
}

ExprPtr divide(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0.0)) return make_const(0.0);
  if (is_const(b, 1.0)) return a;
  if (a->kind == ExprKind::constant && b->kind == ExprKind::constant && b->value != 0.0)
    return make_const(a->value / b->value);
  return node(ExprKind::div, std::move(a), std::move(b));
}

ExprPtr call(const std::string& fn, ExprPtr arg) {
  auto n = node(ExprKind::call, std::move(arg));
  const_cast<ExprNode*>(n.get())->fn = fn;
  return n;
}

struct Parser {
  const std::string& src;
  const std::vector<std::string>& coords;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("expression error at offset " + std::to_string(pos) +
                             " in \"" + src + "\": " + msg);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos != src.size()) fail("trailing input");
    return e;
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    for (;;) {
      if (eat('+')) e = add(e, parse_product());
      else if (eat('-')) e = sub(e, parse_product());
      else return e;
    }
  }

  ExprPtr parse_product() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (eat('*')) e = mul(e, parse_unary());
      else if (eat('/')) e = divide(e, parse_unary());
      else return e;
    }
  }

  ExprPtr parse_unary() {
    if (eat('-')) {
      ExprPtr e = parse_unary();
      if (e->kind == ExprKind::constant) return make_const(-e->value);
      return node(ExprKind::neg, std::move(e));
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (eat('^')) {
      ExprPtr exp = parse_unary();  // right associative
      if (is_const(exp, 1.0)) return base;
      return node(ExprKind::pow, std::move(base), std::move(exp));
    }
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    const char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    if (eat('(')) {
      ExprPtr e = parse_sum();
      if (!eat(')')) fail("expected )");
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    std::size_t end = pos;
    while (end < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[end])) || src[end] == '.' ||
            src[end] == 'e' || src[end] == 'E' ||
            ((src[end] == '+' || src[end] == '-') && end > pos &&
             (src[end - 1] == 'e' || src[end - 1] == 'E'))))
      ++end;
    const std::string tok = src.substr(pos, end - pos);
    try {
      const double v = std::stod(tok);
      pos = end;
      return make_const(v);
    } catch (...) {
      fail("bad number \"" + tok + "\"");
    }
  }

  ExprPtr parse_name() {
    std::size_t end = pos;
    while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) ||
                                src[end] == '_'))
      ++end;
    const std::string name = src.substr(pos, end - pos);
    pos = end;
    if (name == "pi") return make_const(M_PI);
    if (peek() == '(') {
      if (name == "piecewise") return parse_piecewise();
      eat('(');
      ExprPtr arg = parse_sum();
      if (!eat(')')) fail("expected ) after function argument");
      static const char* fns[] = {"sin", "cos", "sinh", "cosh", "exp", "sqrt", "abs"};
      for (const char* f : fns)
        if (name == f) return call(name, std::move(arg));
      fail("unknown function \"" + name + "\"");
    }
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] == name) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::variable;
        n->var = static_cast<int>(i);
        return n;
      }
    fail("unknown name \"" + name + "\"");
  }

  ExprPtr parse_piecewise() {
    eat('(');
    ExprPtr lhs = parse_sum();
    CmpOp op;
    skip_ws();
    if (eat('<')) op = eat('=') ? CmpOp::le : CmpOp::lt;
    else if (eat('>')) op = eat('=') ? CmpOp::ge : CmpOp::gt;
    else if (eat('=') && eat('=')) op = CmpOp::eq;
    else fail("expected comparison in piecewise condition");
    ExprPtr rhs = parse_sum();
    if (!eat(',')) fail("expected , after piecewise condition");
    ExprPtr then_branch = parse_sum();
    if (!eat(',')) fail("expected , between piecewise branches");
    ExprPtr else_branch = parse_sum();
    if (!eat(')')) fail("expected ) closing piecewise");
    auto n = node(ExprKind::piecewise, std::move(then_branch), std::move(else_branch));
    auto* m = const_cast<ExprNode*>(n.get());
    m->cmp = op;
    m->cond_l = std::move(lhs);
    m->cond_r = std::move(rhs);
    return n;
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& src, const std::vector<std::string>& coords) {
  Parser p{src, coords};
  return p.parse();
}

ExprPtr diff_expr(const ExprPtr& e, int var) {
  switch (e->kind) {
    case ExprKind::constant: return make_const(0.0);
    case ExprKind::variable: return make_const(e->var == var ? 1.0 : 0.0);
    case ExprKind::add: return add(diff_expr(e->a, var), diff_expr(e->b, var));
    case ExprKind::sub: return sub(diff_expr(e->a, var), diff_expr(e->b, var));
    case ExprKind::mul:
      return add(mul(diff_expr(e->a, var), e->b), mul(e->a, diff_expr(e->b, var)));
    case ExprKind::div:
      // (a/b)' = a'/b - a b'/b^2
      return sub(divide(diff_expr(e->a, var), e->b),
                 divide(mul(e->a, diff_expr(e->b, var)), mul(e->b, e->b)));
    case ExprKind::neg: return sub(make_const(0.0), diff_expr(e->a, var));
    case ExprKind::sign: return make_const(0.0);  // a.e. (jump at 0 excluded)
    case ExprKind::log: return divide(diff_expr(e->a, var), e->a);
    case ExprKind::pow: {
      if (e->b->kind == ExprKind::constant) {
        const double p = e->b->value;
        // p a^(p-1) a'
        return mul(make_const(p),
                   mul(node(ExprKind::pow, e->a, make_const(p - 1.0)),
                       diff_expr(e->a, var)));
      }
      // a^b = exp(b log a):  (a^b)' = a^b (b' log a + b a'/a)
      ExprPtr loga = node(ExprKind::log, e->a);
      ExprPtr inner = add(mul(diff_expr(e->b, var), loga),
                          divide(mul(e->b, diff_expr(e->a, var)), e->a));
      return mul(e, inner);
    }
    case ExprKind::call: {
      ExprPtr da = diff_expr(e->a, var);
      if (is_const(da, 0.0)) return make_const(0.0);
      ExprPtr outer;
      if (e->fn == "sin") outer = call("cos", e->a);
      else if (e->fn == "cos") outer = sub(make_const(0.0), call("sin", e->a));
      else if (e->fn == "sinh") outer = call("cosh", e->a);
      else if (e->fn == "cosh") outer = call("sinh", e->a);
      else if (e->fn == "exp") outer = call("exp", e->a);
      else if (e->fn == "sqrt") outer = divide(make_const(0.5), call("sqrt", e->a));
      else if (e->fn == "abs") outer = node(ExprKind::sign, e->a);
      else throw std::runtime_error("cannot differentiate " + e->fn);
      return mul(std::move(outer), std::move(da));
    }
    case ExprKind::piecewise: {
      auto n = node(ExprKind::piecewise, diff_expr(e->a, var), diff_expr(e->b, var));
      auto* m = const_cast<ExprNode*>(n.get());
      m->cmp = e->cmp;
      m->cond_l = e->cond_l;
      m->cond_r = e->cond_r;
      return n;
    }
  }
  return make_const(0.0);
}

std::string to_string(const ExprPtr& e, const std::vector<std::string>& coords) {
  switch (e->kind) {
    case ExprKind::constant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", e->value);
      return buf;
    }
    case ExprKind::variable: return coords[static_cast<std::size_t>(e->var)];
    case ExprKind::add: return "(" + to_string(e->a, coords) + "+" + to_string(e->b, coords) + ")";
    case ExprKind::sub: return "(" + to_string(e->a, coords) + "-" + to_string(e->b, coords) + ")";
    case ExprKind::mul: return "(" + to_string(e->a, coords) + "*" + to_string(e->b, coords) + ")";
    case ExprKind::div: return "(" + to_string(e->a, coords) + "/" + to_string(e->b, coords) + ")";
    case ExprKind::pow: return "(" + to_string(e->a, coords) + "^" + to_string(e->b, coords) + ")";
    case ExprKind::neg: return "(-" + to_string(e->a, coords) + ")";
    case ExprKind::sign: return "sign(" + to_string(e->a, coords) + ")";
    case ExprKind::log: return "log(" + to_string(e->a, coords) + ")";
    case ExprKind::call: return e->fn + "(" + to_string(e->a, coords) + ")";
    case ExprKind::piecewise:
      return "piecewise(" + to_string(e->cond_l, coords) + "?" + to_string(e->cond_r, coords) +
             "," + to_string(e->a, coords) + "," + to_string(e->b, coords) + ")";
  }
  return "?";
}

}  // namespace geomlab
