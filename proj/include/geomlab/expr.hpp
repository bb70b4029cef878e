// Expression trees for metric component documents.  The grammar covers
// + - * / ^, unary minus, the functions sin cos sinh cosh exp sqrt abs,
// and piecewise(cond, a, b) with a comparison condition.  Trees can be
// evaluated and symbolically differentiated; differentiation is what backs
// the closed-form derivative mode for component metrics.
#pragma once

#include <memory>
#include <string>
#include <vector>

namespace geomlab {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class ExprKind {
  constant,
  variable,
  add,
  sub,
  mul,
  div,
  pow,
  neg,
  call,       // unary function by name
  piecewise,  // cond ? a : b with cond = (lhs cmp rhs)
  sign,       // internal, from d|x|
  log,        // internal, from d(a^b) with non-constant exponent
};

enum class CmpOp { lt, le, gt, ge, eq };

struct ExprNode {
  ExprKind kind;
  double value = 0.0;       // constant
  int var = -1;             // variable index
  std::string fn;           // call
  CmpOp cmp = CmpOp::lt;    // piecewise condition operator
  ExprPtr a, b;             // operands
  ExprPtr cond_l, cond_r;   // piecewise condition sides

  double eval(const double* x) const;
};

// Parses source against the coordinate name list; throws std::runtime_error
// with a position hint on bad input.
ExprPtr parse_expr(const std::string& src, const std::vector<std::string>& coords);

// d expr / d x[var], with constant folding.  abs differentiates to sign
// (the a.e. derivative), piecewise differentiates branchwise.
ExprPtr diff_expr(const ExprPtr& e, int var);

ExprPtr make_const(double v);

std::string to_string(const ExprPtr& e, const std::vector<std::string>& coords);

}  // namespace geomlab
