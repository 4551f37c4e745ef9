#include "scoopw/state/eval.hpp"

namespace scoopw {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw RuntimeFault(ErrorKind::Overflow, "integer overflow in +");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw RuntimeFault(ErrorKind::Overflow, "integer overflow in -");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw RuntimeFault(ErrorKind::Overflow, "integer overflow in *");
  return r;
}

Value eval_expr(const Handler& h, HandlerId self, const Frame& f, const CExpr& e) {
  switch (e.op) {
    case CExpr::Op::Const:
      return e.value;
    case CExpr::Op::Local:
      return f.locals[e.index];
    case CExpr::Op::Attr:
      return h.heap[f.current].attributes[e.index];
    case CExpr::Op::Field: {
      Value obj = eval_expr(h, self, f, e.kids[0]);
      if (obj.is_void()) throw RuntimeFault(ErrorKind::VoidCall, "attribute '" + e.text + "' read on Void");
      if (obj.handler != self) throw RuntimeFault(ErrorKind::VoidCall, "attribute '" + e.text + "' read across handlers");
      return h.heap[obj.object].attributes[e.index];
    }
    case CExpr::Op::Unary: {
      Value x = eval_expr(h, self, f, e.kids[0]);
      if (e.unary == UnaryOp::Not) return Value::of_bool(!x.as_bool());
      return Value::of_int(checked_sub(0, x.integer));
    }
    case CExpr::Op::Binary: {
      Value l = eval_expr(h, self, f, e.kids[0]);
      Value r = eval_expr(h, self, f, e.kids[1]);
      switch (e.binary) {
        case BinaryOp::Add: return Value::of_int(checked_add(l.integer, r.integer));
        case BinaryOp::Sub: return Value::of_int(checked_sub(l.integer, r.integer));
        case BinaryOp::Mul: return Value::of_int(checked_mul(l.integer, r.integer));
        case BinaryOp::Lt: return Value::of_bool(l.integer < r.integer);
        case BinaryOp::Le: return Value::of_bool(l.integer <= r.integer);
        case BinaryOp::Gt: return Value::of_bool(l.integer > r.integer);
        case BinaryOp::Ge: return Value::of_bool(l.integer >= r.integer);
        case BinaryOp::Eq: return Value::of_bool(l == r);
        case BinaryOp::Ne: return Value::of_bool(!(l == r));
        case BinaryOp::And: return Value::of_bool(l.as_bool() && r.as_bool());
        case BinaryOp::Or: return Value::of_bool(l.as_bool() || r.as_bool());
      }
    }
  }
  return {};
}

Value eval_expr(const Configuration& cfg, HandlerId handler, const CExpr& e) {
  const Handler& h = cfg.handlers.at(handler);
  return eval_expr(h, handler, h.stack.back(), e);
}

}  // namespace scoopw
