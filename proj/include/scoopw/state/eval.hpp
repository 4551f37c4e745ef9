#pragma once

#include <stdexcept>

#include "scoopw/state/configuration.hpp"

namespace scoopw {

// A fault inside the interpreted program. The engine turns it into an error
// configuration.
class RuntimeFault : public std::runtime_error {
 public:
  RuntimeFault(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Evaluates a hoisted (call-free) expression in the active frame of
// `handler`. Throws RuntimeFault on Void access or integer overflow.
Value eval_expr(const Configuration& cfg, HandlerId handler, const CExpr& e);
Value eval_expr(const Handler& h, HandlerId self, const Frame& f, const CExpr& e);

// Checked 64-bit arithmetic.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace scoopw
