#pragma once

#include <cstdint>
#include <string>

namespace scoopw {

using HandlerId = std::uint32_t;
using ObjectId = std::uint32_t;
using NodeId = std::uint32_t;
using ClassId = std::uint32_t;
using MethodId = std::uint32_t;
using BlockId = std::uint32_t;
using BlockInstanceId = std::uint32_t;
using ControlState = std::uint32_t;

inline constexpr HandlerId kNoHandler = ~HandlerId{0};

// A runtime value. References name an object by the handler whose heap owns
// it plus the object's index in that heap.
struct Value {
  enum class Kind : std::uint8_t { Void, Integer, Boolean, Ref };

  Kind kind = Kind::Void;
  std::int64_t integer = 0;  // Integer payload, or 0/1 for Boolean
  HandlerId handler = 0;
  ObjectId object = 0;

  static Value void_value() { return {}; }
  static Value of_int(std::int64_t i) { return {Kind::Integer, i, 0, 0}; }
  static Value of_bool(bool b) { return {Kind::Boolean, b ? 1 : 0, 0, 0}; }
  static Value ref(HandlerId h, ObjectId o) { return {Kind::Ref, 0, h, o}; }

  bool is_void() const { return kind == Kind::Void; }
  bool is_ref() const { return kind == Kind::Ref; }
  bool as_bool() const { return integer != 0; }

  bool operator==(const Value&) const = default;
};

std::string to_string(const Value& v);

}  // namespace scoopw
