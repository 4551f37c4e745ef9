#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scoopw/frontend/program.hpp"
#include "scoopw/value.hpp"

namespace scoopw {

struct Object {
  ClassId cls = 0;
  std::vector<Value> attributes;

  bool operator==(const Object&) const = default;
};

enum class FrameOrigin : std::uint8_t {
  Root,           // entry method of the root handler
  Creation,       // creation procedure of a separately created object
  RemoteCommand,  // command dequeued from the inbox
  RemoteQuery,    // query dequeued from the inbox; replies to `client`
  LocalCall,      // pushed by a call on one of the handler's own objects
};

const char* to_string(FrameOrigin o);

// A reserved supplier. Requests logged through it are numbered 0, 1, ...
struct BlockTarget {
  HandlerId handler = 0;
  std::uint32_t next_seq = 0;

  bool operator==(const BlockTarget&) const = default;
};

// An entered separate block. `targets` lists only the suppliers this block
// reserved itself; suppliers already held by an enclosing block are reused.
struct ActiveBlock {
  BlockId block = 0;
  BlockInstanceId id = 0;
  std::vector<BlockTarget> targets;

  bool operator==(const ActiveBlock&) const = default;
};

struct Frame {
  MethodId method = 0;
  ControlState state = 0;
  ObjectId current = 0;
  FrameOrigin origin = FrameOrigin::Root;
  HandlerId client = kNoHandler;  // remote frames: the requesting handler
  std::vector<Value> locals;
  std::vector<ActiveBlock> blocks;

  bool operator==(const Frame&) const = default;
};

struct Request {
  enum class Kind : std::uint8_t { Command, Query };

  Kind kind = Kind::Command;
  MethodId method = 0;
  ObjectId target = 0;
  std::vector<Value> args;
  // provenance
  HandlerId client = 0;
  BlockInstanceId block = 0;
  std::uint32_t seq = 0;

  bool operator==(const Request&) const = default;
};

struct InboxRQ {
  std::vector<Request> queue;  // front = index 0
  HandlerId lock_owner = kNoHandler;
  BlockInstanceId lock_block = 0;

  bool operator==(const InboxRQ&) const = default;
};

struct Subqueue {
  HandlerId client = 0;
  BlockInstanceId block = 0;
  bool open = true;
  std::vector<Request> requests;

  bool operator==(const Subqueue&) const = default;
};

struct InboxQoQ {
  std::vector<Subqueue> subqueues;  // creation order

  bool operator==(const InboxQoQ&) const = default;
};

using Inbox = std::variant<InboxRQ, InboxQoQ>;

bool inbox_empty(const Inbox& inbox);

// WaitingLock and WaitingPrelock are not stored: a handler sitting at an
// EnterBlock whose reservation is disabled is waiting by definition.
enum class HandlerStatus : std::uint8_t { Idle, Executing, WaitingQuery, WaitingCondition };

const char* to_string(HandlerStatus s);

struct Handler {
  NodeId node = 0;
  HandlerStatus status = HandlerStatus::Idle;
  HandlerId awaiting = kNoHandler;  // WaitingQuery: the supplier
  std::vector<Frame> stack;         // back = active frame
  std::vector<Object> heap;
  Inbox inbox;
  std::vector<NodeId> prelocks;     // held while entering a block under D-SCOOP

  bool operator==(const Handler&) const = default;
};

struct Topology {
  std::uint32_t node_count = 1;
  std::vector<HandlerId> prelock_owner{kNoHandler};  // per node

  bool operator==(const Topology&) const = default;
};

enum class ErrorKind : std::uint8_t { Deadlock, MutexViolation, OrderViolation, VoidCall, Stuck, Overflow };

const char* to_string(ErrorKind k);

// One edge of a wait-for graph: `waiter` needs `resource`, held by `owner`.
struct WaitEdge {
  HandlerId waiter = 0;
  std::string resource;  // "lock", "prelock", "query", "subqueue"
  std::uint32_t resource_id = 0;
  HandlerId owner = 0;

  bool operator==(const WaitEdge&) const = default;
};

std::string to_string(const WaitEdge& e);

struct ErrorMarker {
  ErrorKind kind = ErrorKind::Stuck;
  std::string rule;  // name of the rule that matched, or the runtime fault
  std::string message;
  std::vector<WaitEdge> cycle;     // Deadlock
  std::vector<HandlerId> handlers; // MutexViolation: the two handlers

  bool operator==(const ErrorMarker&) const = default;
};

struct Configuration {
  const CompiledProgram* program = nullptr;
  std::vector<Handler> handlers;
  Topology topology;
  std::optional<ErrorMarker> error;

  bool operator==(const Configuration&) const = default;
};

// Root handler 0 on node 0 holding the APPLICATION object, executing `make`.
Configuration load_initial(const CompiledProgram& program, const Inbox& empty_inbox = InboxQoQ{});

Frame make_frame(const CompiledProgram& program, MethodId method, ObjectId current, FrameOrigin origin,
                 const std::vector<Value>& args);

Object make_object(const CompiledProgram& program, ClassId cls);

// Resets dead temporaries and drops closed, drained subqueues. Heap objects
// are never collected.
void gc(Configuration& cfg);

// Structural invariants (heap ownership, status/stack agreement, lock and
// prelock ownership). Returns one message per violation.
std::vector<std::string> validate(const Configuration& cfg);

// Block instance id for a new reservation by `client`: the smallest id not
// used by its live blocks nor by any queued provenance or ownership record.
BlockInstanceId allocate_block_instance(const Configuration& cfg, HandlerId client);

}  // namespace scoopw
