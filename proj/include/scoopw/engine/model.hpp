#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoopw/engine/label.hpp"
#include "scoopw/state/configuration.hpp"

namespace scoopw {

enum class PrelockOrder { Ascending, Descending, Argument };

// Test hooks. The defaults give the faithful models.
struct ModelOptions {
  bool serve_newest = false;  // serve the most recent pending request (breaks FIFO)
  PrelockOrder prelock_order = PrelockOrder::Ascending;
};

// `client` wants to enter a block on `targets`: handlers it does not hold
// yet, deduplicated, in argument order, never the client itself.
struct ReserveRequest {
  HandlerId client = 0;
  BlockInstanceId instance = 0;
  std::vector<HandlerId> targets;
};

struct ReserveStep {
  Rule rule = Rule::Reserve;
  NodeId node = 0;      // prelock
  bool entered = false; // the client now owns all targets
  Configuration config;
};

// Model-specific behaviour plugged into the engine. Every hook is a pure
// function of its inputs and is applied atomically within one transition.
class ExecutionModel {
 public:
  virtual ~ExecutionModel() = default;

  virtual std::string_view id() const = 0;
  virtual Inbox make_inbox() const = 0;

  // Node for a handler created separately by `creator`; may add a node.
  virtual NodeId on_create_separate(Configuration& cfg, HandlerId creator) const;

  // Enabled reservation progress steps. Empty when the reservation is blocked.
  virtual void reserve_steps(const Configuration& cfg, const ReserveRequest& r,
                             std::vector<ReserveStep>& out) const = 0;

  // Why the reservation is blocked, as wait-for edges. Empty if it is not.
  virtual std::vector<WaitEdge> reserve_blockers(const Configuration& cfg, const ReserveRequest& r) const = 0;

  // Logs a request of `client`'s block `r.block` at `supplier`.
  virtual void enqueue(Configuration& cfg, HandlerId supplier, Request r) const = 0;

  // Removes and returns the next request `supplier` may execute, if any.
  virtual std::optional<Request> take_request(Configuration& cfg, HandlerId supplier) const = 0;

  // Ends `block` of `client`: frees whatever it reserved on its targets.
  virtual void release(Configuration& cfg, HandlerId client, const ActiveBlock& block) const = 0;

  // Wait-for edges of an idle supplier that cannot serve.
  virtual std::vector<WaitEdge> idle_edges(const Configuration& cfg, HandlerId supplier) const;

  const ModelOptions& options() const { return options_; }

 protected:
  explicit ExecutionModel(ModelOptions o) : options_(o) {}

 private:
  ModelOptions options_;
};

// "rq", "qoq" or "dscoop". Throws std::invalid_argument for anything else.
std::unique_ptr<ExecutionModel> make_model(std::string_view id, const ModelOptions& options = {});
const std::vector<std::string>& model_ids();

}  // namespace scoopw
