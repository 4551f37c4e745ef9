#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "scoopw/engine/label.hpp"
#include "scoopw/engine/model.hpp"
#include "scoopw/state/configuration.hpp"

namespace scoopw {

struct EngineOptions {
  std::uint32_t max_stack_depth = 64;
  std::uint64_t local_budget = 100000;  // local actions per handler per macro-step
  bool verify_confluence = false;       // recompute local fixpoints in reverse handler order
};

struct Successor {
  TransitionLabel label;
  Configuration config;
};

// The macro-step scheduler: every handler runs its local actions as long as
// possible (ascending ids), then exactly one synchronisation step is taken.
class Engine {
 public:
  Engine(std::shared_ptr<const CompiledProgram> program, std::shared_ptr<const ExecutionModel> model,
         EngineOptions options = {});

  const CompiledProgram& program() const { return *program_; }
  const ExecutionModel& model() const { return *model_; }
  const EngineOptions& options() const { return options_; }

  // load_initial with this model's inbox shape, before any local step.
  Configuration load() const;
  // Local fixpoint of load(): the first explored configuration.
  Configuration initial() const;

  Configuration local_macro_step(Configuration cfg) const;
  // Every configuration one synchronisation step away, each closed under
  // local_macro_step. `cfg` must be a local fixpoint.
  std::vector<Successor> enumerate_sync_steps(const Configuration& cfg) const;
  std::vector<Successor> successors(const Configuration& cfg) const;

  // Executes `request` on `handler` synchronously, without its inbox.
  // Returns the resulting configuration and the query result (Void for
  // commands).
  std::pair<Configuration, Value> run_query_locally(Configuration cfg, HandlerId handler,
                                                    const Request& request) const;

  // Wait-for edges of the configuration: blocked reservations, pending
  // queries, idle suppliers stuck behind an open empty subqueue.
  std::vector<WaitEdge> wait_edges(const Configuration& cfg) const;

  // The edge the active frame of `handler` is about to take (for a handler
  // waiting on a query: the pending QueryCall), or nullptr when it is idle.
  // Guards are resolved.
  const Edge* next_edge(const Configuration& cfg, HandlerId handler) const;

 private:
  bool step_local(Configuration& cfg, HandlerId hid) const;
  void run_locals(Configuration& cfg, HandlerId hid) const;
  void sync_steps(const Configuration& cfg, HandlerId hid, std::vector<Successor>& out) const;
  void push_frame(Handler& h, Frame f) const;
  std::vector<HandlerId> foreign_targets(const Configuration& cfg, HandlerId hid, const Action& a) const;

  std::shared_ptr<const CompiledProgram> program_;
  std::shared_ptr<const ExecutionModel> model_;
  EngineOptions options_;
};

}  // namespace scoopw
