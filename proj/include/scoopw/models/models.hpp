#pragma once

#include "scoopw/engine/model.hpp"

namespace scoopw {

// Request Queues: one FIFO per handler behind a lock; a block atomically
// takes the locks of all its targets and keeps them until it exits.
class RqModel : public ExecutionModel {
 public:
  explicit RqModel(ModelOptions o = {}) : ExecutionModel(o) {}

  std::string_view id() const override { return "rq"; }
  Inbox make_inbox() const override { return InboxRQ{}; }
  void reserve_steps(const Configuration& cfg, const ReserveRequest& r, std::vector<ReserveStep>& out) const override;
  std::vector<WaitEdge> reserve_blockers(const Configuration& cfg, const ReserveRequest& r) const override;
  void enqueue(Configuration& cfg, HandlerId supplier, Request r) const override;
  std::optional<Request> take_request(Configuration& cfg, HandlerId supplier) const override;
  void release(Configuration& cfg, HandlerId client, const ActiveBlock& block) const override;
};

// Queues of Queues: entering a block appends an open private subqueue to
// every target; suppliers drain subqueues one at a time in creation order.
class QoqModel : public ExecutionModel {
 public:
  explicit QoqModel(ModelOptions o = {}) : ExecutionModel(o) {}

  std::string_view id() const override { return "qoq"; }
  Inbox make_inbox() const override { return InboxQoQ{}; }
  void reserve_steps(const Configuration& cfg, const ReserveRequest& r, std::vector<ReserveStep>& out) const override;
  std::vector<WaitEdge> reserve_blockers(const Configuration& cfg, const ReserveRequest& r) const override;
  void enqueue(Configuration& cfg, HandlerId supplier, Request r) const override;
  std::optional<Request> take_request(Configuration& cfg, HandlerId supplier) const override;
  void release(Configuration& cfg, HandlerId client, const ActiveBlock& block) const override;
  std::vector<WaitEdge> idle_edges(const Configuration& cfg, HandlerId supplier) const override;

 protected:
  static void open_subqueues(Configuration& cfg, const ReserveRequest& r);
};

// D-SCOOP: QoQ on one node per separately created handler. Entering a block
// prelocks the remote target nodes one at a time, then a single lock step
// creates all subqueues and frees the prelocks.
class DscoopModel : public QoqModel {
 public:
  explicit DscoopModel(ModelOptions o = {}) : QoqModel(o) {}

  std::string_view id() const override { return "dscoop"; }
  NodeId on_create_separate(Configuration& cfg, HandlerId creator) const override;
  void reserve_steps(const Configuration& cfg, const ReserveRequest& r, std::vector<ReserveStep>& out) const override;
  std::vector<WaitEdge> reserve_blockers(const Configuration& cfg, const ReserveRequest& r) const override;

  // Remote target nodes in the order they are prelocked.
  std::vector<NodeId> prelock_plan(const Configuration& cfg, const ReserveRequest& r) const;
};

}  // namespace scoopw
