#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdc/topology.hpp"

namespace qdc {

struct Reservation {
  int id = -1;
  int qpu_a = -1, qpu_b = -1;
  std::vector<int> switches;
  bool reconfigured = false;
};

struct ReserveResult {
  int reservation_id = -1;
  bool reconfigured = false;
};

// Live resource state for one simulation run: BSM counts per switch, free
// communication qubits per QPU, and the last endpoint pair each switch was
// configured for. A reservation atomically holds one communication qubit at
// each endpoint and one BSM on every switch along the shortest path; release
// restores the counters exactly.
//
// In unlimited mode availability checks are skipped but in-use counters keep
// running, which is what the congestion-free profiling relies on.
class ResourceLedger {
 public:
  explicit ResourceLedger(const Network& net, bool unlimited = false)
      : unlimited_(unlimited),
        bsm_in_use_(static_cast<std::size_t>(net.num_nodes()), 0),
        cq_in_use_(static_cast<std::size_t>(net.num_nodes()), 0),
        last_pair_(static_cast<std::size_t>(net.num_nodes())) {}

  bool unlimited() const { return unlimited_; }

  int bsm_in_use(int switch_id) const { return bsm_in_use_.at(static_cast<std::size_t>(switch_id)); }
  int comm_qubits_in_use(int qpu_id) const { return cq_in_use_.at(static_cast<std::size_t>(qpu_id)); }

  int free_bsms(const Network& net, int switch_id) const {
    return net.node(switch_id).bsm_capacity - bsm_in_use(switch_id);
  }
  int free_comm_qubits(const Network& net, int qpu_id) const {
    return net.node(qpu_id).comm_qubit_capacity - comm_qubits_in_use(qpu_id);
  }

  std::size_t active_reservations() const { return active_.size(); }
  const Reservation& reservation(int id) const {
    auto it = active_.find(id);
    if (it == active_.end()) throw std::invalid_argument("unknown reservation id");
    return it->second;
  }

  // Non-destructive: on Unavailable (nullopt) the ledger is untouched.
  std::optional<ReserveResult> try_reserve(const Network& net, int qpu_a, int qpu_b) {
    if (qpu_a == qpu_b) throw std::invalid_argument("cannot reserve a QPU pair with itself");
    Path path = shortest_path(net, qpu_a, qpu_b);

    if (!unlimited_) {
      if (free_comm_qubits(net, qpu_a) < 1 || free_comm_qubits(net, qpu_b) < 1)
        return std::nullopt;
      for (int s : path.switches)
        if (free_bsms(net, s) < 1) return std::nullopt;
    }

    std::pair<int, int> pair{std::min(qpu_a, qpu_b), std::max(qpu_a, qpu_b)};
    bool reconfigured = false;
    for (int s : path.switches) {
      auto& last = last_pair_[static_cast<std::size_t>(s)];
      if (!last || *last != pair) reconfigured = true;
      last = pair;
    }

    ++cq_in_use_[static_cast<std::size_t>(qpu_a)];
    ++cq_in_use_[static_cast<std::size_t>(qpu_b)];
    for (int s : path.switches) ++bsm_in_use_[static_cast<std::size_t>(s)];

    int id = next_id_++;
    active_.emplace(id, Reservation{id, qpu_a, qpu_b, std::move(path.switches), reconfigured});
    return ReserveResult{id, reconfigured};
  }

  void release(int reservation_id) {
    auto it = active_.find(reservation_id);
    if (it == active_.end()) throw std::invalid_argument("release of unknown reservation id");
    const Reservation& r = it->second;
    --cq_in_use_[static_cast<std::size_t>(r.qpu_a)];
    --cq_in_use_[static_cast<std::size_t>(r.qpu_b)];
    for (int s : r.switches) --bsm_in_use_[static_cast<std::size_t>(s)];
    active_.erase(it);
  }

  // Conservation check: every in-use counter equals the sum of active holds
  // and, in limited mode, stays within capacity.
  void audit(const Network& net) const {
    std::vector<int> bsm(bsm_in_use_.size(), 0), cq(cq_in_use_.size(), 0);
    for (const auto& [id, r] : active_) {
      ++cq[static_cast<std::size_t>(r.qpu_a)];
      ++cq[static_cast<std::size_t>(r.qpu_b)];
      for (int s : r.switches) ++bsm[static_cast<std::size_t>(s)];
    }
    for (std::size_t i = 0; i < bsm_in_use_.size(); ++i) {
      if (bsm[i] != bsm_in_use_[i] || cq[i] != cq_in_use_[i])
        throw std::logic_error("ledger counters out of sync with reservations");
      if (!unlimited_) {
        const auto& node = net.node(static_cast<int>(i));
        if (is_switch(node.kind) && bsm_in_use_[i] > node.bsm_capacity)
          throw std::logic_error("BSM holds exceed capacity");
        if (!is_switch(node.kind) && cq_in_use_[i] > node.comm_qubit_capacity)
          throw std::logic_error("communication-qubit holds exceed capacity");
      }
    }
  }

 private:
  bool unlimited_;
  std::vector<int> bsm_in_use_, cq_in_use_;
  std::vector<std::optional<std::pair<int, int>>> last_pair_;
  std::map<int, Reservation> active_;
  int next_id_ = 0;
};

}  // namespace qdc
