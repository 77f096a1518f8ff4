#pragma once

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdc/circuit.hpp"

namespace qdc {

// ASAP layering: layer index of a node = 1 + max over predecessors, so each
// layer is a set of mutually independent nodes and the concatenation of
// layers is a topological order.
struct Layering {
  std::vector<std::vector<int>> layers;

  std::size_t size() const { return layers.size(); }
  bool empty() const { return layers.empty(); }
};

// Precedence DAG over a sequence of nodes that each touch one or two qubits.
// Edges connect consecutive touches of the same qubit (last-writer chains).
// remove_node is the only mutator; a DAG is owned by one simulation run and
// copied per trial.
class DependencyDag {
 public:
  DependencyDag() = default;

  // seq: (node id, qubits touched) in execution order. The sequence order
  // must be a valid program order: edges always point forward.
  static DependencyDag from_sequence(const std::vector<std::pair<int, std::vector<int>>>& seq,
                                     int num_qubits) {
    DependencyDag dag;
    dag.ids_.reserve(seq.size());
    for (const auto& [id, _] : seq) {
      if (dag.index_.count(id)) throw std::invalid_argument("duplicate node id in dag sequence");
      dag.index_.emplace(id, static_cast<int>(dag.ids_.size()));
      dag.ids_.push_back(id);
    }
    std::size_t n = seq.size();
    dag.succ_.assign(n, {});
    dag.pred_.assign(n, {});
    dag.alive_.assign(n, 1);
    dag.alive_count_ = n;

    std::vector<int> last_touch(static_cast<std::size_t>(num_qubits), -1);
    for (std::size_t i = 0; i < n; ++i) {
      for (int q : seq[i].second) {
        if (q < 0 || q >= num_qubits) throw std::invalid_argument("dag node qubit out of range");
        int prev = last_touch[static_cast<std::size_t>(q)];
        if (prev >= 0) {
          // A pair of gates sharing both qubits would add the edge twice;
          // the adds are consecutive, so checking the back suffices.
          auto& out = dag.succ_[static_cast<std::size_t>(prev)];
          if (out.empty() || out.back() != static_cast<int>(i)) {
            out.push_back(static_cast<int>(i));
            dag.pred_[i].push_back(prev);
          }
        }
        last_touch[static_cast<std::size_t>(q)] = static_cast<int>(i);
      }
    }
    dag.pred_remaining_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      dag.pred_remaining_[i] = static_cast<int>(dag.pred_[i].size());
    return dag;
  }

  bool empty() const { return alive_count_ == 0; }
  std::size_t size() const { return alive_count_; }
  std::size_t total_nodes() const { return ids_.size(); }

  bool contains(int id) const {
    auto it = index_.find(id);
    return it != index_.end() && alive_[static_cast<std::size_t>(it->second)];
  }

  bool in_front(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return false;
    auto i = static_cast<std::size_t>(it->second);
    return alive_[i] && pred_remaining_[i] == 0;
  }

  // Nodes with no unfinished predecessors, ascending id.
  std::vector<int> front_layer() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (alive_[i] && pred_remaining_[i] == 0) out.push_back(ids_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  void remove_node(int id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::logic_error("remove_node: unknown node id");
    auto i = static_cast<std::size_t>(it->second);
    if (!alive_[i]) throw std::logic_error("remove_node: node already removed");
    if (pred_remaining_[i] != 0)
      throw std::logic_error("remove_node: node is not in the front layer");
    alive_[i] = 0;
    --alive_count_;
    for (int s : succ_[i]) --pred_remaining_[static_cast<std::size_t>(s)];
  }

  // ASAP layering of the remaining (alive) nodes. Sequence order is a
  // topological order, so one forward pass computes all levels.
  Layering layers() const {
    Layering out;
    std::vector<int> level(ids_.size(), -1);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!alive_[i]) continue;
      int lvl = 0;
      for (int p : pred_[i]) {
        auto pi = static_cast<std::size_t>(p);
        if (alive_[pi]) lvl = std::max(lvl, level[pi] + 1);
      }
      level[i] = lvl;
      if (static_cast<std::size_t>(lvl) >= out.layers.size())
        out.layers.resize(static_cast<std::size_t>(lvl) + 1);
      out.layers[static_cast<std::size_t>(lvl)].push_back(ids_[i]);
    }
    for (auto& layer : out.layers) std::sort(layer.begin(), layer.end());
    return out;
  }

  std::vector<int> predecessors(int id) const {
    auto i = static_cast<std::size_t>(index_.at(id));
    std::vector<int> out;
    for (int p : pred_[i]) out.push_back(ids_[static_cast<std::size_t>(p)]);
    return out;
  }

  std::vector<int> successors(int id) const {
    auto i = static_cast<std::size_t>(index_.at(id));
    std::vector<int> out;
    for (int s : succ_[i]) out.push_back(ids_[static_cast<std::size_t>(s)]);
    return out;
  }

 private:
  std::unordered_map<int, int> index_;  // node id -> position in sequence
  std::vector<int> ids_;
  std::vector<std::vector<int>> succ_, pred_;  // by position
  std::vector<int> pred_remaining_;
  std::vector<char> alive_;
  std::size_t alive_count_ = 0;
};

inline DependencyDag build_dag(const Circuit& circuit) {
  std::vector<std::pair<int, std::vector<int>>> seq;
  seq.reserve(circuit.gates.size());
  for (const auto& g : circuit.gates) {
    std::vector<int> qs(g.qubits().begin(), g.qubits().end());
    seq.emplace_back(g.id, std::move(qs));
  }
  return DependencyDag::from_sequence(seq, circuit.num_qubits);
}

inline Layering layers(const DependencyDag& dag) { return dag.layers(); }

inline std::vector<int> two_qubit_gates_per_layer(const Circuit& circuit) {
  DependencyDag dag = build_dag(circuit);
  Layering l = dag.layers();
  std::unordered_map<int, const Gate*> by_id;
  for (const auto& g : circuit.gates) by_id.emplace(g.id, &g);
  std::vector<int> counts;
  counts.reserve(l.layers.size());
  for (const auto& layer : l.layers) {
    int c = 0;
    for (int id : layer)
      if (is_two_qubit(by_id.at(id)->kind)) ++c;
    counts.push_back(c);
  }
  return counts;
}

}  // namespace qdc
