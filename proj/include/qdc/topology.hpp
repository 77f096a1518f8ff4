#pragma once

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace qdc {

enum class NodeKind { qpu, tor, agg, core };

inline bool is_switch(NodeKind k) { return k != NodeKind::qpu; }

struct NetworkNode {
  int id = -1;
  NodeKind kind = NodeKind::qpu;
  int bsm_capacity = 0;         // switches only
  int comm_qubit_capacity = 0;  // QPUs only
  int rack_id = -1;             // QPU and ToR only
};

struct ClosDescriptor {
  int cores = 2;
  int aggs = 4;
  int racks = 4;
  int qpus_per_rack = 2;
  int bsms_per_switch = 5;
  int comm_qubits_per_qpu = 2;
};

enum class PairClass { local, intra, cross };

inline std::string_view pair_class_name(PairClass c) {
  switch (c) {
    case PairClass::local: return "local";
    case PairClass::intra: return "intra";
    case PairClass::cross: return "cross";
  }
  return "?";
}

// Switch sequence between two distinct QPUs, endpoints excluded. An
// intra-rack pair routes through exactly its shared ToR.
struct Path {
  std::vector<int> switches;
  PairClass cls = PairClass::intra;
};

// Immutable Clos graph: QPUs at ids [0, num_qpus), then ToRs, aggregation
// switches, cores. Adjacency lists are kept sorted so BFS ties always break
// toward the lowest node id.
class Network {
 public:
  Network(ClosDescriptor desc, std::vector<NetworkNode> nodes,
          std::vector<std::vector<int>> adjacency)
      : desc_(desc), nodes_(std::move(nodes)), adj_(std::move(adjacency)) {}

  const ClosDescriptor& descriptor() const { return desc_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_qpus() const { return desc_.racks * desc_.qpus_per_rack; }
  const NetworkNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const std::vector<NetworkNode>& nodes() const { return nodes_; }
  const std::vector<int>& neighbors(int id) const { return adj_.at(static_cast<std::size_t>(id)); }

  int tor_of_rack(int rack) const { return num_qpus() + rack; }
  int first_agg() const { return num_qpus() + desc_.racks; }
  int first_core() const { return first_agg() + desc_.aggs; }

  bool is_qpu(int id) const { return id >= 0 && id < num_qpus(); }

 private:
  ClosDescriptor desc_;
  std::vector<NetworkNode> nodes_;
  std::vector<std::vector<int>> adj_;
};

// Builds the Clos network: every QPU links to its rack's ToR, rack r's ToR
// links to aggregation switches {2r mod aggs, (2r+1) mod aggs} (all of them
// when aggs < 2), and every aggregation switch links to every core.
inline Network build_clos(const ClosDescriptor& desc) {
  if (desc.cores < 1 || desc.aggs < 1 || desc.racks < 1 || desc.qpus_per_rack < 1)
    throw std::invalid_argument("clos descriptor counts must all be >= 1");
  if (desc.bsms_per_switch < 0 || desc.comm_qubits_per_qpu < 0)
    throw std::invalid_argument("capacities must be >= 0");

  int num_qpus = desc.racks * desc.qpus_per_rack;
  int num_nodes = num_qpus + desc.racks + desc.aggs + desc.cores;
  std::vector<NetworkNode> nodes(static_cast<std::size_t>(num_nodes));
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_nodes));

  auto link = [&](int a, int b) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  };

  for (int r = 0; r < desc.racks; ++r) {
    for (int i = 0; i < desc.qpus_per_rack; ++i) {
      int id = r * desc.qpus_per_rack + i;
      nodes[static_cast<std::size_t>(id)] =
          NetworkNode{id, NodeKind::qpu, 0, desc.comm_qubits_per_qpu, r};
    }
  }
  int tor0 = num_qpus;
  for (int r = 0; r < desc.racks; ++r) {
    int id = tor0 + r;
    nodes[static_cast<std::size_t>(id)] = NetworkNode{id, NodeKind::tor, desc.bsms_per_switch, 0, r};
    for (int i = 0; i < desc.qpus_per_rack; ++i) link(r * desc.qpus_per_rack + i, id);
  }
  int agg0 = tor0 + desc.racks;
  for (int a = 0; a < desc.aggs; ++a) {
    int id = agg0 + a;
    nodes[static_cast<std::size_t>(id)] = NetworkNode{id, NodeKind::agg, desc.bsms_per_switch, 0, -1};
  }
  for (int r = 0; r < desc.racks; ++r) {
    if (desc.aggs >= 2) {
      int a1 = (2 * r) % desc.aggs;
      int a2 = (2 * r + 1) % desc.aggs;
      link(tor0 + r, agg0 + a1);
      if (a2 != a1) link(tor0 + r, agg0 + a2);
    } else {
      link(tor0 + r, agg0);
    }
  }
  int core0 = agg0 + desc.aggs;
  for (int c = 0; c < desc.cores; ++c) {
    int id = core0 + c;
    nodes[static_cast<std::size_t>(id)] = NetworkNode{id, NodeKind::core, desc.bsms_per_switch, 0, -1};
    for (int a = 0; a < desc.aggs; ++a) link(agg0 + a, id);
  }

  for (auto& list : adj) std::sort(list.begin(), list.end());
  return Network(desc, std::move(nodes), std::move(adj));
}

inline PairClass classify_pair(const Network& net, int qpu_a, int qpu_b) {
  if (!net.is_qpu(qpu_a) || !net.is_qpu(qpu_b))
    throw std::invalid_argument("classify_pair expects QPU ids");
  if (qpu_a == qpu_b) return PairClass::local;
  return net.node(qpu_a).rack_id == net.node(qpu_b).rack_id ? PairClass::intra : PairClass::cross;
}

// Minimal-hop switch sequence via BFS; equal-length ties resolve to the
// lowest-id route because adjacency lists are sorted.
inline Path shortest_path(const Network& net, int qpu_a, int qpu_b) {
  if (!net.is_qpu(qpu_a) || !net.is_qpu(qpu_b))
    throw std::invalid_argument("shortest_path expects QPU ids");
  if (qpu_a == qpu_b) throw std::invalid_argument("shortest_path expects distinct QPUs");

  std::vector<int> parent(static_cast<std::size_t>(net.num_nodes()), -1);
  std::vector<char> seen(static_cast<std::size_t>(net.num_nodes()), 0);
  std::deque<int> queue{qpu_a};
  seen[static_cast<std::size_t>(qpu_a)] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == qpu_b) break;
    // Other QPUs never relay traffic.
    if (net.is_qpu(u) && u != qpu_a) continue;
    for (int v : net.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        parent[static_cast<std::size_t>(v)] = u;
        queue.push_back(v);
      }
    }
  }
  if (!seen[static_cast<std::size_t>(qpu_b)])
    throw std::logic_error("network is disconnected");

  Path path;
  for (int v = parent[static_cast<std::size_t>(qpu_b)]; v != qpu_a;
       v = parent[static_cast<std::size_t>(v)])
    path.switches.push_back(v);
  std::reverse(path.switches.begin(), path.switches.end());
  path.cls = classify_pair(net, qpu_a, qpu_b);
  return path;
}

}  // namespace qdc
