#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdc/circuit.hpp"
#include "qdc/dag.hpp"

namespace qdc {

// Qubit interaction graph: edge weight = number of two-qubit gates on the
// (unordered) pair. Isolated qubits are still nodes.
struct InteractionGraph {
  int num_qubits = 0;
  std::map<std::pair<int, int>, long long> weights;  // keyed (min, max)

  long long weight(int a, int b) const {
    if (a == b) return 0;
    auto it = weights.find({std::min(a, b), std::max(a, b)});
    return it == weights.end() ? 0 : it->second;
  }
};

inline InteractionGraph interaction_graph(const Circuit& circuit) {
  InteractionGraph g;
  g.num_qubits = circuit.num_qubits;
  for (const auto& gate : circuit.gates) {
    if (!is_two_qubit(gate.kind)) continue;
    auto key = std::minmax(gate.qs[0], gate.qs[1]);
    ++g.weights[{key.first, key.second}];
  }
  return g;
}

// Interaction graph of a gate subset (a WBCP window).
inline InteractionGraph interaction_graph(const Circuit& circuit, const std::vector<int>& gate_ids) {
  InteractionGraph g;
  g.num_qubits = circuit.num_qubits;
  std::map<int, const Gate*> by_id;
  for (const auto& gate : circuit.gates) by_id.emplace(gate.id, &gate);
  for (int id : gate_ids) {
    const Gate* gate = by_id.at(id);
    if (!is_two_qubit(gate->kind)) continue;
    auto key = std::minmax(gate->qs[0], gate->qs[1]);
    ++g.weights[{key.first, key.second}];
  }
  return g;
}

struct Placement {
  std::vector<int> part;  // qubit index -> part (QPU) id
  int num_parts = 1;
  int capacity = 0;

  int of(int qubit) const { return part.at(static_cast<std::size_t>(qubit)); }
  bool operator==(const Placement& o) const {
    return part == o.part && num_parts == o.num_parts;
  }
};

inline long long cut_weight(const InteractionGraph& g, const Placement& p) {
  long long cut = 0;
  for (const auto& [edge, w] : g.weights)
    if (p.of(edge.first) != p.of(edge.second)) cut += w;
  return cut;
}

namespace kl_detail {

// Dense mirror of the interaction graph; qubit counts stay small enough that
// O(n^2) storage and O(n^3)-ish passes are a non-issue.
struct DenseGraph {
  int n = 0;
  std::vector<long long> w;  // row-major
  long long at(int a, int b) const { return w[static_cast<std::size_t>(a) * n + b]; }
};

inline DenseGraph densify(const InteractionGraph& g) {
  DenseGraph d;
  d.n = g.num_qubits;
  d.w.assign(static_cast<std::size_t>(d.n) * d.n, 0);
  for (const auto& [edge, weight] : g.weights) {
    d.w[static_cast<std::size_t>(edge.first) * d.n + edge.second] = weight;
    d.w[static_cast<std::size_t>(edge.second) * d.n + edge.first] = weight;
  }
  return d;
}

// One Kernighan-Lin pass on the bipartition (side 0 / side 1) of `nodes`,
// repeated until no positive-gain prefix exists. Swaps preserve side sizes.
// Edges leaving `nodes` are ignored, as usual for recursive bisection.
inline void kl_refine(const DenseGraph& g, const std::vector<int>& nodes, std::vector<char>& side) {
  auto d_value = [&](int u) {
    long long d = 0;
    for (int v : nodes) {
      if (v == u) continue;
      d += (side[static_cast<std::size_t>(v)] != side[static_cast<std::size_t>(u)]) ? g.at(u, v)
                                                                                    : -g.at(u, v);
    }
    return d;
  };

  for (;;) {
    std::vector<int> a_side, b_side;
    for (int u : nodes)
      (side[static_cast<std::size_t>(u)] == 0 ? a_side : b_side).push_back(u);
    std::size_t rounds = std::min(a_side.size(), b_side.size());
    if (rounds == 0) return;

    std::map<int, long long> d;
    for (int u : nodes) d[u] = d_value(u);
    std::vector<char> locked_flag(side.size(), 0);
    std::vector<std::pair<int, int>> swaps;
    std::vector<long long> gains;

    for (std::size_t r = 0; r < rounds; ++r) {
      long long best_gain = 0;
      int best_a = -1, best_b = -1;
      bool found = false;
      for (int u : a_side) {
        if (locked_flag[static_cast<std::size_t>(u)]) continue;
        for (int v : b_side) {
          if (locked_flag[static_cast<std::size_t>(v)]) continue;
          long long gain = d[u] + d[v] - 2 * g.at(u, v);
          if (!found || gain > best_gain) {
            found = true;
            best_gain = gain;
            best_a = u;
            best_b = v;
          }
        }
      }
      if (!found) break;
      locked_flag[static_cast<std::size_t>(best_a)] = 1;
      locked_flag[static_cast<std::size_t>(best_b)] = 1;
      swaps.emplace_back(best_a, best_b);
      gains.push_back(best_gain);
      // Update D values as if the swap were applied.
      for (int u : nodes) {
        if (locked_flag[static_cast<std::size_t>(u)]) continue;
        bool same_as_a = side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(best_a)];
        long long delta = same_as_a ? 2 * (g.at(u, best_a) - g.at(u, best_b))
                                    : 2 * (g.at(u, best_b) - g.at(u, best_a));
        d[u] += delta;
      }
    }

    long long best_prefix_gain = 0;
    std::size_t best_prefix = 0;
    long long running = 0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
      running += gains[i];
      if (running > best_prefix_gain) {
        best_prefix_gain = running;
        best_prefix = i + 1;
      }
    }
    if (best_prefix_gain <= 0) return;
    for (std::size_t i = 0; i < best_prefix; ++i) {
      auto [u, v] = swaps[i];
      std::swap(side[static_cast<std::size_t>(u)], side[static_cast<std::size_t>(v)]);
    }
  }
}

// Recursive bisection over the part-index range [lo, hi). The initial split
// comes from the warm-start placement when given, otherwise from ascending
// qubit-index halves; sizes are then fixed up to the balance target.
inline void bisect(const DenseGraph& g, const std::vector<int>& nodes, int lo, int hi, int capacity,
                   const std::vector<int>* warm, std::vector<int>& out) {
  if (hi - lo == 1) {
    if (static_cast<int>(nodes.size()) > capacity)
      throw std::invalid_argument("placement capacity exceeded");
    for (int u : nodes) out[static_cast<std::size_t>(u)] = lo;
    return;
  }
  int k = hi - lo;
  int k1 = (k + 1) / 2;
  int k2 = k - k1;
  int mid = lo + k1;
  int n = static_cast<int>(nodes.size());
  long long cap_left = static_cast<long long>(k1) * capacity;
  long long cap_right = static_cast<long long>(k2) * capacity;
  long long target = (static_cast<long long>(n) * k1 + k / 2) / k;
  target = std::max(target, n - cap_right);
  target = std::min(target, cap_left);
  if (target < 0 || target > n) throw std::invalid_argument("placement capacity infeasible");

  std::vector<char> side(static_cast<std::size_t>(g.n), 0);
  std::vector<int> left, right;
  if (warm) {
    for (int u : nodes)
      ((*warm)[static_cast<std::size_t>(u)] < mid ? left : right).push_back(u);
  } else {
    for (int i = 0; i < n; ++i) (i < target ? left : right).push_back(nodes[static_cast<std::size_t>(i)]);
  }
  // Balance fix-up: shed highest-index overflow from the left, pull
  // lowest-index nodes from the right.
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  while (static_cast<long long>(left.size()) > target) {
    right.push_back(left.back());
    left.pop_back();
  }
  std::sort(right.begin(), right.end());
  while (static_cast<long long>(left.size()) < target) {
    left.push_back(right.front());
    right.erase(right.begin());
  }
  for (int u : right) side[static_cast<std::size_t>(u)] = 1;

  kl_refine(g, nodes, side);

  left.clear();
  right.clear();
  for (int u : nodes) (side[static_cast<std::size_t>(u)] == 0 ? left : right).push_back(u);
  bisect(g, left, lo, mid, capacity, warm, out);
  bisect(g, right, mid, hi, capacity, warm, out);
}

// Hill-climb on pairwise swaps across all part pairs until no single swap
// reduces the cut. Ties break toward the lowest qubit pair, sizes never
// change. conn[u][p] caches u's total weight into part p so each scan is
// O(n^2).
inline void global_swap_refine(const DenseGraph& g, int num_parts, std::vector<int>& part) {
  int n = g.n;
  std::vector<std::vector<long long>> conn(static_cast<std::size_t>(n),
                                           std::vector<long long>(static_cast<std::size_t>(num_parts), 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (v != u) conn[static_cast<std::size_t>(u)][static_cast<std::size_t>(part[static_cast<std::size_t>(v)])] += g.at(u, v);

  for (;;) {
    long long best_gain = 0;
    int best_u = -1, best_v = -1;
    for (int u = 0; u < n; ++u) {
      int pu = part[static_cast<std::size_t>(u)];
      for (int v = u + 1; v < n; ++v) {
        int pv = part[static_cast<std::size_t>(v)];
        if (pu == pv) continue;
        long long gain = conn[static_cast<std::size_t>(u)][static_cast<std::size_t>(pv)] -
                         conn[static_cast<std::size_t>(u)][static_cast<std::size_t>(pu)] +
                         conn[static_cast<std::size_t>(v)][static_cast<std::size_t>(pu)] -
                         conn[static_cast<std::size_t>(v)][static_cast<std::size_t>(pv)] -
                         2 * g.at(u, v);
        if (gain > best_gain) {
          best_gain = gain;
          best_u = u;
          best_v = v;
        }
      }
    }
    if (best_gain <= 0) return;
    int pu = part[static_cast<std::size_t>(best_u)];
    int pv = part[static_cast<std::size_t>(best_v)];
    for (int x = 0; x < n; ++x) {
      if (x == best_u || x == best_v) continue;
      auto& cx = conn[static_cast<std::size_t>(x)];
      cx[static_cast<std::size_t>(pu)] += g.at(x, best_v) - g.at(x, best_u);
      cx[static_cast<std::size_t>(pv)] += g.at(x, best_u) - g.at(x, best_v);
    }
    auto& cu = conn[static_cast<std::size_t>(best_u)];
    auto& cv = conn[static_cast<std::size_t>(best_v)];
    cu[static_cast<std::size_t>(pu)] += g.at(best_u, best_v);
    cu[static_cast<std::size_t>(pv)] -= g.at(best_u, best_v);
    cv[static_cast<std::size_t>(pv)] += g.at(best_u, best_v);
    cv[static_cast<std::size_t>(pu)] -= g.at(best_u, best_v);
    part[static_cast<std::size_t>(best_u)] = pv;
    part[static_cast<std::size_t>(best_v)] = pu;
  }
}

}  // namespace kl_detail

inline int default_capacity(int num_qubits, int k) { return (num_qubits + k - 1) / k; }

// k-way placement by recursive bisection with a full KL pass per split,
// followed by a global swap refinement, so the result is locally optimal
// under any single cross-part swap. Deterministic: the initial split is
// either ascending index halves or the warm-start placement.
inline Placement kl_partition(const InteractionGraph& g, int k, int capacity,
                              const Placement* warm_start = nullptr) {
  if (k < 1) throw std::invalid_argument("kl_partition needs k >= 1");
  if (capacity <= 0) capacity = default_capacity(g.num_qubits, k);
  if (static_cast<long long>(k) * capacity < g.num_qubits)
    throw std::invalid_argument("k * capacity must cover all qubits");

  Placement p;
  p.num_parts = k;
  p.capacity = capacity;
  p.part.assign(static_cast<std::size_t>(g.num_qubits), 0);
  if (k == 1) return p;

  kl_detail::DenseGraph dense = kl_detail::densify(g);
  std::vector<int> nodes(static_cast<std::size_t>(g.num_qubits));
  std::iota(nodes.begin(), nodes.end(), 0);
  const std::vector<int>* warm = nullptr;
  if (warm_start) {
    if (static_cast<int>(warm_start->part.size()) != g.num_qubits)
      throw std::invalid_argument("warm start placement size mismatch");
    warm = &warm_start->part;
  }
  kl_detail::bisect(dense, nodes, 0, k, capacity, warm, p.part);
  kl_detail::global_swap_refine(dense, k, p.part);
  return p;
}

// Cost counters for a partitioned circuit. total() is the EPR budget: packed
// (or raw) non-local gate charges plus one pair per state teleport.
struct PartitionCost {
  long long nonlocal_gates = 0;
  long long packed_epr = 0;
  long long teleports = 0;

  long long total() const { return packed_epr + teleports; }
};

inline PartitionCost static_cost(const Circuit& circuit, const Placement& placement) {
  if (static_cast<int>(placement.part.size()) != circuit.num_qubits)
    throw std::invalid_argument("placement does not cover the circuit");
  PartitionCost cost;
  for (const auto& g : circuit.gates) {
    if (!is_two_qubit(g.kind)) continue;
    if (placement.of(g.qs[0]) != placement.of(g.qs[1])) ++cost.nonlocal_gates;
  }
  cost.packed_epr = cost.nonlocal_gates;
  cost.teleports = 0;
  return cost;
}

struct Teleport {
  int qubit = -1;
  int from_part = -1;
  int to_part = -1;
  int after_window = -1;  // runs between windows after_window and after_window+1
};

struct PlacementWindow {
  std::vector<int> gate_ids;  // ascending program order within the window
  Placement placement;
};

struct WindowedPlacement {
  std::vector<PlacementWindow> windows;
  std::vector<Teleport> teleports;
  int num_qubits = 0;
  int num_parts = 1;
};

namespace wbcp_detail {

inline std::vector<Teleport> teleports_from_diffs(const std::vector<PlacementWindow>& windows) {
  std::vector<Teleport> out;
  for (std::size_t w = 0; w + 1 < windows.size(); ++w) {
    const auto& cur = windows[w].placement.part;
    const auto& nxt = windows[w + 1].placement.part;
    for (std::size_t q = 0; q < cur.size(); ++q) {
      if (cur[q] != nxt[q])
        out.push_back(Teleport{static_cast<int>(q), cur[q], nxt[q], static_cast<int>(w)});
    }
  }
  return out;
}

}  // namespace wbcp_detail

// Windowed partitioning: the gate sequence is cut into consecutive windows of
// window_size gates and each window is KL-partitioned warm-started from the
// previous window's placement. Placement differences between consecutive
// windows become state teleports.
inline WindowedPlacement wbcp_partition(const Circuit& circuit, int k, int capacity,
                                        int window_size) {
  if (window_size < 1) throw std::invalid_argument("window_size must be >= 1");
  if (capacity <= 0) capacity = default_capacity(circuit.num_qubits, k);

  WindowedPlacement out;
  out.num_qubits = circuit.num_qubits;
  out.num_parts = k;
  const Placement* warm = nullptr;
  for (std::size_t start = 0; start < circuit.gates.size();
       start += static_cast<std::size_t>(window_size)) {
    std::size_t end = std::min(circuit.gates.size(), start + static_cast<std::size_t>(window_size));
    PlacementWindow w;
    for (std::size_t i = start; i < end; ++i) w.gate_ids.push_back(circuit.gates[i].id);
    InteractionGraph g = interaction_graph(circuit, w.gate_ids);
    w.placement = kl_partition(g, k, capacity, warm);
    out.windows.push_back(std::move(w));
    warm = &out.windows.back().placement;
  }
  out.teleports = wbcp_detail::teleports_from_diffs(out.windows);
  return out;
}

// Wraps a flat placement as a one-window plan (the static KL pipeline).
inline WindowedPlacement single_window(const Circuit& circuit, Placement placement) {
  WindowedPlacement out;
  out.num_qubits = circuit.num_qubits;
  out.num_parts = placement.num_parts;
  PlacementWindow w;
  for (const auto& g : circuit.gates) w.gate_ids.push_back(g.id);
  w.placement = std::move(placement);
  out.windows.push_back(std::move(w));
  return out;
}

// Boundary-aware refinement: at each window boundary, gates in the next
// window's first ASAP layer that already execute without an EPR pair under
// the current window's placement (single-qubit gates, or two-qubit gates
// whose operands are co-located) move into the current window. Placements
// never change; teleports are recomputed (and stay identical, since they
// depend only on placements).
inline WindowedPlacement boundary_refine(const Circuit& circuit, WindowedPlacement wp) {
  std::map<int, const Gate*> by_id;
  for (const auto& g : circuit.gates) by_id.emplace(g.id, &g);

  for (std::size_t w = 0; w + 1 < wp.windows.size(); ++w) {
    auto& cur = wp.windows[w];
    auto& nxt = wp.windows[w + 1];
    if (nxt.gate_ids.empty()) continue;

    // First ASAP layer of the next window considered in isolation: gates
    // with no predecessor inside that window.
    std::vector<char> qubit_seen(static_cast<std::size_t>(circuit.num_qubits), 0);
    std::vector<int> moved;
    for (int id : nxt.gate_ids) {
      const Gate* g = by_id.at(id);
      bool first_layer = true;
      for (int q : g->qubits())
        if (qubit_seen[static_cast<std::size_t>(q)]) first_layer = false;
      for (int q : g->qubits()) qubit_seen[static_cast<std::size_t>(q)] = 1;
      if (!first_layer) continue;
      bool local = !is_two_qubit(g->kind) ||
                   cur.placement.of(g->qs[0]) == cur.placement.of(g->qs[1]);
      if (local) moved.push_back(id);
    }
    for (int id : moved) {
      nxt.gate_ids.erase(std::find(nxt.gate_ids.begin(), nxt.gate_ids.end(), id));
      cur.gate_ids.push_back(id);
    }
  }
  wp.teleports = wbcp_detail::teleports_from_diffs(wp.windows);
  return wp;
}

}  // namespace qdc
