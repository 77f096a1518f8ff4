#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdc/dag.hpp"
#include "qdc/partition.hpp"

namespace qdc {

enum class ProgramNodeType { gate, teleport };

// One schedulable node: a circuit gate or a synthetic state teleport. A
// non-local node consumes exactly one EPR pair between qpu_a and qpu_b.
struct ProgramNode {
  int id = -1;
  ProgramNodeType type = ProgramNodeType::gate;
  GateKind kind = GateKind::h;  // gates only
  std::array<int, 2> qs{{-1, -1}};
  int arity = 1;
  std::optional<double> param;
  int window = -1;  // teleports: the window they run after
  bool nonlocal = false;
  int qpu_a = -1, qpu_b = -1;  // endpoints for nonlocal; both = hosting QPU for local 2q

  bool is_teleport() const { return type == ProgramNodeType::teleport; }
  bool two_qubit() const { return type == ProgramNodeType::gate && arity == 2; }
  bool touches(int q) const { return qs[0] == q || (arity == 2 && qs[1] == q); }
  std::span<const int> qubits() const { return {qs.data(), static_cast<std::size_t>(arity)}; }
  std::pair<int, int> pair() const { return {std::min(qpu_a, qpu_b), std::max(qpu_a, qpu_b)}; }
};

// Dependency DAG over gates plus teleport nodes with local/non-local marks.
// Node order in `nodes` is the execution sequence the DAG was built from.
struct DistributedProgram {
  int num_qubits = 0;
  int num_qpus = 1;
  std::vector<ProgramNode> nodes;  // sequence order
  DependencyDag dag;

  std::map<int, int> index_by_id;  // node id -> position in nodes

  const ProgramNode& node(int id) const {
    return nodes[static_cast<std::size_t>(index_by_id.at(id))];
  }
  long long nonlocal_gate_count() const {
    long long n = 0;
    for (const auto& nd : nodes)
      if (nd.nonlocal && !nd.is_teleport()) ++n;
    return n;
  }
  long long teleport_count() const {
    long long n = 0;
    for (const auto& nd : nodes) n += nd.is_teleport() ? 1 : 0;
    return n;
  }
};

// Builds the scheduling program for a windowed placement: gates annotated
// local/non-local under their window's placement, plus one teleport node per
// placement change, ordered between the windows it separates. A teleport on
// qubit q depends on every earlier node touching q and precedes every later
// one, which the last-writer DAG construction gives for free.
inline DistributedProgram annotate_program(const Circuit& circuit, const WindowedPlacement& wp) {
  if (wp.num_qubits != circuit.num_qubits)
    throw std::invalid_argument("windowed placement does not match the circuit");
  std::map<int, const Gate*> by_id;
  for (const auto& g : circuit.gates) by_id.emplace(g.id, &g);

  DistributedProgram prog;
  prog.num_qubits = circuit.num_qubits;
  prog.num_qpus = wp.num_parts;

  int next_teleport_id = circuit.gates.empty() ? 0 : circuit.gates.back().id + 1;
  std::map<int, std::vector<const Teleport*>> teleports_after;
  for (const auto& t : wp.teleports) teleports_after[t.after_window].push_back(&t);

  for (std::size_t w = 0; w < wp.windows.size(); ++w) {
    const auto& window = wp.windows[w];
    for (int id : window.gate_ids) {
      const Gate* g = by_id.at(id);
      ProgramNode n;
      n.id = g->id;
      n.type = ProgramNodeType::gate;
      n.kind = g->kind;
      n.qs = g->qs;
      n.arity = g->arity();
      n.param = g->param;
      n.window = static_cast<int>(w);
      if (n.arity == 2) {
        int pa = window.placement.of(g->qs[0]);
        int pb = window.placement.of(g->qs[1]);
        n.nonlocal = pa != pb;
        n.qpu_a = pa;
        n.qpu_b = pb;
      }
      prog.nodes.push_back(n);
    }
    auto it = teleports_after.find(static_cast<int>(w));
    if (it != teleports_after.end()) {
      // Deterministic order: ascending qubit, matching teleport list order.
      for (const Teleport* t : it->second) {
        ProgramNode n;
        n.id = next_teleport_id++;
        n.type = ProgramNodeType::teleport;
        n.qs = {t->qubit, -1};
        n.arity = 1;
        n.window = static_cast<int>(w);
        n.nonlocal = true;
        n.qpu_a = t->from_part;
        n.qpu_b = t->to_part;
        prog.nodes.push_back(n);
      }
    }
  }

  std::vector<std::pair<int, std::vector<int>>> seq;
  seq.reserve(prog.nodes.size());
  for (const auto& n : prog.nodes)
    seq.emplace_back(n.id, std::vector<int>(n.qubits().begin(), n.qubits().end()));
  prog.dag = DependencyDag::from_sequence(seq, circuit.num_qubits);
  for (std::size_t i = 0; i < prog.nodes.size(); ++i)
    prog.index_by_id.emplace(prog.nodes[i].id, static_cast<int>(i));
  return prog;
}

namespace pack_detail {

enum class PackMode { control, target };

// Can `node` sit between two members of a run shared on qubit q?
// Control-mode runs tolerate Z-diagonal touches (rz, crz either role, cx
// control); target-mode runs tolerate X-compatible touches (x, cx target).
inline bool intervening_ok(const ProgramNode& node, int q, PackMode mode) {
  if (node.is_teleport()) return false;
  if (mode == PackMode::control) {
    switch (node.kind) {
      case GateKind::rz:
      case GateKind::crz:
        return true;
      case GateKind::cx:
        return node.qs[0] == q;
      default:
        return false;
    }
  }
  switch (node.kind) {
    case GateKind::x:
      return true;
    case GateKind::cx:
      return node.qs[1] == q;
    default:
      return false;
  }
}

// Role q must play inside a run member for the given mode.
inline bool member_role_ok(const ProgramNode& node, int q, PackMode mode) {
  if (mode == PackMode::control)
    return (node.kind == GateKind::cx && node.qs[0] == q) || node.kind == GateKind::crz;
  return node.kind == GateKind::cx && node.qs[1] == q;
}

struct Candidate {
  int qubit;
  PackMode mode;
};

inline std::vector<Candidate> initial_candidates(const ProgramNode& node) {
  std::vector<Candidate> out;
  if (node.kind == GateKind::cx) {
    out.push_back({node.qs[0], PackMode::control});
    out.push_back({node.qs[1], PackMode::target});
  } else if (node.kind == GateKind::crz) {
    out.push_back({node.qs[0], PackMode::control});
    out.push_back({node.qs[1], PackMode::control});
  }
  return out;
}

}  // namespace pack_detail

// Gate packing: within each window, a maximal run of non-local gates between
// the same QPU pair that share a compatible qubit merges into a single EPR
// charge. packed_epr counts one charge per run (singleton runs included);
// teleports are never packed.
inline PartitionCost gate_pack(const DistributedProgram& prog) {
  using namespace pack_detail;
  PartitionCost cost;
  cost.nonlocal_gates = prog.nonlocal_gate_count();
  cost.teleports = prog.teleport_count();

  long long charges = 0;
  std::size_t i = 0;
  while (i < prog.nodes.size()) {
    // Packing never crosses a window boundary.
    int window = prog.nodes[i].window;
    std::size_t window_end = i;
    while (window_end < prog.nodes.size() && prog.nodes[window_end].window == window) ++window_end;

    bool run_open = false;
    std::pair<int, int> run_pair{-1, -1};
    std::vector<Candidate> candidates;

    for (std::size_t j = i; j < window_end; ++j) {
      const ProgramNode& node = prog.nodes[j];
      bool is_member_candidate = !node.is_teleport() && node.nonlocal && node.two_qubit();

      if (is_member_candidate) {
        if (run_open && node.pair() == run_pair) {
          std::vector<Candidate> kept;
          for (const auto& c : candidates)
            if (node.touches(c.qubit) && member_role_ok(node, c.qubit, c.mode)) kept.push_back(c);
          if (!kept.empty()) {
            candidates = std::move(kept);
            continue;  // merged into the open run, no new charge
          }
        }
        // Cannot merge (no open run, different pair, or no shared
        // compatible qubit survives): one new charge, fresh run.
        ++charges;
        run_open = true;
        run_pair = node.pair();
        candidates = initial_candidates(node);
        continue;
      }

      // Everything else (single-qubit, local two-qubit, teleport) is an
      // intervening node: it kills candidates it touches incompatibly; an
      // empty candidate set closes the run.
      if (run_open) {
        std::vector<Candidate> kept;
        for (const auto& c : candidates)
          if (!node.touches(c.qubit) || intervening_ok(node, c.qubit, c.mode)) kept.push_back(c);
        candidates = std::move(kept);
        if (candidates.empty()) run_open = false;
      }
    }
    i = window_end;
  }

  cost.packed_epr = charges;
  return cost;
}

inline PartitionCost gate_pack(const Circuit& circuit, const DistributedProgram& prog) {
  if (circuit.num_qubits != prog.num_qubits)
    throw std::invalid_argument("circuit/program mismatch");
  return gate_pack(prog);
}

// EPR budget for a program: packed (or raw) non-local gate charges plus one
// pair per teleport. Teleports never benefit from packing.
inline PartitionCost partition_cost(const DistributedProgram& prog, bool packing) {
  PartitionCost cost;
  if (packing) {
    cost = gate_pack(prog);
  } else {
    cost.nonlocal_gates = prog.nonlocal_gate_count();
    cost.packed_epr = cost.nonlocal_gates;
    cost.teleports = prog.teleport_count();
  }
  return cost;
}

}  // namespace qdc
