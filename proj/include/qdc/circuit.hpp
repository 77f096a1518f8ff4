#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdc/rng.hpp"

namespace qdc {

// Native gate set plus x (needed for the X-compatible packing rule and for
// Bernstein-Vazirani style inputs).
enum class GateKind { h, x, rz, cx, crz };

inline bool is_two_qubit(GateKind k) { return k == GateKind::cx || k == GateKind::crz; }
inline bool has_param(GateKind k) { return k == GateKind::rz || k == GateKind::crz; }

inline std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::h: return "h";
    case GateKind::x: return "x";
    case GateKind::rz: return "rz";
    case GateKind::cx: return "cx";
    case GateKind::crz: return "crz";
  }
  return "?";
}

inline std::optional<GateKind> gate_from_name(std::string_view name) {
  if (name == "h") return GateKind::h;
  if (name == "x") return GateKind::x;
  if (name == "rz") return GateKind::rz;
  if (name == "cx") return GateKind::cx;
  if (name == "crz") return GateKind::crz;
  return std::nullopt;
}

struct Gate {
  int id = 0;
  GateKind kind = GateKind::h;
  std::array<int, 2> qs{{-1, -1}};
  std::optional<double> param;

  int arity() const { return is_two_qubit(kind) ? 2 : 1; }
  std::span<const int> qubits() const { return {qs.data(), static_cast<std::size_t>(arity())}; }
  bool touches(int q) const {
    return qs[0] == q || (is_two_qubit(kind) && qs[1] == q);
  }

  static Gate one(int id, GateKind kind, int q, std::optional<double> param = std::nullopt) {
    Gate g;
    g.id = id;
    g.kind = kind;
    g.qs = {q, -1};
    g.param = param;
    return g;
  }
  static Gate two(int id, GateKind kind, int a, int b, std::optional<double> param = std::nullopt) {
    Gate g;
    g.id = id;
    g.kind = kind;
    g.qs = {a, b};
    g.param = param;
    return g;
  }
};

struct Circuit {
  int num_qubits = 1;
  std::vector<Gate> gates;

  void add(GateKind kind, int q, std::optional<double> param = std::nullopt) {
    gates.push_back(Gate::one(next_id(), kind, q, param));
  }
  void add(GateKind kind, int a, int b, std::optional<double> param = std::nullopt) {
    gates.push_back(Gate::two(next_id(), kind, a, b, param));
  }

  int next_id() const { return gates.empty() ? 0 : gates.back().id + 1; }

  std::size_t two_qubit_gate_count() const {
    std::size_t n = 0;
    for (const auto& g : gates) n += is_two_qubit(g.kind) ? 1 : 0;
    return n;
  }

  // Checks the structural invariants; parser and generators run this before
  // handing a circuit to anyone else.
  void validate() const {
    if (num_qubits < 1) throw std::invalid_argument("circuit must have at least one qubit");
    int prev_id = -1;
    for (const auto& g : gates) {
      if (g.id <= prev_id) throw std::invalid_argument("gate ids must be unique and ascending");
      prev_id = g.id;
      if (is_two_qubit(g.kind)) {
        if (g.qs[0] == g.qs[1]) throw std::invalid_argument("two-qubit gate with repeated operand");
      }
      if (has_param(g.kind) && !g.param)
        throw std::invalid_argument(std::string(gate_name(g.kind)) + " gate missing its angle");
      if (!has_param(g.kind) && g.param)
        throw std::invalid_argument(std::string(gate_name(g.kind)) + " gate carries an angle");
      for (int q : g.qubits()) {
        if (q < 0 || q >= num_qubits) throw std::invalid_argument("gate qubit index out of range");
      }
    }
  }
};

enum class BenchmarkKind { qft, qaoa, qv, random, bv, cat };

inline std::string_view benchmark_name(BenchmarkKind k) {
  switch (k) {
    case BenchmarkKind::qft: return "qft";
    case BenchmarkKind::qaoa: return "qaoa";
    case BenchmarkKind::qv: return "qv";
    case BenchmarkKind::random: return "random";
    case BenchmarkKind::bv: return "bv";
    case BenchmarkKind::cat: return "cat";
  }
  return "?";
}

inline std::optional<BenchmarkKind> benchmark_from_name(std::string_view n) {
  if (n == "qft") return BenchmarkKind::qft;
  if (n == "qaoa") return BenchmarkKind::qaoa;
  if (n == "qv") return BenchmarkKind::qv;
  if (n == "random") return BenchmarkKind::random;
  if (n == "bv") return BenchmarkKind::bv;
  if (n == "cat") return BenchmarkKind::cat;
  return std::nullopt;
}

struct BenchmarkOpts {
  std::uint64_t seed = 0;
  int depth = 0;          // qv layers / random gate count; 0 picks a kind default
  int rounds = 1;         // qaoa
  double edge_prob = 0.3; // qaoa problem graph density
  std::string secret;     // bv bitstring of length n-1; empty means all ones
};

namespace detail {

inline double random_angle(RandomStream& rng) {
  return rng.next_unit() * 2.0 * std::numbers::pi;
}

}  // namespace detail

// Structural benchmark generators. Gate topology is what matters downstream;
// angles are carried but never numerically interpreted.
inline Circuit gen_benchmark(BenchmarkKind kind, int n, const BenchmarkOpts& opts = {}) {
  if (n < 1) throw std::invalid_argument("benchmark needs n >= 1");
  Circuit c;
  c.num_qubits = n;
  RandomStream rng(opts.seed, 0, static_cast<std::uint64_t>(kind));

  switch (kind) {
    case BenchmarkKind::qft: {
      for (int i = 0; i < n; ++i) {
        c.add(GateKind::h, i);
        for (int j = i + 1; j < n; ++j) {
          c.add(GateKind::crz, i, j, std::numbers::pi / std::pow(2.0, j - i));
        }
      }
      break;
    }
    case BenchmarkKind::qaoa: {
      if (n < 2) throw std::invalid_argument("qaoa needs n >= 2");
      if (opts.rounds < 1) throw std::invalid_argument("qaoa needs rounds >= 1");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.next_unit() < opts.edge_prob) edges.emplace_back(i, j);
      for (int r = 0; r < opts.rounds; ++r) {
        double gamma = detail::random_angle(rng);
        for (auto [u, v] : edges) {
          c.add(GateKind::cx, u, v);
          c.add(GateKind::rz, v, gamma);
          c.add(GateKind::cx, u, v);
        }
        double beta = detail::random_angle(rng);
        for (int q = 0; q < n; ++q) {
          c.add(GateKind::rz, q, beta);
          c.add(GateKind::h, q);
          c.add(GateKind::rz, q, beta);
        }
      }
      break;
    }
    case BenchmarkKind::qv: {
      int depth = opts.depth > 0 ? opts.depth : n;
      if (n < 2) throw std::invalid_argument("qv needs n >= 2");
      std::vector<int> order(n);
      for (int layer = 0; layer < depth; ++layer) {
        for (int i = 0; i < n; ++i) order[i] = i;
        for (int i = n - 1; i > 0; --i) {
          int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
          std::swap(order[i], order[j]);
        }
        for (int m = 0; m + 1 < n; m += 2) {
          int a = order[m];
          int b = order[m + 1];
          c.add(GateKind::cx, a, b);
          c.add(GateKind::rz, b, detail::random_angle(rng));
          c.add(GateKind::cx, a, b);
          c.add(GateKind::rz, a, detail::random_angle(rng));
          c.add(GateKind::cx, a, b);
        }
      }
      break;
    }
    case BenchmarkKind::random: {
      int depth = opts.depth > 0 ? opts.depth : 5 * n;
      for (int i = 0; i < depth; ++i) {
        // Native set per the evaluation benchmarks: cx, h, rz, crz.
        int pick = static_cast<int>(rng.next_below(4));
        if (pick <= 1 || n < 2) {
          GateKind k = (pick == 0) ? GateKind::h : GateKind::rz;
          int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
          c.add(k, q, k == GateKind::rz ? std::optional<double>(detail::random_angle(rng)) : std::nullopt);
        } else {
          GateKind k = (pick == 2) ? GateKind::cx : GateKind::crz;
          int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
          int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
          if (b >= a) ++b;
          c.add(k, a, b, k == GateKind::crz ? std::optional<double>(detail::random_angle(rng)) : std::nullopt);
        }
      }
      break;
    }
    case BenchmarkKind::bv: {
      if (n < 2) throw std::invalid_argument("bv needs n >= 2 (data qubits plus ancilla)");
      std::string secret = opts.secret.empty() ? std::string(static_cast<std::size_t>(n - 1), '1')
                                               : opts.secret;
      if (static_cast<int>(secret.size()) != n - 1)
        throw std::invalid_argument("bv secret must have length n-1");
      for (char ch : secret)
        if (ch != '0' && ch != '1') throw std::invalid_argument("bv secret must be a 0/1 string");
      for (int q = 0; q < n; ++q) c.add(GateKind::h, q);
      for (int q = 0; q < n - 1; ++q)
        if (secret[static_cast<std::size_t>(q)] == '1') c.add(GateKind::cx, q, n - 1);
      for (int q = 0; q < n; ++q) c.add(GateKind::h, q);
      break;
    }
    case BenchmarkKind::cat: {
      c.add(GateKind::h, 0);
      for (int q = 0; q + 1 < n; ++q) c.add(GateKind::cx, q, q + 1);
      break;
    }
  }
  c.validate();
  return c;
}

}  // namespace qdc
