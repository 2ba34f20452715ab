#include "edvw/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>

#include "edvw/format.hpp"

namespace edvw {

ReducedDigraph::ReducedDigraph(int num_original, int num_auxiliary,
                               std::vector<Arc> arcs,
                               std::vector<AuxProvenance> provenance)
    : num_original_(num_original),
      num_auxiliary_(num_auxiliary),
      provenance_(std::move(provenance)) {
  if (num_original_ < 0 || num_auxiliary_ < 0) {
    throw ContractViolation("digraph vertex counts must be non-negative");
  }
  if (!provenance_.empty() &&
      static_cast<int>(provenance_.size()) != num_auxiliary_) {
    throw ContractViolation("provenance must cover every auxiliary vertex");
  }
  const int n = num_vertices();
  for (const Arc& a : arcs) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n) {
      throw ContractViolation("arc endpoint out of range");
    }
    if (a.tail == a.head) throw ContractViolation("self-loops are not allowed");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw ContractViolation("arc weights must be positive");
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  for (const Arc& a : arcs) {
    if (!arcs_.empty() && arcs_.back().tail == a.tail &&
        arcs_.back().head == a.head) {
      arcs_.back().weight += a.weight;
    } else {
      arcs_.push_back(a);
    }
  }
}

Eigen::SparseMatrix<double> ReducedDigraph::adjacency() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(arcs_.size());
  for (const Arc& a : arcs_) triplets.emplace_back(a.tail, a.head, a.weight);
  Eigen::SparseMatrix<double> adj(num_vertices(), num_vertices());
  adj.setFromTriplets(triplets.begin(), triplets.end());
  return adj;
}

ReducedDigraph reduce_edvw(const SubmodularHypergraph& h) {
  const SplittingSpec& spec = h.splitting();
  if (spec.kind() == SplittingKind::Custom) {
    throw ContractViolation(
        "splitting kind " + spec.name() +
        " is not graph-reducible by this builder (capped kinds only)");
  }
  const EdvwHypergraph& base = h.base();
  const int n = base.num_vertices();
  std::vector<Arc> arcs;
  std::vector<AuxProvenance> provenance;
  provenance.reserve(2 * base.num_edges());
  for (int j = 0; j < base.num_edges(); ++j) {
    const Hyperedge& e = base.edge(j);
    const int entry = n + 2 * j;
    const int exit = entry + 1;
    provenance.push_back({j, AuxRole::Entry});
    provenance.push_back({j, AuxRole::Exit});
    const bool unit_gamma = spec.kind() != SplittingKind::EdvwCapped;
    double total = 0.0;
    for (int i = 0; i < e.size(); ++i) {
      const double g = unit_gamma ? 1.0 : e.gamma()[i];
      total += g;
      arcs.push_back({e.members()[i], entry, e.kappa() * g});
      arcs.push_back({exit, e.members()[i], e.kappa() * g});
    }
    const double beta = spec.kind() == SplittingKind::AllOrNothing
                            ? 1.0 / static_cast<double>(e.size())
                            : spec.beta();
    arcs.push_back({entry, exit, beta * e.kappa() * total});
  }
  return ReducedDigraph(n, 2 * base.num_edges(), std::move(arcs),
                        std::move(provenance));
}

double digraph_cut_mask(const ReducedDigraph& g,
                        const std::vector<char>& in_set) {
  double cut = 0.0;
  for (const Arc& a : g.arcs()) {
    if (in_set[a.tail] && !in_set[a.head]) cut += a.weight;
  }
  return cut;
}

double digraph_cut(const ReducedDigraph& g, std::span<const int> subset) {
  return digraph_cut_mask(g, membership(g.num_vertices(), subset));
}

double graph_q1(const ReducedDigraph& g, Eigen::Ref<const Eigen::VectorXd> y) {
  if (y.size() != g.num_vertices()) {
    throw ContractViolation("graph_q1: vector length does not match graph");
  }
  double value = 0.0;
  for (const Arc& a : g.arcs()) {
    const double d = y[a.tail] - y[a.head];
    if (d > 0.0) value += a.weight * d;
  }
  return value;
}

double min_auxiliary_cut(const ReducedDigraph& g,
                         const std::vector<char>& original_in_set) {
  const int n = g.num_original();
  const int m = g.num_auxiliary();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Arc& a : g.arcs()) {
    if (a.tail >= n && a.head >= n) {
      const int x = find(a.tail - n);
      const int y = find(a.head - n);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  std::vector<std::vector<int>> members(m);
  for (int i = 0; i < m; ++i) members[find(i)].push_back(n + i);

  // Arcs with no auxiliary endpoint contribute a fixed amount.
  double fixed = 0.0;
  std::vector<std::vector<const Arc*>> touching(m);
  for (const Arc& a : g.arcs()) {
    if (a.tail < n && a.head < n) {
      if (original_in_set[a.tail] && !original_in_set[a.head]) {
        fixed += a.weight;
      }
    } else {
      const int aux = a.tail >= n ? a.tail : a.head;
      touching[find(aux - n)].push_back(&a);
    }
  }

  std::vector<int> local(g.num_vertices(), -1);
  double total = fixed;
  for (int root = 0; root < m; ++root) {
    const auto& comp = members[root];
    if (comp.empty()) continue;
    const int k = static_cast<int>(comp.size());
    if (k > 20) {
      throw ContractViolation(
          "min_auxiliary_cut: auxiliary component too large to enumerate");
    }
    for (int i = 0; i < k; ++i) local[comp[i]] = i;
    double best = INFINITY;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
      auto inside = [&](int v) {
        return v < n ? original_in_set[v] != 0
                     : ((mask >> local[v]) & 1u) != 0;
      };
      double c = 0.0;
      for (const Arc* a : touching[root]) {
        if (inside(a->tail) && !inside(a->head)) c += a->weight;
      }
      best = std::min(best, c);
    }
    total += best;
  }
  return total;
}

void write_arc_list(std::ostream& os, const ReducedDigraph& g) {
  for (const Arc& a : g.arcs()) {
    os << a.tail << ' ' << a.head << ' ' << format_double(a.weight) << '\n';
  }
}

}  // namespace edvw
