#include "edvw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

namespace edvw {

namespace {

VertexSet mask_to_set(std::uint64_t mask, int n) {
  VertexSet s;
  for (int i = 0; i < n; ++i) {
    if ((mask >> i) & 1u) s.push_back(i);
  }
  return s;
}

void check_budget(int value, int limit, const char* what) {
  if (value > limit) {
    throw BudgetExceeded(std::string(what) + " " + std::to_string(value) +
                         " exceeds oracle budget " + std::to_string(limit));
  }
}

bool near_tie(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

CheegerResult brute_cheeger(const SubmodularHypergraph& h,
                            const OracleBudget& budget) {
  const int n = h.num_vertices();
  check_budget(n, budget.max_vertices, "vertex count");
  if (n < 2) throw ContractViolation("brute_cheeger needs two vertices");
  const auto& mu = h.base().vertex_weights();
  const double total = h.base().total_volume();
  CheegerResult best;
  best.h2 = INFINITY;
  std::vector<char> in(n);
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    double vol = 0.0;
    for (int i = 0; i < n; ++i) {
      in[i] = (mask >> i) & 1u;
      if (in[i]) vol += mu[i];
    }
    const double value =
        cut_weight_mask(h, in) / std::min(vol, total - vol);
    if (near_tie(value, best.h2)) {
      VertexSet s = mask_to_set(mask, n);
      if (s < best.argmin) best.argmin = std::move(s);
    } else if (value < best.h2) {
      best.h2 = value;
      best.argmin = mask_to_set(mask, n);
    }
  }
  return best;
}

ViolationReport check_reduction_cut(const SubmodularHypergraph& h,
                                    const ReducedDigraph& g,
                                    const OracleBudget& budget) {
  const int n = h.num_vertices();
  const int m = g.num_auxiliary();
  check_budget(n, budget.max_vertices, "vertex count");
  check_budget(m, budget.max_auxiliary, "auxiliary vertex count");
  if (g.num_original() != n) {
    throw ContractViolation("check_reduction_cut: vertex counts disagree");
  }
  ViolationReport report;
  std::vector<char> in_h(n);
  std::vector<char> in_g(n + m);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    for (int i = 0; i < n; ++i) in_h[i] = in_g[i] = (s >> i) & 1u;
    const double lhs = cut_weight_mask(h, in_h);
    double rhs = INFINITY;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
      for (int j = 0; j < m; ++j) in_g[n + j] = (t >> j) & 1u;
      rhs = std::min(rhs, digraph_cut_mask(g, in_g));
      ++report.checked;
    }
    const double violation = std::abs(lhs - rhs);
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_set = mask_to_set(s, n);
    }
  }
  return report;
}

namespace {

// Auxiliary components linked by aux-aux arcs; ids are local aux indices.
std::vector<std::vector<int>> auxiliary_components(const ReducedDigraph& g) {
  const int n = g.num_original();
  const int m = g.num_auxiliary();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const Arc& a : g.arcs()) {
    if (a.tail >= n && a.head >= n) {
      parent[find(a.tail - n)] = find(a.head - n);
    }
  }
  std::vector<std::vector<int>> groups(m);
  for (int i = 0; i < m; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& grp : groups) {
    if (!grp.empty()) out.push_back(std::move(grp));
  }
  return out;
}

}  // namespace

double lovasz_min_restricted(const ReducedDigraph& g,
                             Eigen::Ref<const Eigen::VectorXd> x,
                             const OracleBudget& budget) {
  const int n = g.num_original();
  check_budget(g.num_auxiliary(), budget.max_auxiliary,
               "auxiliary vertex count");
  if (x.size() != n) {
    throw ContractViolation("lovasz_min_restricted: x has the wrong length");
  }
  std::vector<double> values(x.data(), x.data() + n);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  double total = 0.0;
  for (const Arc& a : g.arcs()) {
    if (a.tail < n && a.head < n) {
      total += a.weight * std::max(x[a.tail] - x[a.head], 0.0);
    }
  }
  if (values.empty()) return total;

  std::vector<double> y(g.num_vertices(), 0.0);
  for (int i = 0; i < n; ++i) y[i] = x[i];
  std::vector<int> local(g.num_vertices(), -1);
  for (const auto& comp : auxiliary_components(g)) {
    const int k = static_cast<int>(comp.size());
    for (int i = 0; i < k; ++i) local[n + comp[i]] = i;
    // Arcs touching the component, bucketed by the last component vertex
    // they need, so each becomes fixed as soon as the DFS reaches it.
    std::vector<std::vector<const Arc*>> ready(k);
    for (const Arc& a : g.arcs()) {
      const int lt = a.tail >= n ? local[a.tail] : -1;
      const int lh = a.head >= n ? local[a.head] : -1;
      if ((a.tail >= n && lt < 0) || (a.head >= n && lh < 0)) continue;
      if (lt < 0 && lh < 0) continue;
      ready[std::max(lt, lh)].push_back(&a);
    }
    double best = INFINITY;
    std::function<void(int, double)> dfs = [&](int depth, double partial) {
      if (partial >= best) return;
      if (depth == k) {
        best = partial;
        return;
      }
      const int v = n + comp[depth];
      for (double c : values) {
        y[v] = c;
        double add = 0.0;
        for (const Arc* a : ready[depth]) {
          add += a->weight * std::max(y[a->tail] - y[a->head], 0.0);
        }
        dfs(depth + 1, partial + add);
      }
    };
    dfs(0, 0.0);
    for (int i = 0; i < k; ++i) local[n + comp[i]] = -1;
    total += best;
  }
  return total;
}

double lovasz_min_subgradient(const ReducedDigraph& g,
                              Eigen::Ref<const Eigen::VectorXd> x, int steps) {
  const int n = g.num_original();
  if (x.size() != n || n == 0) {
    throw ContractViolation("lovasz_min_subgradient: x has the wrong length");
  }
  const double lo = x.minCoeff();
  const double hi = x.maxCoeff();
  Eigen::VectorXd y(g.num_vertices());
  y.head(n) = x;
  y.tail(g.num_auxiliary()).setConstant(0.5 * (lo + hi));
  double best = graph_q1(g, y);
  const double radius = std::max(hi - lo, 1e-12);
  Eigen::VectorXd sub(g.num_vertices());
  for (int k = 0; k < steps; ++k) {
    sub.setZero();
    for (const Arc& a : g.arcs()) {
      if (y[a.tail] > y[a.head]) {
        sub[a.tail] += a.weight;
        sub[a.head] -= a.weight;
      }
    }
    sub.head(n).setZero();
    const double norm = sub.norm();
    if (norm == 0.0) break;
    y -= (radius / std::sqrt(k + 1.0) / norm) * sub;
    for (int i = n; i < y.size(); ++i) y[i] = std::clamp(y[i], lo, hi);
    best = std::min(best, graph_q1(g, y));
  }
  return best;
}

SfmResult brute_sfm(const SetFunction& f, int n, const OracleBudget& budget) {
  check_budget(n, budget.max_vertices, "ground set size");
  SfmResult best;
  best.value = INFINITY;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet s = mask_to_set(mask, n);
    const double value = f(s);
    if (value < best.value && !near_tie(value, best.value)) {
      best.value = value;
      best.argmin = std::move(s);
    }
  }
  return best;
}

double sfm_objective(const ReducedDigraph& g, const Eigen::VectorXd& g_tilde,
                     std::span<const int> subset) {
  const std::vector<char> in = membership(g.num_original(), subset);
  double linear = 0.0;
  for (int v : subset) linear += g_tilde[v];
  return min_auxiliary_cut(g, in) - linear;
}

SfmResult sfm_via_prox(const ReducedDigraph& g, const Eigen::VectorXd& g_tilde,
                       InnerConfig config) {
  const int n = g.num_original();
  if (g_tilde.size() != g.num_vertices()) {
    throw ContractViolation("sfm_via_prox: g has the wrong length");
  }
  config.normalize = false;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(g.num_vertices());
  if (g.num_arcs() > 0) {
    y = solve_inner_pdhg(g, g_tilde, config).y;
  } else {
    y = g_tilde;
  }
  const double band = 1e-6 * std::max(1.0, g_tilde.cwiseAbs().maxCoeff());

  std::vector<VertexSet> candidates{{}};
  auto level = [&](auto keep) {
    VertexSet s;
    for (int v = 0; v < n; ++v) {
      if (keep(y[v])) s.push_back(v);
    }
    candidates.push_back(std::move(s));
  };
  level([&](double t) { return t > band; });
  level([&](double t) { return t >= -band; });
  for (int v = 0; v < n; ++v) {
    if (std::abs(y[v]) <= band) {
      const double cut = y[v];
      level([&](double t) { return t >= cut; });
      level([&](double t) { return t > cut; });
    }
  }

  SfmResult best;
  best.value = INFINITY;
  for (const VertexSet& s : candidates) {
    const double value = sfm_objective(g, g_tilde, s);
    if (value < best.value && !near_tie(value, best.value)) {
      best.value = value;
      best.argmin = s;
    }
  }
  return best;
}

}  // namespace edvw
