#include "edvw/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace edvw {

namespace {

void require_same_length(Eigen::Ref<const Eigen::VectorXd> x,
                         Eigen::Ref<const Eigen::VectorXd> mu,
                         const char* op) {
  if (x.size() != mu.size()) {
    throw ContractViolation(std::string(op) +
                            ": x and mu must have the same length");
  }
}

bool is_flat(const Eigen::VectorXd& x) {
  if (x.size() == 0) return true;
  const double spread = x.maxCoeff() - x.minCoeff();
  return !(spread > 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff()));
}

}  // namespace

Eigen::VectorXd signed_mu_vector(Eigen::Ref<const Eigen::VectorXd> x,
                                 Eigen::Ref<const Eigen::VectorXd> mu) {
  require_same_length(x, mu, "signed_mu_vector");
  double mu_pos = 0.0, mu_neg = 0.0, mu_zero = 0.0;
  for (Eigen::Index v = 0; v < x.size(); ++v) {
    if (x[v] > 0.0) {
      mu_pos += mu[v];
    } else if (x[v] < 0.0) {
      mu_neg += mu[v];
    } else {
      mu_zero += mu[v];
    }
  }
  Eigen::VectorXd g(x.size());
  for (Eigen::Index v = 0; v < x.size(); ++v) {
    if (x[v] > 0.0) {
      g[v] = mu[v];
    } else if (x[v] < 0.0) {
      g[v] = -mu[v];
    } else {
      g[v] = (mu_neg - mu_pos) / mu_zero * mu[v];
    }
  }
  return g;
}

double weighted_median(Eigen::Ref<const Eigen::VectorXd> x,
                       Eigen::Ref<const Eigen::VectorXd> mu) {
  require_same_length(x, mu, "weighted_median");
  if (x.size() == 0) throw ContractViolation("weighted_median of nothing");
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] < x[b]; });
  const double total = mu.sum();
  double cum = 0.0;
  for (int v : order) {
    cum += mu[v];
    if (2.0 * cum >= total) return x[v];
  }
  return x[order.back()];
}

double centered_l1(Eigen::Ref<const Eigen::VectorXd> x,
                   Eigen::Ref<const Eigen::VectorXd> mu) {
  const double c = weighted_median(x, mu);
  return (mu.array() * (x.array() - c).abs()).sum();
}

double r1(const SubmodularHypergraph& h, Eigen::Ref<const Eigen::VectorXd> x) {
  const auto& mu = h.base().vertex_weights();
  if (x.size() != mu.size()) {
    throw ContractViolation("r1: vector length does not match vertex count");
  }
  const double denom = centered_l1(x, mu);
  if (!(denom > 0.0)) throw ContractViolation("r1: x must be non-constant");
  return q1(h, x) / denom;
}

Partition threshold_partition(const SubmodularHypergraph& h,
                              Eigen::Ref<const Eigen::VectorXd> x) {
  const int n = h.num_vertices();
  if (x.size() != n) {
    throw ContractViolation(
        "threshold_partition: vector length does not match vertex count");
  }
  if (n < 2 || x.maxCoeff() == x.minCoeff()) {
    throw ContractViolation("threshold_partition: x must be non-constant");
  }
  const EdvwHypergraph& base = h.base();
  const auto& mu = base.vertex_weights();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] > x[b]; });

  std::vector<double> gamma_in(h.num_edges(), 0.0);
  std::vector<int> count_in(h.num_edges(), 0);
  const double total = base.total_volume();
  double cut = 0.0;
  double vol = 0.0;
  double best = INFINITY;
  int best_prefix = -1;
  for (int i = 0; i < n - 1; ++i) {
    const int v = order[i];
    for (int e : base.incident_edges(v)) {
      const Hyperedge& edge = base.edge(e);
      cut -= h.edge_penalty(e, gamma_in[e], count_in[e]);
      gamma_in[e] += edge.gamma()[edge.position_of(v)];
      count_in[e] += 1;
      cut += h.edge_penalty(e, gamma_in[e], count_in[e]);
    }
    vol += mu[v];
    if (x[order[i + 1]] == x[v]) continue;
    const double value = std::max(cut, 0.0) / std::min(vol, total - vol);
    if (value <= best) {
      best = value;
      best_prefix = i + 1;
    }
  }

  Partition part;
  part.side_a.assign(order.begin(), order.begin() + best_prefix);
  std::sort(part.side_a.begin(), part.side_a.end());
  part.side_b = complement(n, part.side_a);
  part.threshold = x[order[best_prefix]];
  part.ncc = ncc(h, part.side_a);
  return part;
}

Eigen::VectorXd centered_indicator(const SubmodularHypergraph& h,
                                   std::span<const int> subset) {
  Eigen::VectorXd x = indicator(h.num_vertices(), subset);
  x.array() -= weighted_median(x, h.base().vertex_weights());
  const double norm = x.norm();
  if (norm > 0.0) x /= norm;
  return x;
}

IpmState ipm_second_eigenvector(const SubmodularHypergraph& h,
                                const ReducedDigraph& g,
                                Eigen::Ref<const Eigen::VectorXd> x0,
                                const IpmConfig& config) {
  h.base().require_connected("ipm_second_eigenvector");
  const int n = h.num_vertices();
  if (x0.size() != n || g.num_original() != n) {
    throw ContractViolation("ipm: x0, hypergraph and digraph sizes disagree");
  }
  if (!x0.allFinite()) throw ContractViolation("ipm: x0 must be finite");
  const auto& mu = h.base().vertex_weights();

  IpmState state;
  state.x = x0;
  if (is_flat(state.x)) throw ContractViolation("ipm: x0 must be non-constant");
  state.x /= state.x.norm();
  state.x.array() -= weighted_median(state.x, mu);
  state.lambda = r1(h, state.x);
  state.trace.push_back(state.lambda);

  std::unique_ptr<FistaSolver> fista;
  std::unique_ptr<PdhgSolver> pdhg;
  InnerConfig inner = config.inner;
  inner.normalize = true;
  if (config.solver == InnerSolverKind::Fista) {
    fista = std::make_unique<FistaSolver>(g, inner);
  } else {
    pdhg = std::make_unique<PdhgSolver>(g, inner);
  }

  Eigen::VectorXd g_tilde = Eigen::VectorXd::Zero(g.num_vertices());
  while (state.iterations < config.max_outer) {
    g_tilde.head(n) = state.lambda * signed_mu_vector(state.x, mu);
    const InnerSolution sol = fista ? fista->solve(g_tilde) : pdhg->solve(g_tilde);
    state.inner_iterations += sol.iterations;
    ++state.iterations;
    if (sol.degenerate) {
      state.degenerate = true;
      state.converged = true;
      break;
    }
    Eigen::VectorXd y = sol.y.head(n);
    if (is_flat(y)) {
      state.degenerate = true;
      state.converged = true;
      break;
    }
    y /= y.norm();
    y.array() -= weighted_median(y, mu);
    double lambda = r1(h, y);
    if (config.refine_by_threshold) {
      const Partition part = threshold_partition(h, y);
      if (part.ncc < lambda) {
        y = centered_indicator(h, part.side_a);
        lambda = r1(h, y);
      }
    }
    if (!(lambda <= state.lambda)) {
      state.converged = true;
      break;
    }
    const double previous = state.lambda;
    state.x = std::move(y);
    state.lambda = lambda;
    state.trace.push_back(lambda);
    if ((previous - lambda) / previous < config.epsilon) {
      state.converged = true;
      break;
    }
  }
  return state;
}

IpmState ipm_second_eigenvector(const SubmodularHypergraph& h,
                                Eigen::Ref<const Eigen::VectorXd> x0,
                                const IpmConfig& config) {
  const ReducedDigraph g = reduce_edvw(h);
  return ipm_second_eigenvector(h, g, x0, config);
}

}  // namespace edvw
