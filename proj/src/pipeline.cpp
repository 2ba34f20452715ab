#include "edvw/pipeline.hpp"

#include <chrono>
#include <random>

#include "edvw/metrics.hpp"

namespace edvw {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

bool has_flat_cut(const SubmodularHypergraph& h) {
  if (h.splitting().kind() != SplittingKind::AllOrNothing) return false;
  for (const Hyperedge& e : h.base().edges()) {
    if (e.size() != h.num_vertices()) return false;
  }
  return true;
}

Eigen::VectorXd random_start(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = normal(rng);
  x.array() -= x.mean();
  return x;
}

}  // namespace

Embedding rw_embedding(const EdvwHypergraph& h) {
  const TransitionMatrix p(h);
  const StationaryDistribution pi = stationary_distribution(p);
  return baseline_embedding(rw_operator(p, pi.pi));
}

BaselineReport baseline_pipeline(const SubmodularHypergraph& h,
                                 std::span<const int> labels) {
  const auto start = std::chrono::steady_clock::now();
  BaselineReport report;
  report.embedding = rw_embedding(h.base());
  report.partition = threshold_partition(h, report.embedding.vector);
  if (!labels.empty()) {
    report.error =
        clustering_error(h.num_vertices(), report.partition.side_a, labels);
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

ClusteringReport cluster_pipeline(const SubmodularHypergraph& h,
                                  const PipelineConfig& config,
                                  std::span<const int> labels) {
  const auto start = std::chrono::steady_clock::now();
  h.base().require_connected("cluster_pipeline");
  const int n = h.num_vertices();
  if (n < 2) throw ContractViolation("cluster_pipeline needs two vertices");
  if (config.restarts < 0) throw ContractViolation("restarts must be >= 0");
  const ReducedDigraph g = reduce_edvw(h);

  std::vector<std::pair<std::string, Eigen::VectorXd>> starts;
  std::mt19937_64 rng(config.seed);
  switch (config.init) {
    case InitMode::RandomWalk:
      starts.emplace_back("rw", rw_embedding(h.base()).vector);
      break;
    case InitMode::RandomWalkIndicator: {
      const Partition p = threshold_partition(h, rw_embedding(h.base()).vector);
      starts.emplace_back("rw-indicator", centered_indicator(h, p.side_a));
      break;
    }
    case InitMode::Random:
      starts.emplace_back("random:0", random_start(n, rng));
      break;
    case InitMode::Indicator: {
      const int k = static_cast<int>(config.init_set.size());
      if (k == 0 || k == n) {
        throw ContractViolation("indicator start needs a proper subset");
      }
      starts.emplace_back("indicator", centered_indicator(h, config.init_set));
      break;
    }
  }
  for (int r = 0; r < config.restarts; ++r) {
    starts.emplace_back("random:" + std::to_string(r + 1), random_start(n, rng));
  }

  ClusteringReport best;
  bool have_best = false;
  for (auto& [name, x0] : starts) {
    const IpmState state = ipm_second_eigenvector(h, g, x0, config.ipm);
    Partition part = threshold_partition(h, state.x);
    const bool better =
        !have_best || part.ncc < best.partition.ncc ||
        (part.ncc == best.partition.ncc && state.lambda < best.lambda);
    if (!better) continue;
    have_best = true;
    best.partition = std::move(part);
    best.eigenvector = state.x;
    best.lambda = state.lambda;
    best.lambda_trace = state.trace;
    best.outer_iterations = state.iterations;
    best.inner_iterations = state.inner_iterations;
    best.converged = state.converged;
    best.degenerate = state.degenerate;
    best.start = name;
  }
  best.flat_cut = has_flat_cut(h);
  if (!labels.empty()) {
    best.error = clustering_error(n, best.partition.side_a, labels);
  }
  best.wall_ms = elapsed_ms(start);
  return best;
}

}  // namespace edvw
