#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "edvw/ipm.hpp"
#include "edvw/random_walk.hpp"

namespace edvw {

enum class InitMode {
  RandomWalk,           // random-walk baseline eigenvector
  RandomWalkIndicator,  // centered indicator of the thresholded baseline
  Random,               // centered Gaussian vector drawn from the seed
  Indicator,            // centered indicator of PipelineConfig::init_set
};

struct PipelineConfig {
  IpmConfig ipm;
  InitMode init = InitMode::RandomWalk;
  /// Additional runs from random centered vectors; the best NCC wins.
  int restarts = 0;
  std::uint64_t seed = 0;
  VertexSet init_set;
};

struct ClusteringReport {
  Partition partition;
  Eigen::VectorXd eigenvector;
  double lambda = 0.0;
  std::vector<double> lambda_trace;
  int outer_iterations = 0;
  int inner_iterations = 0;
  bool converged = false;
  bool degenerate = false;
  /// Every proper split has the same cut, so any bipartition is optimal.
  bool flat_cut = false;
  std::optional<double> error;
  double wall_ms = 0.0;
  /// "rw", "rw-indicator", "indicator" or "random:<k>".
  std::string start;
};

/// Random-walk baseline eigenvector of the hypergraph's EDVW walk.
Embedding rw_embedding(const EdvwHypergraph& h);

/// Threshold the baseline eigenvector at its best NCC.
struct BaselineReport {
  Partition partition;
  Embedding embedding;
  std::optional<double> error;
  double wall_ms = 0.0;
};

BaselineReport baseline_pipeline(const SubmodularHypergraph& h,
                                 std::span<const int> labels = {});

/// Reduce, run the IPM from each start, threshold, keep the best partition.
/// `labels` (one per vertex, -1 for unknown) enables the error field.
ClusteringReport cluster_pipeline(const SubmodularHypergraph& h,
                                  const PipelineConfig& config,
                                  std::span<const int> labels = {});

}  // namespace edvw
