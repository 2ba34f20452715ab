#pragma once

#include <vector>

#include <Eigen/Dense>

#include "edvw/inner_solvers.hpp"
#include "edvw/reduction.hpp"
#include "edvw/splitting.hpp"

namespace edvw {

/// g_v = sign(x_v) mu_v for nonzero entries; zero entries share the
/// imbalance: g_v = mu_v * (mu_-(x) - mu_+(x)) / mu_0(x).
Eigen::VectorXd signed_mu_vector(Eigen::Ref<const Eigen::VectorXd> x,
                                 Eigen::Ref<const Eigen::VectorXd> mu);

/// A minimizer of sum_v mu_v |x_v - c|; the lower end of the minimizing
/// interval when it is not unique.
double weighted_median(Eigen::Ref<const Eigen::VectorXd> x,
                       Eigen::Ref<const Eigen::VectorXd> mu);

/// min_c ||x - c 1||_{1, mu}.
double centered_l1(Eigen::Ref<const Eigen::VectorXd> x,
                   Eigen::Ref<const Eigen::VectorXd> mu);

/// R1(x) = Q1(x) / min_c ||x - c 1||_{1, mu}. Throws for constant x.
double r1(const SubmodularHypergraph& h, Eigen::Ref<const Eigen::VectorXd> x);

struct Partition {
  VertexSet side_a;
  VertexSet side_b;
  double ncc = 0.0;
  /// side_a = {v : x_v > threshold}.
  double threshold = 0.0;
};

/// Best NCC over the level sets {v : x_v > t}, t ranging over the distinct
/// values of x below the maximum. Ties keep the larger threshold.
Partition threshold_partition(const SubmodularHypergraph& h,
                              Eigen::Ref<const Eigen::VectorXd> x);

/// 1_S - c 1 with c the weighted median, scaled to unit Euclidean norm.
Eigen::VectorXd centered_indicator(const SubmodularHypergraph& h,
                                   std::span<const int> subset);

enum class InnerSolverKind { Pdhg, Fista };

struct IpmConfig {
  /// Stop once |lambda - lambda'| / lambda' < epsilon.
  double epsilon = 1e-4;
  int max_outer = 100;
  InnerSolverKind solver = InnerSolverKind::Pdhg;
  InnerConfig inner;
  /// Replace x by the centered indicator of its best level set whenever that
  /// set has a smaller NCC than R1(x).
  bool refine_by_threshold = true;
};

struct IpmState {
  Eigen::VectorXd x;
  double lambda = 0.0;
  int iterations = 0;
  int inner_iterations = 0;
  /// lambda after centering x0, then after every accepted step.
  std::vector<double> trace;
  bool converged = false;
  /// The inner solver returned y = 0 or a flat vector.
  bool degenerate = false;
};

/// Inverse power method for the second eigenvector of the 1-Laplacian.
/// `g` must be the reduction of `h`. Steps that would raise lambda are
/// rejected and end the loop, so the trace never increases.
IpmState ipm_second_eigenvector(const SubmodularHypergraph& h,
                                const ReducedDigraph& g,
                                Eigen::Ref<const Eigen::VectorXd> x0,
                                const IpmConfig& config = {});

IpmState ipm_second_eigenvector(const SubmodularHypergraph& h,
                                Eigen::Ref<const Eigen::VectorXd> x0,
                                const IpmConfig& config = {});

}  // namespace edvw
