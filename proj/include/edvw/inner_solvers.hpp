#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "edvw/reduction.hpp"

namespace edvw {

/// Edge-incidence operator B: one row per arc u -> v holding +A_uv at u and
/// -A_uv at v, so that sum_i max((By)_i, 0) equals graph_q1(y).
class GradientOperator {
 public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  explicit GradientOperator(const ReducedDigraph& g);

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index rows() const { return matrix_.rows(); }
  Eigen::Index cols() const { return matrix_.cols(); }

  /// ||B||_1 * ||B||_inf, an upper bound on ||B||_2^2.
  double norm_sq_upper() const { return norm_sq_upper_; }

 private:
  Matrix matrix_;
  double norm_sq_upper_ = 0.0;
};

GradientOperator build_operator(const ReducedDigraph& g);

/// Power iteration on B^T B; returns an estimate of ||B||_2 from below.
/// Throws ContractViolation for the zero operator.
double operator_norm_estimate(const GradientOperator& op, int iters = 100);

/// L = 4 * max_u sum_v (A_uv + A_vu)^2, a Lipschitz bound for grad Psi.
double lipschitz_bound(const ReducedDigraph& g);

/// Unordered connected pair {u, v}, u < v, with A_uv and A_vu.
struct VertexPair {
  int u;
  int v;
  double forward;
  double backward;
};

/// Dual variables of the unit-ball inner problem: one alpha_uv in [0, 1] per
/// connected pair, with alpha_vu = 1 - alpha_uv implied.
class DualPairing {
 public:
  explicit DualPairing(const ReducedDigraph& g);

  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  int num_vertices() const { return num_vertices_; }
  const std::vector<VertexPair>& pairs() const { return pairs_; }

  /// [f_A(alpha)]_u = sum over pairs at u of A_uv alpha_uv - A_vu alpha_vu.
  Eigen::VectorXd f_a(const Eigen::VectorXd& alpha) const;

  /// Psi(alpha) = ||f_A(alpha) - g||^2.
  double psi(const Eigen::VectorXd& alpha, const Eigen::VectorXd& g) const;

 private:
  int num_vertices_;
  std::vector<VertexPair> pairs_;
};

/// dPsi/dalpha_uv = 2 (A_uv + A_vu) (r_u - r_v) with r = f_A(alpha) - g.
Eigen::VectorXd grad_psi(const DualPairing& pairing,
                         const Eigen::VectorXd& alpha,
                         const Eigen::VectorXd& g);

struct InnerConfig {
  int max_iter = 10000;
  /// Stop once the duality gap relative to the objective scale is below tol.
  double tol = 1e-8;
  /// Iterations between duality-gap evaluations.
  int check_every = 4;
  /// Dual residual (FISTA) or prox solution (PDHG) below this fraction of the
  /// problem scale counts as the degenerate zero solution.
  double degenerate_tol = 1e-10;
  /// PDHG only: return y / ||y|| instead of the raw prox solution.
  bool normalize = true;
  bool record_trace = false;
};

struct TraceRow {
  int iteration;
  double objective;
  double residual;
};

struct InnerSolution {
  Eigen::VectorXd y;
  /// Objective of the problem actually solved: the unit-ball problem for
  /// FISTA, the proximal problem for PDHG.
  double objective = 0.0;
  /// Absolute duality gap and the relative gap used for stopping.
  double gap = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;
  std::vector<TraceRow> trace;
};

/// Projected accelerated gradient on the dual. Keeps alpha between solves so
/// consecutive calls warm-start.
class FistaSolver {
 public:
  FistaSolver(const ReducedDigraph& g, InnerConfig config,
              std::optional<double> lipschitz = std::nullopt);

  InnerSolution solve(const Eigen::VectorXd& g_tilde);

  const Eigen::VectorXd& alpha() const { return alpha_; }
  double lipschitz() const { return lipschitz_; }
  const DualPairing& pairing() const { return pairing_; }

 private:
  const ReducedDigraph* graph_;
  InnerConfig config_;
  DualPairing pairing_;
  double lipschitz_;
  Eigen::VectorXd alpha_;
};

/// Accelerated primal-dual hybrid gradient on
///   min_y graph_q1(y) + 1/2 ||y - g||^2.
/// Keeps the dual z between solves.
class PdhgSolver {
 public:
  PdhgSolver(const ReducedDigraph& g, InnerConfig config);

  InnerSolution solve(const Eigen::VectorXd& g_tilde);

  double operator_norm() const { return norm_; }
  const Eigen::VectorXd& dual() const { return z_; }

 private:
  InnerConfig config_;
  GradientOperator op_;
  double norm_;
  Eigen::VectorXd z_;
};

InnerSolution solve_inner_fista(const ReducedDigraph& g,
                                const Eigen::VectorXd& g_tilde,
                                double lipschitz, const InnerConfig& config);

InnerSolution solve_inner_pdhg(const ReducedDigraph& g,
                               const Eigen::VectorXd& g_tilde,
                               const InnerConfig& config);

/// Objective of the unit-ball problem: graph_q1(y) - <y, g>.
double ball_objective(const ReducedDigraph& g, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& g_tilde);

/// Objective of the proximal problem: graph_q1(y) + 1/2 ||y - g||^2.
double prox_objective(const ReducedDigraph& g, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& g_tilde);

/// CSV rows "iteration,objective,residual" with a header line.
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace edvw
