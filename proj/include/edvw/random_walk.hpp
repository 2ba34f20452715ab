#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "edvw/hypergraph.hpp"
#include "edvw/reduction.hpp"

namespace edvw {

/// Random walk with EDVW: from u pick e containing u with probability
/// kappa(e) / d_kappa(u), then v in e with probability gamma_e(v) / gamma_e(e).
/// Stored factored as P = diag(1/d_kappa) K G with K(u, e) = kappa(e) for
/// u in e and G(e, v) = gamma_e(v) / gamma_e(e).
class TransitionMatrix {
 public:
  explicit TransitionMatrix(const EdvwHypergraph& h);

  int size() const { return num_vertices_; }

  /// P_{u -> e -> v}; zero unless both u and v belong to e.
  double via_edge(int u, int e, int v) const;

  /// P x and P^T x without forming P.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;

  /// P as an explicit sparse matrix (includes self-transitions).
  Eigen::SparseMatrix<double> matrix() const;

  const EdvwHypergraph& hypergraph() const { return *h_; }

 private:
  const EdvwHypergraph* h_;
  int num_vertices_;
  Eigen::VectorXd kappa_degree_;
  Eigen::SparseMatrix<double> choose_edge_;   // N x E, rows sum to 1
  Eigen::SparseMatrix<double> choose_vertex_; // E x N, rows sum to 1
};

struct StationaryDistribution {
  Eigen::VectorXd pi;
  double residual = 0.0;
  int iterations = 0;
};

/// Power iteration of the lazy walk (P + I)/2 until ||pi^T P - pi^T||_1 is
/// at most tol. Throws std::runtime_error if that does not happen.
StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               double tol = 1e-12,
                                               int max_iter = 1000000);
StationaryDistribution stationary_distribution(
    const Eigen::SparseMatrix<double>& p, double tol = 1e-12,
    int max_iter = 1000000);

/// A = (Phi P + P^T Phi) / 2 with Phi = diag(pi).
Eigen::SparseMatrix<double> rw_adjacency(const Eigen::SparseMatrix<double>& p,
                                         const Eigen::VectorXd& pi);

/// Undirected graph of rw_adjacency as a digraph with no auxiliary vertices:
/// arcs u -> v and v -> u of weight A_uv for u != v.
ReducedDigraph rw_digraph(const Eigen::SparseMatrix<double>& adjacency);

/// sum over u in S, v in e \ S of (pi_u P_{u->e->v} + pi_v P_{v->e->u}) / 2.
double rw_splitting_penalty(const TransitionMatrix& p, int e,
                            const Eigen::VectorXd& pi,
                            std::span<const int> subset);

/// Symmetric non-negative operator with its degree vector (row sums).
struct SymmetricOperator {
  int size = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply;
  Eigen::VectorXd degree;

  static SymmetricOperator from_matrix(Eigen::SparseMatrix<double> a);
};

/// rw_adjacency applied in factored form; the degree of A is pi itself.
/// `p` must outlive the returned operator.
SymmetricOperator rw_operator(const TransitionMatrix& p,
                              const Eigen::VectorXd& pi);

struct Embedding {
  /// D^{-1/2} u with u the second eigenvector of the normalized Laplacian,
  /// sign fixed so the first nonzero entry is positive.
  Eigen::VectorXd vector;
  /// Normalized-Laplacian eigenvalue of u and the next one up.
  double eigenvalue = 0.0;
  double next_eigenvalue = 0.0;
  double residual = 0.0;
  int iterations = 0;
  /// Eigengap below 1e-12: the eigenvector is not unique.
  bool ill_defined = false;
};

/// Second-smallest eigenvector of I - D^{-1/2} A D^{-1/2} by deflated power
/// iteration on (I + D^{-1/2} A D^{-1/2}) / 2.
Embedding baseline_embedding(const SymmetricOperator& a, double tol = 1e-8,
                             int max_iter = 200000);

}  // namespace edvw
