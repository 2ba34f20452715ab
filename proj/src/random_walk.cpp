#include "edvw/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace edvw {

TransitionMatrix::TransitionMatrix(const EdvwHypergraph& h)
    : h_(&h), num_vertices_(h.num_vertices()) {
  h.require_connected("transition_matrix");
  const int n = h.num_vertices();
  const int m = h.num_edges();
  kappa_degree_ = Eigen::VectorXd::Zero(n);
  for (const Hyperedge& e : h.edges()) {
    for (int v : e.members()) kappa_degree_[v] += e.kappa();
  }
  std::vector<Eigen::Triplet<double>> k_trip, g_trip;
  for (int j = 0; j < m; ++j) {
    const Hyperedge& e = h.edge(j);
    for (int i = 0; i < e.size(); ++i) {
      const int v = e.members()[i];
      k_trip.emplace_back(v, j, e.kappa() / kappa_degree_[v]);
      g_trip.emplace_back(j, v, e.gamma()[i] / e.gamma_total());
    }
  }
  choose_edge_.resize(n, m);
  choose_edge_.setFromTriplets(k_trip.begin(), k_trip.end());
  choose_vertex_.resize(m, n);
  choose_vertex_.setFromTriplets(g_trip.begin(), g_trip.end());
}

double TransitionMatrix::via_edge(int u, int e, int v) const {
  const Hyperedge& edge = h_->edge(e);
  const int pu = edge.position_of(u);
  const int pv = edge.position_of(v);
  if (pu < 0 || pv < 0) return 0.0;
  return edge.kappa() / kappa_degree_[u] * edge.gamma()[pv] /
         edge.gamma_total();
}

Eigen::VectorXd TransitionMatrix::apply(const Eigen::VectorXd& x) const {
  return choose_edge_ * (choose_vertex_ * x);
}

Eigen::VectorXd TransitionMatrix::apply_transpose(
    const Eigen::VectorXd& x) const {
  return choose_vertex_.transpose() * (choose_edge_.transpose() * x);
}

Eigen::SparseMatrix<double> TransitionMatrix::matrix() const {
  Eigen::SparseMatrix<double> p = choose_edge_ * choose_vertex_;
  p.prune(0.0);
  return p;
}

namespace {

template <class ApplyT>
StationaryDistribution lazy_power(int n, ApplyT apply_t, double tol,
                                  int max_iter) {
  StationaryDistribution out;
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (int k = 1; k <= max_iter; ++k) {
    const Eigen::VectorXd step = apply_t(pi);
    out.residual = (step - pi).lpNorm<1>();
    out.iterations = k;
    if (out.residual <= tol) break;
    pi = 0.5 * (pi + step);
    pi /= pi.sum();
  }
  if (out.residual > tol) {
    throw std::runtime_error(
        "stationary_distribution: no convergence, residual " +
        std::to_string(out.residual));
  }
  out.pi = std::move(pi);
  return out;
}

}  // namespace

StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               double tol, int max_iter) {
  return lazy_power(
      p.size(), [&](const Eigen::VectorXd& x) { return p.apply_transpose(x); },
      tol, max_iter);
}

StationaryDistribution stationary_distribution(
    const Eigen::SparseMatrix<double>& p, double tol, int max_iter) {
  if (p.rows() != p.cols() || p.rows() == 0) {
    throw ContractViolation("stationary_distribution: P must be square");
  }
  return lazy_power(
      static_cast<int>(p.rows()),
      [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return p.transpose() * x;
      },
      tol, max_iter);
}

Eigen::SparseMatrix<double> rw_adjacency(const Eigen::SparseMatrix<double>& p,
                                         const Eigen::VectorXd& pi) {
  if (p.rows() != pi.size() || p.cols() != pi.size()) {
    throw ContractViolation("rw_adjacency: P and pi sizes disagree");
  }
  Eigen::SparseMatrix<double> flow = pi.asDiagonal() * p;
  Eigen::SparseMatrix<double> flow_t = flow.transpose();
  Eigen::SparseMatrix<double> a = 0.5 * (flow + flow_t);
  return a;
}

ReducedDigraph rw_digraph(const Eigen::SparseMatrix<double>& adjacency) {
  std::vector<Arc> arcs;
  for (int k = 0; k < adjacency.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(adjacency, k); it;
         ++it) {
      const int u = static_cast<int>(it.row());
      const int v = static_cast<int>(it.col());
      if (u != v && it.value() > 0.0) arcs.push_back({u, v, it.value()});
    }
  }
  return ReducedDigraph(static_cast<int>(adjacency.rows()), 0, std::move(arcs));
}

double rw_splitting_penalty(const TransitionMatrix& p, int e,
                            const Eigen::VectorXd& pi,
                            std::span<const int> subset) {
  const Hyperedge& edge = p.hypergraph().edge(e);
  std::vector<char> in(edge.size(), 0);
  for (int v : subset) {
    const int pos = edge.position_of(v);
    if (pos < 0) {
      throw ContractViolation("rw_splitting_penalty: vertex " +
                              std::to_string(v) + " is not in hyperedge");
    }
    in[pos] = 1;
  }
  double total = 0.0;
  for (int i = 0; i < edge.size(); ++i) {
    if (!in[i]) continue;
    const int u = edge.members()[i];
    for (int j = 0; j < edge.size(); ++j) {
      if (in[j]) continue;
      const int v = edge.members()[j];
      total += 0.5 * (pi[u] * p.via_edge(u, e, v) + pi[v] * p.via_edge(v, e, u));
    }
  }
  return total;
}

SymmetricOperator SymmetricOperator::from_matrix(Eigen::SparseMatrix<double> a) {
  if (a.rows() != a.cols()) {
    throw ContractViolation("SymmetricOperator: matrix must be square");
  }
  SymmetricOperator op;
  op.size = static_cast<int>(a.rows());
  op.degree = a * Eigen::VectorXd::Ones(a.cols());
  op.apply = [a = std::move(a)](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return a * x;
  };
  return op;
}

SymmetricOperator rw_operator(const TransitionMatrix& p,
                              const Eigen::VectorXd& pi) {
  SymmetricOperator op;
  op.size = p.size();
  op.degree = pi;
  op.apply = [&p, pi](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const Eigen::VectorXd px = p.apply(x);
    const Eigen::VectorXd pt = p.apply_transpose(pi.cwiseProduct(x));
    return 0.5 * (pi.cwiseProduct(px) + pt);
  };
  return op;
}

namespace {

struct PowerResult {
  Eigen::VectorXd u;
  double rho = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Leading eigenvector of (I + M)/2 orthogonal to `deflate`, where
// M = D^{-1/2} A D^{-1/2}.
PowerResult deflated_power(const SymmetricOperator& a,
                           const Eigen::VectorXd& inv_sqrt_d,
                           const std::vector<Eigen::VectorXd>& deflate,
                           double tol, int max_iter, std::uint64_t seed) {
  auto m = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    return inv_sqrt_d.cwiseProduct(a.apply(inv_sqrt_d.cwiseProduct(u)));
  };
  auto project = [&](Eigen::VectorXd& u) {
    for (const auto& q : deflate) u -= q.dot(u) * q;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  PowerResult out;
  out.u.resize(a.size);
  for (int i = 0; i < a.size; ++i) out.u[i] = unif(rng);
  project(out.u);
  out.u.normalize();
  for (int k = 1; k <= max_iter; ++k) {
    const Eigen::VectorXd mu = m(out.u);
    out.rho = out.u.dot(mu);
    out.residual = (mu - out.rho * out.u).norm();
    out.iterations = k;
    if (out.residual <= tol) break;
    Eigen::VectorXd next = 0.5 * (out.u + mu);
    project(next);
    project(next);
    const double norm = next.norm();
    if (norm == 0.0) break;
    out.u = next / norm;
  }
  return out;
}

}  // namespace

Embedding baseline_embedding(const SymmetricOperator& a, double tol,
                             int max_iter) {
  if (a.size < 2 || a.degree.size() != a.size) {
    throw ContractViolation("baseline_embedding: need at least two vertices");
  }
  if (!(a.degree.minCoeff() > 0.0)) {
    throw ContractViolation("baseline_embedding: every degree must be positive");
  }
  const Eigen::VectorXd sqrt_d = a.degree.cwiseSqrt();
  const Eigen::VectorXd inv_sqrt_d = sqrt_d.cwiseInverse();
  std::vector<Eigen::VectorXd> deflate{sqrt_d.normalized()};

  const PowerResult second =
      deflated_power(a, inv_sqrt_d, deflate, tol, max_iter, 0x2b);
  deflate.push_back(second.u);
  const PowerResult third =
      deflated_power(a, inv_sqrt_d, deflate, tol, std::min(max_iter, 5000), 0x3c);

  Embedding out;
  out.eigenvalue = 1.0 - second.rho;
  out.next_eigenvalue = 1.0 - third.rho;
  out.residual = second.residual;
  out.iterations = second.iterations;
  out.ill_defined = std::abs(out.next_eigenvalue - out.eigenvalue) < 1e-12;
  out.vector = inv_sqrt_d.cwiseProduct(second.u);
  const double cutoff = 1e-12 * out.vector.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < out.vector.size(); ++i) {
    if (std::abs(out.vector[i]) > cutoff) {
      if (out.vector[i] < 0.0) out.vector = -out.vector;
      break;
    }
  }
  return out;
}

}  // namespace edvw
