#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace edvw {

/// Sorted list of vertex indices.
using VertexSet = std::vector<int>;

/// Thrown when a caller breaks an operation's precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hyperedge with edge-dependent vertex weights. `gamma[i]` is the weight of
/// `members[i]` inside this hyperedge; non-members implicitly weigh zero.
class Hyperedge {
 public:
  Hyperedge(std::vector<int> members, std::vector<double> gamma, double kappa);

  const std::vector<int>& members() const { return members_; }
  const std::vector<double>& gamma() const { return gamma_; }
  double kappa() const { return kappa_; }
  double gamma_total() const { return gamma_total_; }
  int size() const { return static_cast<int>(members_.size()); }

  /// Position of `v` in members(), or -1.
  int position_of(int v) const;

 private:
  std::vector<int> members_;
  std::vector<double> gamma_;
  double kappa_;
  double gamma_total_;
};

/// Hypergraph with EDVW: vertices 0..N-1, hyperedges with kappa and gamma,
/// and positive vertex weights mu.
class EdvwHypergraph {
 public:
  EdvwHypergraph(int num_vertices, std::vector<Hyperedge> edges,
                 Eigen::VectorXd vertex_weights);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  const Hyperedge& edge(int e) const { return edges_[e]; }
  const Eigen::VectorXd& vertex_weights() const { return mu_; }

  /// Hyperedges containing vertex v.
  const std::vector<int>& incident_edges(int v) const { return incidence_[v]; }

  /// Connectivity of the bipartite vertex-hyperedge incidence graph.
  bool connected() const { return connected_; }

  /// Throws ContractViolation unless connected().
  void require_connected(const char* operation) const;

  double volume(std::span<const int> subset) const;
  double total_volume() const { return mu_.sum(); }

 private:
  int num_vertices_;
  std::vector<Hyperedge> edges_;
  Eigen::VectorXd mu_;
  std::vector<std::vector<int>> incidence_;
  bool connected_ = false;
};

/// Union-find connectivity over the vertex-hyperedge incidence graph,
/// returning a component id per vertex (ids are 0..k-1 in first-seen order).
std::vector<int> vertex_components(int num_vertices,
                                   const std::vector<std::vector<int>>& edges);

/// Byte mask of length n with ones at `subset`. Throws on out-of-range.
std::vector<char> membership(int n, std::span<const int> subset);

/// Indicator vector 1_S of length n.
Eigen::VectorXd indicator(int n, std::span<const int> subset);

/// Complement of a vertex set within 0..n-1.
VertexSet complement(int n, std::span<const int> subset);

}  // namespace edvw
