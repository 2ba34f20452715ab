#include "edvw/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace edvw {

Hyperedge::Hyperedge(std::vector<int> members, std::vector<double> gamma,
                     double kappa)
    : members_(std::move(members)), gamma_(std::move(gamma)), kappa_(kappa) {
  if (members_.size() < 2) {
    throw ContractViolation("hyperedge needs at least 2 members");
  }
  if (members_.size() != gamma_.size()) {
    throw ContractViolation("hyperedge gamma list does not match members");
  }
  if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) {
    throw ContractViolation("hyperedge weight kappa must be positive");
  }
  std::vector<int> sorted = members_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ContractViolation("duplicate vertex " +
                            std::to_string(*std::adjacent_find(
                                sorted.begin(), sorted.end())) +
                            " in hyperedge");
  }
  for (double g : gamma_) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw ContractViolation("EDVW gamma must be positive for members");
    }
  }
  gamma_total_ = std::accumulate(gamma_.begin(), gamma_.end(), 0.0);
}

int Hyperedge::position_of(int v) const {
  auto it = std::find(members_.begin(), members_.end(), v);
  return it == members_.end() ? -1 : static_cast<int>(it - members_.begin());
}

std::vector<int> vertex_components(int num_vertices,
                                   const std::vector<std::vector<int>>& edges) {
  std::vector<int> parent(num_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& e : edges) {
    for (std::size_t i = 1; i < e.size(); ++i) {
      int a = find(e[0]);
      int b = find(e[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> ids(num_vertices, -1);
  std::vector<int> root_id(num_vertices, -1);
  int next = 0;
  for (int v = 0; v < num_vertices; ++v) {
    int r = find(v);
    if (root_id[r] < 0) root_id[r] = next++;
    ids[v] = root_id[r];
  }
  return ids;
}

EdvwHypergraph::EdvwHypergraph(int num_vertices, std::vector<Hyperedge> edges,
                               Eigen::VectorXd vertex_weights)
    : num_vertices_(num_vertices),
      edges_(std::move(edges)),
      mu_(std::move(vertex_weights)),
      incidence_(num_vertices > 0 ? num_vertices : 0) {
  if (num_vertices_ < 1) {
    throw ContractViolation("hypergraph needs at least one vertex");
  }
  if (mu_.size() != num_vertices_) {
    throw ContractViolation("vertex weight vector has wrong length");
  }
  for (int v = 0; v < num_vertices_; ++v) {
    if (!(mu_[v] > 0.0) || !std::isfinite(mu_[v])) {
      throw ContractViolation("vertex weight mu(" + std::to_string(v) +
                              ") must be positive");
    }
  }
  std::vector<std::vector<int>> lists;
  lists.reserve(edges_.size());
  for (int e = 0; e < num_edges(); ++e) {
    for (int v : edges_[e].members()) {
      if (v < 0 || v >= num_vertices_) {
        throw ContractViolation("hyperedge " + std::to_string(e) +
                                " references vertex " + std::to_string(v) +
                                " out of range");
      }
      incidence_[v].push_back(e);
    }
    lists.push_back(edges_[e].members());
  }
  auto comp = vertex_components(num_vertices_, lists);
  connected_ = std::all_of(comp.begin(), comp.end(),
                           [](int c) { return c == 0; });
}

void EdvwHypergraph::require_connected(const char* operation) const {
  if (!connected_) {
    throw ContractViolation(std::string(operation) +
                            " requires a connected hypergraph");
  }
}

double EdvwHypergraph::volume(std::span<const int> subset) const {
  double vol = 0.0;
  for (int v : subset) vol += mu_[v];
  return vol;
}

std::vector<char> membership(int n, std::span<const int> subset) {
  std::vector<char> mask(n, 0);
  for (int v : subset) {
    if (v < 0 || v >= n) {
      throw ContractViolation("vertex index " + std::to_string(v) +
                              " out of range");
    }
    mask[v] = 1;
  }
  return mask;
}

Eigen::VectorXd indicator(int n, std::span<const int> subset) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int v : subset) x[v] = 1.0;
  return x;
}

VertexSet complement(int n, std::span<const int> subset) {
  auto mask = membership(n, subset);
  VertexSet out;
  for (int v = 0; v < n; ++v) {
    if (!mask[v]) out.push_back(v);
  }
  return out;
}

}  // namespace edvw
