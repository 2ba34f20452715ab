#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "edvw/splitting.hpp"

namespace fixture {

struct Edge {
  std::vector<int> members;
  std::vector<double> gamma;
  double kappa = 1.0;
};

inline edvw::RawHypergraph raw(int n, const std::vector<Edge>& edges,
                               std::vector<double> mu = {}) {
  edvw::RawHypergraph r;
  r.num_vertices = n;
  for (const Edge& e : edges) {
    std::vector<double> gamma = e.gamma;
    if (gamma.empty()) gamma.assign(e.members.size(), 1.0);
    r.edges.push_back({e.members, gamma, e.kappa});
  }
  if (!mu.empty()) {
    r.vertex_weights = Eigen::Map<Eigen::VectorXd>(mu.data(), mu.size());
  }
  return r;
}

inline edvw::SubmodularHypergraph build(
    int n, const std::vector<Edge>& edges, std::vector<double> mu = {},
    const edvw::SplittingSpec& spec = edvw::SplittingSpec::all_or_nothing()) {
  return edvw::derive_weights(raw(n, edges, std::move(mu)), spec);
}

/// Path {0,1},{1,2},{2,3} with all-or-nothing pair edges.
inline edvw::SubmodularHypergraph path4() {
  return build(4, {{{0, 1}}, {{1, 2}}, {{2, 3}}}, {1, 2, 2, 1});
}

/// Two triangles {0,1,2},{3,4,5} joined by the pair edge {2,3}, mu = degree.
inline edvw::SubmodularHypergraph two_triangles() {
  std::vector<Edge> edges{{{0, 1}}, {{1, 2}}, {{0, 2}},
                          {{3, 4}}, {{4, 5}}, {{3, 5}}, {{2, 3}}};
  return build(6, edges, {2, 2, 3, 3, 2, 2});
}

/// Random connected EDVW instance: a spanning chain of hyperedges keeps it
/// connected, then extra hyperedges are drawn uniformly.
inline edvw::SubmodularHypergraph random_hypergraph(std::mt19937_64& rng,
                                                    int max_n = 7,
                                                    int max_extra = 2) {
  std::uniform_int_distribution<int> pick_n(3, max_n);
  const int n = pick_n(rng);
  std::uniform_int_distribution<int> gamma(1, 4);
  std::uniform_int_distribution<int> kappa(1, 3);
  std::uniform_real_distribution<double> beta_u(0.15, 0.5);
  std::vector<Edge> edges;
  auto make_edge = [&](std::vector<int> members) {
    Edge e;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    e.members = members;
    for (std::size_t i = 0; i < members.size(); ++i) {
      e.gamma.push_back(gamma(rng));
    }
    e.kappa = kappa(rng);
    edges.push_back(e);
  };
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  int start = 0;
  std::uniform_int_distribution<int> width(2, 4);
  while (start < n - 1) {
    const int end = std::min(n, start + width(rng));
    make_edge(std::vector<int>(perm.begin() + start, perm.begin() + end));
    start = end - 1;
  }
  std::uniform_int_distribution<int> extra(0, max_extra);
  for (int k = extra(rng); k > 0; --k) {
    std::uniform_int_distribution<int> size(2, std::min(n, 5));
    std::vector<int> members(perm);
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(size(rng));
    make_edge(members);
  }
  return build(n, edges, {}, edvw::SplittingSpec::edvw_capped(beta_u(rng)));
}

}  // namespace fixture
