#include "edvw/synthetic.hpp"

#include <algorithm>
#include <numeric>

namespace edvw {

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& values) {
  std::uniform_int_distribution<std::size_t> d(0, values.size() - 1);
  return values[d(rng)];
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

SubmodularHypergraph random_instance(std::mt19937_64& rng,
                                     const RandomInstanceParams& params) {
  if (params.max_edge_size < 2 || params.gamma_values.empty() ||
      params.kappa_values.empty() || params.min_vertices < 2 ||
      params.min_edges < 1) {
    throw ContractViolation("random_instance: bad parameters");
  }
  for (;;) {
    const int n = uniform_int(rng, params.min_vertices, params.max_vertices);
    const int m = uniform_int(rng, params.min_edges, params.max_edges);
    std::vector<int> sizes(m);
    int reach = 1;
    for (int& s : sizes) {
      s = uniform_int(rng, 2, std::min(params.max_edge_size, n));
      reach += s - 1;
    }
    if (reach < n) continue;

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    int covered = 0;
    std::vector<Hyperedge> edges;
    for (int j = 0; j < m; ++j) {
      std::vector<int> members;
      if (j == 0) {
        covered = std::min(sizes[0], n);
        members.assign(perm.begin(), perm.begin() + covered);
      } else {
        members.push_back(perm[uniform_int(rng, 0, covered - 1)]);
        const int fresh = std::min(sizes[j] - 1, n - covered);
        for (int k = 0; k < fresh; ++k) members.push_back(perm[covered++]);
        while (static_cast<int>(members.size()) < sizes[j]) {
          const int v = perm[uniform_int(rng, 0, covered - 1)];
          if (std::find(members.begin(), members.end(), v) == members.end()) {
            members.push_back(v);
          }
        }
      }
      std::sort(members.begin(), members.end());
      std::vector<double> gamma;
      for (std::size_t i = 0; i < members.size(); ++i) {
        gamma.push_back(pick(rng, params.gamma_values));
      }
      edges.emplace_back(std::move(members), std::move(gamma),
                         pick(rng, params.kappa_values));
    }
    const double beta = pick(rng, params.betas);
    SplittingSpec spec;
    switch (params.kind) {
      case SplittingKind::AllOrNothing:
        spec = SplittingSpec::all_or_nothing();
        break;
      case SplittingKind::CardinalityCapped:
        spec = SplittingSpec::cardinality_capped(beta);
        break;
      default:
        spec = SplittingSpec::edvw_capped(beta);
        break;
    }
    RawHypergraph raw;
    raw.num_vertices = n;
    for (const Hyperedge& e : edges) {
      raw.edges.push_back({e.members(), e.gamma(), e.kappa()});
    }
    return derive_weights(raw, spec);
  }
}

HypergraphFile planted_two_block(std::uint64_t seed,
                                 const PlantedParams& p) {
  if (p.home_members < 1 || p.home_members > p.block_size ||
      p.cross_members < 0 || p.cross_members > p.block_size ||
      p.home_members + p.cross_members < 2 ||
      p.edges_per_block * p.home_members < p.block_size) {
    throw ContractViolation("planted_two_block: bad parameters");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> home(p.home_lo, p.home_hi);
  std::uniform_real_distribution<double> cross(p.cross_lo, p.cross_hi);
  HypergraphFile file;
  file.raw.num_vertices = 2 * p.block_size;
  std::vector<std::vector<int>> order(2);
  for (int b = 0; b < 2; ++b) {
    order[b].resize(p.block_size);
    std::iota(order[b].begin(), order[b].end(), b * p.block_size);
    std::shuffle(order[b].begin(), order[b].end(), rng);
  }
  for (int b = 0; b < 2; ++b) {
    for (int j = 0; j < p.edges_per_block; ++j) {
      std::vector<std::pair<int, double>> members;
      for (int k = 0; k < p.home_members; ++k) {
        const int v = order[b][(j * p.home_members + k) % p.block_size];
        members.emplace_back(v, quantize_gamma(home(rng)));
      }
      std::vector<int> others = order[1 - b];
      std::shuffle(others.begin(), others.end(), rng);
      for (int k = 0; k < p.cross_members; ++k) {
        members.emplace_back(others[k], quantize_gamma(cross(rng)));
      }
      std::sort(members.begin(), members.end());
      RawHyperedge edge;
      for (const auto& [v, g] : members) {
        edge.members.push_back(v);
        edge.gamma.push_back(g);
      }
      file.raw.edges.push_back(std::move(edge));
    }
  }
  for (int v = 0; v < file.raw.num_vertices; ++v) {
    file.labels[v] = v < p.block_size ? 0 : 1;
  }
  return file;
}

}  // namespace edvw
