#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "edvw/hypergraph_io.hpp"
#include "edvw/splitting.hpp"

namespace edvw {

/// Small random instances for property checks. The hypergraph is always
/// connected; kappa is drawn from `kappa_values` and mu is derived.
struct RandomInstanceParams {
  int min_vertices = 3;
  int max_vertices = 7;
  int min_edges = 1;
  int max_edges = 3;
  int max_edge_size = 5;
  std::vector<double> gamma_values{1, 2, 3, 4};
  std::vector<double> kappa_values{1, 2, 3};
  std::vector<double> betas{0.2, 0.3, 0.5};
  SplittingKind kind = SplittingKind::EdvwCapped;
};

SubmodularHypergraph random_instance(std::mt19937_64& rng,
                                     const RandomInstanceParams& params = {});

/// Two planted blocks. Each hyperedge has `home_members` vertices from its
/// own block with gamma in [home_lo, home_hi] and `cross_members` from the
/// other block with gamma in [cross_lo, cross_hi]. Every vertex is a home
/// member of some hyperedge. kappa and mu are left to be derived; labels
/// give the block.
struct PlantedParams {
  int block_size = 50;
  int edges_per_block = 20;
  int home_members = 12;
  int cross_members = 4;
  double home_lo = 2.0;
  double home_hi = 4.0;
  double cross_lo = 0.2;
  double cross_hi = 0.6;
};

HypergraphFile planted_two_block(std::uint64_t seed,
                                 const PlantedParams& params = {});

}  // namespace edvw
