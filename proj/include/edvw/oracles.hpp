#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "edvw/inner_solvers.hpp"
#include "edvw/lovasz.hpp"
#include "edvw/reduction.hpp"
#include "edvw/splitting.hpp"

namespace edvw {

/// Limits for the exhaustive checks. Exceeding one throws BudgetExceeded.
struct OracleBudget {
  int max_vertices = 10;
  int max_auxiliary = 6;
  int max_pairs = 4;
  double grid_resolution = 1e-4;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheegerResult {
  double h2 = 0.0;
  VertexSet argmin;
};

/// Minimum NCC over all bipartitions. Among (near-)ties the lexicographically
/// smallest set wins.
CheegerResult brute_cheeger(const SubmodularHypergraph& h,
                            const OracleBudget& budget = {});

struct ViolationReport {
  double max_violation = 0.0;
  VertexSet worst_set;
  long long checked = 0;
};

/// Checks cut_H(S) = min over T within the auxiliary vertices of
/// cut_G(S u T) for every S within V by plain enumeration of S and T.
ViolationReport check_reduction_cut(const SubmodularHypergraph& h,
                                    const ReducedDigraph& g,
                                    const OracleBudget& budget = {});

/// min over auxiliary values of the digraph Q1 at (x, aux), with each
/// auxiliary coordinate drawn from the distinct values of x. Q1 is piecewise
/// linear with kinks where coordinates coincide, and optimal auxiliary values
/// stay within [min x, max x], so this candidate grid contains a minimizer.
/// Auxiliary components joined by aux-aux arcs are searched independently.
double lovasz_min_restricted(const ReducedDigraph& g,
                             Eigen::Ref<const Eigen::VectorXd> x,
                             const OracleBudget& budget = {});

/// Projected subgradient descent over the auxiliary coordinates, kept inside
/// [min x, max x]; returns the best value seen. An upper bound that should
/// approach lovasz_min_restricted.
double lovasz_min_subgradient(const ReducedDigraph& g,
                              Eigen::Ref<const Eigen::VectorXd> x,
                              int steps = 1000);

struct SfmResult {
  double value = 0.0;
  VertexSet argmin;
};

/// Minimum of f over all 2^n subsets, empty set included.
SfmResult brute_sfm(const SetFunction& f, int n,
                    const OracleBudget& budget = {});

/// F(S) = min over T of cut_G(S u T) - g(S) for S within V.
double sfm_objective(const ReducedDigraph& g, const Eigen::VectorXd& g_tilde,
                     std::span<const int> subset);

/// Minimizes F through the proximal problem min_y Q1(y) + 1/2 ||y - g||^2:
/// the positive part of the solution restricted to V is a minimizer. Level
/// sets of coordinates near zero are all evaluated and the best is returned.
SfmResult sfm_via_prox(const ReducedDigraph& g, const Eigen::VectorXd& g_tilde,
                       InnerConfig config = {.max_iter = 100000,
                                          .tol = 1e-12});

}  // namespace edvw
