#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "edvw/splitting.hpp"

namespace edvw {

struct Arc {
  int tail;
  int head;
  double weight;
};

enum class AuxRole { Entry, Exit };  // e' and e''

struct AuxProvenance {
  int hyperedge;
  AuxRole role;
};

/// Weighted digraph on V (indices 0..N-1) plus auxiliary vertices
/// (N..N+M-1). Arcs are sorted by (tail, head); parallel arcs are merged by
/// adding weights; weights are strictly positive; no self-loops.
class ReducedDigraph {
 public:
  ReducedDigraph(int num_original, int num_auxiliary, std::vector<Arc> arcs,
                 std::vector<AuxProvenance> provenance = {});

  int num_original() const { return num_original_; }
  int num_auxiliary() const { return num_auxiliary_; }
  int num_vertices() const { return num_original_ + num_auxiliary_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const std::vector<AuxProvenance>& provenance() const { return provenance_; }

  /// A with A(u, v) the weight of arc u -> v.
  Eigen::SparseMatrix<double> adjacency() const;

 private:
  int num_original_;
  int num_auxiliary_;
  std::vector<Arc> arcs_;
  std::vector<AuxProvenance> provenance_;
};

/// Gadget reduction of capped splitting functions. Per hyperedge j, e' is
/// vertex N+2j and e'' is N+2j+1; arcs v -> e' and e'' -> v carry
/// kappa*gamma_e(v), and e' -> e'' carries beta*kappa*gamma_e(e).
/// Cardinality-capped and all-or-nothing use the same gadget with unit gamma
/// (all-or-nothing as beta = 1/|e|). Custom profiles throw.
ReducedDigraph reduce_edvw(const SubmodularHypergraph& h);

/// Directed cut: total weight of arcs leaving `subset`.
double digraph_cut(const ReducedDigraph& g, std::span<const int> subset);
double digraph_cut_mask(const ReducedDigraph& g,
                        const std::vector<char>& in_set);

/// Q1 of the digraph: sum over arcs of A_uv * max(y_u - y_v, 0).
double graph_q1(const ReducedDigraph& g, Eigen::Ref<const Eigen::VectorXd> y);

/// min over T within the auxiliary vertices of cut(S u T), for S within V.
/// Auxiliary vertices are grouped into components linked by aux-aux arcs and
/// each component is enumerated on its own (components up to 20 vertices).
double min_auxiliary_cut(const ReducedDigraph& g,
                         const std::vector<char>& original_in_set);

/// Plain-text arc list, one "tail head weight" line per arc.
void write_arc_list(std::ostream& os, const ReducedDigraph& g);

}  // namespace edvw
