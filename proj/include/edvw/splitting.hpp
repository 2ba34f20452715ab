#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "edvw/hypergraph.hpp"

namespace edvw {

enum class SplittingKind { AllOrNothing, CardinalityCapped, EdvwCapped, Custom };

/// One knot of a piecewise-linear concave profile phi(t) on t in [0, 1/2].
struct Breakpoint {
  double fraction;
  double value;
};

/// Declarative splitting function w_e applied to every hyperedge.
///
/// All kinds are of the form w_e(S) = kappa(e) * g(gamma_e(S)) with g concave
/// and symmetric about gamma_e(e)/2:
///   AllOrNothing          kappa                                 (proper splits)
///   CardinalityCapped(b)  kappa * min(|S|, |e|-|S|, b*|e|)
///   EdvwCapped(b)         kappa * min(gS, ge - gS, b*ge)
///   Custom(table)         kappa * ge * phi(gS/ge), phi mirrored about 1/2
class SplittingSpec {
 public:
  static SplittingSpec all_or_nothing();
  static SplittingSpec cardinality_capped(double beta);
  static SplittingSpec edvw_capped(double beta);
  /// `table` must start at (0, 0), end at fraction 1/2, and be concave with
  /// non-negative slopes.
  static SplittingSpec custom(std::vector<Breakpoint> table);

  SplittingKind kind() const { return kind_; }
  double beta() const { return beta_; }
  const std::vector<Breakpoint>& table() const { return table_; }

  /// Profile phi(t) for Custom, t in [0, 1].
  double profile(double fraction) const;

  /// Smallest t in [0, 1/2] at which phi attains its maximum.
  double cap_fraction() const;

  std::string name() const;

 private:
  SplittingKind kind_ = SplittingKind::AllOrNothing;
  double beta_ = 0.5;
  std::vector<Breakpoint> table_;
};

/// w_e evaluated from the sufficient statistics of S within e.
double penalty_from_sum(const Hyperedge& edge, const SplittingSpec& spec,
                        double gamma_in, int count_in);

/// w_e(subset). `subset` must only contain members of `edge`.
double splitting_penalty(const Hyperedge& edge, const SplittingSpec& spec,
                         std::span<const int> subset);

/// theta_e = max over S within e of w_e(S).
double theta_max_penalty(const Hyperedge& edge, const SplittingSpec& spec);

/// Largest achievable gamma_e(S) not exceeding gamma_e(e)/2.
double best_balanced_sum(std::span<const double> gamma);

/// A hypergraph with EDVW together with one splitting function per hyperedge
/// and the materialized per-edge maxima theta_e.
class SubmodularHypergraph {
 public:
  SubmodularHypergraph(EdvwHypergraph base, SplittingSpec spec);

  const EdvwHypergraph& base() const { return base_; }
  const SplittingSpec& splitting() const { return spec_; }
  const Eigen::VectorXd& theta() const { return theta_; }
  int num_vertices() const { return base_.num_vertices(); }
  int num_edges() const { return base_.num_edges(); }

  double edge_penalty(int e, double gamma_in, int count_in) const {
    return penalty_from_sum(base_.edge(e), spec_, gamma_in, count_in);
  }

 private:
  EdvwHypergraph base_;
  SplittingSpec spec_;
  Eigen::VectorXd theta_;
};

double cut_weight(const SubmodularHypergraph& h, std::span<const int> subset);
double cut_weight_mask(const SubmodularHypergraph& h,
                       const std::vector<char>& in_set);

/// Normalized Cheeger cut. Throws ContractViolation for empty or full sets.
double ncc(const SubmodularHypergraph& h, std::span<const int> subset);

/// Lovasz extension of the (unnormalized) w_e at x restricted to e.
double edge_lovasz(const SubmodularHypergraph& h, int e,
                   Eigen::Ref<const Eigen::VectorXd> x);

/// Q_p(x) = sum_e theta_e * f_e(x)^p, with f_e the extension of w_e/theta_e.
double q_p(const SubmodularHypergraph& h, Eigen::Ref<const Eigen::VectorXd> x,
           double p);

inline double q1(const SubmodularHypergraph& h,
                 Eigen::Ref<const Eigen::VectorXd> x) {
  return q_p(h, x, 1.0);
}

/// Hyperedge as read from input, before kappa has been fixed.
struct RawHyperedge {
  std::vector<int> members;
  std::vector<double> gamma;
  std::optional<double> kappa;
};

struct RawHypergraph {
  int num_vertices = 0;
  std::vector<RawHyperedge> edges;
  std::optional<Eigen::VectorXd> vertex_weights;
};

/// Fills in kappa(e) as the population standard deviation of the length-N
/// vector (gamma_e(v))_v where missing, computes theta_e under `spec`, then
/// mu(v) = sum_{e containing v} theta_e if mu is missing.
SubmodularHypergraph derive_weights(const RawHypergraph& raw,
                                    const SplittingSpec& spec);

/// Population standard deviation of gamma_e over all N vertices (zeros
/// included for non-members).
double edvw_std_kappa(int num_vertices, std::span<const double> gamma);

}  // namespace edvw
