#include "edvw/inner_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <utility>

#include "edvw/format.hpp"

namespace edvw {

namespace {

double max_arc_weight(const ReducedDigraph& g) {
  double w = 0.0;
  for (const Arc& a : g.arcs()) w = std::max(w, a.weight);
  return w;
}

void check_length(const ReducedDigraph& g, const Eigen::VectorXd& g_tilde) {
  if (g_tilde.size() != g.num_vertices()) {
    throw ContractViolation("inner solver: g has length " +
                            std::to_string(g_tilde.size()) + ", expected " +
                            std::to_string(g.num_vertices()));
  }
  if (!g_tilde.allFinite()) {
    throw ContractViolation("inner solver: g must be finite");
  }
}

}  // namespace

GradientOperator::GradientOperator(const ReducedDigraph& g) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.arcs().size());
  Eigen::VectorXd col_sum = Eigen::VectorXd::Zero(g.num_vertices());
  double row_max = 0.0;
  for (int i = 0; i < g.num_arcs(); ++i) {
    const Arc& a = g.arcs()[i];
    triplets.emplace_back(i, a.tail, a.weight);
    triplets.emplace_back(i, a.head, -a.weight);
    col_sum[a.tail] += a.weight;
    col_sum[a.head] += a.weight;
    row_max = std::max(row_max, 2.0 * a.weight);
  }
  matrix_.resize(g.num_arcs(), g.num_vertices());
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  norm_sq_upper_ = row_max * (col_sum.size() ? col_sum.maxCoeff() : 0.0);
}

GradientOperator build_operator(const ReducedDigraph& g) {
  return GradientOperator(g);
}

double operator_norm_estimate(const GradientOperator& op, int iters) {
  if (op.rows() == 0 || op.norm_sq_upper() <= 0.0) {
    throw ContractViolation("operator_norm_estimate: zero operator");
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd v(op.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = unif(rng);
  v.normalize();
  double estimate = 0.0;
  for (int k = 0; k < std::max(iters, 1); ++k) {
    Eigen::VectorXd bv = op.matrix() * v;
    estimate = bv.norm();
    Eigen::VectorXd w = op.matrix().transpose() * bv;
    const double nw = w.norm();
    if (nw == 0.0) break;
    v = w / nw;
  }
  return estimate;
}

double lipschitz_bound(const ReducedDigraph& g) {
  DualPairing pairing(g);
  Eigen::VectorXd row = Eigen::VectorXd::Zero(g.num_vertices());
  for (const VertexPair& p : pairing.pairs()) {
    const double w = p.forward + p.backward;
    row[p.u] += w * w;
    row[p.v] += w * w;
  }
  return row.size() ? 4.0 * row.maxCoeff() : 0.0;
}

DualPairing::DualPairing(const ReducedDigraph& g)
    : num_vertices_(g.num_vertices()) {
  std::map<std::pair<int, int>, std::size_t> index;
  for (const Arc& a : g.arcs()) {
    const int u = std::min(a.tail, a.head);
    const int v = std::max(a.tail, a.head);
    auto [it, inserted] = index.try_emplace({u, v}, pairs_.size());
    if (inserted) pairs_.push_back({u, v, 0.0, 0.0});
    VertexPair& p = pairs_[it->second];
    (a.tail == u ? p.forward : p.backward) += a.weight;
  }
  std::sort(pairs_.begin(), pairs_.end(),
            [](const VertexPair& a, const VertexPair& b) {
              return a.u != b.u ? a.u < b.u : a.v < b.v;
            });
}

Eigen::VectorXd DualPairing::f_a(const Eigen::VectorXd& alpha) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(num_vertices_);
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const VertexPair& p = pairs_[i];
    const double d = (p.forward + p.backward) * alpha[i] - p.backward;
    out[p.u] += d;
    out[p.v] -= d;
  }
  return out;
}

double DualPairing::psi(const Eigen::VectorXd& alpha,
                        const Eigen::VectorXd& g) const {
  return (f_a(alpha) - g).squaredNorm();
}

Eigen::VectorXd grad_psi(const DualPairing& pairing,
                         const Eigen::VectorXd& alpha,
                         const Eigen::VectorXd& g) {
  const Eigen::VectorXd r = pairing.f_a(alpha) - g;
  Eigen::VectorXd grad(pairing.num_pairs());
  for (int i = 0; i < pairing.num_pairs(); ++i) {
    const VertexPair& p = pairing.pairs()[i];
    grad[i] = 2.0 * (p.forward + p.backward) * (r[p.u] - r[p.v]);
  }
  return grad;
}

double ball_objective(const ReducedDigraph& g, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& g_tilde) {
  return graph_q1(g, y) - y.dot(g_tilde);
}

double prox_objective(const ReducedDigraph& g, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& g_tilde) {
  return graph_q1(g, y) + 0.5 * (y - g_tilde).squaredNorm();
}

FistaSolver::FistaSolver(const ReducedDigraph& g, InnerConfig config,
                         std::optional<double> lipschitz)
    : graph_(&g),
      config_(config),
      pairing_(g),
      lipschitz_(lipschitz ? *lipschitz : lipschitz_bound(g)),
      alpha_(Eigen::VectorXd::Constant(pairing_.num_pairs(), 0.5)) {
  if (!(lipschitz_ > 0.0) || !std::isfinite(lipschitz_)) {
    throw ContractViolation("FISTA needs a positive Lipschitz constant");
  }
}

InnerSolution FistaSolver::solve(const Eigen::VectorXd& g_tilde) {
  check_length(*graph_, g_tilde);
  const double scale = std::max(g_tilde.norm(), max_arc_weight(*graph_));
  const double step = 1.0 / lipschitz_;

  Eigen::VectorXd a = alpha_;
  Eigen::VectorXd b = a;
  double psi_a = pairing_.psi(a, g_tilde);
  double t = 1.0;
  bool plain_step = true;

  InnerSolution sol;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(g_tilde.size());
  double r_norm = 0.0;
  auto evaluate = [&] {
    const Eigen::VectorXd r = pairing_.f_a(a) - g_tilde;
    r_norm = r.norm();
    if (r_norm > 0.0) {
      y = -r / r_norm;
      sol.objective = ball_objective(*graph_, y, g_tilde);
      sol.gap = sol.objective + r_norm;
      sol.residual = sol.gap / r_norm;
    } else {
      y.setZero();
      sol.objective = 0.0;
      sol.gap = 0.0;
      sol.residual = 0.0;
    }
  };

  int k = 0;
  bool stalled = false;
  while (k < config_.max_iter) {
    ++k;
    Eigen::VectorXd cand =
        (b - step * grad_psi(pairing_, b, g_tilde)).cwiseMax(0.0).cwiseMin(1.0);
    const double psi_c = pairing_.psi(cand, g_tilde);
    if (psi_c > psi_a) {
      // Reject the step and drop momentum.
      if (plain_step) {
        stalled = true;
      } else {
        b = a;
        t = 1.0;
        plain_step = true;
      }
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      b = cand + ((t - 1.0) / t_next) * (cand - a);
      a = std::move(cand);
      psi_a = psi_c;
      t = t_next;
      plain_step = false;
    }
    const bool last = stalled || k == config_.max_iter;
    if (k % std::max(config_.check_every, 1) == 0 || last) {
      evaluate();
      if (config_.record_trace) sol.trace.push_back({k, psi_a, sol.residual});
      if (r_norm <= config_.degenerate_tol * scale) break;
      if (sol.residual <= config_.tol) {
        sol.converged = true;
        break;
      }
    }
    if (stalled) break;
  }
  if (k == 0) evaluate();

  alpha_ = a;
  sol.iterations = k;
  // With g in C the optimum is y = 0; so is any candidate that fails to beat
  // it.
  if (r_norm <= config_.degenerate_tol * scale ||
      (!sol.converged && sol.objective >= 0.0)) {
    sol.degenerate = true;
    sol.converged = r_norm <= config_.degenerate_tol * scale;
    y.setZero();
    sol.objective = 0.0;
  }
  sol.y = std::move(y);
  return sol;
}

PdhgSolver::PdhgSolver(const ReducedDigraph& g, InnerConfig config)
    : config_(config),
      op_(g),
      norm_(op_.rows() ? operator_norm_estimate(op_) : 0.0),
      z_(Eigen::VectorXd::Zero(op_.rows())) {
  if (op_.rows() > 0) {
    norm_ = std::min(norm_ * 1.01, std::sqrt(op_.norm_sq_upper()));
  }
}

InnerSolution PdhgSolver::solve(const Eigen::VectorXd& g_tilde) {
  if (g_tilde.size() != op_.cols() || !g_tilde.allFinite()) {
    throw ContractViolation("PDHG: g has the wrong length or is not finite");
  }
  if (op_.rows() == 0) {
    // No arcs: the prox is the identity.
    InnerSolution sol;
    sol.converged = true;
    const double norm = g_tilde.norm();
    sol.degenerate = norm == 0.0;
    sol.y = config_.normalize && norm > 0.0 ? Eigen::VectorXd(g_tilde / norm)
                                            : g_tilde;
    return sol;
  }
  const auto& B = op_.matrix();
  double tau = 0.9 / norm_;
  double sigma = 0.9 / norm_;
  Eigen::VectorXd z = z_;
  Eigen::VectorXd y = g_tilde;
  Eigen::VectorXd y_bar = y;

  InnerSolution sol;
  Eigen::VectorXd best_y = y;
  double best_primal = INFINITY;
  double best_gap = INFINITY;
  double best_dual = -INFINITY;
  Eigen::VectorXd best_z = z;

  int k = 0;
  while (k < config_.max_iter) {
    ++k;
    z = (z + sigma * (B * y_bar)).cwiseMax(0.0).cwiseMin(1.0);
    const Eigen::VectorXd btz = B.transpose() * z;
    const Eigen::VectorXd y_prev = y;
    y = (y - tau * (btz - g_tilde)) / (1.0 + tau);
    const double theta = 1.0 / std::sqrt(1.0 + tau);
    tau *= theta;
    sigma /= theta;
    y_bar = y + theta * (y - y_prev);

    if (k % std::max(config_.check_every, 1) == 0 || k == config_.max_iter) {
      const double primal = (B * y).cwiseMax(0.0).sum() +
                            0.5 * (y - g_tilde).squaredNorm();
      const double dual = btz.dot(g_tilde) - 0.5 * btz.squaredNorm();
      if (primal < best_primal) {
        best_primal = primal;
        best_y = y;
      }
      if (dual > best_dual) {
        best_dual = dual;
        best_z = z;
      }
      best_gap = std::max(best_primal - best_dual, 0.0);
      const double rel =
          best_gap / std::max(std::abs(best_primal), 1e-300);
      if (config_.record_trace) sol.trace.push_back({k, primal, rel});
      sol.residual = rel;
      if (rel <= config_.tol) {
        sol.converged = true;
        break;
      }
    }
  }
  if (!std::isfinite(best_primal)) {
    best_primal = (B * y).cwiseMax(0.0).sum() + 0.5 * (y - g_tilde).squaredNorm();
    best_y = y;
    best_gap = INFINITY;
  }
  z_ = best_z;
  sol.iterations = k;
  sol.objective = best_primal;
  sol.gap = best_gap;

  // ||y - y*||^2 <= 2 * gap.
  const double y_norm = best_y.norm();
  const double zero_objective = 0.5 * g_tilde.squaredNorm();
  if (best_primal >= zero_objective ||
      y_norm <= std::sqrt(2.0 * best_gap) +
                    config_.degenerate_tol * std::max(g_tilde.norm(), 1e-300)) {
    sol.degenerate = true;
    sol.y = Eigen::VectorXd::Zero(g_tilde.size());
    return sol;
  }
  sol.y = config_.normalize ? Eigen::VectorXd(best_y / y_norm) : best_y;
  return sol;
}

InnerSolution solve_inner_fista(const ReducedDigraph& g,
                                const Eigen::VectorXd& g_tilde,
                                double lipschitz, const InnerConfig& config) {
  FistaSolver solver(g, config, lipschitz);
  return solver.solve(g_tilde);
}

InnerSolution solve_inner_pdhg(const ReducedDigraph& g,
                               const Eigen::VectorXd& g_tilde,
                               const InnerConfig& config) {
  PdhgSolver solver(g, config);
  return solver.solve(g_tilde);
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iteration,objective,residual\n";
  for (const TraceRow& row : trace) {
    os << row.iteration << ',' << format_double(row.objective) << ','
       << format_double(row.residual) << '\n';
  }
}

}  // namespace edvw
