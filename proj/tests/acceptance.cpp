// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "edvw/cli.hpp"
#include "edvw/hypergraph_io.hpp"
#include "edvw/inner_solvers.hpp"
#include "edvw/ipm.hpp"
#include "edvw/metrics.hpp"
#include "edvw/oracles.hpp"
#include "edvw/pipeline.hpp"
#include "edvw/random_walk.hpp"
#include "edvw/synthetic.hpp"
#include "reference.hpp"

using namespace edvw;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const Outcome& o) {
  std::printf("criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL",
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// 200 instances: N <= 7, |E| <= 3, |e| <= 5, gamma in {1..4},
// beta in {0.2, 0.3, 0.5}.
std::vector<SubmodularHypergraph> reduction_suite() {
  std::mt19937_64 rng(20240601);
  RandomInstanceParams p;
  p.min_vertices = 2;
  p.max_vertices = 7;
  p.max_edges = 3;
  p.max_edge_size = 5;
  p.gamma_values = {1, 2, 3, 4};
  p.betas = {0.2, 0.3, 0.5};
  std::vector<SubmodularHypergraph> out;
  for (int i = 0; i < 200; ++i) out.push_back(random_instance(rng, p));
  return out;
}

Outcome criterion1(const std::vector<SubmodularHypergraph>& suite) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& h : suite) {
    const ReducedDigraph g = reduce_edvw(h);
    const int n = h.num_vertices();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      const auto in = ref::mask_bits(s, n);
      worst = std::max(worst, std::abs(ref::cut(h, in) - ref::min_aux_cut(g, in)));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 30.0,
          fmt("max violation %.3g over 200 instances (tol 1e-9), %.2f s (limit 30 s)",
              worst, secs)};
}

Outcome criterion2(const std::vector<SubmodularHypergraph>& suite) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (const auto& h : suite) {
    const ReducedDigraph g = reduce_edvw(h);
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd x = ref::random_vector(rng, h.num_vertices());
      worst = std::max(worst, std::abs(ref::q1(h, x) - lovasz_min_restricted(g, x)));
    }
  }
  return {worst <= 1e-9,
          fmt("max |Q1 - restricted min| %.3g over 4000 vectors (tol 1e-9)", worst)};
}

bool trace_non_increasing(const std::vector<double>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i] > trace[i - 1] + 1e-10) return false;
  }
  return true;
}

struct MonotoneLog {
  int runs = 0;
  int bad_trace = 0;
  int indicator_runs = 0;
  int ncc_increase = 0;
};

Outcome criterion3(MonotoneLog& log) {
  std::mt19937_64 rng(31337);
  RandomInstanceParams p;
  p.min_vertices = 4;
  p.max_vertices = 8;
  p.min_edges = 2;
  p.max_edges = 5;
  p.max_edge_size = 5;
  int exact_indicator = 0;
  int exact_restarts = 0;
  for (int i = 0; i < 50; ++i) {
    const SubmodularHypergraph h = random_instance(rng, p);
    std::vector<int> best;
    const double h2 = ref::cheeger(h, &best);

    PipelineConfig ind;
    ind.init = InitMode::Indicator;
    ind.init_set = best;
    const ClusteringReport a = cluster_pipeline(h, ind);
    if (std::abs(a.lambda - h2) <= 1e-6) ++exact_indicator;
    ++log.runs;
    ++log.indicator_runs;
    if (!trace_non_increasing(a.lambda_trace)) ++log.bad_trace;
    if (a.partition.ncc > ref::ncc(h, membership(h.num_vertices(), best)) + 1e-10) {
      ++log.ncc_increase;
    }

    PipelineConfig rw;
    rw.init = InitMode::RandomWalk;
    rw.restarts = 10;
    rw.seed = static_cast<std::uint64_t>(i);
    const ClusteringReport b = cluster_pipeline(h, rw);
    if (std::abs(b.lambda - h2) <= 1e-6) ++exact_restarts;
    ++log.runs;
    if (!trace_non_increasing(b.lambda_trace)) ++log.bad_trace;
  }
  return {exact_indicator == 50 && exact_restarts >= 45,
          fmt("indicator start exact on %.0f/50 (need 50); rw start + 10 restarts "
              "exact on %.0f/50 (need 45)",
              exact_indicator, exact_restarts)};
}

Outcome criterion5() {
  std::mt19937_64 rng(5);
  RandomInstanceParams p;
  p.min_vertices = 3;
  p.max_vertices = 7;
  int agree = 0;
  double worst_diff = 0.0;
  long long lip_violations = 0;
  for (int k = 0; k < 100; ++k) {
    const SubmodularHypergraph h = random_instance(rng, p);
    const ReducedDigraph g = reduce_edvw(h);
    Eigen::VectorXd gt = Eigen::VectorXd::Zero(g.num_vertices());
    gt.head(h.num_vertices()) = ref::random_vector(rng, h.num_vertices(), 3.0);

    InnerConfig cfg;
    cfg.tol = 1e-12;
    cfg.max_iter = 400000;
    const InnerSolution f = solve_inner_fista(g, gt, lipschitz_bound(g), cfg);
    const InnerSolution d = solve_inner_pdhg(g, gt, cfg);
    double diff = 0.0;
    if (f.degenerate || d.degenerate) {
      diff = f.degenerate == d.degenerate ? 0.0 : INFINITY;
    } else {
      diff = std::min((f.y - d.y).norm(), (f.y + d.y).norm());
    }
    worst_diff = std::max(worst_diff, diff);
    if (diff <= 1e-4) ++agree;

    const DualPairing pairing(g);
    const double lip = lipschitz_bound(g);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      Eigen::VectorXd a(pairing.num_pairs()), b(pairing.num_pairs());
      for (int i = 0; i < a.size(); ++i) {
        a[i] = unit(rng);
        b[i] = unit(rng);
      }
      const double lhs =
          (grad_psi(pairing, a, gt) - grad_psi(pairing, b, gt)).norm();
      const double rhs = lip * (a - b).norm();
      if (lhs > rhs * (1.0 + 1e-12)) ++lip_violations;
    }
  }
  return {agree == 100 && lip_violations == 0,
          fmt("solvers agree on %.0f/100 (max l2 gap %.3g, tol 1e-4); "
              "Lipschitz violations %.0f in 100000 pairs",
              agree, worst_diff, static_cast<double>(lip_violations))};
}

Outcome criterion6() {
  std::mt19937_64 rng(66);
  RandomInstanceParams p;
  p.min_vertices = 3;
  p.max_vertices = 8;
  p.max_edges = 4;
  int match = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const SubmodularHypergraph h = random_instance(rng, p);
    const ReducedDigraph g = reduce_edvw(h);
    const int n = h.num_vertices();
    Eigen::VectorXd gt = Eigen::VectorXd::Zero(g.num_vertices());
    gt.head(n) = ref::random_vector(rng, n, 4.0);
    double brute = INFINITY;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      const auto in = ref::mask_bits(s, n);
      double v = ref::cut(h, in);
      for (int i = 0; i < n; ++i) {
        if (in[i]) v -= gt[i];
      }
      brute = std::min(brute, v);
    }
    const SfmResult via = sfm_via_prox(g, gt);
    const double diff = std::abs(via.value - brute);
    worst = std::max(worst, diff);
    if (diff <= 1e-9) ++match;
  }
  return {match == 50,
          fmt("prox value equals brute-force minimum on %.0f/50 (max gap %.3g)",
              match, worst)};
}

Outcome criterion7() {
  std::mt19937_64 rng(77);
  RandomInstanceParams p;
  p.min_vertices = 2;
  p.max_vertices = 7;
  double cut_worst = 0.0;
  double q_worst = 0.0;
  int instances = 0;
  int vectors = 0;
  for (int k = 0; k < 30; ++k) {
    const SubmodularHypergraph h = random_instance(rng, p);
    const EdvwHypergraph& base = h.base();
    const int n = h.num_vertices();
    const TransitionMatrix tm(base);
    const Eigen::VectorXd pi = stationary_distribution(tm).pi;
    const Eigen::MatrixXd a = Eigen::MatrixXd(rw_adjacency(tm.matrix(), pi));
    auto hyper_cut = [&](const std::vector<char>& in) {
      double c = 0.0;
      for (int e = 0; e < base.num_edges(); ++e) {
        std::vector<int> part;
        for (int v : base.edge(e).members()) {
          if (in[v]) part.push_back(v);
        }
        c += rw_splitting_penalty(tm, e, pi, part);
      }
      return c;
    };
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      const auto in = ref::mask_bits(s, n);
      double graph = 0.0;
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          if (in[u] && !in[v]) graph += a(u, v);
        }
      }
      cut_worst = std::max(cut_worst, std::abs(hyper_cut(in) - graph));
    }
    ++instances;
    for (int t = 0; t < 100 / 30 + 1 && vectors < 100; ++t, ++vectors) {
      const Eigen::VectorXd x = ref::random_vector(rng, n);
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](int i, int j) { return x[i] > x[j]; });
      std::vector<char> in(n, 0);
      double hyper_q = 0.0;
      for (int j = 0; j + 1 < n; ++j) {
        in[order[j]] = 1;
        hyper_q += hyper_cut(in) * (x[order[j]] - x[order[j + 1]]);
      }
      double graph_q = 0.0;
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          if (u != v) graph_q += a(u, v) * std::max(x[u] - x[v], 0.0);
        }
      }
      q_worst = std::max(q_worst, std::abs(hyper_q - graph_q));
    }
  }
  return {cut_worst <= 1e-9 && q_worst <= 1e-9 && vectors == 100,
          fmt("cut violation %.3g over all subsets of %.0f instances; "
              "Q1 violation %.3g over %.0f vectors (tol 1e-9)",
              cut_worst, instances, q_worst, vectors)};
}

Outcome criterion8(MonotoneLog& log) {
  const auto t0 = Clock::now();
  int success = 0;
  double worst_error = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    const HypergraphFile file = planted_two_block(static_cast<std::uint64_t>(seed));
    const std::vector<int> labels = label_vector(file);
    const SplittingSpec spec = SplittingSpec::edvw_capped(0.2);
    const SubmodularHypergraph edvw = derive_weights(file.raw, spec);
    const SubmodularHypergraph card =
        derive_weights(apply_alpha(file.raw, 0.0), spec);

    PipelineConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.restarts = 10;
    const ClusteringReport re = cluster_pipeline(edvw, cfg, labels);
    const ClusteringReport rc = cluster_pipeline(card, cfg, labels);
    log.runs += 2;
    if (!trace_non_increasing(re.lambda_trace)) ++log.bad_trace;
    if (!trace_non_increasing(rc.lambda_trace)) ++log.bad_trace;

    // Indicator start from the baseline partition must not lose NCC.
    const BaselineReport base = baseline_pipeline(edvw);
    PipelineConfig ind = cfg;
    ind.init = InitMode::Indicator;
    ind.init_set = base.partition.side_a;
    const ClusteringReport ri = cluster_pipeline(edvw, ind);
    ++log.runs;
    ++log.indicator_runs;
    if (!trace_non_increasing(ri.lambda_trace)) ++log.bad_trace;
    if (ri.partition.ncc > base.partition.ncc + 1e-10) ++log.ncc_increase;

    const double ncc_edvw = ncc(edvw, re.partition.side_a);
    const double ncc_card = ncc(edvw, rc.partition.side_a);
    worst_error = std::max(worst_error, *re.error);
    if (*re.error <= 0.05 && ncc_edvw <= ncc_card) ++success;
  }
  const double secs = seconds_since(t0);
  return {success >= 16 && secs < 120.0,
          fmt("%.0f/20 seeds with error <= 5%% and EDVW NCC <= cardinality NCC "
              "(need 16); worst EDVW error %.3f; %.1f s (limit 120 s)",
              success, worst_error, secs)};
}

Outcome criterion4(const MonotoneLog& log) {
  return {log.bad_trace == 0 && log.ncc_increase == 0,
          fmt("%.0f IPM runs, %.0f with an increasing lambda trace; %.0f indicator "
              "starts, %.0f ending with a larger NCC",
              log.runs, log.bad_trace, log.indicator_runs, log.ncc_increase)};
}

Outcome criterion9() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "edvw_acceptance_determinism";
  fs::create_directories(dir);
  const std::string input = (dir / "toy.hg").string();
  write_hypergraph_file(input, planted_two_block(3));
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const std::string rep = (dir / ("report" + std::to_string(run) + ".csv")).string();
    const std::string eig = (dir / ("eigen" + std::to_string(run) + ".csv")).string();
    std::ostringstream out, err;
    const int status = run_cli({"edvw", "cluster", "--input", input, "--beta",
                                "0.2", "--solver", "pdhg", "--seed", "1",
                                "--restarts", "2", "--report", rep,
                                "--eigenvector", eig},
                               out, err);
    if (status != 0) return {false, "cluster exited with " + std::to_string(status)};
    std::ifstream r(rep, std::ios::binary), e(eig, std::ios::binary);
    std::stringstream buf;
    buf << r.rdbuf() << e.rdbuf();
    reports.push_back(buf.str());
  }
  fs::remove_all(dir);
  const bool same = reports[0] == reports[1] && !reports[0].empty();
  return {same, same ? "two cluster runs produced byte-identical report and "
                       "eigenvector files"
                     : "cluster outputs differ between runs"};
}

}  // namespace

int main() {
  const auto suite = reduction_suite();
  MonotoneLog log;
  report(1, criterion1(suite));
  report(2, criterion2(suite));
  report(3, criterion3(log));
  const Outcome c8 = criterion8(log);
  report(4, criterion4(log));
  report(5, criterion5());
  report(6, criterion6());
  report(7, criterion7());
  report(8, c8);
  report(9, criterion9());
  return failures == 0 ? 0 : 1;
}
