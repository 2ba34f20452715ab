#include "edvw/verify.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "edvw/format.hpp"
#include "edvw/oracles.hpp"
#include "edvw/random_walk.hpp"
#include "edvw/synthetic.hpp"

namespace edvw {

std::vector<VerifyRow> run_verification(const std::string& budget,
                                        std::uint64_t seed) {
  int instances = 0;
  if (budget == "small") {
    instances = 20;
  } else if (budget == "medium") {
    instances = 100;
  } else {
    throw ContractViolation("unknown budget '" + budget + "' (small, medium)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  VerifyRow cut{"gadget-cut", instances, 0.0, 1e-9};
  VerifyRow lovasz{"gadget-lovasz", instances, 0.0, 1e-9};
  VerifyRow lipschitz{"dual-lipschitz", instances, 0.0, 1e-9};
  VerifyRow walk{"random-walk-cut", instances, 0.0, 1e-9};
  VerifyRow sfm{"sfm-prox", instances, 0.0, 1e-9};

  for (int k = 0; k < instances; ++k) {
    const SubmodularHypergraph h = random_instance(rng);
    const ReducedDigraph g = reduce_edvw(h);
    const int n = h.num_vertices();

    cut.max_violation = std::max(cut.max_violation,
                                 check_reduction_cut(h, g).max_violation);

    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = unit(rng);
      lovasz.max_violation = std::max(
          lovasz.max_violation, std::abs(q1(h, x) - lovasz_min_restricted(g, x)));
    }

    const DualPairing pairing(g);
    const double lip = lipschitz_bound(g);
    Eigen::VectorXd gt = Eigen::VectorXd::Zero(g.num_vertices());
    for (int i = 0; i < n; ++i) gt[i] = unit(rng);
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd a(pairing.num_pairs()), b(pairing.num_pairs());
      for (int i = 0; i < a.size(); ++i) {
        a[i] = 0.5 + 0.5 * unit(rng);
        b[i] = 0.5 + 0.5 * unit(rng);
      }
      const double lhs =
          (grad_psi(pairing, a, gt) - grad_psi(pairing, b, gt)).norm();
      const double rhs = lip * (a - b).norm();
      lipschitz.max_violation =
          std::max(lipschitz.max_violation, std::max(lhs - rhs, 0.0));
    }

    const TransitionMatrix p(h.base());
    const Eigen::VectorXd pi = stationary_distribution(p).pi;
    const ReducedDigraph rw = rw_digraph(rw_adjacency(p.matrix(), pi));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) subset.push_back(i);
      }
      const auto in = membership(n, subset);
      double lhs = 0.0;
      for (int e = 0; e < h.num_edges(); ++e) {
        std::vector<int> part;
        for (int v : h.base().edge(e).members()) {
          if (in[v]) part.push_back(v);
        }
        lhs += rw_splitting_penalty(p, e, pi, part);
      }
      walk.max_violation =
          std::max(walk.max_violation, std::abs(lhs - digraph_cut(rw, subset)));
    }

    Eigen::VectorXd lin = Eigen::VectorXd::Zero(g.num_vertices());
    for (int i = 0; i < n; ++i) lin[i] = 2.0 * unit(rng);
    const SfmResult via = sfm_via_prox(g, lin);
    const SfmResult brute = brute_sfm(
        [&](std::span<const int> s) {
          double v = cut_weight(h, s);
          for (int i : s) v -= lin[i];
          return v;
        },
        n);
    const double gap = std::abs(via.value - brute.value);
    sfm.max_violation =
        std::max(sfm.max_violation, std::isfinite(gap) ? gap : INFINITY);
  }
  return {cut, lovasz, lipschitz, walk, sfm};
}

void write_verify_table(std::ostream& os, const std::vector<VerifyRow>& rows) {
  os << "check,instances,max_violation,tolerance,status\n";
  for (const VerifyRow& r : rows) {
    os << r.check << ',' << r.instances << ',' << format_double(r.max_violation)
       << ',' << format_double(r.tolerance) << ','
       << (r.passed() ? "pass" : "FAIL") << '\n';
  }
}

}  // namespace edvw
