#include <doctest.h>

#include <cmath>
#include <random>

#include "edvw/lovasz.hpp"
#include "fixtures.hpp"
#include "reference.hpp"

using namespace edvw;
using doctest::Approx;

namespace {

Hyperedge edge123() { return Hyperedge({0, 1, 2}, {1, 1, 2}, 1.0); }

}  // namespace

TEST_CASE("edvw penalty on a three-vertex edge") {
  const SplittingSpec spec = SplittingSpec::edvw_capped(0.5);
  const Hyperedge e = edge123();
  CHECK(splitting_penalty(e, spec, std::vector<int>{}) == 0.0);
  CHECK(splitting_penalty(e, spec, std::vector<int>{2}) == Approx(2.0));
  CHECK(splitting_penalty(e, spec, std::vector<int>{0}) == Approx(1.0));
  CHECK(splitting_penalty(e, spec, std::vector<int>{0, 1, 2}) == 0.0);
  CHECK_THROWS_AS(splitting_penalty(e, spec, std::vector<int>{5}),
                  ContractViolation);
}

TEST_CASE("maximal splitting penalty") {
  CHECK(theta_max_penalty(edge123(), SplittingSpec::edvw_capped(0.5)) ==
        Approx(2.0));
  const Hyperedge heavy({0, 1, 2, 3}, {1, 1, 1, 1}, 3.0);
  CHECK(theta_max_penalty(heavy, SplittingSpec::all_or_nothing()) == Approx(3.0));
  const Hyperedge pair({0, 1}, {1, 1}, 2.0);
  CHECK(theta_max_penalty(pair, SplittingSpec::edvw_capped(0.5)) == Approx(2.0));
}

TEST_CASE("theta matches the brute-force maximum") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const SubmodularHypergraph h = fixture::random_hypergraph(rng);
    for (int e = 0; e < h.num_edges(); ++e) {
      const Hyperedge& edge = h.base().edge(e);
      double best = 0.0;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << edge.size()); ++m) {
        std::vector<int> s;
        for (int i = 0; i < edge.size(); ++i) {
          if ((m >> i) & 1u) s.push_back(edge.members()[i]);
        }
        best = std::max(best, splitting_penalty(edge, h.splitting(), s));
      }
      CHECK(h.theta()[e] == Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("cut weight examples") {
  const SubmodularHypergraph pairs = fixture::build(3, {{{0, 1}}, {{1, 2}}});
  CHECK(cut_weight(pairs, std::vector<int>{1}) == Approx(2.0));
  CHECK(cut_weight(pairs, std::vector<int>{}) == 0.0);

  const SubmodularHypergraph one = fixture::build(
      3, {{{0, 1, 2}, {1, 1, 2}, 1.0}}, {}, SplittingSpec::edvw_capped(0.5));
  CHECK(cut_weight(one, std::vector<int>{0, 2}) == Approx(1.0));
}

TEST_CASE("ncc on the weighted path") {
  const SubmodularHypergraph h = fixture::path4();
  CHECK(ncc(h, std::vector<int>{0, 1}) == Approx(1.0 / 3.0));
  CHECK(ncc(h, std::vector<int>{0}) == Approx(1.0));
  CHECK_THROWS_AS(ncc(h, std::vector<int>{}), ContractViolation);
  CHECK_THROWS_AS(ncc(h, std::vector<int>{0, 1, 2, 3}), ContractViolation);
}

TEST_CASE("lovasz extension examples") {
  const SubmodularHypergraph pair = fixture::build(2, {{{0, 1}}});
  const SetFunction f = [&](std::span<const int> s) { return cut_weight(pair, s); };
  CHECK(lovasz_extension(f, Eigen::Vector2d(1, 0)) == Approx(1.0));

  const SubmodularHypergraph tri = fixture::build(3, {{{0, 1, 2}}});
  const SetFunction g = [&](std::span<const int> s) { return cut_weight(tri, s); };
  CHECK(lovasz_extension(g, Eigen::Vector3d(3, 1, 0)) == Approx(3.0));
  CHECK(lovasz_extension(g, Eigen::Vector3d::Constant(4.2)) == Approx(0.0));
}

TEST_CASE("q_p examples") {
  const SubmodularHypergraph h = fixture::path4();
  const std::vector<int> s{0, 1};
  CHECK(q_p(h, indicator(4, s), 1.0) == Approx(cut_weight(h, s)));
  const SubmodularHypergraph pair = fixture::build(2, {{{0, 1}}});
  CHECK(q_p(pair, Eigen::Vector2d(2, 0), 2.0) == Approx(4.0));
  CHECK(q_p(h, Eigen::Vector4d::Constant(3.0), 2.0) == Approx(0.0));
  CHECK_THROWS_AS(q_p(h, Eigen::Vector4d::Zero(), 0.5), ContractViolation);
}

TEST_CASE("derived kappa and vertex weights") {
  CHECK(edvw_std_kappa(4, std::vector<double>{1, 1}) == Approx(0.5));

  const SubmodularHypergraph h =
      fixture::build(3, {{{0, 1}, {}, 2.0}, {{0, 2}, {}, 3.0}});
  CHECK(h.base().vertex_weights()[0] == Approx(5.0));
  CHECK(h.base().vertex_weights()[1] == Approx(2.0));

  RawHypergraph flat;
  flat.num_vertices = 2;
  flat.edges.push_back({{0, 1}, {1, 1}, std::nullopt});
  CHECK_THROWS(derive_weights(flat, SplittingSpec::edvw_capped(0.5)));
}

TEST_CASE("vertex outside every hyperedge is rejected") {
  CHECK_THROWS(fixture::build(3, {{{0, 1}}}));
  const SubmodularHypergraph h = fixture::build(4, {{{0, 1}}, {{2, 3}}});
  CHECK_FALSE(h.base().connected());
  CHECK_THROWS_AS(h.base().require_connected("test"), ContractViolation);
}

TEST_CASE("property: cut, ncc and Q1 agree with direct evaluation") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const SubmodularHypergraph h = fixture::random_hypergraph(rng);
    const int n = h.num_vertices();
    for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << n); ++m) {
      const auto in = ref::mask_bits(m, n);
      std::vector<int> s;
      for (int i = 0; i < n; ++i) {
        if (in[i]) s.push_back(i);
      }
      CHECK(cut_weight(h, s) == Approx(ref::cut(h, in)).epsilon(1e-12));
      CHECK(cut_weight_mask(h, in) == Approx(ref::cut(h, in)).epsilon(1e-12));
      CHECK(ncc(h, s) == Approx(ref::ncc(h, in)).epsilon(1e-12));
    }
    const Eigen::VectorXd x = ref::random_vector(rng, n);
    CHECK(q1(h, x) == Approx(ref::q1(h, x)).epsilon(1e-12));
    CHECK(q1(h, 2.5 * x + Eigen::VectorXd::Constant(n, 1.0)) ==
          Approx(2.5 * ref::q1(h, x)).epsilon(1e-12));
  }
}

TEST_CASE("property: splitting cuts are submodular and symmetric") {
  std::mt19937_64 rng(13);
  for (const auto kind : {SplittingKind::EdvwCapped, SplittingKind::CardinalityCapped,
                          SplittingKind::AllOrNothing}) {
    for (int t = 0; t < 30; ++t) {
      const SubmodularHypergraph r = fixture::random_hypergraph(rng, 6);
      RawHypergraph raw;
      raw.num_vertices = r.num_vertices();
      for (const Hyperedge& e : r.base().edges()) {
        raw.edges.push_back({e.members(), e.gamma(), e.kappa()});
      }
      const SplittingSpec spec =
          kind == SplittingKind::EdvwCapped ? SplittingSpec::edvw_capped(0.3)
          : kind == SplittingKind::CardinalityCapped
              ? SplittingSpec::cardinality_capped(0.3)
              : SplittingSpec::all_or_nothing();
      const SubmodularHypergraph h = derive_weights(raw, spec);
      const int n = h.num_vertices();
      const SetFunction f = [&](std::span<const int> s) { return cut_weight(h, s); };
      CHECK(submodularity_violation(f, n) <= 1e-12);
      for (const auto& s : all_subsets(n)) {
        CHECK(cut_weight(h, s) == Approx(cut_weight(h, complement(n, s))));
      }
    }
  }
}
