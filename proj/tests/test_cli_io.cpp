#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "edvw/cli.hpp"
#include "edvw/config.hpp"
#include "edvw/hypergraph_io.hpp"
#include "edvw/ingest.hpp"
#include "edvw/metrics.hpp"

using namespace edvw;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const std::string kToy = std::string(EDVW_TEST_DATA) + "/toy.hg";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

int cli(std::vector<std::string> args, std::string* out = nullptr,
        std::string* err = nullptr) {
  args.insert(args.begin(), "edvw");
  std::ostringstream o, e;
  const int status = run_cli(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return status;
}

HypergraphFile random_file(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_n(2, 9);
  std::uniform_real_distribution<double> gamma(0.05, 5.0);
  std::bernoulli_distribution coin(0.5);
  HypergraphFile f;
  f.raw.num_vertices = pick_n(rng);
  const int n = f.raw.num_vertices;
  std::uniform_int_distribution<int> edges(1, 5);
  for (int k = edges(rng); k > 0; --k) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<int> size(2, n);
    all.resize(size(rng));
    RawHyperedge e;
    e.members = all;
    for (std::size_t i = 0; i < all.size(); ++i) {
      e.gamma.push_back(quantize_gamma(gamma(rng)));
    }
    if (coin(rng)) e.kappa = gamma(rng);
    f.raw.edges.push_back(e);
  }
  if (coin(rng)) {
    Eigen::VectorXd mu(n);
    for (int i = 0; i < n; ++i) mu[i] = gamma(rng);
    f.raw.vertex_weights = mu;
  }
  for (int v = 0; v < n; ++v) {
    if (coin(rng)) f.labels[v] = coin(rng) ? 1 : 0;
  }
  return f;
}

}  // namespace

TEST_CASE("parse a minimal file") {
  const HypergraphFile f = parse_hypergraph_file("H 3 1\ne 1 0:1 1:1 2:2\n");
  CHECK(f.raw.num_vertices == 3);
  REQUIRE(f.raw.edges.size() == 1);
  CHECK(f.raw.edges[0].gamma == std::vector<double>{1, 1, 2});
  CHECK(*f.raw.edges[0].kappa == 1.0);
}

TEST_CASE("derived kappa on load") {
  const HypergraphFile f =
      parse_hypergraph_file("# comment\nH 4 2\ne - 0:1 1:1\ne 1 0:1 1:1 2:1 3:1\n");
  CHECK_FALSE(f.raw.edges[0].kappa.has_value());
  const SubmodularHypergraph h =
      derive_weights(f.raw, SplittingSpec::edvw_capped(0.2));
  CHECK(h.base().edge(0).kappa() == Approx(0.5));
}

TEST_CASE("parse errors carry the line") {
  try {
    parse_hypergraph_file("H 3 1\ne 1 0:1 0:2\n");
    FAIL("duplicate vertex accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_hypergraph_file("H 3 2\ne 1 0:1 1:1\n"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph_file("H 3 1\ne 1 0:1 5:1\n"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph_file("H 3 1\ne 1 0:x 1:1\n"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph_file("e 1 0:1 1:1\n"), ParseError);
}

TEST_CASE("property: serialize then parse round-trips") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const HypergraphFile f = random_file(rng);
    const HypergraphFile back = parse_hypergraph_file(serialize_hypergraph_file(f));
    CHECK(back.raw == f.raw);
    CHECK(back.labels == f.labels);
    CHECK(serialize_hypergraph_file(back) == serialize_hypergraph_file(f));
  }
}

TEST_CASE("parsing quantizes gamma once") {
  HypergraphFile f;
  f.raw.num_vertices = 2;
  f.raw.edges.push_back({{0, 1}, {0.123456789, 1.5}, 1.0});
  const HypergraphFile once = parse_hypergraph_file(serialize_hypergraph_file(f));
  CHECK(once.raw.edges[0].gamma[0] == Approx(0.123456789).epsilon(1e-5));
  const HypergraphFile twice = parse_hypergraph_file(serialize_hypergraph_file(once));
  CHECK(twice.raw == once.raw);
}

TEST_CASE("toy fixture round-trips through files") {
  const HypergraphFile f = read_hypergraph_file(kToy);
  TempDir dir("edvw_io_roundtrip");
  write_hypergraph_file(dir.file("copy.hg"), f);
  const HypergraphFile back = read_hypergraph_file(dir.file("copy.hg"));
  CHECK(back.raw == f.raw);
  CHECK(label_vector(back) == label_vector(f));
  CHECK_THROWS(read_hypergraph_file(dir.file("missing.hg")));
}

TEST_CASE("alpha exponent") {
  RawHypergraph raw;
  raw.num_vertices = 3;
  raw.edges.push_back({{0, 1, 2}, {1, 2, 4}, std::nullopt});
  const RawHypergraph flat = apply_alpha(raw, 0.0);
  CHECK(flat.edges[0].gamma == std::vector<double>{1, 1, 1});
  const RawHypergraph squared = apply_alpha(raw, 2.0);
  CHECK(squared.edges[0].gamma == std::vector<double>{1, 4, 16});
}

TEST_CASE("tf-idf weight") {
  CHECK(tfidf_weight(2, 1, 2, false) == Approx(2.0 * std::log(2.0)));
  CHECK(tfidf_weight(1, 2, 2, false) == 0.0);
}

TEST_CASE("corpus ingestion filters and weights") {
  const std::vector<std::string> docs{
      "alpha beta alpha common", "alpha beta gamma common",
      "delta gamma delta common", "delta gamma omega common the"};
  CorpusParams p;
  p.min_len = 0;
  p.min_hits = 1;
  p.max_df = 0.75;
  p.min_df = 0.0;
  p.alpha = 1.0;
  const IngestResult r = corpus_to_hypergraph(docs, {"the"}, p);
  CHECK(std::find(r.edge_names.begin(), r.edge_names.end(), "common") ==
        r.edge_names.end());
  CHECK(std::find(r.edge_names.begin(), r.edge_names.end(), "omega") ==
        r.edge_names.end());
  CHECK(std::find(r.edge_names.begin(), r.edge_names.end(), "alpha") !=
        r.edge_names.end());
  const auto it = std::find(r.edge_names.begin(), r.edge_names.end(), "alpha");
  const RawHyperedge& alpha = r.file.raw.edges[it - r.edge_names.begin()];
  CHECK(*std::max_element(alpha.gamma.begin(), alpha.gamma.end()) ==
        Approx(quantize_gamma(2.0 * std::log(2.0))));

  p.alpha = 0.0;
  const IngestResult flat = corpus_to_hypergraph(docs, {"the"}, p);
  for (const RawHyperedge& e : flat.file.raw.edges) {
    for (double g : e.gamma) CHECK(g == 1.0);
  }
}

TEST_CASE("feature binning") {
  const std::vector<double> g = bin_gammas(std::vector<double>{1, 2, 4}, 1.0);
  CHECK(g[0] == Approx(std::exp(-0.5)).epsilon(1e-4));
  CHECK(g[1] == Approx(1.0));
  CHECK(g[2] == Approx(std::exp(-1.0)).epsilon(1e-4));
  for (double x : bin_gammas(std::vector<double>{1, 2, 4}, 0.0)) CHECK(x == 1.0);
  CHECK(bin_index(0.0, 0.0, 10.0, 5) == 0);
  CHECK(bin_index(2.0, 0.0, 10.0, 5) == 0);
  CHECK(bin_index(2.5, 0.0, 10.0, 5) == 1);
  CHECK(bin_index(10.0, 0.0, 10.0, 5) == 4);
}

TEST_CASE("feature table ingestion") {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 12; ++i) rows.push_back({double(i), double(i % 3)});
  FeatureParams p;
  p.bins = 3;
  const IngestResult r = features_to_hypergraph(rows, p);
  CHECK(r.file.raw.num_vertices == 12);
  CHECK(r.file.raw.edges.size() == 6);
  for (const RawHyperedge& e : r.file.raw.edges) {
    for (double g : e.gamma) CHECK((g > 0.0 && g <= 1.0));
  }
}

TEST_CASE("clustering error") {
  const std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  CHECK(clustering_error(10, std::vector<int>{0, 1, 2, 3, 4}, labels) == 0.0);
  CHECK(clustering_error(10, std::vector<int>{5, 6, 7, 8, 9}, labels) == 0.0);
  CHECK(clustering_error(10, std::vector<int>{0, 1, 2, 3, 4, 5}, labels) ==
        Approx(0.1));
  CHECK_THROWS(clustering_error(3, std::vector<int>{0}, std::vector<int>{0, 1, 2}));
}

TEST_CASE("run configuration") {
  CHECK(parse_grid("0:0.4:2.4").size() == 7);
  CHECK(parse_grid("0.1,0.2") == std::vector<double>{0.1, 0.2});
  CHECK(parse_grid("0.3") == std::vector<double>{0.3});
  const RunConfig c = parse_run_config(R"({"beta": 0.3, "solver": "fista", "restarts": 2})");
  CHECK(c.beta == 0.3);
  CHECK(c.solver == InnerSolverKind::Fista);
  CHECK(c.restarts == 2);
  CHECK(parse_run_config(run_config_json(c)).restarts == 2);
  CHECK_THROWS(parse_run_config(R"({"bogus": 1})"));
  RunConfig bad;
  bad.beta = 0.7;
  CHECK_THROWS(bad.validate());
  bad.beta = 0.2;
  bad.alpha = -1.0;
  CHECK_THROWS(bad.validate());
  CHECK(parse_splitting(splitting_name(SplittingKind::CardinalityCapped)) ==
        SplittingKind::CardinalityCapped);
  CHECK(parse_init(init_name(InitMode::RandomWalkIndicator)) ==
        InitMode::RandomWalkIndicator);
}

TEST_CASE("cli cluster is deterministic") {
  TempDir dir("edvw_cli_cluster");
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const std::string rep = dir.file("r" + std::to_string(run) + ".csv");
    const std::string eig = dir.file("e" + std::to_string(run) + ".csv");
    REQUIRE(cli({"cluster", "--input", kToy, "--beta", "0.2", "--solver", "pdhg",
                 "--seed", "1", "--report", rep, "--eigenvector", eig}) == 0);
    outputs.push_back(slurp(rep) + slurp(eig));
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0].rfind(std::string(kReportHeader) + "\n", 0) == 0);
  CHECK(outputs[0].find("vertex,value,side") != std::string::npos);
}

TEST_CASE("cli sweep emits one row per grid point") {
  std::string out;
  REQUIRE(cli({"sweep", "--input", kToy, "--alpha", "0:0.4:2.4", "--beta", "0.2"},
              &out) == 0);
  CHECK(count_lines(out) == 8);
}

TEST_CASE("cli baseline and verify") {
  std::string out;
  REQUIRE(cli({"baseline", "--input", kToy}, &out) == 0);
  CHECK(count_lines(out) == 2);
  REQUIRE(cli({"verify", "--budget", "small"}, &out) == 0);
  for (const char* check : {"gadget-cut", "gadget-lovasz", "dual-lipschitz",
                            "random-walk-cut", "sfm-prox"}) {
    CHECK(out.find(check) != std::string::npos);
  }
  CHECK(out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli ingest features") {
  TempDir dir("edvw_cli_ingest");
  {
    std::ofstream csv(dir.file("t.csv"));
    csv << "a,b,label\n";
    for (int i = 0; i < 10; ++i) csv << i << ',' << (i * i) % 7 << ',' << (i < 5) << '\n';
  }
  REQUIRE(cli({"ingest", "features", "--csv", dir.file("t.csv"), "--label-column",
               "2", "--bins", "3", "--out", dir.file("t.hg")}) == 0);
  const HypergraphFile f = read_hypergraph_file(dir.file("t.hg"));
  CHECK(f.raw.num_vertices == 10);
  CHECK(f.labels.size() == 10);
}

TEST_CASE("cli failures exit nonzero") {
  std::string err;
  CHECK(cli({"cluster", "--input", "/nonexistent.hg"}, nullptr, &err) != 0);
  CHECK_FALSE(err.empty());
  CHECK(cli({"cluster", "--input", kToy, "--beta", "0.9"}) != 0);
  CHECK(cli({"frobnicate"}) != 0);
}
