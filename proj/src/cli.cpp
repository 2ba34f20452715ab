#include "edvw/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "edvw/config.hpp"
#include "edvw/format.hpp"
#include "edvw/hypergraph_io.hpp"
#include "edvw/ingest.hpp"
#include "edvw/metrics.hpp"
#include "edvw/pipeline.hpp"
#include "edvw/verify.hpp"

namespace edvw {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << content;
  if (!file) throw std::runtime_error("failed writing " + path);
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_grid(text)) {
    if (v != std::floor(v) || v < 0) {
      throw ContractViolation("bad vertex index in '" + text + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Flags mirroring RunConfig. Values given on the command line override the
// config file, which overrides the defaults.
struct ConfigFlags {
  std::string config_path;
  std::string splitting;
  double beta = 0.0;
  double alpha = 0.0;
  std::string solver;
  double epsilon = 0.0;
  double inner_tol = 0.0;
  int inner_max_iter = 0;
  int max_outer = 0;
  std::string init;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::string alpha_grid;
  std::string beta_grid;
  bool no_refine = false;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App* app, bool grids) {
    app->add_option("--config", config_path, "JSON file with RunConfig fields")
        ->check(CLI::ExistingFile);
    options = {
        {"splitting", app->add_option("--splitting", splitting,
                                      "edvw, cardinality, all-or-nothing")},
        {"beta", app->add_option("--beta", beta, "splitting cap in (0, 0.5]")},
        {"solver", app->add_option("--solver", solver, "pdhg or fista")},
        {"epsilon", app->add_option("--epsilon", epsilon, "outer tolerance")},
        {"inner_tol", app->add_option("--inner-tol", inner_tol)},
        {"inner_max_iter", app->add_option("--inner-max-iter", inner_max_iter)},
        {"max_outer", app->add_option("--max-outer", max_outer)},
        {"init", app->add_option("--init", init,
                                 "rw, rw-indicator, random, indicator")},
        {"restarts", app->add_option("--restarts", restarts,
                                     "extra random starts")},
        {"seed", app->add_option("--seed", seed)},
        {"no_refine", app->add_flag("--no-refine", no_refine,
                                    "keep raw IPM iterates")},
    };
    if (grids) {
      options.emplace_back(
          "alpha_grid",
          app->add_option("--alpha", alpha_grid, "start:step:stop or list"));
      options.emplace_back(
          "beta_grid",
          app->add_option("--beta-grid", beta_grid, "start:step:stop or list"));
    } else {
      options.emplace_back(
          "alpha", app->add_option("--alpha", alpha, "EDVW exponent"));
    }
  }

  bool given(const std::string& name) const {
    for (const auto& [n, opt] : options) {
      if (n == name) return opt->count() > 0;
    }
    return false;
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config_path.empty()) c = parse_run_config(read_text(config_path));
    if (given("splitting")) c.splitting = parse_splitting(splitting);
    if (given("beta")) c.beta = beta;
    if (given("alpha")) c.alpha = alpha;
    if (given("solver")) c.solver = parse_solver(solver);
    if (given("epsilon")) c.epsilon = epsilon;
    if (given("inner_tol")) c.inner_tol = inner_tol;
    if (given("inner_max_iter")) c.inner_max_iter = inner_max_iter;
    if (given("max_outer")) c.max_outer = max_outer;
    if (given("init")) c.init = parse_init(init);
    if (given("restarts")) c.restarts = restarts;
    if (given("seed")) c.seed = seed;
    if (given("no_refine")) c.refine_by_threshold = !no_refine;
    if (given("alpha_grid")) c.alpha_grid = parse_grid(alpha_grid);
    if (given("beta_grid")) c.beta_grid = parse_grid(beta_grid);
    c.validate();
    return c;
  }
};

SubmodularHypergraph build(const HypergraphFile& file, const RunConfig& c) {
  return derive_weights(apply_alpha(file.raw, c.alpha), c.splitting_spec());
}

std::string report_row(const RunConfig& c, const std::string& solver,
                       double ncc, std::optional<double> error, double lambda,
                       int iters, std::optional<double> wall_ms) {
  std::ostringstream os;
  os << format_double(c.alpha) << ',' << format_double(c.beta) << ',' << solver
     << ',' << c.seed << ',' << format_double(ncc) << ','
     << (error ? format_double(*error) : std::string()) << ','
     << format_double(lambda) << ',' << iters << ','
     << (wall_ms ? format_double(std::round(*wall_ms * 1000.0) / 1000.0)
                 : std::string())
     << '\n';
  return os.str();
}

std::string eigenvector_csv(const Eigen::VectorXd& x, const Partition& p) {
  const auto in_a = membership(static_cast<int>(x.size()), p.side_a);
  std::ostringstream os;
  os << "vertex,value,side\n";
  for (Eigen::Index v = 0; v < x.size(); ++v) {
    os << v << ',' << format_double(x[v]) << ',' << (in_a[v] ? 1 : 0) << '\n';
  }
  return os.str();
}

std::span<const int> labels_or_empty(const std::vector<int>& labels,
                                     const HypergraphFile& file) {
  if (file.labels.empty()) return {};
  return labels;
}

int worker_count() {
  const char* env = std::getenv("EDVW_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 256) {
    throw ContractViolation("EDVW_WORKERS must be an integer in [1, 256]");
  }
  return static_cast<int>(v);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::vector<std::vector<std::string>> read_csv_cells(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  for (const std::string& line : read_lines(path)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

bool parse_number(const std::string& s, double& v) {
  const char* begin = s.c_str();
  char* end = nullptr;
  v = std::strtod(begin, &end);
  return end != begin && *end == '\0' && std::isfinite(v);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Spectral clustering of hypergraphs with edge-dependent vertex "
               "weights"};
  app.name("edvw");
  app.require_subcommand(1);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Cluster one hypergraph");
  std::string c_input, c_report, c_eigen, c_trace, c_init_set;
  bool c_timing = false;
  ConfigFlags c_flags;
  cluster->add_option("--input", c_input, "hypergraph file")
      ->required()
      ->check(CLI::ExistingFile);
  c_flags.add(cluster, false);
  cluster->add_option("--init-set", c_init_set,
                      "vertices of the indicator start, e.g. 0,1,2");
  cluster->add_option("--report", c_report, "report CSV (default stdout)");
  cluster->add_option("--eigenvector", c_eigen, "eigenvector CSV");
  cluster->add_option("--trace", c_trace, "lambda trace CSV");
  cluster->add_flag("--timing", c_timing, "fill the wall_ms column");

  // baseline
  auto* baseline =
      app.add_subcommand("baseline", "Random-walk baseline clustering");
  std::string b_input, b_report, b_eigen;
  bool b_timing = false;
  ConfigFlags b_flags;
  baseline->add_option("--input", b_input, "hypergraph file")
      ->required()
      ->check(CLI::ExistingFile);
  b_flags.add(baseline, false);
  baseline->add_option("--report", b_report, "report CSV (default stdout)");
  baseline->add_option("--eigenvector", b_eigen, "eigenvector CSV");
  baseline->add_flag("--timing", b_timing, "fill the wall_ms column");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Cluster over an (alpha, beta) grid");
  std::string s_input, s_report;
  bool s_timing = false;
  ConfigFlags s_flags;
  sweep->add_option("--input", s_input, "hypergraph file")
      ->required()
      ->check(CLI::ExistingFile);
  s_flags.add(sweep, true);
  sweep->add_option("--report", s_report, "report CSV (default stdout)");
  sweep->add_flag("--timing", s_timing, "fill the wall_ms column");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the oracle checks");
  std::string v_budget = "small";
  std::uint64_t v_seed = 0;
  verify->add_option("--budget", v_budget, "small or medium")
      ->check(CLI::IsMember({"small", "medium"}));
  verify->add_option("--seed", v_seed);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Build a hypergraph file");
  ingest->require_subcommand(1);
  auto* corpus = ingest->add_subcommand("corpus", "Documents, one per line");
  std::string i_docs, i_labels, i_stop, i_out;
  CorpusParams cp;
  corpus->add_option("--docs", i_docs, "one document per line")
      ->required()
      ->check(CLI::ExistingFile);
  corpus->add_option("--labels", i_labels, "one integer label per line")
      ->check(CLI::ExistingFile);
  corpus->add_option("--stopwords", i_stop, "one stopword per line")
      ->required()
      ->check(CLI::ExistingFile);
  corpus->add_option("--top-k", cp.top_k);
  corpus->add_option("--max-df", cp.max_df);
  corpus->add_option("--min-df", cp.min_df);
  corpus->add_option("--min-len", cp.min_len);
  corpus->add_option("--min-hits", cp.min_hits);
  corpus->add_option("--alpha", cp.alpha);
  corpus->add_flag("--smooth-idf", cp.smooth_idf);
  corpus->add_option("--out", i_out, "hypergraph file (default stdout)");

  auto* features = ingest->add_subcommand("features", "Numeric CSV table");
  std::string f_csv, f_out;
  int f_label_col = -1;
  FeatureParams fp;
  features->add_option("--csv", f_csv, "comma-separated numeric table")
      ->required()
      ->check(CLI::ExistingFile);
  features->add_option("--label-column", f_label_col,
                       "0-based column holding integer labels");
  features->add_option("--bins", fp.bins);
  features->add_option("--alpha", fp.alpha);
  features->add_option("--out", f_out, "hypergraph file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (cluster->parsed()) {
      RunConfig cfg = c_flags.resolve();
      const HypergraphFile file = read_hypergraph_file(c_input);
      const SubmodularHypergraph h = build(file, cfg);
      PipelineConfig pc = cfg.pipeline();
      if (!c_init_set.empty()) pc.init_set = parse_index_list(c_init_set);
      const std::vector<int> labels = label_vector(file);
      const ClusteringReport r =
          cluster_pipeline(h, pc, labels_or_empty(labels, file));
      emit(c_report,
           std::string(kReportHeader) + "\n" +
               report_row(cfg, solver_name(cfg.solver), r.partition.ncc,
                          r.error, r.lambda, r.outer_iterations,
                          c_timing ? std::optional<double>(r.wall_ms)
                                   : std::nullopt),
           out);
      if (!c_eigen.empty()) emit(c_eigen, eigenvector_csv(r.eigenvector, r.partition), out);
      if (!c_trace.empty()) {
        std::ostringstream os;
        os << "iteration,lambda\n";
        for (std::size_t i = 0; i < r.lambda_trace.size(); ++i) {
          os << i << ',' << format_double(r.lambda_trace[i]) << '\n';
        }
        emit(c_trace, os.str(), out);
      }
      if (r.degenerate) err << "note: inner solver reached a degenerate point\n";
      if (r.flat_cut) err << "note: every bipartition has the same cut\n";
      return 0;
    }
    if (baseline->parsed()) {
      const RunConfig cfg = b_flags.resolve();
      const HypergraphFile file = read_hypergraph_file(b_input);
      const SubmodularHypergraph h = build(file, cfg);
      const std::vector<int> labels = label_vector(file);
      const BaselineReport r =
          baseline_pipeline(h, labels_or_empty(labels, file));
      emit(b_report,
           std::string(kReportHeader) + "\n" +
               report_row(cfg, "rw", r.partition.ncc, r.error,
                          r.embedding.eigenvalue, r.embedding.iterations,
                          b_timing ? std::optional<double>(r.wall_ms)
                                   : std::nullopt),
           out);
      if (!b_eigen.empty()) {
        emit(b_eigen, eigenvector_csv(r.embedding.vector, r.partition), out);
      }
      if (r.embedding.ill_defined) {
        err << "note: eigengap below 1e-12, eigenvector is not unique\n";
      }
      return 0;
    }
    if (sweep->parsed()) {
      const RunConfig base = s_flags.resolve();
      const HypergraphFile file = read_hypergraph_file(s_input);
      const std::vector<int> labels = label_vector(file);
      const std::vector<double> alphas =
          base.alpha_grid.empty() ? std::vector<double>{base.alpha}
                                  : base.alpha_grid;
      const std::vector<double> betas = base.beta_grid.empty()
                                            ? std::vector<double>{base.beta}
                                            : base.beta_grid;
      std::vector<RunConfig> cells;
      for (double a : alphas) {
        for (double b : betas) {
          RunConfig c = base;
          c.alpha = a;
          c.beta = b;
          c.validate();
          cells.push_back(c);
        }
      }
      std::ofstream file_out;
      std::ostream* sink = &out;
      if (!s_report.empty() && s_report != "-") {
        file_out.open(s_report, std::ios::binary);
        if (!file_out) throw std::runtime_error("cannot write " + s_report);
        sink = &file_out;
      }
      *sink << kReportHeader << '\n';
      sink->flush();

      std::vector<std::optional<std::string>> rows(cells.size());
      std::vector<std::string> failures(cells.size());
      std::size_t flushed = 0;
      std::mutex mutex;
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          std::string row, failure;
          try {
            const SubmodularHypergraph h = build(file, cells[i]);
            const ClusteringReport r = cluster_pipeline(
                h, cells[i].pipeline(), labels_or_empty(labels, file));
            row = report_row(cells[i], solver_name(cells[i].solver),
                             r.partition.ncc, r.error, r.lambda,
                             r.outer_iterations,
                             s_timing ? std::optional<double>(r.wall_ms)
                                      : std::nullopt);
          } catch (const std::exception& e) {
            failure = e.what();
          }
          std::lock_guard<std::mutex> lock(mutex);
          rows[i] = row;
          failures[i] = failure;
          while (flushed < rows.size() && rows[flushed]) {
            if (!failures[flushed].empty()) {
              err << "error: alpha=" << format_double(cells[flushed].alpha)
                  << " beta=" << format_double(cells[flushed].beta) << ": "
                  << failures[flushed] << '\n';
            }
            *sink << *rows[flushed];
            sink->flush();
            ++flushed;
          }
        }
      };
      const int workers =
          std::min<int>(worker_count(), static_cast<int>(cells.size()));
      std::vector<std::thread> pool;
      for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      for (const auto& f : failures) {
        if (!f.empty()) return 1;
      }
      return 0;
    }
    if (verify->parsed()) {
      const auto rows = run_verification(v_budget, v_seed);
      write_verify_table(out, rows);
      for (const auto& r : rows) {
        if (!r.passed()) return 1;
      }
      return 0;
    }
    if (corpus->parsed()) {
      const std::vector<std::string> docs = read_lines(i_docs);
      std::unordered_set<std::string> stop;
      for (const std::string& line : read_lines(i_stop)) {
        for (auto& t : tokenize(line)) stop.insert(t);
      }
      std::vector<int> labels;
      if (!i_labels.empty()) {
        for (const std::string& line : read_lines(i_labels)) {
          if (line.empty()) continue;
          labels.push_back(std::stoi(line));
        }
      }
      const IngestResult r = corpus_to_hypergraph(docs, stop, cp, labels);
      for (const auto& d : r.diagnostics) err << "note: " << d << '\n';
      emit(i_out, serialize_hypergraph_file(r.file), out);
      return 0;
    }
    if (features->parsed()) {
      auto cells = read_csv_cells(f_csv);
      if (cells.empty()) throw ContractViolation("empty feature table");
      double probe = 0.0;
      bool header = false;
      for (const auto& c : cells.front()) {
        if (!parse_number(c, probe)) header = true;
      }
      if (header) cells.erase(cells.begin());
      std::vector<std::vector<double>> rows;
      std::vector<int> labels;
      for (std::size_t r = 0; r < cells.size(); ++r) {
        std::vector<double> row;
        for (std::size_t c = 0; c < cells[r].size(); ++c) {
          double v = 0.0;
          if (!parse_number(cells[r][c], v)) {
            throw ContractViolation("row " + std::to_string(r + 1) +
                                    ", column " + std::to_string(c) +
                                    ": not a number");
          }
          if (static_cast<int>(c) == f_label_col) {
            labels.push_back(static_cast<int>(v));
          } else {
            row.push_back(v);
          }
        }
        rows.push_back(std::move(row));
      }
      const IngestResult r = features_to_hypergraph(rows, fp, labels);
      for (const auto& d : r.diagnostics) err << "note: " << d << '\n';
      emit(f_out, serialize_hypergraph_file(r.file), out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace edvw
