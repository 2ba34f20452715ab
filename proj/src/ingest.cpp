#include "edvw/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "edvw/tolerances.hpp"

namespace edvw {

namespace {

struct CandidateEdge {
  std::string name;
  std::vector<int> rows;
  std::vector<double> gamma;
};

// Keeps the largest connected component (ties: smallest first row), drops
// hyperedges that would get zero derived kappa, and repeats until stable.
IngestResult finalize(int num_rows, std::vector<CandidateEdge> edges,
                      std::span<const int> labels,
                      std::vector<std::string> diagnostics) {
  const double min_gamma = 1.0 / tol::kGammaDenominator;
  for (;;) {
    std::vector<int> parent(num_rows);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::vector<char> covered(num_rows, 0);
    for (const CandidateEdge& e : edges) {
      for (int r : e.rows) {
        covered[r] = 1;
        const int a = find(r);
        const int b = find(e.rows.front());
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::map<int, int> sizes;
    for (int r = 0; r < num_rows; ++r) {
      if (covered[r]) ++sizes[find(r)];
    }
    if (sizes.empty()) {
      throw ContractViolation("ingest: no hyperedges survive filtering");
    }
    int root = sizes.begin()->first;
    for (const auto& [r, s] : sizes) {
      if (s > sizes[root]) root = r;
    }
    if (sizes.size() > 1) {
      diagnostics.push_back("kept the largest connected component (" +
                            std::to_string(sizes[root]) + " of " +
                            std::to_string(std::count(covered.begin(),
                                                      covered.end(), 1)) +
                            " covered rows)");
    }
    std::vector<int> new_index(num_rows, -1);
    std::vector<int> source;
    for (int r = 0; r < num_rows; ++r) {
      if (covered[r] && find(r) == root) {
        new_index[r] = static_cast<int>(source.size());
        source.push_back(r);
      }
    }
    const int n = static_cast<int>(source.size());
    std::vector<CandidateEdge> kept;
    bool dropped = false;
    for (CandidateEdge& e : edges) {
      if (new_index[e.rows.front()] < 0) continue;
      const bool spans_all = static_cast<int>(e.rows.size()) == n;
      const bool flat = std::all_of(e.gamma.begin(), e.gamma.end(),
                                    [&](double g) { return g == e.gamma[0]; });
      if (spans_all && flat) {
        diagnostics.push_back("dropped " + e.name +
                              ": equal weights on every vertex give kappa 0");
        dropped = true;
        continue;
      }
      kept.push_back(std::move(e));
    }
    edges = std::move(kept);
    if (dropped) continue;
    if (n < 2) throw ContractViolation("ingest: fewer than two vertices remain");

    IngestResult out;
    out.file.raw.num_vertices = n;
    out.source_rows = source;
    for (const CandidateEdge& e : edges) {
      std::vector<std::pair<int, double>> members;
      for (std::size_t i = 0; i < e.rows.size(); ++i) {
        members.emplace_back(new_index[e.rows[i]],
                             std::max(quantize_gamma(e.gamma[i]), min_gamma));
      }
      std::sort(members.begin(), members.end());
      RawHyperedge edge;
      for (const auto& [v, g] : members) {
        edge.members.push_back(v);
        edge.gamma.push_back(g);
      }
      out.file.raw.edges.push_back(std::move(edge));
      out.edge_names.push_back(e.name);
    }
    if (!labels.empty()) {
      for (int v = 0; v < n; ++v) {
        if (labels[source[v]] >= 0) out.file.labels[v] = labels[source[v]];
      }
    }
    out.diagnostics = std::move(diagnostics);
    return out;
  }
}

void check_labels(std::span<const int> labels, std::size_t rows) {
  if (!labels.empty() && labels.size() != rows) {
    throw ContractViolation("ingest: one label per input row expected");
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 128 && std::isalnum(u)) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

double tfidf_weight(int term_count, int doc_freq, int num_docs, bool smooth) {
  if (doc_freq < 1 || doc_freq > num_docs) {
    throw ContractViolation("tfidf_weight: need 1 <= df <= D");
  }
  const double idf =
      smooth ? std::log((1.0 + num_docs) / (1.0 + doc_freq)) + 1.0
             : std::log(static_cast<double>(num_docs) / doc_freq);
  return term_count * idf;
}

IngestResult corpus_to_hypergraph(
    const std::vector<std::string>& documents,
    const std::unordered_set<std::string>& stopwords,
    const CorpusParams& params, std::span<const int> labels) {
  check_labels(labels, documents.size());
  if (documents.empty()) throw ContractViolation("ingest: empty corpus");
  if (params.top_k < 1 || params.min_hits < 0 || params.min_len < 0 ||
      !(params.alpha >= 0.0)) {
    throw ContractViolation("ingest: bad corpus parameters");
  }
  std::vector<std::string> diagnostics;

  std::vector<int> docs;
  std::vector<std::map<std::string, int>> counts;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const auto tokens = tokenize(documents[d]);
    if (static_cast<int>(tokens.size()) < params.min_len) continue;
    std::map<std::string, int> c;
    for (const auto& t : tokens) {
      if (!stopwords.count(t)) ++c[t];
    }
    docs.push_back(static_cast<int>(d));
    counts.push_back(std::move(c));
  }
  const int num_docs = static_cast<int>(docs.size());
  diagnostics.push_back(std::to_string(documents.size() - docs.size()) +
                        " documents shorter than " +
                        std::to_string(params.min_len) + " tokens dropped");
  if (num_docs == 0) throw ContractViolation("ingest: every document is too short");

  std::map<std::string, std::pair<int, long long>> stats;  // df, total count
  for (const auto& c : counts) {
    for (const auto& [w, k] : c) {
      auto& s = stats[w];
      ++s.first;
      s.second += k;
    }
  }
  std::vector<std::pair<std::string, long long>> eligible;
  for (const auto& [w, s] : stats) {
    const double frac = static_cast<double>(s.first) / num_docs;
    if (frac <= params.max_df && frac >= params.min_df) {
      eligible.emplace_back(w, s.second);
    }
  }
  std::stable_sort(eligible.begin(), eligible.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (static_cast<int>(eligible.size()) > params.top_k) {
    eligible.resize(params.top_k);
  }

  std::vector<std::string> words;
  for (const auto& [w, total] : eligible) {
    if (stats[w].first == num_docs && !params.smooth_idf) {
      diagnostics.push_back("dropped word '" + w + "': zero idf");
      continue;
    }
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());

  std::vector<char> doc_alive(num_docs, 1);
  std::vector<char> word_alive(words.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (!word_alive[j]) continue;
      int df = 0;
      for (int d = 0; d < num_docs; ++d) {
        if (doc_alive[d] && counts[d].count(words[j])) ++df;
      }
      if (df < 2) {
        word_alive[j] = 0;
        changed = true;
      }
    }
    for (int d = 0; d < num_docs; ++d) {
      if (!doc_alive[d]) continue;
      int hits = 0;
      for (std::size_t j = 0; j < words.size(); ++j) {
        if (word_alive[j] && counts[d].count(words[j])) ++hits;
      }
      if (hits < params.min_hits) {
        doc_alive[d] = 0;
        changed = true;
      }
    }
  }

  std::vector<CandidateEdge> edges;
  for (std::size_t j = 0; j < words.size(); ++j) {
    if (!word_alive[j]) continue;
    CandidateEdge e;
    e.name = words[j];
    const int df = stats[words[j]].first;
    for (int d = 0; d < num_docs; ++d) {
      if (!doc_alive[d]) continue;
      auto it = counts[d].find(words[j]);
      if (it == counts[d].end()) continue;
      e.rows.push_back(docs[d]);
      e.gamma.push_back(std::pow(
          tfidf_weight(it->second, df, num_docs, params.smooth_idf),
          params.alpha));
    }
    edges.push_back(std::move(e));
  }
  return finalize(static_cast<int>(documents.size()), std::move(edges), labels,
                  std::move(diagnostics));
}

int bin_index(double v, double lo, double hi, int bins) {
  if (bins < 1) throw ContractViolation("bin_index: need at least one bin");
  if (!(hi > lo)) return 0;
  const double width = (hi - lo) / bins;
  const int k = static_cast<int>(std::ceil((v - lo) / width)) - 1;
  return std::clamp(k, 0, bins - 1);
}

std::vector<double> bin_gammas(std::span<const double> values, double alpha) {
  if (values.empty()) return {};
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median =
      m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  double max_dist = 0.0;
  for (double v : values) max_dist = std::max(max_dist, std::abs(v - median));
  std::vector<double> out;
  for (double v : values) {
    const double d = max_dist > 0.0 ? std::abs(v - median) / max_dist : 0.0;
    out.push_back(std::exp(-alpha * d));
  }
  return out;
}

IngestResult features_to_hypergraph(const std::vector<std::vector<double>>& rows,
                                    const FeatureParams& params,
                                    std::span<const int> labels) {
  check_labels(labels, rows.size());
  if (rows.empty() || rows.front().empty()) {
    throw ContractViolation("ingest: need at least one row and one column");
  }
  if (params.bins < 1 || !(params.alpha >= 0.0)) {
    throw ContractViolation("ingest: bad feature parameters");
  }
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw ContractViolation("ingest: ragged feature table");
    for (double v : r) {
      if (!std::isfinite(v)) throw ContractViolation("ingest: non-finite value");
    }
  }
  std::vector<std::string> diagnostics;
  std::vector<CandidateEdge> edges;
  const int n = static_cast<int>(rows.size());
  for (std::size_t c = 0; c < cols; ++c) {
    double lo = rows[0][c], hi = rows[0][c];
    for (const auto& r : rows) {
      lo = std::min(lo, r[c]);
      hi = std::max(hi, r[c]);
    }
    std::vector<std::vector<int>> members(params.bins);
    for (int i = 0; i < n; ++i) {
      members[bin_index(rows[i][c], lo, hi, params.bins)].push_back(i);
    }
    for (int b = 0; b < params.bins; ++b) {
      if (members[b].size() < 2) continue;
      std::vector<double> values;
      for (int i : members[b]) values.push_back(rows[i][c]);
      CandidateEdge e;
      e.name = "f" + std::to_string(c) + ":" + std::to_string(b);
      e.rows = members[b];
      e.gamma = bin_gammas(values, params.alpha);
      edges.push_back(std::move(e));
    }
  }
  return finalize(n, std::move(edges), labels, std::move(diagnostics));
}

}  // namespace edvw
