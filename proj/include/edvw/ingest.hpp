#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "edvw/hypergraph_io.hpp"

namespace edvw {

struct IngestResult {
  HypergraphFile file;
  /// Input row (document or table row) of each output vertex.
  std::vector<int> source_rows;
  /// Word or "feature:bin" of each output hyperedge.
  std::vector<std::string> edge_names;
  std::vector<std::string> diagnostics;
};

/// Lowercased maximal runs of ASCII letters and digits.
std::vector<std::string> tokenize(std::string_view text);

/// tf * idf with idf = ln(D / df), or ln((1 + D) / (1 + df)) + 1 when smoothed.
double tfidf_weight(int term_count, int doc_freq, int num_docs, bool smooth);

struct CorpusParams {
  int top_k = 100;
  double max_df = 0.10;
  double min_df = 0.002;
  int min_len = 20;
  int min_hits = 5;
  double alpha = 1.0;
  bool smooth_idf = false;
};

/// Documents become vertices and selected words hyperedges with
/// gamma = tfidf^alpha. Documents shorter than min_len tokens are dropped;
/// stopwords and words outside [min_df, max_df] document frequency are
/// removed; the top_k most frequent words remain. Words in fewer than two
/// documents and documents with fewer than min_hits selected words are then
/// dropped repeatedly, and the largest connected component is kept.
/// `labels` (optional) holds one class per input document.
IngestResult corpus_to_hypergraph(
    const std::vector<std::string>& documents,
    const std::unordered_set<std::string>& stopwords,
    const CorpusParams& params, std::span<const int> labels = {});

/// Bin of v among `bins` equal-width bins over [lo, hi]: bins are (a, b]
/// except the first, which also holds lo.
int bin_index(double v, double lo, double hi, int bins);

/// gamma = exp(-alpha * d) with d = |value - median| scaled by the largest
/// such distance in the bin (all zero when that distance is zero).
std::vector<double> bin_gammas(std::span<const double> values, double alpha);

struct FeatureParams {
  int bins = 20;
  double alpha = 1.0;
};

/// Rows become vertices; every bin with at least two rows of every column
/// becomes a hyperedge. Bins with no spread in gamma over the whole vertex
/// set (constant columns) are dropped with a diagnostic.
IngestResult features_to_hypergraph(const std::vector<std::vector<double>>& rows,
                                    const FeatureParams& params,
                                    std::span<const int> labels = {});

}  // namespace edvw
