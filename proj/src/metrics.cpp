#include "edvw/metrics.hpp"

#include <algorithm>
#include <set>

#include "edvw/hypergraph.hpp"

namespace edvw {

double clustering_error(int num_vertices, std::span<const int> side_a,
                        std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != num_vertices) {
    throw ContractViolation("clustering_error: one label per vertex expected");
  }
  std::set<int> classes;
  for (int c : labels) {
    if (c >= 0) classes.insert(c);
  }
  if (classes.size() > 2) {
    throw ContractViolation("clustering_error: labels must be binary");
  }
  if (classes.empty()) {
    throw ContractViolation("clustering_error: no labelled vertices");
  }
  const int first = *classes.begin();
  const std::vector<char> in_a = membership(num_vertices, side_a);
  int labelled = 0;
  int mismatched = 0;
  for (int v = 0; v < num_vertices; ++v) {
    if (labels[v] < 0) continue;
    ++labelled;
    if ((in_a[v] != 0) != (labels[v] == first)) ++mismatched;
  }
  return static_cast<double>(std::min(mismatched, labelled - mismatched)) /
         labelled;
}

}  // namespace edvw
