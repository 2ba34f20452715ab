#include "edvw/lovasz.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "edvw/hypergraph.hpp"

namespace edvw {

double lovasz_extension(const SetFunction& f,
                        Eigen::Ref<const Eigen::VectorXd> x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return 0.0;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] > x[b]; });
  std::vector<int> prefix;
  prefix.reserve(n);
  double value = 0.0;
  for (int j = 0; j < n; ++j) {
    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), order[j]),
                  order[j]);
    const double next = j + 1 < n ? x[order[j + 1]] : 0.0;
    const double weight = x[order[j]] - next;
    if (weight != 0.0) value += f(prefix) * weight;
  }
  return value;
}

std::vector<std::vector<int>> all_subsets(int n) {
  if (n < 0 || n > 20) throw ContractViolation("all_subsets: n out of range");
  std::vector<std::vector<int>> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

double submodularity_violation(const SetFunction& f, int n) {
  const std::uint32_t count = std::uint32_t{1} << n;
  const auto subsets = all_subsets(n);
  std::vector<double> value(count);
  for (std::uint32_t m = 0; m < count; ++m) value[m] = f(subsets[m]);
  double worst = 0.0;
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = a + 1; b < count; ++b) {
      const double gap = value[a | b] + value[a & b] - value[a] - value[b];
      worst = std::max(worst, gap);
    }
  }
  return worst;
}

}  // namespace edvw
