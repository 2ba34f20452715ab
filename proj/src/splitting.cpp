#include "edvw/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "edvw/tolerances.hpp"

namespace edvw {

namespace {

constexpr int kEnumerationLimit = 12;
// Largest subset-sum table (in bits) before the scaled weights are coarsened.
constexpr std::int64_t kBalancedTableBits = std::int64_t{1} << 27;

void check_beta(double beta) {
  if (!(beta > 0.0 && beta <= 0.5)) {
    throw ContractViolation("splitting beta must lie in (0, 0.5]");
  }
}

double enumerate_max_penalty(const Hyperedge& edge, const SplittingSpec& spec) {
  const int n = edge.size();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
    double g = 0.0;
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        g += edge.gamma()[i];
        ++c;
      }
    }
    best = std::max(best, penalty_from_sum(edge, spec, g, c));
  }
  return best;
}

// True when some prefix of the ascending gamma order has a sum inside
// [cap * total, (1 - cap) * total].
bool greedy_reaches_cap(std::span<const double> gamma, double cap) {
  std::vector<double> sorted(gamma.begin(), gamma.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  double prefix = 0.0;
  for (double g : sorted) {
    prefix += g;
    if (prefix >= cap * total) return prefix <= (1.0 - cap) * total;
  }
  return false;
}

}  // namespace

SplittingSpec SplittingSpec::all_or_nothing() { return SplittingSpec{}; }

SplittingSpec SplittingSpec::cardinality_capped(double beta) {
  check_beta(beta);
  SplittingSpec s;
  s.kind_ = SplittingKind::CardinalityCapped;
  s.beta_ = beta;
  return s;
}

SplittingSpec SplittingSpec::edvw_capped(double beta) {
  check_beta(beta);
  SplittingSpec s;
  s.kind_ = SplittingKind::EdvwCapped;
  s.beta_ = beta;
  return s;
}

SplittingSpec SplittingSpec::custom(std::vector<Breakpoint> table) {
  if (table.size() < 2 || table.front().fraction != 0.0 ||
      table.front().value != 0.0 || table.back().fraction != 0.5) {
    throw ContractViolation(
        "custom profile must start at (0, 0) and end at fraction 0.5");
  }
  double prev_slope = INFINITY;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const double dt = table[i].fraction - table[i - 1].fraction;
    if (!(dt > 0.0)) {
      throw ContractViolation("custom profile fractions must increase");
    }
    const double slope = (table[i].value - table[i - 1].value) / dt;
    if (slope < 0.0 || slope > prev_slope + 1e-12) {
      throw ContractViolation(
          "custom profile must be concave and non-decreasing on [0, 0.5]");
    }
    prev_slope = slope;
  }
  if (!(table.back().value > 0.0)) {
    throw ContractViolation("custom profile must not be identically zero");
  }
  SplittingSpec s;
  s.kind_ = SplittingKind::Custom;
  s.table_ = std::move(table);
  return s;
}

double SplittingSpec::profile(double fraction) const {
  double t = std::clamp(fraction, 0.0, 1.0);
  if (t > 0.5) t = 1.0 - t;
  switch (kind_) {
    case SplittingKind::AllOrNothing:
      return t > 0.0 ? 1.0 : 0.0;
    case SplittingKind::CardinalityCapped:
    case SplittingKind::EdvwCapped:
      return std::min(t, beta_);
    case SplittingKind::Custom:
      break;
  }
  auto it = std::upper_bound(
      table_.begin(), table_.end(), t,
      [](double value, const Breakpoint& b) { return value < b.fraction; });
  if (it == table_.end()) return table_.back().value;
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  const double w = (t - lo.fraction) / (hi.fraction - lo.fraction);
  return lo.value + w * (hi.value - lo.value);
}

double SplittingSpec::cap_fraction() const {
  switch (kind_) {
    case SplittingKind::AllOrNothing:
      return 0.0;
    case SplittingKind::CardinalityCapped:
    case SplittingKind::EdvwCapped:
      return beta_;
    case SplittingKind::Custom:
      break;
  }
  const double top = table_.back().value;
  for (const auto& b : table_) {
    if (b.value >= top) return b.fraction;
  }
  return 0.5;
}

std::string SplittingSpec::name() const {
  std::ostringstream os;
  switch (kind_) {
    case SplittingKind::AllOrNothing:
      return "all-or-nothing";
    case SplittingKind::CardinalityCapped:
      os << "cardinality(" << beta_ << ")";
      break;
    case SplittingKind::EdvwCapped:
      os << "edvw(" << beta_ << ")";
      break;
    case SplittingKind::Custom:
      os << "custom(" << table_.size() << " knots)";
      break;
  }
  return os.str();
}

double penalty_from_sum(const Hyperedge& edge, const SplittingSpec& spec,
                        double gamma_in, int count_in) {
  const int n = edge.size();
  if (count_in <= 0 || count_in >= n) return 0.0;
  const double kappa = edge.kappa();
  switch (spec.kind()) {
    case SplittingKind::AllOrNothing:
      return kappa;
    case SplittingKind::CardinalityCapped:
      return kappa * std::min({static_cast<double>(count_in),
                               static_cast<double>(n - count_in),
                               spec.beta() * n});
    case SplittingKind::EdvwCapped: {
      const double total = edge.gamma_total();
      const double v = std::min({gamma_in, total - gamma_in,
                                 spec.beta() * total});
      return kappa * std::max(v, 0.0);
    }
    case SplittingKind::Custom: {
      const double total = edge.gamma_total();
      return kappa * total * spec.profile(gamma_in / total);
    }
  }
  return 0.0;
}

double splitting_penalty(const Hyperedge& edge, const SplittingSpec& spec,
                         std::span<const int> subset) {
  double g = 0.0;
  int c = 0;
  std::vector<int> seen;
  for (int v : subset) {
    const int pos = edge.position_of(v);
    if (pos < 0) {
      throw ContractViolation("vertex " + std::to_string(v) +
                              " is not a member of the hyperedge");
    }
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    g += edge.gamma()[pos];
    ++c;
  }
  return penalty_from_sum(edge, spec, g, c);
}

double best_balanced_sum(std::span<const double> gamma) {
  const int n = static_cast<int>(gamma.size());
  if (n <= kEnumerationLimit) {
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      double s = 0.0;
      double rest = 0.0;
      for (int i = 0; i < n; ++i) {
        (mask & (std::uint32_t{1} << i) ? s : rest) += gamma[i];
      }
      best = std::max(best, std::min(s, rest));
    }
    return best;
  }

  // Subset-sum over gamma scaled to integers (exact for ingested gamma, which
  // are multiples of 2^-20), reduced by the common gcd.
  std::vector<std::int64_t> q(n);
  for (int i = 0; i < n; ++i) {
    q[i] = std::max<std::int64_t>(
        1, std::llround(gamma[i] * tol::kGammaDenominator));
  }
  std::int64_t g = 0;
  for (auto v : q) g = std::gcd(g, v);
  double unit = static_cast<double>(g) / tol::kGammaDenominator;
  std::int64_t total = 0;
  for (auto& v : q) {
    v /= g;
    total += v;
  }
  if (total / 2 + 1 > kBalancedTableBits) {
    // Coarsen so the table fits; the result is then approximate.
    const std::int64_t factor = (total / 2) / kBalancedTableBits + 1;
    total = 0;
    for (auto& v : q) {
      v = std::max<std::int64_t>(1, (v + factor / 2) / factor);
      total += v;
    }
    unit *= static_cast<double>(factor);
  }
  const std::int64_t half = total / 2;
  const std::size_t words = static_cast<std::size_t>(half / 64 + 1);
  std::vector<std::uint64_t> reach(words, 0);
  reach[0] = 1;
  for (auto w : q) {
    if (w > half) continue;
    const std::size_t word_shift = static_cast<std::size_t>(w / 64);
    const int bit_shift = static_cast<int>(w % 64);
    for (std::size_t i = words; i-- > word_shift;) {
      std::uint64_t shifted = reach[i - word_shift] << bit_shift;
      if (bit_shift != 0 && i - word_shift > 0) {
        shifted |= reach[i - word_shift - 1] >> (64 - bit_shift);
      }
      reach[i] |= shifted;
    }
  }
  for (std::int64_t s = half; s >= 0; --s) {
    if (reach[static_cast<std::size_t>(s / 64)] >> (s % 64) & 1) {
      return static_cast<double>(s) * unit;
    }
  }
  return 0.0;
}

double theta_max_penalty(const Hyperedge& edge, const SplittingSpec& spec) {
  const int n = edge.size();
  switch (spec.kind()) {
    case SplittingKind::AllOrNothing:
      return edge.kappa();
    case SplittingKind::CardinalityCapped:
      return edge.kappa() *
             std::min(static_cast<double>(n / 2), spec.beta() * n);
    case SplittingKind::EdvwCapped:
    case SplittingKind::Custom:
      break;
  }
  if (n <= kEnumerationLimit) return enumerate_max_penalty(edge, spec);
  const double total = edge.gamma_total();
  const double cap = spec.cap_fraction();
  if (cap < 0.5 && greedy_reaches_cap(edge.gamma(), cap)) {
    return edge.kappa() * total * spec.profile(cap);
  }
  return penalty_from_sum(edge, spec, best_balanced_sum(edge.gamma()), 1);
}

SubmodularHypergraph::SubmodularHypergraph(EdvwHypergraph base,
                                           SplittingSpec spec)
    : base_(std::move(base)), spec_(std::move(spec)) {
  theta_.resize(base_.num_edges());
  for (int e = 0; e < base_.num_edges(); ++e) {
    theta_[e] = theta_max_penalty(base_.edge(e), spec_);
    if (!(theta_[e] > 0.0)) {
      throw ContractViolation("splitting function of hyperedge " +
                              std::to_string(e) + " is identically zero");
    }
  }
}

double cut_weight_mask(const SubmodularHypergraph& h,
                       const std::vector<char>& in_set) {
  double cut = 0.0;
  for (int e = 0; e < h.num_edges(); ++e) {
    const Hyperedge& edge = h.base().edge(e);
    double g = 0.0;
    int c = 0;
    for (int i = 0; i < edge.size(); ++i) {
      if (in_set[edge.members()[i]]) {
        g += edge.gamma()[i];
        ++c;
      }
    }
    cut += penalty_from_sum(edge, h.splitting(), g, c);
  }
  return cut;
}

double cut_weight(const SubmodularHypergraph& h, std::span<const int> subset) {
  return cut_weight_mask(h, membership(h.num_vertices(), subset));
}

double ncc(const SubmodularHypergraph& h, std::span<const int> subset) {
  auto mask = membership(h.num_vertices(), subset);
  const double vol_in = [&] {
    double v = 0.0;
    for (int i = 0; i < h.num_vertices(); ++i) {
      if (mask[i]) v += h.base().vertex_weights()[i];
    }
    return v;
  }();
  const int count = static_cast<int>(std::count(mask.begin(), mask.end(), 1));
  if (count == 0 || count == h.num_vertices()) {
    throw ContractViolation("NCC needs a non-empty proper subset");
  }
  const double vol_out = h.base().total_volume() - vol_in;
  return cut_weight_mask(h, mask) / std::min(vol_in, vol_out);
}

double edge_lovasz(const SubmodularHypergraph& h, int e,
                   Eigen::Ref<const Eigen::VectorXd> x) {
  const Hyperedge& edge = h.base().edge(e);
  const int n = edge.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double xa = x[edge.members()[a]];
    const double xb = x[edge.members()[b]];
    if (xa != xb) return xa > xb;
    return edge.members()[a] < edge.members()[b];
  });
  double value = 0.0;
  double g = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    g += edge.gamma()[order[j]];
    const double gap =
        x[edge.members()[order[j]]] - x[edge.members()[order[j + 1]]];
    if (gap != 0.0) {
      value += penalty_from_sum(edge, h.splitting(), g, j + 1) * gap;
    }
  }
  return value;
}

double q_p(const SubmodularHypergraph& h, Eigen::Ref<const Eigen::VectorXd> x,
           double p) {
  if (!(p >= 1.0)) throw ContractViolation("Q_p requires p >= 1");
  if (x.size() != h.num_vertices()) {
    throw ContractViolation("Q_p: vector length does not match vertex count");
  }
  double total = 0.0;
  for (int e = 0; e < h.num_edges(); ++e) {
    const double raw = edge_lovasz(h, e, x);
    if (p == 1.0) {
      total += raw;
    } else {
      const double theta = h.theta()[e];
      total += theta * std::pow(raw / theta, p);
    }
  }
  return total;
}

double edvw_std_kappa(int num_vertices, std::span<const double> gamma) {
  const double n = static_cast<double>(num_vertices);
  const double mean = std::accumulate(gamma.begin(), gamma.end(), 0.0) / n;
  double ss = (n - static_cast<double>(gamma.size())) * mean * mean;
  for (double g : gamma) ss += (g - mean) * (g - mean);
  return std::sqrt(ss / n);
}

SubmodularHypergraph derive_weights(const RawHypergraph& raw,
                                    const SplittingSpec& spec) {
  std::vector<Hyperedge> edges;
  edges.reserve(raw.edges.size());
  for (std::size_t e = 0; e < raw.edges.size(); ++e) {
    const RawHyperedge& r = raw.edges[e];
    double kappa = 0.0;
    if (r.kappa) {
      kappa = *r.kappa;
    } else {
      kappa = edvw_std_kappa(raw.num_vertices, r.gamma);
      if (!(kappa > 0.0)) {
        throw ContractViolation(
            "hyperedge " + std::to_string(e) +
            ": derived kappa is zero (EDVW constant across all vertices)");
      }
    }
    try {
      edges.emplace_back(r.members, r.gamma, kappa);
    } catch (const ContractViolation& err) {
      throw ContractViolation("hyperedge " + std::to_string(e) + ": " +
                              err.what());
    }
  }

  Eigen::VectorXd mu;
  if (raw.vertex_weights) {
    mu = *raw.vertex_weights;
  } else {
    mu = Eigen::VectorXd::Zero(raw.num_vertices);
    for (const auto& edge : edges) {
      const double theta = theta_max_penalty(edge, spec);
      for (int v : edge.members()) {
        if (v >= 0 && v < raw.num_vertices) mu[v] += theta;
      }
    }
    for (int v = 0; v < raw.num_vertices; ++v) {
      if (!(mu[v] > 0.0)) {
        throw ContractViolation("vertex " + std::to_string(v) +
                                " lies in no hyperedge (disconnected)");
      }
    }
  }
  return SubmodularHypergraph(
      EdvwHypergraph(raw.num_vertices, std::move(edges), std::move(mu)), spec);
}

}  // namespace edvw
