#include "dmac/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmac/rng.hpp"

namespace dmac {

std::vector<double> UncertainNetwork::true_a_all() const {
  std::vector<double> a(static_cast<std::size_t>(node_count()));
  for (int i = 0; i < node_count(); ++i) a[static_cast<std::size_t>(i)] = true_a(i);
  return a;
}

double UncertainNetwork::a_bar() const {
  double v = 0.0;
  for (const CandidateSet& c : candidates) v = std::max(v, c.max());
  return v;
}

double UncertainNetwork::a_lower() const {
  double v = 1.0;
  for (const CandidateSet& c : candidates) v = std::min(v, c.min());
  return v;
}

std::pair<double, double> admissible_interval(double b, int degree) {
  if (b <= 0.0) throw std::invalid_argument("admissible_interval: b must be positive");
  if (degree < 1) throw std::invalid_argument("admissible_interval: degree must be >= 1");
  const double disc = 0.25 - 2.0 * b * b * static_cast<double>(degree);
  if (disc <= 0.0)
    throw std::invalid_argument(
        "admissible_interval: b too large for degree (requires b < sqrt(1/(8d)))");
  const double r = std::sqrt(disc);
  return {0.5 - r, 0.5 + r};
}

bool candidate_admissible(double a, double b, int degree) {
  return a * a + 2.0 * b * b * static_cast<double>(degree) < a;
}

std::vector<Violation> validate_network(const UncertainNetwork& net) {
  std::vector<Violation> out;
  const int n = net.node_count();
  const double b_limit = std::sqrt(1.0 / (8.0 * static_cast<double>(net.graph.max_degree())));
  if (!(net.b > 0.0) || !(net.b < b_limit)) {
    out.push_back({-1, net.b,
                   "input gain b violates b < sqrt(1/(8*d_max)) with d_max = " +
                       std::to_string(net.graph.max_degree())});
  }
  if (static_cast<int>(net.candidates.size()) != n)
    throw std::invalid_argument("validate_network: candidate list size mismatch");
  if (static_cast<int>(net.true_index.size()) != n)
    throw std::invalid_argument("validate_network: true_index size mismatch");

  for (int i = 0; i < n; ++i) {
    const CandidateSet& c = net.candidates[static_cast<std::size_t>(i)];
    if (c.values.empty()) {
      out.push_back({i, 0.0, "empty candidate set"});
      continue;
    }
    if (!std::is_sorted(c.values.begin(), c.values.end()) ||
        std::adjacent_find(c.values.begin(), c.values.end()) != c.values.end())
      out.push_back({i, 0.0, "candidate values not distinct ascending"});
    const int ti = net.true_index[static_cast<std::size_t>(i)];
    if (ti < 0 || ti >= c.size())
      out.push_back({i, static_cast<double>(ti), "true model index out of range"});
    for (double a : c.values) {
      if (!(a > 0.0) || !(a < 1.0))
        out.push_back({i, a, "candidate outside (0,1)"});
      else if (!candidate_admissible(a, net.b, net.graph.degree(i)))
        out.push_back({i, a,
                       "candidate fails a^2 + 2 b^2 d < a for degree " +
                           std::to_string(net.graph.degree(i))});
    }
  }
  return out;
}

CandidateSet sample_candidates(double b, int degree, int m, std::uint64_t seed,
                               double separation) {
  if (m < 1) throw std::invalid_argument("sample_candidates: need m >= 1");
  if (separation < 0.0) throw std::invalid_argument("sample_candidates: separation < 0");
  const auto [lo, hi] = admissible_interval(b, degree);
  const double width = hi - lo;
  if (static_cast<double>(m - 1) * separation >= width)
    throw std::invalid_argument("sample_candidates: interval too narrow for separation");

  Rng rng(seed);
  constexpr int kMaxRounds = 10000;
  std::vector<double> vals(static_cast<std::size_t>(m));
  for (int round = 0; round < kMaxRounds; ++round) {
    for (double& v : vals) v = lo + width * rng.next_unit();
    std::sort(vals.begin(), vals.end());
    bool ok = true;
    for (int k = 0; k + 1 < m; ++k)
      if (vals[static_cast<std::size_t>(k) + 1] - vals[static_cast<std::size_t>(k)] < separation)
        ok = false;
    // endpoints are open; a draw exactly on lo is measure zero but cheap to re-roll
    if (ok && vals.front() > lo && vals.back() < hi) return CandidateSet{std::move(vals)};
  }
  throw std::runtime_error("sample_candidates: separation not met after bounded retries");
}

Eigen::VectorXd step_network_compact(const UncertainNetwork& net, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& u_edges,
                                     const Eigen::VectorXd& w) {
  const int n = net.node_count();
  const int e = net.graph.edge_count();
  if (x.size() != n || w.size() != n || u_edges.size() != e)
    throw std::invalid_argument("step_network_compact: dimension mismatch");
  Eigen::VectorXd next(n);
  for (int i = 0; i < n; ++i) next[i] = net.true_a(i) * x[i];
  for (int k = 0; k < e; ++k) {
    const Edge& ed = net.graph.edge(k);
    next[ed.i] += net.b * u_edges[k];
    next[ed.j] -= net.b * u_edges[k];
  }
  next += w;
  return next;
}

}  // namespace dmac
