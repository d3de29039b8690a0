#include "rbamg/oracle.hpp"

#include <functional>

namespace rbamg {

namespace {

void check_budget(Index n, Index k) {
  if (n > kOracleMaxNodes || k > kOracleMaxDepth)
    throw PreconditionError("path enumeration budget exceeded (n=" +
                            std::to_string(n) + ", k=" + std::to_string(k) +
                            "; limits n<=" + std::to_string(kOracleMaxNodes) +
                            ", k<=" + std::to_string(kOracleMaxDepth) + ")");
}

}  // namespace

PropagationGraph::PropagationGraph(const RelaxationSetup& setup,
                                   const TransferBasis& basis,
                                   const CFSplit& split)
    : split_(split), adjacency_(split.size()), local_(split.size()) {
  const Index n = split.size();
  if (setup.size() != n || basis.size() != n ||
      basis.n_coarse() != split.n_coarse())
    throw DimensionError("PropagationGraph: split, basis and setup disagree");
  check_budget(n, 0);
  for (Index c = 0; c < split.n_coarse(); ++c) local_[split.coarse()[c]] = c;
  for (Index f = 0; f < split.n_fine(); ++f) local_[split.fine()[f]] = f;

  auto dual_row = [&](Index i) {
    return split.is_coarse(i) ? basis.P_dual.row_vector(local_[i])
                              : basis.Q_dual.row_vector(local_[i]);
  };
  auto column = [&](Index j) {
    return split.is_coarse(j) ? basis.P.column(local_[j])
                              : basis.Q.column(local_[j]);
  };
  std::vector<Vector> T_cols;
  for (Index j = 0; j < n; ++j) T_cols.push_back(setup.T * column(j));
  for (Index i = 0; i < n; ++i) {
    const Vector g = dual_row(i);
    for (Index j = 0; j < n; ++j) {
      const Scalar w = dot(g, T_cols[j]);
      if (w != Scalar{}) adjacency_[i].push_back({j, w});
    }
  }
}

Scalar PropagationGraph::weight(Index i, Index j) const {
  for (const Edge& e : adjacency_.at(i))
    if (e.to == j) return e.weight;
  return {};
}

std::map<PathKey, Scalar> enumerate_fine_paths(const PropagationGraph& graph,
                                               Index i, Index k) {
  check_budget(graph.size(), k);
  if (i >= graph.size() || graph.split().is_coarse(i))
    throw PreconditionError("enumerate_fine_paths: node " + std::to_string(i) +
                            " is not a fine node");
  if (k < 1) throw PreconditionError("enumerate_fine_paths needs k >= 1");

  std::map<PathKey, Scalar> out;
  std::function<void(Index, Index, Scalar)> walk = [&](Index node, Index step,
                                                       Scalar w) {
    for (const auto& e : graph.neighbours(node)) {
      const Scalar next = w * e.weight;
      if (graph.split().is_coarse(e.to))
        out[{e.to, step}] += next;
      else if (step + 1 == k)
        out[{e.to, k}] += next;
      else
        walk(e.to, step + 1, next);
    }
  };
  walk(i, 0, Scalar{1.0});
  return out;
}

Vector componentwise_interpolation(const PropagationGraph& graph,
                                   const std::vector<Vector>& coarse_history,
                                   Index k) {
  check_budget(graph.size(), k);
  if (coarse_history.size() != k)
    throw DimensionError("componentwise_interpolation: expected " +
                         std::to_string(k) + " coarse vectors, got " +
                         std::to_string(coarse_history.size()));
  const CFSplit& split = graph.split();
  Vector out(split.n_fine());
  for (Index f = 0; f < split.n_fine(); ++f) {
    for (const auto& [key, w] : enumerate_fine_paths(graph, split.fine()[f], k)) {
      if (!split.is_coarse(key.origin)) continue;
      out[f] += w * coarse_history[k - 1 - key.lag][graph.local_index(key.origin)];
    }
  }
  return out;
}

}  // namespace rbamg
