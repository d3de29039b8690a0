#pragma once

#include <map>
#include <vector>

#include "rbamg/linalg/dense.hpp"
#include "rbamg/relaxation.hpp"
#include "rbamg/splitting.hpp"

namespace rbamg {

/// Explicit path enumeration is limited to graphs this small.
inline constexpr Index kOracleMaxNodes = 12;
inline constexpr Index kOracleMaxDepth = 6;

/// Node i stands for the basis vector attached to point i: column c of P
/// when i is the c-th coarse point, column f of Q when it is the f-th fine
/// point. Edge weights are T_i^j = g_i T g^j with g_i the matching dual row.
class PropagationGraph {
 public:
  struct Edge {
    Index to;
    Scalar weight;
  };

  PropagationGraph(const RelaxationSetup& setup, const TransferBasis& basis,
                   const CFSplit& split);

  Index size() const noexcept { return split_.size(); }
  const CFSplit& split() const noexcept { return split_; }
  /// Neighbours j with T_i^j != 0, in increasing order.
  const std::vector<Edge>& neighbours(Index i) const { return adjacency_.at(i); }
  Scalar weight(Index i, Index j) const;
  /// Position of node i among the coarse (or fine) points.
  Index local_index(Index i) const { return local_.at(i); }

 private:
  CFSplit split_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<Index> local_;
};

/// (origin node, lag). A coarse origin j at lag l contributes through
/// e_j^(k-1-l) after l fine intermediate hops; fine origins appear only at
/// lag k and contribute through e_j^(0).
struct PathKey {
  Index origin;
  Index lag;
  auto operator<=>(const PathKey&) const = default;
};

/// Sums of path weights over all paths of length <= k from fine node i whose
/// intermediate nodes are fine.
std::map<PathKey, Scalar> enumerate_fine_paths(const PropagationGraph& graph,
                                               Index i, Index k);

/// Fine estimate (indexed like Q's columns) from the coarse history
/// eps_sigma^(0..k-1), time order, summed path by path.
Vector componentwise_interpolation(const PropagationGraph& graph,
                                   const std::vector<Vector>& coarse_history,
                                   Index k);

}  // namespace rbamg
