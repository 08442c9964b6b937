// Copyright 2026 The socialmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "socialmatch/rational.hpp"

namespace socialmatch {

using NodeId = int;
using EdgeId = int;

inline constexpr int kUnreachable = -1;

// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  NodeId other(NodeId x) const { return x == u ? v : u; }
  bool has(NodeId x) const { return x == u || x == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on nodes 0..n-1. Edge ids follow insertion order.
class Graph {
 public:
  Graph() = default;
  // Throws Error(kInvalidArgument) on self-loops, parallel edges or
  // out-of-range endpoints.
  Graph(int num_nodes, const std::vector<std::pair<NodeId, NodeId>>& edges);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;
  bool adjacent(NodeId a, NodeId b) const { return find_edge(a, b).has_value(); }

  // Incident edge ids of v, in increasing neighbor order.
  const std::vector<EdgeId>& incident(NodeId v) const { return incident_[v]; }
  int degree(NodeId v) const { return static_cast<int>(incident_[v].size()); }

  bool valid_node(NodeId v) const { return v >= 0 && v < num_nodes_; }

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<EdgeId> lookup_;  // n*n, -1 when absent
};

// Hop distances, kUnreachable for disconnected pairs.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  int operator()(NodeId a, NodeId b) const { return d_[index(a, b)]; }
  int& at(NodeId a, NodeId b) { return d_[index(a, b)]; }
  int size() const { return n_; }

 private:
  std::size_t index(NodeId a, NodeId b) const {
    return static_cast<std::size_t>(a) * n_ + b;
  }
  int n_ = 0;
  std::vector<int> d_;
};

// All-pairs BFS hop distances.
DistanceMatrix build_distances(const Graph& graph);

// alpha_1 >= alpha_2 >= ... >= 0, all <= 1. Entries past the end are zero.
class FriendshipVector {
 public:
  FriendshipVector() = default;
  explicit FriendshipVector(std::vector<Rational> alpha);

  // Coefficient for hop distance d >= 1; zero for d beyond the list and for
  // kUnreachable.
  const Rational& at(int distance) const;
  const Rational& alpha1() const { return at(1); }
  const Rational& alpha2() const { return at(2); }
  bool is_zero() const;
  bool is_local() const;  // alpha_d == 0 for d >= 2
  const std::vector<Rational>& values() const { return alpha_; }

 private:
  std::vector<Rational> alpha_;
};

enum class SharingKind { kEqual, kOblivious, kMatthew, kParasite, kTrust };

const char* sharing_name(SharingKind kind);

struct SharingRule {
  SharingKind kind = SharingKind::kEqual;
  // kOblivious: per edge, share of edge.u then share of edge.v.
  std::vector<std::pair<Rational, Rational>> shares;
  // kMatthew / kParasite: per node brand value, positive.
  std::vector<Rational> lambda;
  // kTrust: per node trust value and per edge inherent quality.
  std::vector<Rational> beta;
  std::vector<Rational> quality;

  static SharingRule equal() { return {}; }
  static SharingRule oblivious(std::vector<std::pair<Rational, Rational>> s);
  static SharingRule matthew(std::vector<Rational> lambda);
  static SharingRule parasite(std::vector<Rational> lambda);
  static SharingRule trust(std::vector<Rational> beta, std::vector<Rational> h);
};

// Immutable matching-game instance. Validates every invariant on
// construction and throws Error(kInvalidArgument) when one fails.
//
// For kOblivious and kTrust the edge rewards are derived from the shares, and
// `rewards` may be empty; when given, it must agree exactly.
class GameInstance {
 public:
  GameInstance(Graph graph, std::vector<Rational> rewards, SharingRule sharing,
               FriendshipVector friendship);

  const Graph& graph() const { return graph_; }
  int num_nodes() const { return graph_.num_nodes(); }
  int num_edges() const { return graph_.num_edges(); }
  const Rational& reward(EdgeId e) const { return rewards_[e]; }
  const std::vector<Rational>& rewards() const { return rewards_; }
  const SharingRule& sharing() const { return sharing_; }
  const FriendshipVector& friendship() const { return friendship_; }
  const DistanceMatrix& distances() const { return distances_; }

  // alpha of the hop distance between a and b; zero when disconnected.
  const Rational& alpha_between(NodeId a, NodeId b) const;

  // r^u_e with r^u_e + r^v_e = r_e. Equal sharing splits r_e in half.
  // Throws Error(kNotIncident) if u is not an endpoint of e.
  const Rational& share(NodeId u, EdgeId e) const;

  // What u actually collects from a matched edge e: r_e under equal sharing
  // (both endpoints receive the full reward), the share otherwise.
  const Rational& payoff(NodeId u, EdgeId e) const;

  // q^x_e = r^x_e + alpha_1 r^y_e over shares.
  Rational q_value(NodeId x, EdgeId e) const;

  // Same combination over payoffs; the quantity the blocking conditions use.
  Rational payoff_q(NodeId x, EdgeId e) const;

  // R = max share ratio over ordered endpoint pairs. Throws
  // Error(kUndefinedRatio) when some share is zero. R = 1 on an edgeless graph.
  Rational compute_R() const;
  bool ratio_defined() const;
  // (R + a1) / (1 + a1 R)
  Rational compute_Q() const;
  // (1 + a1)(1 + R) / (1 + a1 (R + 1))
  Rational compute_Q_prime() const;

  // Largest q^x/q^y over edges and endpoint orders.
  Rational max_q_ratio() const;

  // Copy with a different friendship vector.
  GameInstance with_friendship(FriendshipVector friendship) const;

 private:
  Graph graph_;
  std::vector<Rational> rewards_;
  SharingRule sharing_;
  FriendshipVector friendship_;
  DistanceMatrix distances_;
  std::vector<std::pair<Rational, Rational>> edge_shares_;
  std::vector<std::pair<Rational, Rational>> edge_payoffs_;
};

Rational q_from_R(const Rational& R, const Rational& alpha1);
Rational q_prime_from_R(const Rational& R, const Rational& alpha1);

}  // namespace socialmatch
