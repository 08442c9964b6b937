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

#include "socialmatch/instance.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "socialmatch/error.hpp"

namespace socialmatch {
namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

Graph::Graph(int num_nodes, const std::vector<std::pair<NodeId, NodeId>>& edges)
    : num_nodes_(num_nodes) {
  if (num_nodes < 0) invalid("negative node count");
  incident_.resize(num_nodes);
  lookup_.assign(static_cast<std::size_t>(num_nodes) * num_nodes, -1);
  for (auto [a, b] : edges) {
    if (!valid_node(a) || !valid_node(b))
      invalid("edge (" + std::to_string(a) + "," + std::to_string(b) +
              ") has an endpoint outside 0.." + std::to_string(num_nodes - 1));
    if (a == b) invalid("self-loop at node " + std::to_string(a));
    if (lookup_[static_cast<std::size_t>(a) * num_nodes + b] >= 0)
      invalid("parallel edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    lookup_[static_cast<std::size_t>(a) * num_nodes + b] = id;
    lookup_[static_cast<std::size_t>(b) * num_nodes + a] = id;
    incident_[a].push_back(id);
    incident_[b].push_back(id);
  }
  for (NodeId v = 0; v < num_nodes; ++v) {
    auto& inc = incident_[v];
    std::sort(inc.begin(), inc.end(), [&](EdgeId x, EdgeId y) {
      return edges_[x].other(v) < edges_[y].other(v);
    });
  }
}

std::optional<EdgeId> Graph::find_edge(NodeId a, NodeId b) const {
  if (!valid_node(a) || !valid_node(b)) return std::nullopt;
  EdgeId e = lookup_[static_cast<std::size_t>(a) * num_nodes_ + b];
  if (e < 0) return std::nullopt;
  return e;
}

DistanceMatrix build_distances(const Graph& graph) {
  const int n = graph.num_nodes();
  DistanceMatrix dist(n);
  std::deque<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    dist.at(s, s) = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      NodeId x = queue.front();
      queue.pop_front();
      for (EdgeId e : graph.incident(x)) {
        NodeId y = graph.edge(e).other(x);
        if (dist(s, y) == kUnreachable) {
          dist.at(s, y) = dist(s, x) + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return dist;
}

FriendshipVector::FriendshipVector(std::vector<Rational> alpha)
    : alpha_(std::move(alpha)) {
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] < 0 || alpha_[i] > 1)
      invalid("friendship coefficient alpha_" + std::to_string(i + 1) +
              " outside [0,1]");
    if (i > 0 && alpha_[i] > alpha_[i - 1])
      invalid("friendship vector must be nonincreasing (alpha_" +
              std::to_string(i + 1) + " > alpha_" + std::to_string(i) + ")");
  }
  while (!alpha_.empty() && alpha_.back() == 0) alpha_.pop_back();
}

const Rational& FriendshipVector::at(int distance) const {
  static const Rational kZero = 0;
  if (distance < 1 || distance > static_cast<int>(alpha_.size())) return kZero;
  return alpha_[distance - 1];
}

bool FriendshipVector::is_zero() const { return alpha_.empty(); }

bool FriendshipVector::is_local() const { return alpha_.size() <= 1; }

const char* sharing_name(SharingKind kind) {
  switch (kind) {
    case SharingKind::kEqual: return "equal";
    case SharingKind::kOblivious: return "oblivious";
    case SharingKind::kMatthew: return "matthew";
    case SharingKind::kParasite: return "parasite";
    case SharingKind::kTrust: return "trust";
  }
  return "?";
}

SharingRule SharingRule::oblivious(std::vector<std::pair<Rational, Rational>> s) {
  SharingRule rule;
  rule.kind = SharingKind::kOblivious;
  rule.shares = std::move(s);
  return rule;
}

SharingRule SharingRule::matthew(std::vector<Rational> lambda) {
  SharingRule rule;
  rule.kind = SharingKind::kMatthew;
  rule.lambda = std::move(lambda);
  return rule;
}

SharingRule SharingRule::parasite(std::vector<Rational> lambda) {
  SharingRule rule;
  rule.kind = SharingKind::kParasite;
  rule.lambda = std::move(lambda);
  return rule;
}

SharingRule SharingRule::trust(std::vector<Rational> beta, std::vector<Rational> h) {
  SharingRule rule;
  rule.kind = SharingKind::kTrust;
  rule.beta = std::move(beta);
  rule.quality = std::move(h);
  return rule;
}

GameInstance::GameInstance(Graph graph, std::vector<Rational> rewards,
                           SharingRule sharing, FriendshipVector friendship)
    : graph_(std::move(graph)),
      rewards_(std::move(rewards)),
      sharing_(std::move(sharing)),
      friendship_(std::move(friendship)) {
  const int n = graph_.num_nodes();
  const int m = graph_.num_edges();
  const bool derived_rewards = sharing_.kind == SharingKind::kOblivious ||
                               sharing_.kind == SharingKind::kTrust;
  if (!(derived_rewards && rewards_.empty()) &&
      static_cast<int>(rewards_.size()) != m)
    invalid("expected " + std::to_string(m) + " edge rewards, got " +
            std::to_string(rewards_.size()));

  edge_shares_.resize(m);
  switch (sharing_.kind) {
    case SharingKind::kEqual:
      for (EdgeId e = 0; e < m; ++e) {
        Rational half = rewards_[e] / 2;
        edge_shares_[e] = {half, half};
      }
      break;
    case SharingKind::kOblivious:
      if (static_cast<int>(sharing_.shares.size()) != m)
        invalid("oblivious sharing needs one share pair per edge");
      for (EdgeId e = 0; e < m; ++e) {
        const auto& [su, sv] = sharing_.shares[e];
        if (su < 0 || sv < 0)
          invalid("negative share on edge " + std::to_string(e));
        edge_shares_[e] = {su, sv};
      }
      break;
    case SharingKind::kMatthew:
    case SharingKind::kParasite: {
      if (static_cast<int>(sharing_.lambda.size()) != n)
        invalid("brand values needed for every node");
      for (const auto& l : sharing_.lambda)
        if (l <= 0) invalid("brand values must be positive");
      const bool matthew = sharing_.kind == SharingKind::kMatthew;
      for (EdgeId e = 0; e < m; ++e) {
        const Edge& ed = graph_.edge(e);
        const Rational& lu = sharing_.lambda[ed.u];
        const Rational& lv = sharing_.lambda[ed.v];
        Rational total = lu + lv;
        Rational su = (matthew ? lu : lv) / total * rewards_[e];
        edge_shares_[e] = {su, rewards_[e] - su};
      }
      break;
    }
    case SharingKind::kTrust:
      if (static_cast<int>(sharing_.beta.size()) != n)
        invalid("trust values needed for every node");
      if (static_cast<int>(sharing_.quality.size()) != m)
        invalid("trust sharing needs one edge quality per edge");
      for (const auto& b : sharing_.beta)
        if (b < 0) invalid("trust values must be nonnegative");
      for (EdgeId e = 0; e < m; ++e) {
        if (sharing_.quality[e] < 0) invalid("edge quality must be nonnegative");
        const Edge& ed = graph_.edge(e);
        edge_shares_[e] = {sharing_.quality[e] + sharing_.beta[ed.v],
                           sharing_.quality[e] + sharing_.beta[ed.u]};
      }
      break;
  }

  if (derived_rewards) {
    std::vector<Rational> derived(m);
    for (EdgeId e = 0; e < m; ++e)
      derived[e] = edge_shares_[e].first + edge_shares_[e].second;
    if (!rewards_.empty()) {
      for (EdgeId e = 0; e < m; ++e)
        if (rewards_[e] != derived[e])
          invalid("edge " + std::to_string(e) +
                  " reward does not equal the sum of its shares");
    }
    rewards_ = std::move(derived);
  }
  for (EdgeId e = 0; e < m; ++e)
    if (rewards_[e] <= 0)
      invalid("edge " + std::to_string(e) + " must have a positive reward");

  edge_payoffs_ = edge_shares_;
  if (sharing_.kind == SharingKind::kEqual)
    for (EdgeId e = 0; e < m; ++e) edge_payoffs_[e] = {rewards_[e], rewards_[e]};

  distances_ = build_distances(graph_);
}

const Rational& GameInstance::alpha_between(NodeId a, NodeId b) const {
  return friendship_.at(distances_(a, b));
}

const Rational& GameInstance::share(NodeId u, EdgeId e) const {
  const Edge& ed = graph_.edge(e);
  if (u == ed.u) return edge_shares_[e].first;
  if (u == ed.v) return edge_shares_[e].second;
  throw Error(ErrorCode::kNotIncident, "node " + std::to_string(u) +
                                           " is not an endpoint of edge " +
                                           std::to_string(e));
}

const Rational& GameInstance::payoff(NodeId u, EdgeId e) const {
  const Edge& ed = graph_.edge(e);
  if (u == ed.u) return edge_payoffs_[e].first;
  if (u == ed.v) return edge_payoffs_[e].second;
  throw Error(ErrorCode::kNotIncident, "node " + std::to_string(u) +
                                           " is not an endpoint of edge " +
                                           std::to_string(e));
}

Rational GameInstance::q_value(NodeId x, EdgeId e) const {
  NodeId y = graph_.edge(e).other(x);
  return share(x, e) + friendship_.alpha1() * share(y, e);
}

Rational GameInstance::payoff_q(NodeId x, EdgeId e) const {
  NodeId y = graph_.edge(e).other(x);
  return payoff(x, e) + friendship_.alpha1() * payoff(y, e);
}

bool GameInstance::ratio_defined() const {
  for (const auto& [a, b] : edge_shares_)
    if (a == 0 || b == 0) return false;
  return true;
}

Rational GameInstance::compute_R() const {
  Rational best = 1;
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const auto& [a, b] = edge_shares_[e];
    if (a == 0 || b == 0)
      throw Error(ErrorCode::kUndefinedRatio,
                  "edge " + std::to_string(e) + " has a zero share; R undefined");
    Rational ratio = a > b ? Rational(a / b) : Rational(b / a);
    if (ratio > best) best = ratio;
  }
  return best;
}

Rational q_from_R(const Rational& R, const Rational& alpha1) {
  return (R + alpha1) / (1 + alpha1 * R);
}

Rational q_prime_from_R(const Rational& R, const Rational& alpha1) {
  return (1 + alpha1) * (1 + R) / (1 + alpha1 * (R + 1));
}

Rational GameInstance::compute_Q() const {
  return q_from_R(compute_R(), friendship_.alpha1());
}

Rational GameInstance::compute_Q_prime() const {
  return q_prime_from_R(compute_R(), friendship_.alpha1());
}

Rational GameInstance::max_q_ratio() const {
  Rational best = 1;
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const Edge& ed = graph_.edge(e);
    Rational qu = q_value(ed.u, e);
    Rational qv = q_value(ed.v, e);
    if (qu == 0 || qv == 0)
      throw Error(ErrorCode::kUndefinedRatio,
                  "edge " + std::to_string(e) + " has a zero q-value");
    Rational ratio = qu > qv ? Rational(qu / qv) : Rational(qv / qu);
    if (ratio > best) best = ratio;
  }
  return best;
}

GameInstance GameInstance::with_friendship(FriendshipVector friendship) const {
  GameInstance copy = *this;
  copy.friendship_ = std::move(friendship);
  return copy;
}

}  // namespace socialmatch
