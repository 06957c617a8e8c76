// Copyright 2025 The Authors.
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

#include "sbmsm/rollout.hpp"

#include <algorithm>
#include <sstream>

#include "sbmsm/env.hpp"
#include "sbmsm/influence.hpp"

namespace sbmsm {

namespace {

class TabularRollout : public RoundRollout {
 public:
  TabularRollout(const Instance& instance, int t, RngStream& rng)
      : instance_(instance),
        round_(instance.tabular_round(t)),
        t_(t),
        hidden_(sample_state(instance, t, rng)) {
    obs_.round = t;
  }

  int round() const override { return t_; }
  int num_items() const override { return instance_.num_items(); }
  bool selectable(int v) const override {
    return v >= 0 && v < num_items() && !(mask_ & (1u << v));
  }

  double select(int v, RngStream&) override {
    if (!selectable(v)) throw UsageError("select: item not selectable");
    const double before = round_.objective(mask_, hidden_);
    mask_ |= (1u << v);
    obs_.observations[v] = round_.states[hidden_].local[v];
    selected_.push_back(v);
    return round_.objective(mask_, hidden_) - before;
  }

  double sample_increment(int v, RngStream& rng) const override {
    if (!selectable(v)) throw UsageError("sample_increment: item selected");
    auto posterior = consistent_states(round_, obs_);
    double u = rng.next_double();
    int s = posterior.back().first;
    double acc = 0.0;
    for (const auto& [si, p] : posterior) {
      acc += p;
      if (u < acc) {
        s = si;
        break;
      }
    }
    return round_.objective(mask_ | (1u << v), s) - round_.objective(mask_, s);
  }

  double exact_increment(int v) const override {
    return exact_marginal(instance_, t_, v, obs_);
  }

  double current_value() const override {
    return round_.objective(mask_, hidden_);
  }
  const std::vector<int>& selected() const override { return selected_; }
  std::string observation_digest() const override { return obs_.digest(); }

 private:
  const Instance& instance_;
  const TabularRound& round_;
  int t_;
  int hidden_;
  std::uint32_t mask_ = 0;
  PartialState obs_;
  std::vector<int> selected_;
};

class ProbingRollout : public RoundRollout {
 public:
  ProbingRollout(const Instance& instance, int t)
      : round_(instance.probing_round(t)),
        t_(t),
        n_(instance.num_items()),
        bit_(instance.num_items(), -1) {}

  int round() const override { return t_; }
  int num_items() const override { return n_; }
  bool selectable(int v) const override {
    return v >= 0 && v < n_ &&
           std::find(selected_.begin(), selected_.end(), v) == selected_.end();
  }

  double select(int v, RngStream& rng) override {
    if (!selectable(v)) throw UsageError("select: item not selectable");
    if (bit_[v] < 0) bit_[v] = rng.bernoulli(round_.activation[v]) ? 1 : 0;
    const double before = round_.g.eval(active_);
    if (bit_[v]) active_.push_back(v);
    selected_.push_back(v);
    return round_.g.eval(active_) - before;
  }

  double sample_increment(int v, RngStream& rng) const override {
    if (!selectable(v)) throw UsageError("sample_increment: item selected");
    int b = bit_[v] >= 0 ? bit_[v]
                         : (rng.bernoulli(round_.activation[v]) ? 1 : 0);
    if (!b) return 0.0;
    std::vector<int> with_v = active_;
    with_v.push_back(v);
    return round_.g.eval(with_v) - round_.g.eval(active_);
  }

  double exact_increment(int v) const override {
    if (!selectable(v)) throw UsageError("exact_increment: item selected");
    double p = bit_[v] >= 0 ? static_cast<double>(bit_[v])
                            : round_.activation[v];
    if (p == 0.0) return 0.0;
    std::vector<int> with_v = active_;
    with_v.push_back(v);
    return p * (round_.g.eval(with_v) - round_.g.eval(active_));
  }

  double current_value() const override { return round_.g.eval(active_); }
  const std::vector<int>& selected() const override { return selected_; }
  std::string observation_digest() const override {
    std::ostringstream out;
    bool first = true;
    for (int v : selected_) {
      if (!first) out << ',';
      out << v << ':' << static_cast<int>(bit_[v]);
      first = false;
    }
    return first ? "-" : out.str();
  }

 private:
  const ProbingRound& round_;
  int t_;
  int n_;
  std::vector<int> bit_;  // -1 unrevealed, else 0/1
  std::vector<int> active_;
  std::vector<int> selected_;
};

class InfluenceRollout : public RoundRollout {
 public:
  InfluenceRollout(const Instance& instance, int t)
      : graph_(instance.graph),
        t_(t),
        revelation_(EdgeRevelation::fresh(instance.graph, t)),
        active_(instance.graph.num_nodes, 0) {}

  int round() const override { return t_; }
  int num_items() const override { return graph_.num_nodes; }
  bool selectable(int v) const override {
    return v >= 0 && v < graph_.num_nodes && !active_[v];
  }

  double select(int v, RngStream& rng) override {
    if (!selectable(v)) throw UsageError("select: node already active");
    auto activated = diffuse(graph_, t_, revelation_, active_, v, rng);
    double inc = 0.0;
    for (int u : activated) {
      active_[u] = 1;
      inc += graph_.node_weight[t_ - 1][u];
    }
    selected_.push_back(v);
    value_ += inc;
    return inc;
  }

  double sample_increment(int v, RngStream& rng) const override {
    if (!selectable(v)) throw UsageError("sample_increment: node active");
    EdgeRevelation scratch = revelation_;
    auto activated = diffuse(graph_, t_, scratch, active_, v, rng);
    double inc = 0.0;
    for (int u : activated) inc += graph_.node_weight[t_ - 1][u];
    return inc;
  }

  double exact_increment(int) const override {
    throw UsageError(
        "exact_increment: exact conditioning unsupported on influence "
        "instances");
  }

  double current_value() const override { return value_; }
  const std::vector<int>& selected() const override { return selected_; }
  std::string observation_digest() const override {
    std::ostringstream out;
    out << "a=";
    bool any = false;
    for (int v = 0; v < graph_.num_nodes; ++v) {
      if (!active_[v]) continue;
      if (any) out << ',';
      out << v;
      any = true;
    }
    if (!any) out << '-';
    out << ";e=";
    for (std::int8_t s : revelation_.status)
      out << (s < 0 ? '?' : (s ? '1' : '0'));
    return out.str();
  }

 private:
  const InfluenceGraph& graph_;
  int t_;
  EdgeRevelation revelation_;
  std::vector<std::uint8_t> active_;
  std::vector<int> selected_;
  double value_ = 0.0;
};

}  // namespace

std::unique_ptr<RoundRollout> make_round_rollout(const Instance& instance,
                                                 int t, RngStream& rng) {
  switch (instance.kind()) {
    case ModelKind::kTabular:
      return std::make_unique<TabularRollout>(instance, t, rng);
    case ModelKind::kProbing:
      return std::make_unique<ProbingRollout>(instance, t);
    case ModelKind::kInfluence:
      return std::make_unique<InfluenceRollout>(instance, t);
  }
  throw UsageError("make_round_rollout: unknown model kind");
}

}  // namespace sbmsm
