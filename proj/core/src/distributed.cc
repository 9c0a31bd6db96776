// Copyright 2026 The bbeq Authors.
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

#include "bbeq/distributed.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bbeq/errors.h"
#include "bbeq/rollout.h"
#include "json_io.h"

namespace bbeq {
namespace {

// Stream tags; they keep the noise and episode substreams of one
// (iteration, round, worker) apart.
constexpr uint64_t kNoiseTag = 0x6e6f697365ULL;
constexpr uint64_t kEpisodeTag = 0x6570697364ULL;
constexpr uint64_t kEpisodeMinusTag = 0x6570697365ULL;

RngStream WorkerStream(uint64_t seed, uint64_t tag, uint64_t iteration,
                       int round, uint64_t worker_id) {
  return RngStream(seed, DeriveStreamId({tag, iteration,
                                         static_cast<uint64_t>(round),
                                         worker_id}));
}

void SortUnique(std::vector<uint64_t>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

}  // namespace

std::string AssignmentRuleName(AssignmentRule) { return "round_robin"; }

AssignmentRule ParseAssignmentRule(const std::string& name) {
  if (name == "round_robin") return AssignmentRule::kRoundRobin;
  throw std::invalid_argument("unknown assignment rule: " + name);
}

TrainingState InitialTrainingState(StrategyProfile profile, uint64_t seed) {
  TrainingState state;
  state.seed = seed;
  state.optimizer.resize(profile.size());
  state.profile = std::move(profile);
  return state;
}

std::string SyncWorker(const TrainingState& state) {
  return internal::Render(internal::ToJson(state));
}

TrainingState ParseSnapshot(const std::string& text) {
  TrainingState state;
  internal::ReadValue(internal::ParseText(text, "snapshot"), "", state);
  return state;
}

std::vector<WorkerAssignment> Assign(uint64_t iteration,
                                     std::span<const uint64_t> workers,
                                     int n_players, double epsilon,
                                     AssignmentRule) {
  if (workers.empty()) throw std::invalid_argument("Assign: no workers");
  if (n_players < 1) throw std::invalid_argument("Assign: no players");
  std::vector<uint64_t> ids(workers.begin(), workers.end());
  SortUnique(ids);
  std::vector<WorkerAssignment> out(ids.size());
  const uint64_t n = static_cast<uint64_t>(n_players);
  for (std::size_t rank = 0; rank < ids.size(); ++rank) {
    out[rank].worker_id = ids[rank];
    out[rank].player = static_cast<int>((rank % n + iteration % n) % n);
    out[rank].epsilon = epsilon;
  }
  return out;
}

void DrawNoise(const StrategyProfile& profile, Smoothing smoothing,
               uint64_t seed, uint64_t iteration, int round,
               std::vector<WorkerAssignment>& assignments) {
  for (WorkerAssignment& a : assignments) {
    RngStream rng =
        WorkerStream(seed, kNoiseTag, iteration, round, a.worker_id);
    a.z.resize(profile.at(a.player).params.size());
    SamplePerturbation(smoothing, rng, a.z);
  }
}

DeltaMessage WorkerDelta(const Game& game, const StrategyProfile& profile,
                         const WorkerAssignment& a, const EstimatorConfig& cfg,
                         uint64_t seed, uint64_t iteration, int round) {
  const ParamVector& x = profile.at(a.player).params;
  if (a.z.size() != x.size()) {
    throw std::invalid_argument("WorkerDelta: noise has wrong dimension");
  }
  std::vector<double> plus(x.size()), minus(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    plus[k] = x[k] + a.epsilon * a.z[k];
    minus[k] = x[k] - a.epsilon * a.z[k];
  }
  // The "minus" side is x itself for the forward stencil.
  const std::vector<double>& other = cfg.stencil == Stencil::kForward ? x : minus;
  RngStream rng = WorkerStream(seed, kEpisodeTag, iteration, round, a.worker_id);
  const int episodes = cfg.episodes_per_eval;

  double f_plus = 0.0, f_minus = 0.0;
  if (cfg.stencil == Stencil::kSinglePoint) {
    f_plus = PlayerUtility(game, profile, a.player, plus, episodes, rng);
  } else if (cfg.common_random_numbers) {
    std::tie(f_plus, f_minus) = PairedPlayerUtility(game, profile, a.player,
                                                    plus, other, episodes, rng);
  } else {
    RngStream rng_minus =
        WorkerStream(seed, kEpisodeMinusTag, iteration, round, a.worker_id);
    f_plus = PlayerUtility(game, profile, a.player, plus, episodes, rng);
    f_minus = PlayerUtility(game, profile, a.player, other, episodes, rng_minus);
  }
  return {a.worker_id, StencilDelta(cfg.stencil, f_plus, f_minus, a.epsilon)};
}

AggregateResult Aggregate(std::span<const DeltaMessage> deltas,
                          std::span<const WorkerAssignment> assignments,
                          const StrategyProfile& profile) {
  std::map<uint64_t, double> by_worker;
  for (const DeltaMessage& m : deltas) by_worker[m.worker_id] = m.delta;

  AggregateResult out;
  out.gradient.resize(profile.size());
  out.workers_per_player.assign(profile.size(), 0);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out.gradient[i].assign(profile[i].params.size(), 0.0);
  }
  // Sum in worker-id order so every replica rounds identically.
  std::vector<const WorkerAssignment*> order;
  for (const WorkerAssignment& a : assignments) order.push_back(&a);
  std::sort(order.begin(), order.end(),
            [](auto* l, auto* r) { return l->worker_id < r->worker_id; });
  for (const WorkerAssignment* a : order) {
    auto it = by_worker.find(a->worker_id);
    if (it == by_worker.end()) throw MissingDeltaError(a->worker_id);
    std::vector<double>& g = out.gradient.at(a->player);
    if (a->z.size() != g.size()) {
      throw std::invalid_argument("Aggregate: noise has wrong dimension");
    }
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += it->second * a->z[k];
    ++out.workers_per_player[a->player];
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (out.workers_per_player[i] > 1) {
      for (double& v : out.gradient[i]) v /= out.workers_per_player[i];
    }
  }
  return out;
}

int RoundsPerIteration(DynamicsKind kind) {
  return kind == DynamicsKind::kExtragradient ? 2 : 1;
}

StrategyProfile Lookahead(const StrategyProfile& profile,
                          const AggregateResult& first_round, double beta) {
  StrategyProfile out = profile;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (first_round.workers_per_player[i] == 0) continue;
    for (std::size_t k = 0; k < out[i].params.size(); ++k) {
      out[i].params[k] += beta * first_round.gradient[i][k];
    }
  }
  return out;
}

void CommitUpdate(TrainingState& state, const DynamicsConfig& dynamics,
                  const AggregateResult& last_round) {
  const double alpha = dynamics.alpha, beta = dynamics.EffectiveBeta();
  for (std::size_t i = 0; i < state.profile.size(); ++i) {
    if (last_round.workers_per_player[i] == 0) continue;
    ParamVector& x = state.profile[i].params;
    const std::vector<double>& g = last_round.gradient[i];
    PlayerOptimizerState& opt = state.optimizer[i];
    if (dynamics.kind == DynamicsKind::kOptimistic) {
      OptimisticPlayerStep(x, g, alpha, beta, opt);
    } else {
      SimultaneousPlayerStep(x, g, alpha);
      ++opt.steps;
    }
    for (double v : x) {
      if (!std::isfinite(v)) throw NonFiniteError(state.iteration);
    }
  }
  ++state.iteration;
}

WorkerSchedule FixedSchedule(int n_workers) {
  if (n_workers < 1) throw std::invalid_argument("n_workers must be >= 1");
  std::vector<uint64_t> ids(n_workers);
  std::iota(ids.begin(), ids.end(), uint64_t{0});
  return [ids](uint64_t) { return ids; };
}

TrainingState SequentialReference(const Game& game, TrainingState state,
                                  const EstimatorConfig& estimator,
                                  const DynamicsConfig& dynamics,
                                  uint64_t iterations,
                                  const WorkerSchedule& schedule) {
  const int n = game.NumPlayers();
  const int rounds = RoundsPerIteration(dynamics.kind);
  for (uint64_t step = 0; step < iterations; ++step) {
    const uint64_t t = state.iteration;
    const std::vector<uint64_t> workers = schedule(t);
    StrategyProfile probe = state.profile;
    AggregateResult g;
    for (int round = 0; round < rounds; ++round) {
      if (round == 1) probe = Lookahead(state.profile, g, dynamics.EffectiveBeta());
      std::vector<WorkerAssignment> assignments =
          Assign(t, workers, n, estimator.sigma);
      DrawNoise(probe, estimator.smoothing, state.seed, t, round, assignments);
      std::vector<DeltaMessage> deltas;
      for (const WorkerAssignment& a : assignments) {
        deltas.push_back(
            WorkerDelta(game, probe, a, estimator, state.seed, t, round));
      }
      g = Aggregate(deltas, assignments, probe);
    }
    CommitUpdate(state, dynamics, g);
  }
  return state;
}

// One physical replica: a full copy of the training state plus the logical
// workers it evaluates.
struct WorkerPool::Host {
  TrainingState state;
  std::vector<uint64_t> workers;
  // Per-iteration scratch.
  StrategyProfile probe;
  AggregateResult last;
};

WorkerPool::WorkerPool(const Game& game, TrainingState state,
                       EstimatorConfig estimator, DynamicsConfig dynamics,
                       int n_workers, int n_hosts)
    : game_(game), estimator_(estimator), dynamics_(dynamics) {
  estimator_.Validate();
  dynamics_.Validate();
  if (n_workers < 1) throw std::invalid_argument("n_workers must be >= 1");
  if (n_hosts < 1) throw std::invalid_argument("n_hosts must be >= 1");
  if (static_cast<int>(state.profile.size()) != game.NumPlayers() ||
      state.optimizer.size() != state.profile.size()) {
    throw std::invalid_argument("training state does not match the game");
  }
  n_hosts = std::min(n_hosts, n_workers);
  for (int h = 0; h < n_hosts; ++h) {
    hosts_.push_back(std::make_unique<Host>());
    hosts_.back()->state = state;
  }
  for (int w = 0; w < n_workers; ++w) {
    const std::size_t h = static_cast<std::size_t>(w % n_hosts);
    hosts_[h]->workers.push_back(static_cast<uint64_t>(w));
    owner_[static_cast<uint64_t>(w)] = h;
  }
}

WorkerPool::~WorkerPool() = default;

const TrainingState& WorkerPool::state() const { return hosts_.front()->state; }

int WorkerPool::num_hosts() const { return static_cast<int>(hosts_.size()); }

std::vector<uint64_t> WorkerPool::active_workers() const {
  std::vector<uint64_t> ids;
  for (const auto& [id, host] : owner_) ids.push_back(id);
  return ids;
}

bool WorkerPool::ReplicasAgree() const {
  for (const auto& h : hosts_) {
    if (!(h->state == hosts_.front()->state)) return false;
  }
  return true;
}

void WorkerPool::Join(uint64_t worker_id) {
  if (owner_.count(worker_id)) {
    throw std::invalid_argument("worker already active");
  }
  // The newcomer knows nothing but the snapshot.
  auto host = std::make_unique<Host>();
  host->state = ParseSnapshot(SyncWorker(state()));
  host->workers.push_back(worker_id);
  owner_[worker_id] = hosts_.size();
  hosts_.push_back(std::move(host));
}

void WorkerPool::Leave(uint64_t worker_id) {
  auto it = owner_.find(worker_id);
  if (it == owner_.end()) throw std::invalid_argument("worker not active");
  if (owner_.size() == 1) throw std::invalid_argument("last worker cannot leave");
  auto& ws = hosts_[it->second]->workers;
  ws.erase(std::remove(ws.begin(), ws.end(), worker_id), ws.end());
  owner_.erase(it);
  // Hosts left without workers keep their replica. The coordinator (host 0)
  // always stays.
}

void WorkerPool::DropMessage(uint64_t iteration, uint64_t worker_id) {
  drops_.insert({iteration, worker_id});
}

bool WorkerPool::TryStep() {
  const int n = game_.NumPlayers();
  const int rounds = RoundsPerIteration(dynamics_.kind);
  const uint64_t t = state().iteration;
  const std::vector<uint64_t> workers = active_workers();

  for (int round = 0; round < rounds; ++round) {
    // Every host computes the deltas of its own workers from its replica.
    std::vector<DeltaMessage> inbox;
    for (auto& host : hosts_) {
      const TrainingState& s = host->state;
      host->probe = round == 0 ? s.profile
                               : Lookahead(s.profile, host->last,
                                           dynamics_.EffectiveBeta());
      std::vector<WorkerAssignment> all = Assign(t, workers, n, estimator_.sigma);
      std::vector<WorkerAssignment> mine;
      for (WorkerAssignment& a : all) {
        if (std::find(host->workers.begin(), host->workers.end(),
                      a.worker_id) != host->workers.end()) {
          mine.push_back(std::move(a));
        }
      }
      DrawNoise(host->probe, estimator_.smoothing, s.seed, t, round, mine);
      for (const WorkerAssignment& a : mine) {
        DeltaMessage m =
            WorkerDelta(game_, host->probe, a, estimator_, s.seed, t, round);
        if (drops_.count({t, a.worker_id})) continue;  // lost in transit
        inbox.push_back(m);
        ++delta_messages_;
      }
    }

    // Coordinator barrier, then broadcast of the scalar vector.
    std::sort(inbox.begin(), inbox.end(),
              [](const auto& l, const auto& r) { return l.worker_id < r.worker_id; });
    std::vector<uint64_t> missing;
    for (uint64_t w : workers) {
      auto hit = std::find_if(inbox.begin(), inbox.end(),
                              [w](const auto& m) { return m.worker_id == w; });
      if (hit == inbox.end()) missing.push_back(w);
    }
    if (!missing.empty()) {
      for (uint64_t w : missing) {
        drops_.erase({t, w});
        if (owner_.size() > 1) Leave(w);
      }
      ++aborted_iterations_;
      return false;
    }
    broadcast_messages_ += hosts_.size() - 1;

    // Every replica regenerates all z_j and aggregates locally.
    for (auto& host : hosts_) {
      std::vector<WorkerAssignment> all = Assign(t, workers, n, estimator_.sigma);
      DrawNoise(host->probe, estimator_.smoothing, host->state.seed, t, round,
                all);
      host->last = Aggregate(inbox, all, host->probe);
    }
  }
  for (auto& host : hosts_) CommitUpdate(host->state, dynamics_, host->last);
  history_[t] = workers;
  return true;
}

void WorkerPool::Step() {
  while (!TryStep()) {
  }
}

void WorkerPool::Run(uint64_t iterations) {
  for (uint64_t k = 0; k < iterations; ++k) Step();
}

TrainingState RunDistributed(const Game& game, TrainingState state,
                             int n_workers, uint64_t iterations,
                             const EstimatorConfig& estimator,
                             const DynamicsConfig& dynamics, int n_hosts) {
  WorkerPool pool(game, std::move(state), estimator, dynamics, n_workers,
                  n_hosts);
  pool.Run(iterations);
  return pool.state();
}

}  // namespace bbeq
