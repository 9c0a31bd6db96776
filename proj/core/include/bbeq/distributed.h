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

#ifndef BBEQ_DISTRIBUTED_H_
#define BBEQ_DISTRIBUTED_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbeq/dynamics.h"
#include "bbeq/estimator.h"
#include "bbeq/games.h"
#include "bbeq/policy.h"

namespace bbeq {

// Distributed multiagent pseudogradient ascent, simulated in process.
//
// A logical worker j owns one perturbation per iteration: it is assigned a
// player a_j, draws z_j, evaluates the player's utility at x_i +/- eps z_j
// and sends the single scalar delta_j to the coordinator. The coordinator
// broadcasts all deltas; every replica regenerates every z_j from the shared
// seed and applies the same update locally.
//
// Logical workers are hosted on a number of physical replicas ("hosts").
// The logical schedule determines the result; the host count does not.

enum class AssignmentRule { kRoundRobin };

std::string AssignmentRuleName(AssignmentRule rule);
AssignmentRule ParseAssignmentRule(const std::string& name);

struct WorkerAssignment {
  uint64_t worker_id = 0;
  int player = 0;
  double epsilon = 0.0;
  std::vector<double> z;  // filled by DrawNoise
};

struct DeltaMessage {
  uint64_t worker_id = 0;
  double delta = 0.0;
};

// Everything a replica needs to continue bit-exactly: the shared seed, the
// iteration counter (together they fix every stream), the profile and the
// optimizer states.
struct TrainingState {
  uint64_t seed = 0;
  uint64_t iteration = 0;
  StrategyProfile profile;
  std::vector<PlayerOptimizerState> optimizer;

  bool operator==(const TrainingState&) const = default;
};

TrainingState InitialTrainingState(StrategyProfile profile, uint64_t seed);

// Snapshot handed to a joining worker. Round-trips bit-exactly.
std::string SyncWorker(const TrainingState& state);
TrainingState ParseSnapshot(const std::string& text);

// Round-robin: the worker of rank r in the sorted id list plays
// (r + iteration) mod n_players. eps_j = epsilon for every worker.
std::vector<WorkerAssignment> Assign(uint64_t iteration,
                                     std::span<const uint64_t> workers,
                                     int n_players, double epsilon,
                                     AssignmentRule rule = AssignmentRule::kRoundRobin);

// Fills z_j for every assignment. z_j comes from a substream keyed by
// (seed, iteration, round, worker id), so any replica can regenerate it.
void DrawNoise(const StrategyProfile& profile, Smoothing smoothing,
               uint64_t seed, uint64_t iteration, int round,
               std::vector<WorkerAssignment>& assignments);

// One worker's finite difference, using the configured stencil.
DeltaMessage WorkerDelta(const Game& game, const StrategyProfile& profile,
                         const WorkerAssignment& assignment,
                         const EstimatorConfig& cfg, uint64_t seed,
                         uint64_t iteration, int round);

struct AggregateResult {
  ProfileGradient gradient;           // zero for players without workers
  std::vector<int> workers_per_player;
};

class MissingDeltaError : public std::runtime_error {
 public:
  explicit MissingDeltaError(uint64_t worker_id)
      : std::runtime_error("missing delta from worker " +
                           std::to_string(worker_id)),
        worker_id_(worker_id) {}
  uint64_t worker_id() const { return worker_id_; }

 private:
  uint64_t worker_id_;
};

// v_i = mean of delta_j z_j over the workers assigned to i. Throws
// MissingDeltaError if any assignment lacks a delta.
AggregateResult Aggregate(std::span<const DeltaMessage> deltas,
                          std::span<const WorkerAssignment> assignments,
                          const StrategyProfile& profile);

// Rounds of worker evaluation per iteration: 2 for extragradient, else 1.
int RoundsPerIteration(DynamicsKind kind);

// Profile evaluated in round 1 of an extragradient iteration.
StrategyProfile Lookahead(const StrategyProfile& profile,
                          const AggregateResult& first_round, double beta);

// Applies the iteration's update from the last round's aggregate and
// advances the iteration counter. Players without workers are left
// untouched, optimizer state included. Throws NonFiniteError.
void CommitUpdate(TrainingState& state, const DynamicsConfig& dynamics,
                  const AggregateResult& last_round);

// Worker ids active at a given iteration.
using WorkerSchedule = std::function<std::vector<uint64_t>(uint64_t iteration)>;

WorkerSchedule FixedSchedule(int n_workers);

// Straight-line implementation of the same algorithm.
TrainingState SequentialReference(const Game& game, TrainingState state,
                                  const EstimatorConfig& estimator,
                                  const DynamicsConfig& dynamics,
                                  uint64_t iterations,
                                  const WorkerSchedule& schedule);

class WorkerPool {
 public:
  WorkerPool(const Game& game, TrainingState state, EstimatorConfig estimator,
             DynamicsConfig dynamics, int n_workers, int n_hosts = 1);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  // One iteration. A missing delta aborts the attempt, drops the silent
  // worker and retries the same iteration without it.
  void Step();
  void Run(uint64_t iterations);

  // The joining worker gets its own replica restored from SyncWorker().
  void Join(uint64_t worker_id);
  void Leave(uint64_t worker_id);
  // Fault injection: worker_id's delta is lost at `iteration`.
  void DropMessage(uint64_t iteration, uint64_t worker_id);

  const TrainingState& state() const;  // the coordinator's replica
  std::vector<uint64_t> active_workers() const;
  int num_hosts() const;
  bool ReplicasAgree() const;

  uint64_t delta_messages() const { return delta_messages_; }
  uint64_t broadcast_messages() const { return broadcast_messages_; }
  uint64_t aborted_iterations() const { return aborted_iterations_; }
  // Worker set that completed each iteration, keyed by iteration.
  const std::map<uint64_t, std::vector<uint64_t>>& history() const {
    return history_;
  }

 private:
  struct Host;

  bool TryStep();

  const Game& game_;
  EstimatorConfig estimator_;
  DynamicsConfig dynamics_;
  std::vector<std::unique_ptr<Host>> hosts_;
  std::map<uint64_t, std::size_t> owner_;  // worker id -> host index
  std::set<std::pair<uint64_t, uint64_t>> drops_;
  std::map<uint64_t, std::vector<uint64_t>> history_;
  uint64_t delta_messages_ = 0;
  uint64_t broadcast_messages_ = 0;
  uint64_t aborted_iterations_ = 0;
};

// n_workers logical workers on n_hosts replicas for `iterations` steps.
TrainingState RunDistributed(const Game& game, TrainingState state,
                             int n_workers, uint64_t iterations,
                             const EstimatorConfig& estimator,
                             const DynamicsConfig& dynamics, int n_hosts = 1);

}  // namespace bbeq

#endif  // BBEQ_DISTRIBUTED_H_
