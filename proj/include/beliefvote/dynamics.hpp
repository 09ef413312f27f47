#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "beliefvote/decision.hpp"
#include "beliefvote/election.hpp"
#include "beliefvote/uncertainty.hpp"

namespace beliefvote {

/// Layered belief without a center; it is re-centered on the broadcast
/// score before every decision.
struct LayeredBeliefSpec {
  LayerKind kind = LayerKind::nested;
  Metric metric = Metric::l1_addremove;
  std::vector<int> radii;
  std::vector<Rational> weights;

  LayeredBelief around(const ScoreVector& center) const { return {center, kind, metric, radii, weights}; }
  friend bool operator==(const LayeredBeliefSpec&, const LayeredBeliefSpec&) = default;
};

/// Either a layered spec that tracks the current score or a fixed mass.
using BeliefSource = std::variant<LayeredBeliefSpec, MassFunction>;

struct VoterConfig {
  Preference preference;
  BeliefSource belief;
  DecisionRule rule;
  UtilityModel utility = UtilityModel::meir_sign;
};

struct GameState {
  BallotProfile profile;
  std::size_t step = 0;
  std::size_t next_voter = 0;
};

struct MoveRecord {
  std::size_t step = 0;
  std::size_t voter = 0;
  Candidate from = 0;
  Candidate to = 0;
  Rational criterion_value;
  ScoreVector score_before;
  ScoreVector score_after;
  Candidate winner_before = 0;
  Candidate winner_after = 0;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

enum class RunStatus { converged, cycle, step_limit };

struct RunOutcome {
  RunStatus status = RunStatus::step_limit;
  std::size_t steps = 0;
  GameState final_state;
  /// For a cycle: trace[cycle_start, cycle_start + cycle_length) is the
  /// repeating block of moves.
  std::size_t cycle_start = 0;
  std::size_t cycle_length = 0;
  std::vector<MoveRecord> trace;
};

struct EquilibriumWitness {
  std::size_t voter = 0;
  Candidate from = 0;
  Candidate to = 0;
  MoveEvaluation evaluation;
};

struct EquilibriumReport {
  bool equilibrium = true;
  std::optional<EquilibriumWitness> witness;
};

inline constexpr std::size_t kDefaultMaxSteps = 10'000;

/// A voter's belief given the broadcast score.
MassFunction belief_for(const VoterConfig& config, const ScoreVector& broadcast,
                        std::size_t cap = kDefaultExpansionCap);

/// The move this voter would make from `broadcast`, if any: the strictly
/// preferred move with the largest criterion value; ties go to the
/// destination the voter prefers.
std::optional<std::pair<Candidate, MoveEvaluation>> best_move(const VoterConfig& config, Candidate ballot,
                                                              const ScoreVector& broadcast,
                                                              const TieBreakOrder& tie);

EquilibriumReport equilibrium_check(const GameState& state, std::span<const VoterConfig> configs,
                                    const TieBreakOrder& tie);

struct StepResult {
  GameState state;
  MoveRecord move;
};

/// Round-robin from state.next_voter; the first voter with a strictly
/// preferred move makes it. std::nullopt means a full scan found no move.
std::optional<StepResult> step(const GameState& state, std::span<const VoterConfig> configs,
                               const TieBreakOrder& tie);

/// Iterates `step`. A repeated (profile, next_voter) pair is reported as a cycle.
RunOutcome run(const GameState& initial, std::span<const VoterConfig> configs, const TieBreakOrder& tie,
               std::size_t max_steps = kDefaultMaxSteps);

/// Recomputes every score and winner in `trace` from `initial`; true when all match.
bool replay_matches(const BallotProfile& initial, std::span<const MoveRecord> trace, const TieBreakOrder& tie);

/// Each voter voting for their top candidate.
BallotProfile truthful_profile(std::span<const VoterConfig> configs);

const char* to_string(RunStatus status);

}  // namespace beliefvote
