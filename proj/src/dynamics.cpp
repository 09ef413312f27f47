#include "beliefvote/dynamics.hpp"

#include <map>
#include <stdexcept>

namespace beliefvote {

namespace {

// Masses for one broadcast score, shared between voters with equal layered specs.
class BeliefCache {
 public:
  explicit BeliefCache(const ScoreVector& broadcast) : broadcast_(broadcast) {}

  const MassFunction& get(const VoterConfig& config) {
    if (const auto* fixed = std::get_if<MassFunction>(&config.belief)) return *fixed;
    const auto& spec = std::get<LayeredBeliefSpec>(config.belief);
    for (const auto& [key, mass] : entries_)
      if (key == spec) return mass;
    entries_.emplace_back(spec, layered_to_mass(spec.around(broadcast_)));
    return entries_.back().second;
  }

 private:
  ScoreVector broadcast_;
  std::vector<std::pair<LayeredBeliefSpec, MassFunction>> entries_;
};

std::optional<std::pair<Candidate, MoveEvaluation>> choose_move(const VoterConfig& config, Candidate ballot,
                                                                const MassFunction& mass,
                                                                const TieBreakOrder& tie) {
  std::optional<std::pair<Candidate, MoveEvaluation>> best;
  // Visit destinations best-first so that equal criterion values keep the
  // voter's preferred destination.
  for (Candidate to : config.preference.ranking()) {
    if (to == ballot) continue;
    MoveEvaluation eval = evaluate_move(mass, config.rule, config.utility, config.preference, ballot, to, tie);
    if (eval.verdict != Verdict::strictly_preferred) continue;
    if (!best || eval.criterion_value > best->second.criterion_value) best.emplace(to, std::move(eval));
  }
  return best;
}

void check_configs(const GameState& state, std::span<const VoterConfig> configs, const TieBreakOrder& tie) {
  if (configs.size() != state.profile.size()) throw std::invalid_argument("one config per voter required");
  if (configs.empty()) throw std::invalid_argument("game without voters");
  if (state.profile.candidate_count() != tie.size()) throw std::invalid_argument("tie-break size mismatch");
  for (const auto& c : configs)
    if (c.preference.size() != tie.size()) throw std::invalid_argument("preference size mismatch");
  if (state.next_voter >= configs.size()) throw std::invalid_argument("next_voter out of range");
}

}  // namespace

MassFunction belief_for(const VoterConfig& config, const ScoreVector& broadcast, std::size_t cap) {
  if (const auto* fixed = std::get_if<MassFunction>(&config.belief)) return *fixed;
  return layered_to_mass(std::get<LayeredBeliefSpec>(config.belief).around(broadcast), cap);
}

std::optional<std::pair<Candidate, MoveEvaluation>> best_move(const VoterConfig& config, Candidate ballot,
                                                              const ScoreVector& broadcast,
                                                              const TieBreakOrder& tie) {
  return choose_move(config, ballot, belief_for(config, broadcast), tie);
}

EquilibriumReport equilibrium_check(const GameState& state, std::span<const VoterConfig> configs,
                                    const TieBreakOrder& tie) {
  check_configs(state, configs, tie);
  const ScoreVector broadcast = scores_from_profile(state.profile);
  BeliefCache cache(broadcast);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const VoterConfig& config = configs[i];
    const MassFunction& mass = cache.get(config);
    for (Candidate to : config.preference.ranking()) {
      if (to == state.profile[i]) continue;
      MoveEvaluation eval =
          evaluate_move(mass, config.rule, config.utility, config.preference, state.profile[i], to, tie);
      if (eval.verdict == Verdict::strictly_preferred)
        return {false, EquilibriumWitness{i, state.profile[i], to, std::move(eval)}};
    }
  }
  return {};
}

std::optional<StepResult> step(const GameState& state, std::span<const VoterConfig> configs,
                               const TieBreakOrder& tie) {
  check_configs(state, configs, tie);
  const ScoreVector broadcast = scores_from_profile(state.profile);
  BeliefCache cache(broadcast);
  const std::size_t n = configs.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t voter = (state.next_voter + k) % n;
    const Candidate ballot = state.profile[voter];
    auto move = choose_move(configs[voter], ballot, cache.get(configs[voter]), tie);
    if (!move) continue;

    StepResult result{state, {}};
    result.state.profile.set(voter, move->first);
    result.state.step = state.step + 1;
    result.state.next_voter = (voter + 1) % n;

    MoveRecord& rec = result.move;
    rec.step = state.step;
    rec.voter = voter;
    rec.from = ballot;
    rec.to = move->first;
    rec.criterion_value = move->second.criterion_value;
    rec.score_before = broadcast;
    rec.score_after = scores_from_profile(result.state.profile);
    rec.winner_before = plurality_winner(rec.score_before, tie);
    rec.winner_after = plurality_winner(rec.score_after, tie);
    return result;
  }
  return std::nullopt;
}

RunOutcome run(const GameState& initial, std::span<const VoterConfig> configs, const TieBreakOrder& tie,
               std::size_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  RunOutcome out;
  out.final_state = initial;
  // Moves made before each visited (profile, next_voter) key.
  std::map<std::pair<std::vector<Candidate>, std::size_t>, std::size_t> seen;
  while (true) {
    auto key = std::make_pair(out.final_state.profile.ballots(), out.final_state.next_voter);
    if (auto it = seen.find(key); it != seen.end()) {
      out.status = RunStatus::cycle;
      out.cycle_start = it->second;
      out.cycle_length = out.trace.size() - it->second;
      break;
    }
    seen.emplace(std::move(key), out.trace.size());

    if (out.trace.size() >= max_steps) {
      out.status = RunStatus::step_limit;
      break;
    }
    auto next = step(out.final_state, configs, tie);
    if (!next) {
      out.status = RunStatus::converged;
      break;
    }
    out.final_state = std::move(next->state);
    out.trace.push_back(std::move(next->move));
  }
  out.steps = out.trace.size();
  return out;
}

bool replay_matches(const BallotProfile& initial, std::span<const MoveRecord> trace, const TieBreakOrder& tie) {
  BallotProfile profile = initial;
  for (const auto& rec : trace) {
    if (rec.voter >= profile.size() || profile[rec.voter] != rec.from) return false;
    const ScoreVector before = scores_from_profile(profile);
    profile.set(rec.voter, rec.to);
    const ScoreVector after = scores_from_profile(profile);
    if (before != rec.score_before || after != rec.score_after) return false;
    if (plurality_winner(before, tie) != rec.winner_before) return false;
    if (plurality_winner(after, tie) != rec.winner_after) return false;
  }
  return true;
}

BallotProfile truthful_profile(std::span<const VoterConfig> configs) {
  if (configs.empty()) throw std::invalid_argument("no voters");
  std::vector<Candidate> ballots;
  for (const auto& c : configs) ballots.push_back(c.preference.top());
  return BallotProfile(std::move(ballots), configs.front().preference.size());
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged: return "converged";
    case RunStatus::cycle: return "cycle";
    case RunStatus::step_limit: return "step_limit";
  }
  return "step_limit";
}

}  // namespace beliefvote
