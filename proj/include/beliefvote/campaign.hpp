#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beliefvote/dynamics.hpp"
#include "beliefvote/scenario.hpp"

namespace beliefvote {

struct CampaignOptions {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  Family family = Family::theorem1_nested;
  std::size_t n_min = 1;
  std::size_t n_max = 6;
  std::size_t m_min = 3;
  std::size_t m_max = 4;
  std::size_t max_steps = kDefaultMaxSteps;
  /// Start from uniformly random ballots instead of truthful ones.
  bool random_start = false;
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

struct CampaignRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  RunStatus status = RunStatus::step_limit;
  std::size_t steps = 0;
  std::size_t cycle_length = 0;
  /// Moves whose destination did not become the new winner.
  std::size_t off_target_moves = 0;
  /// Moves the equilibrium oracle disagreed with at the final state.
  bool oracle_agrees = true;
};

struct CampaignResult {
  std::vector<CampaignRow> rows;
  std::size_t converged = 0;
  std::size_t cycles = 0;
  std::size_t step_limits = 0;
  std::size_t max_steps_seen = 0;
  std::size_t off_target_moves = 0;
  std::size_t oracle_disagreements = 0;
  std::vector<std::uint64_t> cycle_seeds;

  double convergence_rate() const { return rows.empty() ? 0.0 : double(converged) / double(rows.size()); }
};

/// The scenario run for instance `index` of a campaign.
ScenarioFile campaign_instance(const CampaignOptions& options, std::size_t index);
CampaignRow run_instance(const ScenarioFile& file);
/// Rows are ordered by seed regardless of thread scheduling.
CampaignResult run_campaign(const CampaignOptions& options);

std::string campaign_csv(const CampaignResult& result);

}  // namespace beliefvote
