#include "beliefvote/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "beliefvote/oracles.hpp"

namespace beliefvote {

ScenarioFile campaign_instance(const CampaignOptions& options, std::size_t index) {
  if (options.n_min < 1 || options.n_min > options.n_max) throw std::invalid_argument("campaign: bad voter range");
  if (options.m_min < 3 || options.m_min > options.m_max) throw std::invalid_argument("campaign: bad candidate range");
  const std::uint64_t seed = options.seed + index;
  InstanceRng sizes(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t n = options.n_min + sizes.below(options.n_max - options.n_min + 1);
  const std::size_t m = options.m_min + sizes.below(options.m_max - options.m_min + 1);
  ScenarioFile file = generate_instance(seed, n, m, options.family);
  file.max_steps = options.max_steps;
  if (options.random_start) {
    InstanceRng ballots(seed ^ 0xbf58476d1ce4e5b9ULL);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(file.candidates[ballots.below(m)]);
    file.initial_ballots = std::move(labels);
  }
  return file;
}

CampaignRow run_instance(const ScenarioFile& file) {
  const Scenario scenario = build_scenario(file);
  const RunOutcome outcome = run(scenario.initial, scenario.voters, scenario.tie, scenario.max_steps);
  CampaignRow row;
  row.seed = file.seed;
  row.n = scenario.voters.size();
  row.m = scenario.candidates.size();
  row.status = outcome.status;
  row.steps = outcome.steps;
  row.cycle_length = outcome.cycle_length;
  row.off_target_moves = static_cast<std::size_t>(std::count_if(
      outcome.trace.begin(), outcome.trace.end(), [](const MoveRecord& mv) { return mv.winner_after != mv.to; }));
  if (outcome.status == RunStatus::converged) {
    row.oracle_agrees = diagnostics::oracle_equilibrium(outcome.final_state, scenario.voters, scenario.tie);
  }
  return row;
}

CampaignResult run_campaign(const CampaignOptions& options) {
  std::vector<CampaignRow> rows(options.count);
  std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(options.count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < options.count && !failed; i = next++) {
      try {
        rows[i] = run_instance(campaign_instance(options, i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  CampaignResult result;
  for (const auto& row : rows) {
    switch (row.status) {
      case RunStatus::converged: ++result.converged; break;
      case RunStatus::cycle:
        ++result.cycles;
        result.cycle_seeds.push_back(row.seed);
        break;
      case RunStatus::step_limit: ++result.step_limits; break;
    }
    result.max_steps_seen = std::max(result.max_steps_seen, row.steps);
    result.off_target_moves += row.off_target_moves;
    if (!row.oracle_agrees) ++result.oracle_disagreements;
  }
  result.rows = std::move(rows);
  return result;
}

std::string campaign_csv(const CampaignResult& result) {
  std::ostringstream out;
  out << "seed,status,steps,cycle_len\n";
  for (const auto& row : result.rows) {
    out << row.seed << ',' << to_string(row.status) << ',' << row.steps << ',' << row.cycle_length << '\n';
  }
  return out.str();
}

}  // namespace beliefvote
