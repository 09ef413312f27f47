#include <algorithm>

#include "beliefvote/campaign.hpp"
#include "doctest.h"

using namespace beliefvote;

TEST_CASE("campaign rows are ordered by seed and independent of thread count") {
  CampaignOptions options;
  options.seed = 500;
  options.count = 40;
  options.family = Family::theorem1_partitioned;
  options.threads = 1;
  const CampaignResult one = run_campaign(options);
  options.threads = 4;
  const CampaignResult four = run_campaign(options);
  REQUIRE(one.rows.size() == 40);
  for (std::size_t k = 0; k < one.rows.size(); ++k) {
    CHECK(one.rows[k].seed == 500 + k);
    CHECK(one.rows[k].seed == four.rows[k].seed);
    CHECK(one.rows[k].status == four.rows[k].status);
    CHECK(one.rows[k].steps == four.rows[k].steps);
  }
  CHECK(campaign_csv(one) == campaign_csv(four));
  CHECK(one.converged + one.cycles + one.step_limits == one.rows.size());
}

TEST_CASE("instance sizes stay inside the requested ranges") {
  CampaignOptions options;
  options.seed = 3;
  options.n_min = 2;
  options.n_max = 4;
  options.m_min = 3;
  options.m_max = 5;
  options.family = Family::pignistic_uniform;
  bool saw_n_max = false, saw_m_max = false;
  for (std::size_t k = 0; k < 200; ++k) {
    const ScenarioFile f = campaign_instance(options, k);
    CHECK(f.voters.size() >= 2);
    CHECK(f.voters.size() <= 4);
    CHECK(f.candidates.size() >= 3);
    CHECK(f.candidates.size() <= 5);
    saw_n_max = saw_n_max || f.voters.size() == 4;
    saw_m_max = saw_m_max || f.candidates.size() == 5;
    CHECK(f == campaign_instance(options, k));
  }
  CHECK(saw_n_max);
  CHECK(saw_m_max);
}

TEST_CASE("csv has one header and one line per instance") {
  CampaignOptions options;
  options.count = 5;
  options.family = Family::meir_r0;
  const std::string csv = campaign_csv(run_campaign(options));
  CHECK(csv.rfind("seed,status,steps,cycle_len\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("step limits are counted separately from cycles") {
  CampaignOptions options;
  options.count = 60;
  options.n_min = 4;
  options.max_steps = 1;
  options.family = Family::theorem1_nested;
  const CampaignResult result = run_campaign(options);
  CHECK(result.step_limits > 0);
  CHECK(result.cycles == 0);
  CHECK(result.convergence_rate() < 1.0);
}

TEST_CASE("meir instances move only onto the new winner") {
  CampaignOptions options;
  options.count = 100;
  options.family = Family::meir_r0;
  const CampaignResult result = run_campaign(options);
  CHECK(result.off_target_moves == 0);
  CHECK(result.cycles == 0);
  CHECK(result.oracle_disagreements == 0);
}

TEST_CASE("random starts give explicit, reproducible ballots") {
  CampaignOptions options;
  options.family = Family::theorem2_hurwicz;
  options.random_start = true;
  bool non_truthful = false;
  for (std::size_t k = 0; k < 50; ++k) {
    const ScenarioFile f = campaign_instance(options, k);
    REQUIRE(f.initial_ballots.has_value());
    CHECK(f.initial_ballots->size() == f.voters.size());
    CHECK(f == campaign_instance(options, k));
    for (std::size_t i = 0; i < f.voters.size(); ++i)
      non_truthful = non_truthful || (*f.initial_ballots)[i] != f.voters[i].preference.front();
  }
  CHECK(non_truthful);
  options.count = 200;
  const CampaignResult result = run_campaign(options);
  CHECK(result.converged == result.rows.size());
}
