#include "beliefvote/dynamics.hpp"
#include "beliefvote/oracles.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace beliefvote;
using testsupport::pref;
using testsupport::sv;

namespace {

VoterConfig layered_voter(Preference p, int radius, DecisionRule rule = DecisionRule::pessimistic(),
                          UtilityModel utility = UtilityModel::meir_sign) {
  return VoterConfig{std::move(p), LayeredBeliefSpec{LayerKind::nested, Metric::l1_addremove, {radius}, {Rational(1)}},
                     std::move(rule), utility};
}

}  // namespace

TEST_CASE("a lone voter already electing their favourite is in equilibrium") {
  const std::vector<VoterConfig> voters = {layered_voter(pref({0, 1, 2}), 1)};
  const GameState state{BallotProfile({0}, 3), 0, 0};
  const auto report = equilibrium_check(state, voters, TieBreakOrder::identity(3));
  CHECK(report.equilibrium);
  CHECK_FALSE(report.witness.has_value());
  CHECK_FALSE(step(state, voters, TieBreakOrder::identity(3)).has_value());
  const RunOutcome out = run(state, voters, TieBreakOrder::identity(3));
  CHECK(out.status == RunStatus::converged);
  CHECK(out.steps == 0);
}

TEST_CASE("a lone voter away from their favourite moves once") {
  const std::vector<VoterConfig> voters = {layered_voter(pref({1, 0, 2}), 0)};
  const RunOutcome out = run(GameState{BallotProfile({2}, 3), 0, 0}, voters, TieBreakOrder::identity(3));
  CHECK(out.status == RunStatus::converged);
  REQUIRE(out.steps == 1);
  CHECK(out.trace[0].to == 1);
}

TEST_CASE("the ten-voter pignistic state is not an equilibrium") {
  const Scenario s = testsupport::load_fixture("prop1_counterexample");
  CHECK(scores_from_profile(s.initial.profile) == sv({2, 2, 3, 3}));
  const auto report = equilibrium_check(s.initial, s.voters, s.tie);
  CHECK_FALSE(report.equilibrium);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->evaluation.verdict == Verdict::strictly_preferred);

  // Voter 8 (index 7) nets zero on d->a over S_1 and prefers d->b.
  const VoterConfig& voter8 = s.voters[7];
  const MassFunction mass = belief_for(voter8, sv({2, 2, 3, 3}));
  const auto da = evaluate_move(mass, voter8.rule, voter8.utility, voter8.preference, 3, 0, s.tie);
  CHECK(da.criterion_value == Rational(0));
  CHECK(da.verdict == Verdict::weakly_preferred);
  const auto best = best_move(voter8, 3, sv({2, 2, 3, 3}), s.tie);
  REQUIRE(best.has_value());
  CHECK(best->first == 1);
  CHECK(best->second.criterion_value == Rational(1, 9));

  const auto first = step(s.initial, s.voters, s.tie);
  REQUIRE(first.has_value());
  CHECK(first->move.voter == 7);
  CHECK(first->move.to == 1);
}

TEST_CASE("fixed beliefs can cycle and the cycle replays") {
  const Scenario s = testsupport::load_fixture("example4");
  const RunOutcome out = run(s.initial, s.voters, s.tie, s.max_steps);
  REQUIRE(out.status == RunStatus::cycle);
  CHECK(out.cycle_length == 4);
  CHECK(replay_matches(s.initial.profile, out.trace, s.tie));

  // Starting from the first cycle state reproduces the same block of moves.
  GameState start = s.initial;
  for (std::size_t k = 0; k < out.cycle_start; ++k) start = step(start, s.voters, s.tie)->state;
  GameState cur = start;
  for (std::size_t k = 0; k < out.cycle_length; ++k) {
    auto next = step(cur, s.voters, s.tie);
    REQUIRE(next.has_value());
    CHECK(next->move.voter == out.trace[out.cycle_start + k].voter);
    CHECK(next->move.to == out.trace[out.cycle_start + k].to);
    cur = next->state;
  }
  CHECK(cur.profile == start.profile);
  CHECK(cur.next_voter == start.next_voter);

  const auto& cycle = std::span(out.trace).subspan(out.cycle_start, out.cycle_length);
  for (const auto& mv : cycle) CHECK(mv.criterion_value > Rational(0));
}

TEST_CASE("step limit") {
  const Scenario s = testsupport::load_fixture("example4");
  const RunOutcome out = run(s.initial, s.voters, s.tie, 2);
  CHECK(out.status == RunStatus::step_limit);
  CHECK(out.steps == 2);
  CHECK_THROWS(run(s.initial, s.voters, s.tie, 0));
}

TEST_CASE("engine input validation") {
  const std::vector<VoterConfig> voters = {layered_voter(pref({0, 1, 2}), 1)};
  CHECK_THROWS(step(GameState{BallotProfile({0, 1}, 3), 0, 0}, voters, TieBreakOrder::identity(3)));
  CHECK_THROWS(step(GameState{BallotProfile({0}, 3), 0, 3}, voters, TieBreakOrder::identity(3)));
  CHECK_THROWS(step(GameState{BallotProfile({0}, 3), 0, 0}, voters, TieBreakOrder::identity(4)));
  CHECK_THROWS(truthful_profile(std::span<const VoterConfig>{}));
}

TEST_CASE("move policy prefers the voter's favourite destination on equal values") {
  // At (0,0,0) every move makes its destination win, so b and c both score +1.
  const MassFunction mass = MassFunction::certain(FocalElement::of({sv({0, 0, 0})}));
  const VoterConfig voter{pref({2, 1, 0}), mass, DecisionRule::pessimistic(), UtilityModel::meir_sign};
  const auto best = best_move(voter, 0, sv({1, 0, 0}), TieBreakOrder::identity(3));
  REQUIRE(best.has_value());
  CHECK(best->first == 2);
  const VoterConfig other{pref({1, 2, 0}), mass, DecisionRule::pessimistic(), UtilityModel::meir_sign};
  CHECK(best_move(other, 0, sv({1, 0, 0}), TieBreakOrder::identity(3))->first == 1);
}

TEST_CASE("move policy maximizes the criterion value") {
  // Cardinal utility: moving to the favourite is worth 2, to the middle 1.
  const MassFunction mass = MassFunction::certain(FocalElement::of({sv({0, 0, 0})}));
  const VoterConfig voter{pref({1, 2, 0}), mass, DecisionRule::pignistic(), UtilityModel::cardinal_rank};
  const auto best = best_move(voter, 0, sv({1, 0, 0}), TieBreakOrder({0, 2, 1}));
  REQUIRE(best.has_value());
  CHECK(best->first == 1);
  CHECK(best->second.criterion_value == Rational(2));
}

TEST_CASE("random runs are replayable, deterministic and end in checked equilibria") {
  for (Family family : {Family::theorem1_nested, Family::theorem1_partitioned, Family::theorem2_hurwicz,
                        Family::pignistic_uniform}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const ScenarioFile file = generate_instance(seed, 2 + seed % 5, 3 + seed % 2, family);
      const Scenario s = build_scenario(file);
      const RunOutcome a = run(s.initial, s.voters, s.tie, s.max_steps);
      const RunOutcome b = run(s.initial, s.voters, s.tie, s.max_steps);
      CHECK(a.trace == b.trace);
      CHECK(replay_matches(s.initial.profile, a.trace, s.tie));
      for (const auto& mv : a.trace) CHECK(mv.criterion_value > Rational(0));
      if (a.status == RunStatus::converged) {
        CHECK(equilibrium_check(a.final_state, s.voters, s.tie).equilibrium);
        CHECK(diagnostics::oracle_equilibrium(a.final_state, s.voters, s.tie));
      }
    }
  }
}

TEST_CASE("zero-radius direct best response moves to the new winner") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Scenario s = build_scenario(generate_instance(seed, 1 + seed % 6, 3 + seed % 2, Family::meir_r0));
    const RunOutcome out = run(s.initial, s.voters, s.tie, s.max_steps);
    CHECK(out.status == RunStatus::converged);
    for (const auto& mv : out.trace) CHECK(mv.winner_after == mv.to);
  }
}

TEST_CASE("replay detects tampering") {
  const Scenario s = testsupport::load_fixture("example4");
  RunOutcome out = run(s.initial, s.voters, s.tie, s.max_steps);
  REQUIRE(!out.trace.empty());
  auto bad = out.trace;
  bad[0].score_after = sv({3, 0, 0});
  CHECK_FALSE(replay_matches(s.initial.profile, bad, s.tie));
  bad = out.trace;
  bad[0].from = 0;
  CHECK_FALSE(replay_matches(s.initial.profile, bad, s.tie));
  bad = out.trace;
  bad[0].winner_after = 1;
  CHECK_FALSE(replay_matches(s.initial.profile, bad, s.tie));
}

TEST_CASE("truthful profile and belief re-centering") {
  const std::vector<VoterConfig> voters = {layered_voter(pref({2, 1, 0}), 1), layered_voter(pref({0, 1, 2}), 1)};
  CHECK(truthful_profile(voters).ballots() == std::vector<Candidate>{2, 0});
  const MassFunction around = belief_for(voters[0], sv({1, 0, 1}));
  CHECK(around.focal_elements()[0].focal.contains(sv({1, 0, 1})));
  CHECK(around.focal_elements()[0].focal.contains(sv({0, 0, 1})));
  CHECK(around.focal_elements()[0].focal.size() == 6);
}
