#pragma once

#include <span>

#include "beliefvote/dynamics.hpp"
#include "beliefvote/uncertainty.hpp"

/// Brute-force reference implementations. They deliberately avoid the code
/// paths they check: selections instead of per-focal minima, point-first
/// pignistic sums, completion enumeration instead of possible tops.
namespace beliefvote::diagnostics {

struct OracleCaps {
  std::size_t max_focal = 6;
  std::size_t max_points = 6;
};

/// min over selection functions (one point per focal set) of sum M(S) u(sel(S)).
Rational oracle_lower_expectation(const MassFunction& mass, const ScoreUtility& u, OracleCaps caps = {});
/// max over selection functions.
Rational oracle_upper_expectation(const MassFunction& mass, const ScoreUtility& u, OracleCaps caps = {});

/// For each support point, sums M(S)/|S| over the focal sets containing it.
ScoreDistribution oracle_pignistic(const MassFunction& mass);

/// Scans all n(m-1) moves and re-derives each verdict from raw lower, upper
/// and pignistic expectations.
bool oracle_equilibrium(const GameState& state, std::span<const VoterConfig> configs, const TieBreakOrder& tie);

/// Loops over the Cartesian product of linear extensions of the others'
/// partial orders; true iff the move is never worse and sometimes better.
bool oracle_dominance(const Preference& pref, std::span<const PartialPreference> others, Candidate from,
                      Candidate to, const TieBreakOrder& tie, std::size_t max_completions = 10'000);

/// Number of joint completions oracle_dominance would enumerate.
std::size_t completion_count(std::span<const PartialPreference> others);

}  // namespace beliefvote::diagnostics
