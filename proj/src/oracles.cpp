#include "beliefvote/oracles.hpp"

#include <stdexcept>

#include "beliefvote/error.hpp"

namespace beliefvote::diagnostics {

namespace {

void check_caps(const MassFunction& mass, OracleCaps caps) {
  if (mass.size() > caps.max_focal) throw CapExceeded("oracle: too many focal elements");
  for (const auto& a : mass.focal_elements())
    if (a.focal.size() > caps.max_points) throw CapExceeded("oracle: focal element too large");
}

template <class Better>
Rational extreme_selection(const MassFunction& mass, const ScoreUtility& u, OracleCaps caps, Better better) {
  check_caps(mass, caps);
  auto focal = mass.focal_elements();
  std::vector<std::size_t> pick(focal.size(), 0);
  std::optional<Rational> best;
  while (true) {
    Rational value;
    for (std::size_t k = 0; k < focal.size(); ++k) value += focal[k].weight * u(focal[k].focal.points()[pick[k]]);
    if (!best || better(value, *best)) best = value;
    std::size_t k = 0;
    while (k < focal.size() && ++pick[k] == focal[k].focal.size()) pick[k++] = 0;
    if (k == focal.size()) break;
  }
  return *best;
}

// Highest count; among equals the candidate with the smallest tie priority.
Candidate winner_of(const std::vector<int>& counts, const TieBreakOrder& tie) {
  Candidate w = 0;
  for (Candidate c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[w] || (counts[c] == counts[w] && tie.priority(c) < tie.priority(w))) w = c;
  }
  return w;
}

int utility_of(UtilityModel model, const Preference& pref, Candidate from, Candidate to,
               const std::vector<int>& counts, const TieBreakOrder& tie) {
  std::vector<int> moved = counts;
  if (from != to) {
    moved[from] = moved[from] > 0 ? moved[from] - 1 : 0;
    moved[to] += 1;
  }
  const Candidate old_w = winner_of(counts, tie);
  const Candidate new_w = winner_of(moved, tie);
  const int old_rank = static_cast<int>(pref.rank_of(old_w));
  const int new_rank = static_cast<int>(pref.rank_of(new_w));
  if (model == UtilityModel::cardinal_rank) return old_rank - new_rank;
  if (new_rank == old_rank) return 0;
  if (new_rank > old_rank) return -1;
  if (model == UtilityModel::direct_best_response && new_w != to) return 0;
  return 1;
}

bool strictly_prefers_move(const VoterConfig& config, const MassFunction& mass, Candidate from, Candidate to,
                           const TieBreakOrder& tie) {
  auto u = [&](const ScoreVector& s) { return utility_of(config.utility, config.preference, from, to, s.counts(), tie); };
  Rational lower, upper;
  for (const auto& a : mass.focal_elements()) {
    int lo = u(a.focal.points().front());
    int hi = lo;
    for (const auto& s : a.focal.points()) {
      lo = std::min(lo, u(s));
      hi = std::max(hi, u(s));
    }
    lower += a.weight * Rational(lo);
    upper += a.weight * Rational(hi);
  }
  auto expected_pignistic = [&] {
    Rational e;
    const ScoreDistribution p_star = oracle_pignistic(mass);
    for (const auto& [s, p] : p_star.support()) e += p * Rational(u(s));
    return e;
  };
  const Rational zero(0);
  switch (config.rule.kind()) {
    case RuleKind::pessimistic:
      return lower >= zero && upper > zero;
    case RuleKind::pignistic:
      return expected_pignistic() > zero;
    case RuleKind::mixture: {
      const Rational a = *config.rule.alpha();
      return a * lower + (Rational(1) - a) * expected_pignistic() > zero;
    }
    case RuleKind::hurwicz: {
      const Rational a = *config.rule.alpha();
      return a * lower + (Rational(1) - a) * upper > zero;
    }
  }
  return false;
}

}  // namespace

Rational oracle_lower_expectation(const MassFunction& mass, const ScoreUtility& u, OracleCaps caps) {
  return extreme_selection(mass, u, caps, [](const Rational& a, const Rational& b) { return a < b; });
}

Rational oracle_upper_expectation(const MassFunction& mass, const ScoreUtility& u, OracleCaps caps) {
  return extreme_selection(mass, u, caps, [](const Rational& a, const Rational& b) { return a > b; });
}

ScoreDistribution oracle_pignistic(const MassFunction& mass) {
  std::vector<std::pair<ScoreVector, Rational>> out;
  for (const auto& point : mass.support()) {
    Rational p;
    for (const auto& a : mass.focal_elements()) {
      bool member = false;
      for (const auto& s : a.focal.points()) member = member || s == point;
      if (member) p += a.weight / Rational(static_cast<std::int64_t>(a.focal.size()));
    }
    out.emplace_back(point, p);
  }
  return ScoreDistribution(std::move(out));
}

bool oracle_equilibrium(const GameState& state, std::span<const VoterConfig> configs, const TieBreakOrder& tie) {
  if (configs.size() != state.profile.size()) throw std::invalid_argument("one config per voter required");
  std::vector<int> counts(tie.size(), 0);
  for (Candidate b : state.profile.ballots()) counts[b] += 1;
  const ScoreVector broadcast(counts);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const MassFunction mass = belief_for(configs[i], broadcast);
    for (Candidate to = 0; to < tie.size(); ++to) {
      if (to == state.profile[i]) continue;
      if (strictly_prefers_move(configs[i], mass, state.profile[i], to, tie)) return false;
    }
  }
  return true;
}

std::size_t completion_count(std::span<const PartialPreference> others) {
  std::size_t total = 1;
  for (const auto& p : others) total *= linear_extensions(p).size();
  return total;
}

bool oracle_dominance(const Preference& pref, std::span<const PartialPreference> others, Candidate from,
                      Candidate to, const TieBreakOrder& tie, std::size_t max_completions) {
  std::vector<std::vector<Preference>> completions;
  std::size_t total = 1;
  for (const auto& p : others) {
    completions.push_back(linear_extensions(p));
    total *= completions.back().size();
    if (total > max_completions) throw CapExceeded("oracle_dominance: too many completions");
  }
  bool some_better = false;
  std::vector<std::size_t> pick(others.size(), 0);
  while (true) {
    std::vector<int> counts(pref.size(), 0);
    counts[from] += 1;
    for (std::size_t v = 0; v < others.size(); ++v) counts[completions[v][pick[v]].top()] += 1;
    const int u = utility_of(UtilityModel::meir_sign, pref, from, to, counts, tie);
    if (u < 0) return false;
    some_better = some_better || u > 0;
    std::size_t v = 0;
    while (v < others.size() && ++pick[v] == completions[v].size()) pick[v++] = 0;
    if (v == others.size()) break;
  }
  return some_better;
}

}  // namespace beliefvote::diagnostics
