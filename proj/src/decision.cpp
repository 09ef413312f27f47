#include "beliefvote/decision.hpp"

#include <stdexcept>

namespace beliefvote {

namespace {

Verdict verdict_from_sign(const Rational& value) {
  if (value.sign() > 0) return Verdict::strictly_preferred;
  if (value.sign() == 0) return Verdict::weakly_preferred;
  return Verdict::not_preferred;
}

}  // namespace

DecisionRule::DecisionRule(RuleKind kind, std::optional<Rational> alpha) : kind_(kind), alpha_(alpha) {
  if (takes_alpha(kind) != alpha.has_value()) {
    throw std::invalid_argument(std::string("rule ") + to_string(kind) +
                                (alpha ? " does not take alpha" : " requires alpha"));
  }
  if (alpha && (*alpha < Rational(0) || *alpha > Rational(1))) {
    throw std::invalid_argument("alpha " + alpha->str() + " outside [0, 1]");
  }
}

int move_utility(UtilityModel model, const Preference& pref, Candidate from, Candidate to,
                 const ScoreVector& s, const TieBreakOrder& tie) {
  const Candidate before = plurality_winner(s, tie);
  const Candidate after = plurality_winner(apply_move(s, from, to), tie);
  switch (model) {
    case UtilityModel::meir_sign:
      if (after == before) return 0;
      return pref.prefers(after, before) ? 1 : -1;
    case UtilityModel::direct_best_response:
      if (after == before) return 0;
      if (pref.prefers(after, before)) return after == to ? 1 : 0;
      return -1;
    case UtilityModel::cardinal_rank:
      return static_cast<int>(pref.rank_of(before)) - static_cast<int>(pref.rank_of(after));
  }
  return 0;
}

MoveEvaluation evaluate_move(const MassFunction& mass, const DecisionRule& rule, UtilityModel model,
                             const Preference& pref, Candidate from, Candidate to, const TieBreakOrder& tie) {
  const ExpectationBounds bounds = expectation_bounds(mass, [&](const ScoreVector& s) {
    return Rational(move_utility(model, pref, from, to, s, tie));
  });

  MoveEvaluation eval;
  eval.lower = bounds.lower;
  eval.upper = bounds.upper;
  switch (rule.kind()) {
    case RuleKind::pessimistic:
      eval.criterion_value = bounds.lower.sign() >= 0 ? bounds.upper : bounds.lower;
      break;
    case RuleKind::pignistic:
      eval.pignistic_value = bounds.pignistic;
      eval.criterion_value = bounds.pignistic;
      break;
    case RuleKind::mixture: {
      const Rational& a = *rule.alpha();
      eval.pignistic_value = bounds.pignistic;
      eval.criterion_value = a * bounds.lower + (Rational(1) - a) * bounds.pignistic;
      break;
    }
    case RuleKind::hurwicz: {
      const Rational& a = *rule.alpha();
      eval.criterion_value = a * bounds.lower + (Rational(1) - a) * bounds.upper;
      break;
    }
  }
  eval.verdict = verdict_from_sign(eval.criterion_value);
  return eval;
}

long pignistic_cardinal(const MassFunction& mass, const Preference& pref, Candidate from, Candidate to,
                        const TieBreakOrder& tie) {
  if (mass.size() != 1) throw std::invalid_argument("pignistic_cardinal needs a single focal element");
  long diff = 0;
  for (const auto& s : mass.focal_elements().front().focal.points())
    diff += move_utility(UtilityModel::meir_sign, pref, from, to, s, tie);
  return diff;
}

bool dominating_manipulation(const Preference& pref, std::span<const PartialPreference> others,
                             Candidate from, Candidate to, const TieBreakOrder& tie, std::size_t cap) {
  const std::size_t m = pref.size();
  std::vector<BallotMass> ballots;
  ballots.push_back({BallotFocal{{from}, Rational(1)}});
  for (const auto& partial : others) {
    if (partial.size() != m) throw std::invalid_argument("partial preference over a different candidate set");
    ballots.push_back({BallotFocal{possible_tops(partial), Rational(1)}});
  }
  const MassFunction mass = product_mass(ballots, m, cap);
  return evaluate_move(mass, DecisionRule::pessimistic(), UtilityModel::meir_sign, pref, from, to, tie)
             .verdict == Verdict::strictly_preferred;
}

const char* to_string(UtilityModel model) {
  switch (model) {
    case UtilityModel::meir_sign: return "meir_sign";
    case UtilityModel::direct_best_response: return "direct_best_response";
    case UtilityModel::cardinal_rank: return "cardinal_rank";
  }
  return "meir_sign";
}

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::pessimistic: return "pessimistic";
    case RuleKind::pignistic: return "pignistic";
    case RuleKind::mixture: return "mixture";
    case RuleKind::hurwicz: return "hurwicz";
  }
  return "pessimistic";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::strictly_preferred: return "strictly_preferred";
    case Verdict::weakly_preferred: return "weakly_preferred";
    case Verdict::not_preferred: return "not_preferred";
  }
  return "not_preferred";
}

}  // namespace beliefvote
