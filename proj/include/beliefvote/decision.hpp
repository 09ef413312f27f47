#pragma once

#include <optional>
#include <span>

#include "beliefvote/election.hpp"
#include "beliefvote/rational.hpp"
#include "beliefvote/uncertainty.hpp"

namespace beliefvote {

/// How a voter scores one score state for a move from -> to.
///   meir_sign:            +1 / 0 / -1 as the winner gets better / stays / gets worse.
///   direct_best_response: +1 only when the destination itself becomes the
///                         (better) winner; a non-destination improvement is 0.
///   cardinal_rank:        rank_utility(new winner) - rank_utility(old winner).
enum class UtilityModel { meir_sign, direct_best_response, cardinal_rank };

enum class RuleKind { pessimistic, pignistic, mixture, hurwicz };

class DecisionRule {
 public:
  static DecisionRule pessimistic() { return DecisionRule(RuleKind::pessimistic, std::nullopt); }
  static DecisionRule pignistic() { return DecisionRule(RuleKind::pignistic, std::nullopt); }
  /// alpha * lower + (1 - alpha) * pignistic.
  static DecisionRule mixture(Rational alpha) { return DecisionRule(RuleKind::mixture, alpha); }
  /// alpha * lower + (1 - alpha) * upper.
  static DecisionRule hurwicz(Rational alpha) { return DecisionRule(RuleKind::hurwicz, alpha); }
  static bool takes_alpha(RuleKind kind) { return kind == RuleKind::mixture || kind == RuleKind::hurwicz; }

  /// Throws std::invalid_argument if alpha is missing, superfluous or outside [0, 1].
  DecisionRule(RuleKind kind, std::optional<Rational> alpha);

  RuleKind kind() const { return kind_; }
  const std::optional<Rational>& alpha() const { return alpha_; }

  friend bool operator==(const DecisionRule&, const DecisionRule&) = default;

 private:
  RuleKind kind_;
  std::optional<Rational> alpha_;
};

enum class Verdict { strictly_preferred, weakly_preferred, not_preferred };

struct MoveEvaluation {
  Rational lower;
  Rational upper;
  std::optional<Rational> pignistic_value;
  /// Sign encodes the verdict for every rule. For the pessimistic rule the
  /// value is `upper` when lower >= 0 and `lower` otherwise.
  Rational criterion_value;
  Verdict verdict = Verdict::not_preferred;
};

int move_utility(UtilityModel model, const Preference& pref, Candidate from, Candidate to,
                 const ScoreVector& s, const TieBreakOrder& tie);

MoveEvaluation evaluate_move(const MassFunction& mass, const DecisionRule& rule, UtilityModel model,
                             const Preference& pref, Candidate from, Candidate to, const TieBreakOrder& tie);

/// #improving - #worsening states of the single focal set under meir_sign.
/// Throws std::invalid_argument if the mass has more than one focal element.
long pignistic_cardinal(const MassFunction& mass, const Preference& pref, Candidate from, Candidate to,
                        const TieBreakOrder& tie);

/// Dominating manipulation against voters described by partial preferences:
/// the score set they can produce (each voting for one of their possible tops,
/// the manipulator voting `from`) is taken as a vacuous belief and the move is
/// evaluated with meir_sign under the pessimistic rule.
bool dominating_manipulation(const Preference& pref, std::span<const PartialPreference> others,
                             Candidate from, Candidate to, const TieBreakOrder& tie,
                             std::size_t cap = kDefaultExpansionCap);

const char* to_string(UtilityModel model);
const char* to_string(RuleKind kind);
const char* to_string(Verdict verdict);

}  // namespace beliefvote
