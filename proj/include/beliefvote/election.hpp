#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace beliefvote {

/// Candidates are indices into a CandidateSet; labels live at the I/O boundary.
using Candidate = std::size_t;

class CandidateSet {
 public:
  /// Labels must be distinct and there must be at least two of them.
  explicit CandidateSet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Candidate c) const { return labels_.at(c); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Candidate> find(std::string_view label) const;
  /// Throws std::invalid_argument on an unknown label.
  Candidate index_of(std::string_view label) const;

 private:
  std::vector<std::string> labels_;
};

/// Throws std::invalid_argument unless `order` is a permutation of 0..m-1.
void require_permutation(std::span<const Candidate> order, std::size_t m, const char* what);

/// Lexicographic tie-break: order()[0] is favored in every tie.
class TieBreakOrder {
 public:
  explicit TieBreakOrder(std::vector<Candidate> order);
  static TieBreakOrder identity(std::size_t m);

  std::size_t size() const { return order_.size(); }
  const std::vector<Candidate>& order() const { return order_; }
  /// Smaller is more favored.
  std::size_t priority(Candidate c) const { return priority_[c]; }

 private:
  std::vector<Candidate> order_;
  std::vector<std::size_t> priority_;
};

/// Strict linear order, best candidate first.
class Preference {
 public:
  explicit Preference(std::vector<Candidate> ranking);

  std::size_t size() const { return ranking_.size(); }
  const std::vector<Candidate>& ranking() const { return ranking_; }
  Candidate top() const { return ranking_.front(); }
  std::size_t rank_of(Candidate c) const { return position_[c]; }
  bool prefers(Candidate x, Candidate y) const { return position_[x] < position_[y]; }

  friend bool operator==(const Preference& a, const Preference& b) { return a.ranking_ == b.ranking_; }
  friend auto operator<=>(const Preference& a, const Preference& b) { return a.ranking_ <=> b.ranking_; }

 private:
  std::vector<Candidate> ranking_;
  std::vector<std::size_t> position_;
};

/// Strict partial order given as (better, worse) pairs. The constructor
/// computes the transitive closure and rejects cycles.
class PartialPreference {
 public:
  using Pair = std::pair<Candidate, Candidate>;

  PartialPreference(std::size_t m, std::vector<Pair> pairs);
  static PartialPreference complete(const Preference& pref);

  std::size_t size() const { return m_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  /// True when x is above y in the transitive closure.
  bool prefers(Candidate x, Candidate y) const { return closure_[x * m_ + y]; }

 private:
  std::size_t m_;
  std::vector<Pair> pairs_;
  std::vector<bool> closure_;
};

/// Per-candidate vote counts. Entries are nonnegative; the total is not
/// constrained here because neighborhood states may drift from n.
class ScoreVector {
 public:
  ScoreVector() = default;
  explicit ScoreVector(std::vector<int> counts);
  static ScoreVector zeros(std::size_t m) { return ScoreVector(std::vector<int>(m, 0)); }

  std::size_t size() const { return counts_.size(); }
  int operator[](Candidate c) const { return counts_[c]; }
  int total() const;
  const std::vector<int>& counts() const { return counts_; }
  auto begin() const { return counts_.begin(); }
  auto end() const { return counts_.end(); }

  std::string str() const;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
  friend auto operator<=>(const ScoreVector& a, const ScoreVector& b) { return a.counts_ <=> b.counts_; }

 private:
  friend ScoreVector apply_move(const ScoreVector&, Candidate, Candidate);
  std::vector<int> counts_;
};

class BallotProfile {
 public:
  BallotProfile() = default;
  BallotProfile(std::vector<Candidate> ballots, std::size_t m);

  std::size_t size() const { return ballots_.size(); }
  Candidate operator[](std::size_t voter) const { return ballots_[voter]; }
  const std::vector<Candidate>& ballots() const { return ballots_; }
  std::size_t candidate_count() const { return m_; }
  void set(std::size_t voter, Candidate c);

  friend bool operator==(const BallotProfile&, const BallotProfile&) = default;
  friend auto operator<=>(const BallotProfile& a, const BallotProfile& b) { return a.ballots_ <=> b.ballots_; }

 private:
  std::vector<Candidate> ballots_;
  std::size_t m_ = 0;
};

ScoreVector scores_from_profile(const BallotProfile& profile);
ScoreVector scores_from_profile(const BallotProfile& profile, const CandidateSet& candidates);

/// argmax of the counts; ties go to the candidate earliest in `tie`.
Candidate plurality_winner(const ScoreVector& score, const TieBreakOrder& tie);

/// Moves one vote from `from` to `to`. The decrement is clamped at zero so the
/// move is total over neighborhood states that disagree with the mover's ballot.
ScoreVector apply_move(const ScoreVector& score, Candidate from, Candidate to);

/// u(x) = m - 1 - rank(x): best gets m-1, worst gets 0.
std::vector<int> rank_utility(const Preference& pref);

/// Every linear order consistent with `partial`, in lexicographic order of rankings.
std::vector<Preference> linear_extensions(const PartialPreference& partial);

/// Maximal elements of `partial`, ascending.
std::vector<Candidate> possible_tops(const PartialPreference& partial);

}  // namespace beliefvote
