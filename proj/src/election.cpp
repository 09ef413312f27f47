#include "beliefvote/election.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "beliefvote/error.hpp"

namespace beliefvote {

CandidateSet::CandidateSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw std::invalid_argument("need at least two candidates");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("empty candidate label");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate candidate label '" + l + "'");
  }
}

std::optional<Candidate> CandidateSet::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Candidate>(it - labels_.begin());
}

Candidate CandidateSet::index_of(std::string_view label) const {
  if (auto c = find(label)) return *c;
  throw std::invalid_argument("unknown candidate '" + std::string(label) + "'");
}

void require_permutation(std::span<const Candidate> order, std::size_t m, const char* what) {
  if (order.size() != m) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(m) +
                                " candidates, got " + std::to_string(order.size()));
  }
  std::vector<bool> seen(m, false);
  for (Candidate c : order) {
    if (c >= m || seen[c]) throw std::invalid_argument(std::string(what) + ": not a permutation");
    seen[c] = true;
  }
}

TieBreakOrder::TieBreakOrder(std::vector<Candidate> order) : order_(std::move(order)) {
  require_permutation(order_, order_.size(), "tie-break order");
  priority_.resize(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) priority_[order_[i]] = i;
}

TieBreakOrder TieBreakOrder::identity(std::size_t m) {
  std::vector<Candidate> order(m);
  std::iota(order.begin(), order.end(), Candidate{0});
  return TieBreakOrder(std::move(order));
}

Preference::Preference(std::vector<Candidate> ranking) : ranking_(std::move(ranking)) {
  require_permutation(ranking_, ranking_.size(), "preference");
  if (ranking_.empty()) throw std::invalid_argument("empty preference");
  position_.resize(ranking_.size());
  for (std::size_t i = 0; i < ranking_.size(); ++i) position_[ranking_[i]] = i;
}

PartialPreference::PartialPreference(std::size_t m, std::vector<Pair> pairs)
    : m_(m), pairs_(std::move(pairs)), closure_(m * m, false) {
  for (auto [x, y] : pairs_) {
    if (x >= m || y >= m) throw std::invalid_argument("partial preference: candidate out of range");
    closure_[x * m + y] = true;
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (closure_[i * m + k])
        for (std::size_t j = 0; j < m; ++j)
          if (closure_[k * m + j]) closure_[i * m + j] = true;
  for (std::size_t i = 0; i < m; ++i)
    if (closure_[i * m + i]) throw std::invalid_argument("partial preference is cyclic");
}

PartialPreference PartialPreference::complete(const Preference& pref) {
  std::vector<Pair> pairs;
  const auto& r = pref.ranking();
  for (std::size_t i = 0; i + 1 < r.size(); ++i) pairs.emplace_back(r[i], r[i + 1]);
  return PartialPreference(pref.size(), std::move(pairs));
}

ScoreVector::ScoreVector(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_)
    if (c < 0) throw std::invalid_argument("negative score entry");
}

int ScoreVector::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

std::string ScoreVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(counts_[i]);
  }
  return out + ")";
}

BallotProfile::BallotProfile(std::vector<Candidate> ballots, std::size_t m)
    : ballots_(std::move(ballots)), m_(m) {
  for (Candidate c : ballots_)
    if (c >= m_) throw std::invalid_argument("ballot names an unknown candidate");
}

void BallotProfile::set(std::size_t voter, Candidate c) {
  if (c >= m_) throw std::invalid_argument("ballot names an unknown candidate");
  ballots_.at(voter) = c;
}

ScoreVector scores_from_profile(const BallotProfile& profile) {
  std::vector<int> counts(profile.candidate_count(), 0);
  for (Candidate c : profile.ballots()) ++counts[c];
  return ScoreVector(std::move(counts));
}

ScoreVector scores_from_profile(const BallotProfile& profile, const CandidateSet& candidates) {
  if (profile.candidate_count() != candidates.size())
    throw std::invalid_argument("profile and candidate set disagree on m");
  return scores_from_profile(profile);
}

Candidate plurality_winner(const ScoreVector& score, const TieBreakOrder& tie) {
  if (score.size() == 0) throw std::invalid_argument("plurality winner of an empty candidate set");
  if (score.size() != tie.size()) throw std::invalid_argument("score and tie-break sizes differ");
  Candidate best = tie.order().front();
  for (Candidate c : tie.order())
    if (score[c] > score[best]) best = c;
  return best;
}

ScoreVector apply_move(const ScoreVector& score, Candidate from, Candidate to) {
  if (from >= score.size() || to >= score.size())
    throw std::out_of_range("move names an unknown candidate");
  ScoreVector out = score;
  if (from == to) return out;
  if (out.counts_[from] > 0) --out.counts_[from];
  ++out.counts_[to];
  return out;
}

std::vector<int> rank_utility(const Preference& pref) {
  const int m = static_cast<int>(pref.size());
  std::vector<int> u(pref.size());
  for (Candidate c = 0; c < pref.size(); ++c) u[c] = m - 1 - static_cast<int>(pref.rank_of(c));
  return u;
}

namespace {

constexpr std::size_t kMaxExtensions = 1'000'000;

void extend(const PartialPreference& partial, std::vector<Candidate>& prefix, std::vector<bool>& placed,
            std::vector<Preference>& out) {
  const std::size_t m = partial.size();
  if (prefix.size() == m) {
    if (out.size() >= kMaxExtensions) throw CapExceeded("too many linear extensions");
    out.emplace_back(prefix);
    return;
  }
  for (Candidate c = 0; c < m; ++c) {
    if (placed[c]) continue;
    bool ready = true;
    for (Candidate p = 0; p < m && ready; ++p)
      if (!placed[p] && partial.prefers(p, c)) ready = false;
    if (!ready) continue;
    placed[c] = true;
    prefix.push_back(c);
    extend(partial, prefix, placed, out);
    prefix.pop_back();
    placed[c] = false;
  }
}

}  // namespace

std::vector<Preference> linear_extensions(const PartialPreference& partial) {
  std::vector<Preference> out;
  std::vector<Candidate> prefix;
  std::vector<bool> placed(partial.size(), false);
  extend(partial, prefix, placed, out);
  return out;
}

std::vector<Candidate> possible_tops(const PartialPreference& partial) {
  std::vector<Candidate> tops;
  for (Candidate c = 0; c < partial.size(); ++c) {
    bool dominated = false;
    for (Candidate p = 0; p < partial.size() && !dominated; ++p) dominated = partial.prefers(p, c);
    if (!dominated) tops.push_back(c);
  }
  return tops;
}

}  // namespace beliefvote
