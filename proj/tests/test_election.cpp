#include <set>

#include "beliefvote/election.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace beliefvote;
using testsupport::pref;
using testsupport::sv;

namespace {

BallotProfile ballots_from(const CandidateSet& cs, std::initializer_list<const char*> labels) {
  std::vector<Candidate> b;
  for (const char* l : labels) b.push_back(cs.index_of(l));
  return BallotProfile(std::move(b), cs.size());
}

}  // namespace

TEST_CASE("candidate sets validate labels") {
  CandidateSet cs({"a", "b", "c"});
  CHECK(cs.size() == 3);
  CHECK(cs.index_of("c") == 2);
  CHECK(cs.label(1) == "b");
  CHECK_FALSE(cs.find("z").has_value());
  CHECK_THROWS_AS(cs.index_of("z"), std::invalid_argument);
  CHECK_THROWS(CandidateSet({"a", "a", "b"}));
  CHECK_THROWS(CandidateSet({"a", ""}));
  CHECK_THROWS(CandidateSet({"a"}));
}

TEST_CASE("permutation checks") {
  CHECK_NOTHROW(TieBreakOrder({2, 0, 1}));
  CHECK_THROWS(TieBreakOrder({0, 0, 1}));
  CHECK_THROWS(TieBreakOrder({0, 3, 1}));
  CHECK_THROWS(Preference({}));
  CHECK_THROWS(Preference({1, 1}));
  const TieBreakOrder t({2, 0, 1});
  CHECK(t.priority(2) == 0);
  CHECK(t.priority(1) == 2);
}

TEST_CASE("scores count ballots per candidate") {
  CandidateSet four({"a", "b", "c", "d"});
  CHECK(scores_from_profile(ballots_from(four, {"a", "c", "b", "c", "a", "d", "c", "d", "b", "b"}), four) ==
        sv({2, 3, 3, 2}));
  CHECK(scores_from_profile(ballots_from(four, {"a", "c", "c", "c", "a", "d", "c", "d", "b", "b"}), four) ==
        sv({2, 2, 4, 2}));
  CandidateSet three({"a", "b", "c"});
  CHECK(scores_from_profile(ballots_from(three, {"a", "a", "a"}), three) == sv({3, 0, 0}));
  CHECK(scores_from_profile(ballots_from(three, {"b", "c", "c"}), three) == sv({0, 1, 2}));
  CHECK_THROWS(BallotProfile({0, 3}, 3));
  CHECK_THROWS(scores_from_profile(ballots_from(three, {"a"}), four));
}

TEST_CASE("score vectors reject negative entries and print compactly") {
  CHECK_THROWS(ScoreVector({1, -1}));
  CHECK(sv({2, 2, 3, 3}).str() == "(2,2,3,3)");
  CHECK(sv({2, 2, 3, 3}).total() == 10);
}

TEST_CASE("plurality winner with lexicographic ties") {
  const auto tie = TieBreakOrder::identity(4);
  CHECK(plurality_winner(sv({2, 2, 3, 3}), tie) == 2);
  CHECK(plurality_winner(sv({3, 2, 3, 2}), tie) == 0);
  CHECK(plurality_winner(sv({1, 0, 0}), TieBreakOrder::identity(3)) == 0);
  CHECK(plurality_winner(sv({2, 2, 3, 3}), TieBreakOrder({3, 2, 1, 0})) == 3);
  CHECK_THROWS(plurality_winner(sv({1, 2}), tie));
}

TEST_CASE("plurality winner properties on random scores") {
  InstanceRng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    const ScoreVector s = testsupport::random_score(rng, m, 5);
    std::vector<Candidate> order = testsupport::random_preference(rng, m).ranking();
    const TieBreakOrder tie(order);
    const Candidate w = plurality_winner(s, tie);
    for (Candidate c = 0; c < m; ++c) {
      CHECK(s[w] >= s[c]);
      if (s[c] == s[w]) CHECK(tie.priority(w) <= tie.priority(c));
    }
    std::vector<int> shifted = s.counts();
    const int k = static_cast<int>(rng.below(4));
    for (auto& x : shifted) x += k;
    CHECK(plurality_winner(ScoreVector(shifted), tie) == w);
  }
}

TEST_CASE("apply_move") {
  CHECK(apply_move(sv({2, 2, 3, 3}), 3, 0) == sv({3, 2, 3, 2}));
  CHECK(apply_move(sv({1, 1, 1}), 1, 2) == sv({1, 0, 2}));
  CHECK(plurality_winner(sv({1, 0, 2}), TieBreakOrder::identity(3)) == 2);
  CHECK(apply_move(sv({4, 0, 1}), 1, 1) == sv({4, 0, 1}));
  CHECK(apply_move(sv({0, 2, 1}), 0, 1) == sv({0, 3, 1}));
  CHECK_THROWS(apply_move(sv({1, 1}), 0, 2));

  InstanceRng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const ScoreVector s = testsupport::random_score(rng, 4, 3);
    const Candidate from = rng.below(4), to = rng.below(4);
    const ScoreVector t = apply_move(s, from, to);
    if (s[from] > 0) CHECK(t.total() == s.total());
  }
}

TEST_CASE("rank utility") {
  CHECK(rank_utility(pref({0, 1, 2})) == std::vector<int>{2, 1, 0});
  CHECK(rank_utility(pref({2, 0, 1})) == std::vector<int>{1, 0, 2});
  InstanceRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Preference p = testsupport::random_preference(rng, 2 + rng.below(5));
    const auto u = rank_utility(p);
    CHECK(std::max_element(u.begin(), u.end()) - u.begin() == static_cast<long>(p.top()));
    for (Candidate x = 0; x < p.size(); ++x)
      for (Candidate y = 0; y < p.size(); ++y) CHECK((u[x] > u[y]) == p.prefers(x, y));
  }
}

TEST_CASE("partial preferences") {
  const PartialPreference p(3, {{0, 1}, {1, 2}});
  CHECK(p.prefers(0, 2));
  CHECK_FALSE(p.prefers(2, 0));
  CHECK_THROWS(PartialPreference(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK_THROWS(PartialPreference(3, {{0, 0}}));
  CHECK_THROWS(PartialPreference(3, {{0, 5}}));
}

TEST_CASE("linear extensions of the a-over-c voter") {
  const PartialPreference a_over_c(3, {{0, 2}});
  const auto ext = linear_extensions(a_over_c);
  std::set<std::vector<Candidate>> got;
  for (const auto& e : ext) got.insert(e.ranking());
  CHECK(got == std::set<std::vector<Candidate>>{{0, 2, 1}, {1, 0, 2}, {0, 1, 2}});
  CHECK(ext.size() == 3);
  CHECK(possible_tops(a_over_c) == std::vector<Candidate>{0, 1});
}

TEST_CASE("linear extensions edge cases") {
  CHECK(linear_extensions(PartialPreference(3, {})).size() == 6);
  CHECK(linear_extensions(PartialPreference(5, {})).size() == 120);
  const Preference full = pref({2, 0, 1});
  const auto single = linear_extensions(PartialPreference::complete(full));
  REQUIRE(single.size() == 1);
  CHECK(single.front() == full);
  CHECK(possible_tops(PartialPreference::complete(full)) == std::vector<Candidate>{2});
  CHECK(possible_tops(PartialPreference(4, {})) == std::vector<Candidate>{0, 1, 2, 3});
  const auto sorted = linear_extensions(PartialPreference(3, {}));
  CHECK(std::is_sorted(sorted.begin(), sorted.end()));
}

TEST_CASE("possible tops equal the tops of all extensions") {
  InstanceRng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    // Random pairs consistent with a hidden order, so the input is acyclic.
    const Preference hidden = testsupport::random_preference(rng, m);
    std::vector<PartialPreference::Pair> pairs;
    for (Candidate x = 0; x < m; ++x)
      for (Candidate y = 0; y < m; ++y)
        if (hidden.prefers(x, y) && rng.below(3) == 0) pairs.emplace_back(x, y);
    const PartialPreference partial(m, pairs);
    std::set<Candidate> tops;
    for (const auto& e : linear_extensions(partial)) {
      tops.insert(e.top());
      for (auto [x, y] : pairs) CHECK(e.prefers(x, y));
    }
    const auto pt = possible_tops(partial);
    CHECK(std::set<Candidate>(pt.begin(), pt.end()) == tops);
  }
}
