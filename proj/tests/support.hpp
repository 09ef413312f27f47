#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "beliefvote/scenario.hpp"

namespace testsupport {

using namespace beliefvote;

inline ScoreVector sv(std::vector<int> counts) { return ScoreVector(std::move(counts)); }

inline ScoreSet points(std::initializer_list<std::vector<int>> list) {
  std::vector<ScoreVector> out;
  for (const auto& p : list) out.emplace_back(p);
  return make_score_set(std::move(out));
}

inline Preference pref(std::initializer_list<Candidate> ranking) { return Preference(std::vector<Candidate>(ranking)); }

inline MassFunction example4_mass() {
  return MassFunction({{FocalElement::of({sv({1, 1, 1})}), Rational(1, 2)},
                       {FocalElement::box({{0, 1, 1}, {1, 2, 1}, 3}), Rational(1, 2)}});
}

inline Preference random_preference(InstanceRng& rng, std::size_t m) {
  std::vector<Candidate> r(m);
  std::iota(r.begin(), r.end(), Candidate{0});
  for (std::size_t k = m - 1; k > 0; --k) std::swap(r[k], r[rng.below(k + 1)]);
  return Preference(std::move(r));
}

inline ScoreVector random_score(InstanceRng& rng, std::size_t m, int max_count) {
  std::vector<int> c(m);
  for (auto& x : c) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_count) + 1));
  return ScoreVector(std::move(c));
}

/// Weights k_i / sum(k) with k_i in [1, 6].
inline std::vector<Rational> random_weights(InstanceRng& rng, std::size_t count) {
  std::vector<std::int64_t> raw(count);
  for (auto& w : raw) w = static_cast<std::int64_t>(1 + rng.below(6));
  const std::int64_t total = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
  std::vector<Rational> out;
  for (auto w : raw) out.emplace_back(w, total);
  return out;
}

/// Random mass with up to `max_focal` focal sets of up to `max_points` distinct points.
inline MassFunction random_mass(InstanceRng& rng, std::size_t m, std::size_t max_focal, std::size_t max_points,
                                int max_count = 3) {
  const std::size_t focal_count = 1 + rng.below(max_focal);
  std::vector<WeightedFocal> focal;
  const auto weights = random_weights(rng, focal_count);
  for (std::size_t k = 0; k < focal_count; ++k) {
    const std::size_t size = 1 + rng.below(max_points);
    std::vector<ScoreVector> pts;
    for (std::size_t j = 0; j < size; ++j) pts.push_back(random_score(rng, m, max_count));
    focal.push_back({FocalElement::of(std::move(pts)), weights[k]});
  }
  return MassFunction(std::move(focal));
}

inline MassFunction random_bayesian(InstanceRng& rng, std::size_t m, std::size_t max_support, int max_count = 3) {
  const std::size_t size = 1 + rng.below(max_support);
  std::vector<ScoreVector> pts;
  for (std::size_t j = 0; j < size; ++j) pts.push_back(random_score(rng, m, max_count));
  pts = make_score_set(std::move(pts));
  const auto weights = random_weights(rng, pts.size());
  std::vector<WeightedFocal> focal;
  for (std::size_t j = 0; j < pts.size(); ++j) focal.push_back({FocalElement::of({pts[j]}), weights[j]});
  return MassFunction(std::move(focal));
}

}  // namespace testsupport

#include <fstream>
#include <sstream>
#include <string>

namespace testsupport {

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(BELIEFVOTE_FIXTURE_DIR) + "/" + name + ".json");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline beliefvote::Scenario load_fixture(const std::string& name) {
  return beliefvote::build_scenario(beliefvote::parse_scenario(fixture_text(name)));
}

}  // namespace testsupport
