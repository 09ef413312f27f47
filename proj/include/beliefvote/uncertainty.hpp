#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "beliefvote/election.hpp"
#include "beliefvote/rational.hpp"

namespace beliefvote {

inline constexpr std::size_t kDefaultExpansionCap = 100'000;

/// Sorted, deduplicated set of score vectors.
using ScoreSet = std::vector<ScoreVector>;
ScoreSet make_score_set(std::vector<ScoreVector> points);

/// Integer box [lower_x, upper_x] per candidate, optionally restricted to
/// vectors whose entries sum to `sum`.
struct ScoreBox {
  std::vector<int> lower;
  std::vector<int> upper;
  std::optional<int> sum;

  friend bool operator==(const ScoreBox&, const ScoreBox&) = default;
};

/// A focal set of score vectors, always held in canonical (expanded, sorted) form.
class FocalElement {
 public:
  static FocalElement of(std::vector<ScoreVector> points);
  static FocalElement box(const ScoreBox& box, std::size_t cap = kDefaultExpansionCap);

  const ScoreSet& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(const ScoreVector& s) const;
  bool subset_of(const FocalElement& other) const;
  bool intersects(const FocalElement& other) const;

  friend bool operator==(const FocalElement&, const FocalElement&) = default;
  friend auto operator<=>(const FocalElement& a, const FocalElement& b) { return a.points_ <=> b.points_; }

 private:
  explicit FocalElement(ScoreSet points) : points_(std::move(points)) {}
  ScoreSet points_;
};

struct WeightedFocal {
  FocalElement focal;
  Rational weight;

  friend bool operator==(const WeightedFocal&, const WeightedFocal&) = default;
};

/// Belief function over score vectors: positive weights on distinct focal
/// sets, summing to exactly one. Duplicate focal sets are merged on
/// construction, keeping first-seen order.
class MassFunction {
 public:
  explicit MassFunction(std::vector<WeightedFocal> assignments);
  static MassFunction certain(FocalElement focal);

  std::span<const WeightedFocal> focal_elements() const { return assignments_; }
  std::size_t size() const { return assignments_.size(); }
  /// Union of all focal sets.
  ScoreSet support() const;

  friend bool operator==(const MassFunction&, const MassFunction&) = default;

 private:
  std::vector<WeightedFocal> assignments_;
};

/// Precise probability over score vectors; support sorted by score.
class ScoreDistribution {
 public:
  explicit ScoreDistribution(std::vector<std::pair<ScoreVector, Rational>> support);

  const std::vector<std::pair<ScoreVector, Rational>>& support() const { return support_; }
  Rational probability(const ScoreVector& s) const;
  Rational expectation(const std::function<Rational(const ScoreVector&)>& u) const;

  friend bool operator==(const ScoreDistribution&, const ScoreDistribution&) = default;

 private:
  std::vector<std::pair<ScoreVector, Rational>> support_;
};

enum class Metric { l1_addremove, voter_swap };

struct NeighborhoodSpec {
  Metric metric = Metric::l1_addremove;
  int radius = 0;
};

enum class LayerKind { nested, partitioned };

/// Layered belief around a broadcast score: radii r_1 < ... < r_K with
/// weights beta_k. Nested puts beta_k on S_{r_k}; partitioned puts it on the
/// ring S_{r_k} \ S_{r_{k-1}}.
struct LayeredBelief {
  ScoreVector center;
  LayerKind kind = LayerKind::nested;
  Metric metric = Metric::l1_addremove;
  std::vector<int> radii;
  std::vector<Rational> weights;

  /// Throws std::invalid_argument on malformed radii or weights.
  void validate() const;
  bool weights_decreasing() const;
};

enum class MassClass { necessity, inner, bayesian, vacuous, general };

Rational lower_probability(const MassFunction& mass, const ScoreSet& event);
Rational upper_probability(const MassFunction& mass, const ScoreSet& event);

using ScoreUtility = std::function<Rational(const ScoreVector&)>;

/// Sum over focal sets of weight * min u.
Rational lower_expectation(const MassFunction& mass, const ScoreUtility& u);
/// Sum over focal sets of weight * max u.
Rational upper_expectation(const MassFunction& mass, const ScoreUtility& u);

struct ExpectationBounds {
  Rational lower;
  Rational upper;
  Rational pignistic;
};

/// Lower, upper and pignistic expectation of `u` in one pass over the focal sets.
ExpectationBounds expectation_bounds(const MassFunction& mass, const ScoreUtility& u);

/// p*(s) = sum over focal S containing s of M(S) / |S|.
ScoreDistribution pignistic(const MassFunction& mass);

FocalElement neighborhood(const ScoreVector& center, const NeighborhoodSpec& spec,
                          std::size_t cap = kDefaultExpansionCap);

MassFunction layered_to_mass(const LayeredBelief& layered, std::size_t cap = kDefaultExpansionCap);

/// Categories are tested in the order bayesian, vacuous, necessity, inner.
/// Vacuous is only reported when `universe` is given.
MassClass classify(const MassFunction& mass, const ScoreSet* universe = nullptr);

/// Mass over candidate subsets for one voter's (imprecise) ballot.
struct BallotFocal {
  std::vector<Candidate> candidates;
  Rational weight;
};
using BallotMass = std::vector<BallotFocal>;

/// Joint mass over score vectors assuming independent voters.
MassFunction product_mass(std::span<const BallotMass> ballots, std::size_t m,
                          std::size_t cap = kDefaultExpansionCap);

/// Exact multinomial law of the score vector for n voters drawing from q.
ScoreDistribution multinomial_distribution(std::span<const Rational> q, int n,
                                           std::size_t cap = kDefaultExpansionCap);

const char* to_string(Metric metric);
const char* to_string(LayerKind kind);
const char* to_string(MassClass c);

}  // namespace beliefvote
