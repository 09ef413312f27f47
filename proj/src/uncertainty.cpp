#include "beliefvote/uncertainty.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "beliefvote/error.hpp"

namespace beliefvote {

namespace {

void check_cap(std::size_t count, std::size_t cap, const char* what) {
  if (count > cap) {
    throw CapExceeded(std::string(what) + " exceeds expansion cap of " + std::to_string(cap));
  }
}

void require_unit_total(const Rational& total, const char* what) {
  if (total != Rational(1)) {
    throw std::invalid_argument(std::string(what) + " weights sum to " + total.str() + ", not 1");
  }
}

void expand_box(const ScoreBox& box, std::size_t index, std::vector<int>& current, int running,
                std::size_t cap, std::vector<ScoreVector>& out) {
  const std::size_t m = box.lower.size();
  if (index == m) {
    if (box.sum && running != *box.sum) return;
    out.emplace_back(current);
    check_cap(out.size(), cap, "box focal element");
    return;
  }
  for (int v = box.lower[index]; v <= box.upper[index]; ++v) {
    if (box.sum && running + v > *box.sum) break;
    current[index] = v;
    expand_box(box, index + 1, current, running + v, cap, out);
  }
}

// All nonnegative vectors within l1 distance `budget` of center.
void expand_l1(const ScoreVector& center, std::size_t index, int budget, std::vector<int>& current,
               std::size_t cap, std::vector<ScoreVector>& out) {
  if (index == center.size()) {
    out.emplace_back(current);
    check_cap(out.size(), cap, "neighborhood");
    return;
  }
  const int c = center[index];
  for (int v = std::max(0, c - budget); v <= c + budget; ++v) {
    current[index] = v;
    expand_l1(center, index + 1, budget - std::abs(v - c), current, cap, out);
  }
}

// Sum-preserving vectors where at most `radius` votes changed hands:
// total increase == total decrease <= radius.
void expand_swap(const ScoreVector& center, std::size_t index, int radius, int added, int removed,
                 std::vector<int>& current, std::size_t cap, std::vector<ScoreVector>& out) {
  if (index == center.size()) {
    if (added != removed) return;
    out.emplace_back(current);
    check_cap(out.size(), cap, "neighborhood");
    return;
  }
  const int c = center[index];
  for (int delta = -std::min(c, radius - removed); delta <= radius - added; ++delta) {
    current[index] = c + delta;
    expand_swap(center, index + 1, radius, added + std::max(delta, 0), removed + std::max(-delta, 0),
                current, cap, out);
  }
}

bool sorted_intersect(const ScoreSet& a, const ScoreSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

ScoreSet make_score_set(std::vector<ScoreVector> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

FocalElement FocalElement::of(std::vector<ScoreVector> points) {
  if (points.empty()) throw std::invalid_argument("focal element must be nonempty");
  const std::size_t m = points.front().size();
  for (const auto& p : points)
    if (p.size() != m) throw std::invalid_argument("focal element mixes score dimensions");
  return FocalElement(make_score_set(std::move(points)));
}

FocalElement FocalElement::box(const ScoreBox& box, std::size_t cap) {
  if (box.lower.size() != box.upper.size() || box.lower.empty())
    throw std::invalid_argument("box bounds must have equal, nonzero length");
  for (std::size_t x = 0; x < box.lower.size(); ++x) {
    if (box.lower[x] < 0) throw std::invalid_argument("box lower bound is negative");
    if (box.lower[x] > box.upper[x]) throw std::invalid_argument("box has lower > upper");
  }
  std::vector<ScoreVector> points;
  std::vector<int> current(box.lower.size(), 0);
  expand_box(box, 0, current, 0, cap, points);
  if (points.empty()) throw std::invalid_argument("box with sum constraint is empty");
  return FocalElement(std::move(points));  // generated in lexicographic order
}

bool FocalElement::contains(const ScoreVector& s) const {
  return std::binary_search(points_.begin(), points_.end(), s);
}

bool FocalElement::subset_of(const FocalElement& other) const {
  return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

bool FocalElement::intersects(const FocalElement& other) const {
  return sorted_intersect(points_, other.points_);
}

MassFunction::MassFunction(std::vector<WeightedFocal> assignments) {
  if (assignments.empty()) throw std::invalid_argument("mass function needs a focal element");
  const std::size_t m = assignments.front().focal.points().front().size();
  Rational total;
  for (auto& a : assignments) {
    if (a.weight <= Rational(0)) throw std::invalid_argument("focal weight must be positive");
    if (a.focal.points().front().size() != m)
      throw std::invalid_argument("focal elements mix score dimensions");
    total += a.weight;
    auto it = std::find_if(assignments_.begin(), assignments_.end(),
                           [&](const WeightedFocal& w) { return w.focal == a.focal; });
    if (it != assignments_.end()) {
      it->weight += a.weight;
    } else {
      assignments_.push_back(std::move(a));
    }
  }
  require_unit_total(total, "mass function");
}

MassFunction MassFunction::certain(FocalElement focal) {
  return MassFunction({WeightedFocal{std::move(focal), Rational(1)}});
}

ScoreSet MassFunction::support() const {
  std::vector<ScoreVector> all;
  for (const auto& a : assignments_) all.insert(all.end(), a.focal.points().begin(), a.focal.points().end());
  return make_score_set(std::move(all));
}

ScoreDistribution::ScoreDistribution(std::vector<std::pair<ScoreVector, Rational>> support)
    : support_(std::move(support)) {
  if (support_.empty()) throw std::invalid_argument("empty distribution");
  std::sort(support_.begin(), support_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational total;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i].second <= Rational(0)) throw std::invalid_argument("probability must be positive");
    if (i > 0 && support_[i].first == support_[i - 1].first)
      throw std::invalid_argument("duplicate score in distribution");
    total += support_[i].second;
  }
  require_unit_total(total, "distribution");
}

Rational ScoreDistribution::probability(const ScoreVector& s) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), s,
                             [](const auto& entry, const ScoreVector& key) { return entry.first < key; });
  if (it == support_.end() || it->first != s) return Rational(0);
  return it->second;
}

Rational ScoreDistribution::expectation(const std::function<Rational(const ScoreVector&)>& u) const {
  Rational e;
  for (const auto& [s, p] : support_) e += p * u(s);
  return e;
}

void LayeredBelief::validate() const {
  if (radii.empty()) throw std::invalid_argument("layered belief needs at least one layer");
  if (radii.size() != weights.size()) throw std::invalid_argument("radii and weights differ in length");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] < 0) throw std::invalid_argument("negative radius");
    if (k > 0 && radii[k] <= radii[k - 1]) throw std::invalid_argument("radii must be strictly increasing");
  }
  Rational total;
  for (const auto& w : weights) {
    if (w <= Rational(0)) throw std::invalid_argument("layer weight must be positive");
    total += w;
  }
  require_unit_total(total, "layered belief");
}

bool LayeredBelief::weights_decreasing() const {
  return std::is_sorted(weights.rbegin(), weights.rend());
}

Rational lower_probability(const MassFunction& mass, const ScoreSet& event) {
  Rational p;
  for (const auto& a : mass.focal_elements())
    if (std::includes(event.begin(), event.end(), a.focal.points().begin(), a.focal.points().end()))
      p += a.weight;
  return p;
}

Rational upper_probability(const MassFunction& mass, const ScoreSet& event) {
  Rational p;
  for (const auto& a : mass.focal_elements())
    if (sorted_intersect(a.focal.points(), event)) p += a.weight;
  return p;
}

ExpectationBounds expectation_bounds(const MassFunction& mass, const ScoreUtility& u) {
  ExpectationBounds out;
  for (const auto& a : mass.focal_elements()) {
    const auto& pts = a.focal.points();
    Rational lo = u(pts.front());
    Rational hi = lo;
    Rational sum = lo;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      Rational v = u(pts[i]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    out.lower += a.weight * lo;
    out.upper += a.weight * hi;
    out.pignistic += a.weight * sum / Rational(static_cast<std::int64_t>(pts.size()));
  }
  return out;
}

Rational lower_expectation(const MassFunction& mass, const ScoreUtility& u) {
  Rational e;
  for (const auto& a : mass.focal_elements()) {
    Rational lo = u(a.focal.points().front());
    for (const auto& s : a.focal.points()) lo = std::min(lo, u(s));
    e += a.weight * lo;
  }
  return e;
}

Rational upper_expectation(const MassFunction& mass, const ScoreUtility& u) {
  Rational e;
  for (const auto& a : mass.focal_elements()) {
    Rational hi = u(a.focal.points().front());
    for (const auto& s : a.focal.points()) hi = std::max(hi, u(s));
    e += a.weight * hi;
  }
  return e;
}

ScoreDistribution pignistic(const MassFunction& mass) {
  std::map<ScoreVector, Rational> p;
  for (const auto& a : mass.focal_elements()) {
    Rational share = a.weight / Rational(static_cast<std::int64_t>(a.focal.size()));
    for (const auto& s : a.focal.points()) p[s] += share;
  }
  return ScoreDistribution({p.begin(), p.end()});
}

FocalElement neighborhood(const ScoreVector& center, const NeighborhoodSpec& spec, std::size_t cap) {
  if (spec.radius < 0) throw std::invalid_argument("negative neighborhood radius");
  if (center.size() == 0) throw std::invalid_argument("neighborhood of an empty score");
  std::vector<ScoreVector> points;
  std::vector<int> current(center.size(), 0);
  switch (spec.metric) {
    case Metric::l1_addremove:
      expand_l1(center, 0, spec.radius, current, cap, points);
      break;
    case Metric::voter_swap:
      expand_swap(center, 0, spec.radius, 0, 0, current, cap, points);
      break;
  }
  return FocalElement::of(std::move(points));
}

MassFunction layered_to_mass(const LayeredBelief& layered, std::size_t cap) {
  layered.validate();
  std::vector<WeightedFocal> focal;
  std::optional<FocalElement> inner;
  for (std::size_t k = 0; k < layered.radii.size(); ++k) {
    FocalElement ball = neighborhood(layered.center, {layered.metric, layered.radii[k]}, cap);
    if (layered.kind == LayerKind::nested || !inner) {
      focal.push_back({ball, layered.weights[k]});
    } else {
      std::vector<ScoreVector> ring;
      std::set_difference(ball.points().begin(), ball.points().end(), inner->points().begin(),
                          inner->points().end(), std::back_inserter(ring));
      if (ring.empty()) {
        throw std::invalid_argument("partitioned layer " + std::to_string(k) + " is an empty ring");
      }
      focal.push_back({FocalElement::of(std::move(ring)), layered.weights[k]});
    }
    inner = std::move(ball);
  }
  return MassFunction(std::move(focal));
}

MassClass classify(const MassFunction& mass, const ScoreSet* universe) {
  auto focal = mass.focal_elements();
  if (std::all_of(focal.begin(), focal.end(), [](const auto& a) { return a.focal.size() == 1; }))
    return MassClass::bayesian;
  if (universe && focal.size() == 1 && focal.front().focal.points() == *universe) return MassClass::vacuous;

  std::vector<const FocalElement*> by_size;
  for (const auto& a : focal) by_size.push_back(&a.focal);
  std::sort(by_size.begin(), by_size.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
  bool chain = true;
  for (std::size_t i = 1; i < by_size.size() && chain; ++i) chain = by_size[i - 1]->subset_of(*by_size[i]);
  if (chain) return MassClass::necessity;

  for (std::size_t i = 0; i < focal.size(); ++i)
    for (std::size_t j = i + 1; j < focal.size(); ++j)
      if (focal[i].focal.intersects(focal[j].focal)) return MassClass::general;
  return MassClass::inner;
}

MassFunction product_mass(std::span<const BallotMass> ballots, std::size_t m, std::size_t cap) {
  if (ballots.empty()) throw std::invalid_argument("product mass needs at least one voter");
  std::size_t tuples = 1;
  for (const auto& bm : ballots) {
    if (bm.empty()) throw std::invalid_argument("voter ballot mass is empty");
    Rational total;
    for (const auto& f : bm) {
      if (f.candidates.empty()) throw std::invalid_argument("empty ballot focal set");
      for (Candidate c : f.candidates)
        if (c >= m) throw std::invalid_argument("ballot focal set names an unknown candidate");
      if (f.weight <= Rational(0)) throw std::invalid_argument("ballot focal weight must be positive");
      total += f.weight;
    }
    require_unit_total(total, "ballot mass");
    tuples *= bm.size();
    check_cap(tuples, cap, "product of focal ballot sets");
  }

  std::vector<WeightedFocal> focal;
  std::vector<std::size_t> choice(ballots.size(), 0);
  while (true) {
    Rational weight(1);
    std::set<std::vector<int>> scores{std::vector<int>(m, 0)};
    for (std::size_t v = 0; v < ballots.size(); ++v) {
      const BallotFocal& f = ballots[v][choice[v]];
      weight *= f.weight;
      std::set<std::vector<int>> next;
      for (const auto& s : scores) {
        for (Candidate c : f.candidates) {
          auto t = s;
          ++t[c];
          next.insert(std::move(t));
        }
      }
      check_cap(next.size(), cap, "product focal element");
      scores = std::move(next);
    }
    std::vector<ScoreVector> points;
    for (const auto& s : scores) points.emplace_back(s);
    focal.push_back({FocalElement::of(std::move(points)), weight});

    std::size_t v = 0;
    while (v < ballots.size() && ++choice[v] == ballots[v].size()) choice[v++] = 0;
    if (v == ballots.size()) break;
  }
  return MassFunction(std::move(focal));
}

namespace {

void compositions(int remaining, std::size_t index, std::vector<int>& current, std::size_t cap,
                  std::vector<std::vector<int>>& out) {
  if (index + 1 == current.size()) {
    current[index] = remaining;
    out.push_back(current);
    check_cap(out.size(), cap, "multinomial support");
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[index] = v;
    compositions(remaining - v, index + 1, current, cap, out);
  }
}

Rational power(const Rational& base, int exp) {
  Rational r(1);
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

ScoreDistribution multinomial_distribution(std::span<const Rational> q, int n, std::size_t cap) {
  if (q.empty()) throw std::invalid_argument("multinomial needs candidate weights");
  if (n < 1) throw std::invalid_argument("multinomial needs n >= 1");
  Rational total;
  for (const auto& w : q) {
    if (w < Rational(0)) throw std::invalid_argument("negative multinomial weight");
    total += w;
  }
  require_unit_total(total, "multinomial");

  std::vector<std::vector<int>> comps;
  std::vector<int> current(q.size(), 0);
  compositions(n, 0, current, cap, comps);

  std::vector<std::pair<ScoreVector, Rational>> support;
  for (const auto& s : comps) {
    // n! / prod s_x! built as a product of binomials to stay within 64 bits.
    Rational p(1);
    int placed = 0;
    bool possible = true;
    for (std::size_t x = 0; x < q.size(); ++x) {
      if (s[x] > 0 && q[x] == Rational(0)) {
        possible = false;
        break;
      }
      for (int k = 1; k <= s[x]; ++k) p *= Rational(placed + k, k);
      placed += s[x];
      p *= power(q[x], s[x]);
    }
    if (possible) support.emplace_back(ScoreVector(s), p);
  }
  return ScoreDistribution(std::move(support));
}

const char* to_string(Metric metric) {
  return metric == Metric::l1_addremove ? "l1_addremove" : "voter_swap";
}

const char* to_string(LayerKind kind) { return kind == LayerKind::nested ? "nested" : "partitioned"; }

const char* to_string(MassClass c) {
  switch (c) {
    case MassClass::necessity: return "necessity";
    case MassClass::inner: return "inner";
    case MassClass::bayesian: return "bayesian";
    case MassClass::vacuous: return "vacuous";
    case MassClass::general: return "general";
  }
  return "general";
}

}  // namespace beliefvote
