#include "beliefvote/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace beliefvote {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace {

constexpr Family kFamilies[] = {Family::theorem1_nested, Family::theorem1_partitioned, Family::theorem2_hurwicz,
                                Family::pignistic_uniform, Family::meir_r0};

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

// Collects errors while walking the JSON tree so a single parse reports all of them.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void error(const std::string& path, const std::string& message) { errors_.push_back(path + ": " + message); }

  void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
        error(path + "." + key, "unknown field");
    }
  }

  const Json* field(const Json& obj, const std::string& path, const char* key, bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) error(path + "." + key, "missing");
      return nullptr;
    }
    return &*it;
  }

  std::optional<Rational> rational(const Json& j, const std::string& path) {
    try {
      if (j.is_string()) return Rational::parse(j.get<std::string>());
      if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
      error(path, "expected a rational string such as \"1/3\"");
    } catch (const std::exception& e) {
      error(path, e.what());
    }
    return std::nullopt;
  }

  std::optional<std::string> string(const Json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    error(path, "expected a string");
    return std::nullopt;
  }

  std::optional<std::int64_t> integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    error(path, "expected an integer");
    return std::nullopt;
  }

  std::optional<std::vector<int>> ints(const Json& j, const std::string& path) {
    if (!j.is_array()) {
      error(path, "expected an array of integers");
      return std::nullopt;
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = integer(j[i], path + "[" + std::to_string(i) + "]");
      if (!v) return std::nullopt;
      out.push_back(static_cast<int>(*v));
    }
    return out;
  }

  std::optional<std::vector<std::string>> strings(const Json& j, const std::string& path) {
    if (!j.is_array()) {
      error(path, "expected an array of labels");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = string(j[i], path + "[" + std::to_string(i) + "]");
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  std::optional<ScoreBox> box(const Json& j, const std::string& path) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return std::nullopt;
    }
    reject_unknown(j, path, {"lower", "upper", "sum"});
    ScoreBox b;
    const Json* lo = field(j, path, "lower");
    const Json* hi = field(j, path, "upper");
    auto lower = lo ? ints(*lo, path + ".lower") : std::nullopt;
    auto upper = hi ? ints(*hi, path + ".upper") : std::nullopt;
    if (!lower || !upper) return std::nullopt;
    b.lower = *lower;
    b.upper = *upper;
    if (const Json* s = field(j, path, "sum", false)) {
      auto v = integer(*s, path + ".sum");
      if (!v) return std::nullopt;
      b.sum = static_cast<int>(*v);
    }
    return b;
  }

  std::optional<FocalShape> shape(const Json& j, const std::string& path) {
    const bool has_points = j.contains("points");
    const bool has_box = j.contains("box");
    if (has_points == has_box) {
      error(path, "expected exactly one of \"points\" or \"box\"");
      return std::nullopt;
    }
    if (has_box) {
      if (auto b = box(j["box"], path + ".box")) return FocalShape(*b);
      return std::nullopt;
    }
    const Json& pts = j["points"];
    if (!pts.is_array() || pts.empty()) {
      error(path + ".points", "expected a nonempty array of score vectors");
      return std::nullopt;
    }
    ScorePoints points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto v = ints(pts[i], path + ".points[" + std::to_string(i) + "]");
      if (!v) return std::nullopt;
      points.push_back(*v);
    }
    return FocalShape(points);
  }

  std::optional<BeliefSpec> belief(const Json& j, const std::string& path) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return std::nullopt;
    }
    const Json* kind_node = field(j, path, "kind");
    auto kind = kind_node ? string(*kind_node, path + ".kind") : std::nullopt;
    if (!kind) return std::nullopt;

    if (*kind == "nested" || *kind == "partitioned") {
      reject_unknown(j, path, {"kind", "metric", "radii", "weights"});
      LayeredBeliefSpec spec;
      spec.kind = *kind == "nested" ? LayerKind::nested : LayerKind::partitioned;
      if (const Json* metric = field(j, path, "metric", false)) {
        auto name = string(*metric, path + ".metric");
        if (name == "l1_addremove") {
          spec.metric = Metric::l1_addremove;
        } else if (name == "voter_swap") {
          spec.metric = Metric::voter_swap;
        } else if (name) {
          error(path + ".metric", "unknown metric '" + *name + "'");
        }
      }
      const Json* radii = field(j, path, "radii");
      const Json* weights = field(j, path, "weights");
      if (radii) {
        if (auto r = ints(*radii, path + ".radii")) spec.radii = *r;
      }
      if (weights) {
        if (!weights->is_array()) {
          error(path + ".weights", "expected an array of rationals");
        } else {
          for (std::size_t i = 0; i < weights->size(); ++i) {
            auto w = rational((*weights)[i], path + ".weights[" + std::to_string(i) + "]");
            if (w) spec.weights.push_back(*w);
          }
        }
      }
      return BeliefSpec(spec);
    }
    if (*kind == "fixed_mass") {
      reject_unknown(j, path, {"kind", "focal"});
      const Json* focal = field(j, path, "focal");
      if (!focal) return std::nullopt;
      if (!focal->is_array() || focal->empty()) {
        error(path + ".focal", "expected a nonempty array");
        return std::nullopt;
      }
      FixedMassSpec spec;
      bool ok = true;
      for (std::size_t i = 0; i < focal->size(); ++i) {
        const std::string p = path + ".focal[" + std::to_string(i) + "]";
        const Json& f = (*focal)[i];
        if (!f.is_object()) {
          error(p, "expected an object");
          ok = false;
          continue;
        }
        reject_unknown(f, p, {"weight", "points", "box"});
        const Json* w = field(f, p, "weight");
        auto weight = w ? rational(*w, p + ".weight") : std::nullopt;
        auto s = shape(f, p);
        if (!weight || !s) {
          ok = false;
          continue;
        }
        spec.focal.push_back({*weight, *s});
      }
      if (!ok) return std::nullopt;
      return BeliefSpec(spec);
    }
    if (*kind == "set") {
      reject_unknown(j, path, {"kind", "points", "box"});
      if (auto s = shape(j, path)) return BeliefSpec(SetSpec{*s});
      return std::nullopt;
    }
    if (*kind == "probability") {
      reject_unknown(j, path, {"kind", "support"});
      const Json* support = field(j, path, "support");
      if (!support) return std::nullopt;
      if (!support->is_array() || support->empty()) {
        error(path + ".support", "expected a nonempty array");
        return std::nullopt;
      }
      ProbabilitySpec spec;
      bool ok = true;
      for (std::size_t i = 0; i < support->size(); ++i) {
        const std::string p = path + ".support[" + std::to_string(i) + "]";
        const Json& e = (*support)[i];
        if (!e.is_object()) {
          error(p, "expected an object");
          ok = false;
          continue;
        }
        reject_unknown(e, p, {"score", "p"});
        const Json* score = field(e, p, "score");
        const Json* prob = field(e, p, "p");
        auto sv = score ? ints(*score, p + ".score") : std::nullopt;
        auto pv = prob ? rational(*prob, p + ".p") : std::nullopt;
        if (!sv || !pv) {
          ok = false;
          continue;
        }
        spec.support.emplace_back(*sv, *pv);
      }
      if (!ok) return std::nullopt;
      return BeliefSpec(spec);
    }
    error(path + ".kind", "unknown belief kind '" + *kind + "'");
    return std::nullopt;
  }

  std::optional<RuleSpec> rule(const Json& j, const std::string& path) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return std::nullopt;
    }
    reject_unknown(j, path, {"kind", "alpha"});
    const Json* kind_node = field(j, path, "kind");
    auto kind = kind_node ? string(*kind_node, path + ".kind") : std::nullopt;
    if (!kind) return std::nullopt;
    RuleSpec spec;
    if (*kind == "pessimistic") {
      spec.kind = RuleKind::pessimistic;
    } else if (*kind == "pignistic") {
      spec.kind = RuleKind::pignistic;
    } else if (*kind == "mixture") {
      spec.kind = RuleKind::mixture;
    } else if (*kind == "hurwicz") {
      spec.kind = RuleKind::hurwicz;
    } else {
      error(path + ".kind", "unknown rule '" + *kind + "'");
      return std::nullopt;
    }
    if (const Json* alpha = field(j, path, "alpha", false)) spec.alpha = rational(*alpha, path + ".alpha");
    return spec;
  }

 private:
  std::vector<std::string>& errors_;
};

std::optional<UtilityModel> parse_utility(std::string_view name) {
  for (auto m : {UtilityModel::meir_sign, UtilityModel::direct_best_response, UtilityModel::cardinal_rank})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

template <class T>
bool is_permutation_of(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::is_permutation(a.begin(), a.end(), b.begin());
}

FocalElement build_focal(const FocalShape& shape, std::size_t m) {
  if (const auto* box = std::get_if<ScoreBox>(&shape)) {
    if (box->lower.size() != m) throw std::invalid_argument("box dimension differs from candidate count");
    return FocalElement::box(*box);
  }
  std::vector<ScoreVector> points;
  for (const auto& p : std::get<ScorePoints>(shape)) {
    if (p.size() != m) throw std::invalid_argument("score vector dimension differs from candidate count");
    points.emplace_back(p);
  }
  return FocalElement::of(std::move(points));
}

OrderedJson shape_json(const FocalShape& shape, OrderedJson obj) {
  if (const auto* box = std::get_if<ScoreBox>(&shape)) {
    OrderedJson b{{"lower", box->lower}, {"upper", box->upper}};
    if (box->sum) b["sum"] = *box->sum;
    obj["box"] = b;
  } else {
    obj["points"] = std::get<ScorePoints>(shape);
  }
  return obj;
}

OrderedJson belief_json(const BeliefSpec& belief) {
  return std::visit(
      [](const auto& spec) -> OrderedJson {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, LayeredBeliefSpec>) {
          std::vector<std::string> weights;
          for (const auto& w : spec.weights) weights.push_back(w.str());
          return OrderedJson{{"kind", to_string(spec.kind)},
                             {"metric", to_string(spec.metric)},
                             {"radii", spec.radii},
                             {"weights", weights}};
        } else if constexpr (std::is_same_v<T, FixedMassSpec>) {
          OrderedJson focal = OrderedJson::array();
          for (const auto& f : spec.focal) focal.push_back(shape_json(f.shape, OrderedJson{{"weight", f.weight.str()}}));
          return OrderedJson{{"kind", "fixed_mass"}, {"focal", focal}};
        } else if constexpr (std::is_same_v<T, SetSpec>) {
          return shape_json(spec.shape, OrderedJson{{"kind", "set"}});
        } else {
          OrderedJson support = OrderedJson::array();
          for (const auto& [score, p] : spec.support) support.push_back(OrderedJson{{"score", score}, {"p", p.str()}});
          return OrderedJson{{"kind", "probability"}, {"support", support}};
        }
      },
      belief);
}

}  // namespace

std::uint64_t InstanceRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kFamilies)
    if (name == to_string(f)) return f;
  return std::nullopt;
}

const char* to_string(Family family) {
  switch (family) {
    case Family::theorem1_nested: return "theorem1_nested";
    case Family::theorem1_partitioned: return "theorem1_partitioned";
    case Family::theorem2_hurwicz: return "theorem2_hurwicz";
    case Family::pignistic_uniform: return "pignistic_uniform";
    case Family::meir_r0: return "meir_r0";
  }
  return "theorem1_nested";
}

bool is_theorem_family(Family family) { return family != Family::pignistic_uniform; }

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error("invalid scenario: " + join(errors, "; ")), errors_(std::move(errors)) {}

ScenarioFile parse_scenario(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioError({std::string("syntax: ") + e.what()});
  }
  std::vector<std::string> errors;
  Reader r(errors);
  if (!root.is_object()) throw ScenarioError({"scenario: expected a JSON object"});
  r.reject_unknown(root, "scenario",
                   {"version", "name", "candidates", "tie_break", "family", "voters", "initial_ballots", "scheduler",
                    "seed"});

  ScenarioFile file;
  if (const Json* v = r.field(root, "scenario", "version")) {
    if (auto ver = r.integer(*v, "version")) file.version = static_cast<int>(*ver);
  }
  if (const Json* v = r.field(root, "scenario", "name", false)) {
    if (auto name = r.string(*v, "name")) file.name = *name;
  }
  if (const Json* v = r.field(root, "scenario", "candidates")) {
    if (auto c = r.strings(*v, "candidates")) file.candidates = *c;
  }
  if (const Json* v = r.field(root, "scenario", "tie_break", false)) {
    if (auto t = r.strings(*v, "tie_break")) file.tie_break = *t;
  } else {
    file.tie_break = file.candidates;
  }
  if (const Json* v = r.field(root, "scenario", "family", false)) {
    if (auto name = r.string(*v, "family")) {
      file.family = parse_family(*name);
      if (!file.family) r.error("family", "unknown family '" + *name + "'");
    }
  }
  if (const Json* v = r.field(root, "scenario", "voters")) {
    if (!v->is_array()) {
      r.error("voters", "expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string path = "voters[" + std::to_string(i) + "]";
        const Json& vj = (*v)[i];
        if (!vj.is_object()) {
          r.error(path, "expected an object");
          continue;
        }
        r.reject_unknown(vj, path, {"preference", "belief", "rule", "utility"});
        VoterSpec voter;
        bool ok = true;
        if (const Json* p = r.field(vj, path, "preference")) {
          auto pref = r.strings(*p, path + ".preference");
          ok = ok && pref;
          if (pref) voter.preference = *pref;
        } else {
          ok = false;
        }
        if (const Json* b = r.field(vj, path, "belief")) {
          auto belief = r.belief(*b, path + ".belief");
          ok = ok && belief;
          if (belief) voter.belief = *belief;
        } else {
          ok = false;
        }
        if (const Json* ru = r.field(vj, path, "rule")) {
          auto rule = r.rule(*ru, path + ".rule");
          ok = ok && rule;
          if (rule) voter.rule = *rule;
        } else {
          ok = false;
        }
        if (const Json* u = r.field(vj, path, "utility", false)) {
          auto name = r.string(*u, path + ".utility");
          auto model = name ? parse_utility(*name) : std::nullopt;
          if (name && !model) r.error(path + ".utility", "unknown utility '" + *name + "'");
          if (model) voter.utility = *model;
        }
        if (ok) file.voters.push_back(std::move(voter));
      }
    }
  }
  if (const Json* v = r.field(root, "scenario", "initial_ballots", false)) {
    if (v->is_string()) {
      if (v->get<std::string>() != "truthful") r.error("initial_ballots", "expected \"truthful\" or a label array");
    } else if (auto labels = r.strings(*v, "initial_ballots")) {
      file.initial_ballots = *labels;
    }
  }
  if (const Json* v = r.field(root, "scenario", "scheduler", false)) {
    if (!v->is_object()) {
      r.error("scheduler", "expected an object");
    } else {
      r.reject_unknown(*v, "scheduler", {"max_steps", "start_voter"});
      if (const Json* s = r.field(*v, "scheduler", "max_steps", false)) {
        if (auto n = r.integer(*s, "scheduler.max_steps")) {
          if (*n < 1) r.error("scheduler.max_steps", "must be at least 1");
          else file.max_steps = static_cast<std::size_t>(*n);
        }
      }
      if (const Json* s = r.field(*v, "scheduler", "start_voter", false)) {
        if (auto n = r.integer(*s, "scheduler.start_voter")) {
          if (*n < 0) r.error("scheduler.start_voter", "must be nonnegative");
          else file.start_voter = static_cast<std::size_t>(*n);
        }
      }
    }
  }
  if (const Json* v = r.field(root, "scenario", "seed", false)) {
    if (v->is_number_unsigned()) file.seed = v->get<std::uint64_t>();
    else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) file.seed = v->get<std::uint64_t>();
    else r.error("seed", "expected a nonnegative integer");
  }

  for (auto& e : validate_scenario(file)) errors.push_back(std::move(e));
  if (!errors.empty()) throw ScenarioError(std::move(errors));
  return file;
}

std::vector<std::string> validate_scenario(const ScenarioFile& file) {
  std::vector<std::string> errors;
  auto error = [&](const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); };

  if (file.version != kScenarioVersion) error("version", "unsupported version " + std::to_string(file.version));
  const std::size_t m = file.candidates.size();
  if (m < 3) error("candidates", "at least three candidates are required");
  {
    auto sorted = file.candidates;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) error("candidates", "duplicate label");
    if (std::find(sorted.begin(), sorted.end(), "") != sorted.end()) error("candidates", "empty label");
  }
  auto known = [&](const std::string& label) {
    return std::find(file.candidates.begin(), file.candidates.end(), label) != file.candidates.end();
  };
  for (const auto& l : file.tie_break)
    if (!known(l)) error("tie_break", "unknown candidate '" + l + "'");
  if (!is_permutation_of(file.tie_break, file.candidates)) error("tie_break", "must order every candidate once");

  if (file.voters.empty()) error("voters", "at least one voter is required");
  for (std::size_t i = 0; i < file.voters.size(); ++i) {
    const std::string path = "voters[" + std::to_string(i) + "]";
    const VoterSpec& v = file.voters[i];
    for (const auto& l : v.preference)
      if (!known(l)) error(path + ".preference", "unknown candidate '" + l + "'");
    if (!is_permutation_of(v.preference, file.candidates))
      error(path + ".preference", "must rank every candidate exactly once");

    if (DecisionRule::takes_alpha(v.rule.kind) != v.rule.alpha.has_value()) {
      error(path + ".rule", std::string(to_string(v.rule.kind)) + (v.rule.alpha ? " takes no alpha" : " requires alpha"));
    } else if (v.rule.alpha && (*v.rule.alpha < Rational(0) || *v.rule.alpha > Rational(1))) {
      error(path + ".rule.alpha", v.rule.alpha->str() + " outside [0, 1]");
    }

    if (const auto* layered = std::get_if<LayeredBeliefSpec>(&v.belief)) {
      try {
        layered->around(ScoreVector::zeros(std::max<std::size_t>(m, 1))).validate();
        if (file.family && is_theorem_family(*file.family) && !layered->around(ScoreVector{}).weights_decreasing())
          error(path + ".belief.weights", std::string("must be non-increasing for family ") + to_string(*file.family));
      } catch (const std::exception& e) {
        error(path + ".belief", e.what());
      }
    } else if (m > 0) {
      try {
        build_mass(v.belief, m);
      } catch (const std::exception& e) {
        error(path + ".belief", e.what());
      }
    }
  }

  if (file.initial_ballots) {
    if (file.initial_ballots->size() != file.voters.size())
      error("initial_ballots", "expected one ballot per voter");
    for (const auto& l : *file.initial_ballots)
      if (!known(l)) error("initial_ballots", "unknown candidate '" + l + "'");
  }
  if (!file.voters.empty() && file.start_voter >= file.voters.size())
    error("scheduler.start_voter", "out of range");
  if (file.max_steps < 1) error("scheduler.max_steps", "must be at least 1");
  return errors;
}

std::string emit_scenario(const ScenarioFile& file) {
  OrderedJson root;
  root["version"] = file.version;
  if (!file.name.empty()) root["name"] = file.name;
  root["candidates"] = file.candidates;
  root["tie_break"] = file.tie_break;
  if (file.family) root["family"] = to_string(*file.family);
  OrderedJson voters = OrderedJson::array();
  for (const auto& v : file.voters) {
    OrderedJson rule{{"kind", to_string(v.rule.kind)}};
    if (v.rule.alpha) rule["alpha"] = v.rule.alpha->str();
    voters.push_back(OrderedJson{{"preference", v.preference},
                                 {"belief", belief_json(v.belief)},
                                 {"rule", rule},
                                 {"utility", to_string(v.utility)}});
  }
  root["voters"] = voters;
  if (file.initial_ballots) {
    root["initial_ballots"] = *file.initial_ballots;
  } else {
    root["initial_ballots"] = "truthful";
  }
  root["scheduler"] = OrderedJson{{"max_steps", file.max_steps}, {"start_voter", file.start_voter}};
  root["seed"] = file.seed;
  return root.dump(2) + "\n";
}

MassFunction build_mass(const BeliefSpec& spec, std::size_t m) {
  return std::visit(
      [m](const auto& s) -> MassFunction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LayeredBeliefSpec>) {
          throw std::invalid_argument("layered beliefs need a center");
        } else if constexpr (std::is_same_v<T, FixedMassSpec>) {
          std::vector<WeightedFocal> focal;
          for (const auto& f : s.focal) focal.push_back({build_focal(f.shape, m), f.weight});
          return MassFunction(std::move(focal));
        } else if constexpr (std::is_same_v<T, SetSpec>) {
          return MassFunction::certain(build_focal(s.shape, m));
        } else {
          std::vector<WeightedFocal> focal;
          std::vector<ScoreVector> seen;
          for (const auto& [score, p] : s.support) {
            if (score.size() != m) throw std::invalid_argument("score vector dimension differs from candidate count");
            seen.emplace_back(score);
            focal.push_back({FocalElement::of({ScoreVector(score)}), p});
          }
          if (make_score_set(seen).size() != seen.size())
            throw std::invalid_argument("probability support has repeated scores");
          return MassFunction(std::move(focal));
        }
      },
      spec);
}

Scenario build_scenario(const ScenarioFile& file) {
  if (auto errors = validate_scenario(file); !errors.empty()) throw ScenarioError(std::move(errors));
  CandidateSet candidates(file.candidates);
  std::vector<Candidate> tie;
  for (const auto& l : file.tie_break) tie.push_back(candidates.index_of(l));

  std::vector<VoterConfig> voters;
  for (const auto& v : file.voters) {
    std::vector<Candidate> ranking;
    for (const auto& l : v.preference) ranking.push_back(candidates.index_of(l));
    BeliefSource belief = std::holds_alternative<LayeredBeliefSpec>(v.belief)
                              ? BeliefSource(std::get<LayeredBeliefSpec>(v.belief))
                              : BeliefSource(build_mass(v.belief, candidates.size()));
    voters.push_back(VoterConfig{Preference(std::move(ranking)), std::move(belief), DecisionRule(v.rule.kind, v.rule.alpha),
                                 v.utility});
  }

  BallotProfile profile;
  if (file.initial_ballots) {
    std::vector<Candidate> ballots;
    for (const auto& l : *file.initial_ballots) ballots.push_back(candidates.index_of(l));
    profile = BallotProfile(std::move(ballots), candidates.size());
  } else {
    profile = truthful_profile(voters);
  }
  GameState initial{std::move(profile), 0, file.start_voter};
  return Scenario{std::move(candidates), TieBreakOrder(std::move(tie)), std::move(voters), std::move(initial),
                  file.max_steps};
}

ScenarioFile generate_instance(std::uint64_t seed, std::size_t n, std::size_t m, Family family) {
  if (n < 1) throw std::invalid_argument("generate_instance: n must be at least 1");
  if (m < 3 || m > 26) throw std::invalid_argument("generate_instance: m must be in [3, 26]");
  InstanceRng rng(seed);

  ScenarioFile file;
  file.name = std::string(to_string(family)) + "-" + std::to_string(seed);
  for (std::size_t c = 0; c < m; ++c) file.candidates.push_back(std::string(1, static_cast<char>('a' + c)));
  file.tie_break = file.candidates;
  file.family = family;
  file.seed = seed;

  auto decreasing_layers = [&](LayerKind kind) {
    LayeredBeliefSpec spec;
    spec.kind = kind;
    spec.metric = Metric::l1_addremove;
    const std::size_t layers = 1 + rng.below(3);
    std::vector<std::int64_t> raw;
    for (std::size_t k = 0; k < layers; ++k) {
      spec.radii.push_back(static_cast<int>(k + 1));
      raw.push_back(static_cast<std::int64_t>(1 + rng.below(10)));
    }
    std::sort(raw.rbegin(), raw.rend());
    const std::int64_t total = std::accumulate(raw.begin(), raw.end(), std::int64_t{0});
    for (auto w : raw) spec.weights.emplace_back(w, total);
    return spec;
  };

  for (std::size_t i = 0; i < n; ++i) {
    VoterSpec voter;
    voter.preference = file.candidates;
    for (std::size_t k = m - 1; k > 0; --k) std::swap(voter.preference[k], voter.preference[rng.below(k + 1)]);
    switch (family) {
      case Family::theorem1_nested:
        voter.belief = decreasing_layers(LayerKind::nested);
        voter.rule = {RuleKind::pessimistic, std::nullopt};
        break;
      case Family::theorem1_partitioned:
        voter.belief = decreasing_layers(LayerKind::partitioned);
        voter.rule = {RuleKind::pessimistic, std::nullopt};
        break;
      case Family::theorem2_hurwicz: {
        static const Rational kAlphas[] = {Rational(51, 100), Rational(2, 3), Rational(9, 10), Rational(1)};
        voter.belief = decreasing_layers(LayerKind::nested);
        voter.rule = {RuleKind::hurwicz, kAlphas[rng.below(4)]};
        break;
      }
      case Family::pignistic_uniform:
        voter.belief = LayeredBeliefSpec{LayerKind::nested, Metric::l1_addremove, {1}, {Rational(1)}};
        voter.rule = {RuleKind::pignistic, std::nullopt};
        break;
      case Family::meir_r0:
        voter.belief = LayeredBeliefSpec{LayerKind::nested, Metric::l1_addremove, {0}, {Rational(1)}};
        voter.rule = {RuleKind::pessimistic, std::nullopt};
        voter.utility = UtilityModel::direct_best_response;
        break;
    }
    file.voters.push_back(std::move(voter));
  }
  return file;
}

TraceRecord to_trace_record(const MoveRecord& move, const CandidateSet& candidates) {
  return TraceRecord{move.step,
                     move.voter,
                     candidates.label(move.from),
                     candidates.label(move.to),
                     move.criterion_value,
                     move.score_before.counts(),
                     move.score_after.counts(),
                     candidates.label(move.winner_before),
                     candidates.label(move.winner_after)};
}

MoveRecord from_trace_record(const TraceRecord& record, const CandidateSet& candidates) {
  return MoveRecord{record.step,
                    record.voter,
                    candidates.index_of(record.from),
                    candidates.index_of(record.to),
                    record.criterion_value,
                    ScoreVector(record.score_before),
                    ScoreVector(record.score_after),
                    candidates.index_of(record.winner_before),
                    candidates.index_of(record.winner_after)};
}

std::string emit_trace_line(const TraceRecord& record) {
  OrderedJson j{{"step", record.step},
                {"voter", record.voter},
                {"from", record.from},
                {"to", record.to},
                {"criterion_value", record.criterion_value.str()},
                {"score_before", record.score_before},
                {"score_after", record.score_after},
                {"winner_before", record.winner_before},
                {"winner_after", record.winner_after}};
  return j.dump();
}

TraceRecord parse_trace_line(std::string_view line) {
  try {
    const Json j = Json::parse(line);
    return TraceRecord{j.at("step").get<std::size_t>(),
                       j.at("voter").get<std::size_t>(),
                       j.at("from").get<std::string>(),
                       j.at("to").get<std::string>(),
                       Rational::parse(j.at("criterion_value").get<std::string>()),
                       j.at("score_before").get<std::vector<int>>(),
                       j.at("score_after").get<std::vector<int>>(),
                       j.at("winner_before").get<std::string>(),
                       j.at("winner_after").get<std::string>()};
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad trace record: ") + e.what());
  }
}

std::string emit_trace(std::span<const MoveRecord> trace, const CandidateSet& candidates) {
  std::string out;
  for (const auto& move : trace) out += emit_trace_line(to_trace_record(move, candidates)) + "\n";
  return out;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
  std::vector<TraceRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_trace_line(line));
  return out;
}

std::string emit_summary(const RunOutcome& outcome, const Scenario& scenario) {
  const ScoreVector final_score = scores_from_profile(outcome.final_state.profile);
  std::vector<std::string> ballots;
  for (Candidate c : outcome.final_state.profile.ballots()) ballots.push_back(scenario.candidates.label(c));
  OrderedJson j{{"status", to_string(outcome.status)},
                {"steps", outcome.steps},
                {"cycle_start", outcome.cycle_start},
                {"cycle_length", outcome.cycle_length},
                {"final_ballots", ballots},
                {"final_score", final_score.counts()},
                {"winner", scenario.candidates.label(plurality_winner(final_score, scenario.tie))},
                {"next_voter", outcome.final_state.next_voter}};
  return j.dump(2) + "\n";
}

}  // namespace beliefvote
