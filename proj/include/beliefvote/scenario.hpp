#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "beliefvote/decision.hpp"
#include "beliefvote/dynamics.hpp"
#include "beliefvote/election.hpp"
#include "beliefvote/uncertainty.hpp"

namespace beliefvote {

inline constexpr int kScenarioVersion = 1;

/// Random-instance families. The theorem families double as assertions:
/// a cycle found in one of them is a failure.
enum class Family { theorem1_nested, theorem1_partitioned, theorem2_hurwicz, pignistic_uniform, meir_r0 };

std::optional<Family> parse_family(std::string_view name);
const char* to_string(Family family);
bool is_theorem_family(Family family);

using ScorePoints = std::vector<std::vector<int>>;
using FocalShape = std::variant<ScorePoints, ScoreBox>;

struct FocalSpec {
  Rational weight;
  FocalShape shape;
  friend bool operator==(const FocalSpec&, const FocalSpec&) = default;
};

struct FixedMassSpec {
  std::vector<FocalSpec> focal;
  friend bool operator==(const FixedMassSpec&, const FixedMassSpec&) = default;
};

/// A single focal set with mass one.
struct SetSpec {
  FocalShape shape;
  friend bool operator==(const SetSpec&, const SetSpec&) = default;
};

struct ProbabilitySpec {
  std::vector<std::pair<std::vector<int>, Rational>> support;
  friend bool operator==(const ProbabilitySpec&, const ProbabilitySpec&) = default;
};

using BeliefSpec = std::variant<LayeredBeliefSpec, FixedMassSpec, SetSpec, ProbabilitySpec>;

struct RuleSpec {
  RuleKind kind = RuleKind::pessimistic;
  std::optional<Rational> alpha;
  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

struct VoterSpec {
  std::vector<std::string> preference;
  BeliefSpec belief;
  RuleSpec rule;
  UtilityModel utility = UtilityModel::meir_sign;
  friend bool operator==(const VoterSpec&, const VoterSpec&) = default;
};

/// Parsed scenario file. Labels are kept as text; build_scenario resolves them.
struct ScenarioFile {
  int version = kScenarioVersion;
  std::string name;
  std::vector<std::string> candidates;
  std::vector<std::string> tie_break;
  std::optional<Family> family;
  std::vector<VoterSpec> voters;
  /// std::nullopt means truthful ballots.
  std::optional<std::vector<std::string>> initial_ballots;
  std::size_t max_steps = kDefaultMaxSteps;
  std::size_t start_voter = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Carries every validation problem found, not only the first.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses and validates; throws ScenarioError listing all problems.
ScenarioFile parse_scenario(std::string_view text);
/// Semantic checks on an in-memory scenario; empty when valid.
std::vector<std::string> validate_scenario(const ScenarioFile& file);
std::string emit_scenario(const ScenarioFile& file);

/// Scenario with labels resolved into the engine's types.
struct Scenario {
  CandidateSet candidates;
  TieBreakOrder tie;
  std::vector<VoterConfig> voters;
  GameState initial;
  std::size_t max_steps = kDefaultMaxSteps;
};

Scenario build_scenario(const ScenarioFile& file);
MassFunction build_mass(const BeliefSpec& spec, std::size_t m);

/// mt19937_64 with a bounded draw that does not depend on the standard
/// library's distribution implementations, so instances are reproducible
/// across toolchains.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Impartial-culture instance from a named family, deterministic in `seed`.
ScenarioFile generate_instance(std::uint64_t seed, std::size_t n, std::size_t m, Family family);


/// One line of a simulation trace, labels at the boundary.
struct TraceRecord {
  std::size_t step = 0;
  std::size_t voter = 0;
  std::string from;
  std::string to;
  Rational criterion_value;
  std::vector<int> score_before;
  std::vector<int> score_after;
  std::string winner_before;
  std::string winner_after;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

TraceRecord to_trace_record(const MoveRecord& move, const CandidateSet& candidates);
MoveRecord from_trace_record(const TraceRecord& record, const CandidateSet& candidates);
std::string emit_trace_line(const TraceRecord& record);
TraceRecord parse_trace_line(std::string_view line);
/// Line-delimited records, one per move.
std::string emit_trace(std::span<const MoveRecord> trace, const CandidateSet& candidates);
std::vector<TraceRecord> parse_trace(std::string_view text);

std::string emit_summary(const RunOutcome& outcome, const Scenario& scenario);

}  // namespace beliefvote
