#include "beliefvote/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "beliefvote/campaign.hpp"
#include "beliefvote/error.hpp"
#include "beliefvote/oracles.hpp"
#include "beliefvote/scenario.hpp"

#ifndef BELIEFVOTE_FIXTURE_DIR
#define BELIEFVOTE_FIXTURE_DIR "fixtures"
#endif

namespace beliefvote {

namespace {

namespace fs = std::filesystem;

// Thrown for bad input; mapped to kExitValidation.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationFailure("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationFailure("cannot write '" + path + "'");
  file << text;
}

ScenarioFile load_scenario(const std::string& arg) { return parse_scenario(read_file(resolve_scenario_path(arg))); }

std::string describe_move(const Scenario& s, std::size_t voter, Candidate from, Candidate to) {
  return "voter " + std::to_string(voter) + " " + s.candidates.label(from) + "->" + s.candidates.label(to);
}

int cmd_simulate(const std::string& arg, const std::string& trace_path, const std::string& summary_path,
                 std::optional<std::size_t> max_steps, std::ostream& out) {
  const Scenario scenario = build_scenario(load_scenario(arg));
  const RunOutcome outcome =
      run(scenario.initial, scenario.voters, scenario.tie, max_steps.value_or(scenario.max_steps));
  if (!trace_path.empty()) write_output(trace_path, emit_trace(outcome.trace, scenario.candidates), out);
  write_output(summary_path, emit_summary(outcome, scenario), out);
  return kExitOk;
}

int cmd_check(const std::string& arg, std::ostream& out) {
  const Scenario scenario = build_scenario(load_scenario(arg));
  const EquilibriumReport report = equilibrium_check(scenario.initial, scenario.voters, scenario.tie);
  out << "equilibrium: " << (report.equilibrium ? "true" : "false") << "\n";
  if (report.witness) {
    const auto& w = *report.witness;
    out << "witness: " << describe_move(scenario, w.voter, w.from, w.to)
        << " lower=" << w.evaluation.lower << " upper=" << w.evaluation.upper
        << " criterion=" << w.evaluation.criterion_value << " verdict=" << to_string(w.evaluation.verdict) << "\n";
  }
  return kExitOk;
}

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      out_ << "MISMATCH: " << what << "\n";
    }
  }
  void skip(const std::string& what) {
    ++skipped_;
    out_ << "skipped: " << what << "\n";
  }
  int finish() {
    out_ << "checks: " << checks_ << " mismatches: " << failures_ << " skipped: " << skipped_ << "\n";
    return failures_ ? kExitAssertion : kExitOk;
  }

 private:
  std::ostream& out_;
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::size_t skipped_ = 0;
};

constexpr std::size_t kSelectionBudget = 200'000;

std::optional<diagnostics::OracleCaps> selection_caps(const MassFunction& mass) {
  diagnostics::OracleCaps caps{mass.size(), 0};
  std::size_t product = 1;
  for (const auto& a : mass.focal_elements()) {
    caps.max_points = std::max(caps.max_points, a.focal.size());
    if (product > kSelectionBudget / a.focal.size()) return std::nullopt;
    product *= a.focal.size();
  }
  return caps;
}

int cmd_verify(const std::string& arg, std::ostream& out) {
  const ScenarioFile file = load_scenario(arg);
  const Scenario scenario = build_scenario(file);
  Checker check(out);

  check.expect(parse_scenario(emit_scenario(file)) == file, "scenario round trip");

  const GameState& state = scenario.initial;
  const ScoreVector score = scores_from_profile(state.profile);
  for (std::size_t i = 0; i < scenario.voters.size(); ++i) {
    const VoterConfig& voter = scenario.voters[i];
    const MassFunction mass = belief_for(voter, score);
    const Candidate from = state.profile[i];
    const auto caps = selection_caps(mass);
    const ScoreDistribution p_star = diagnostics::oracle_pignistic(mass);
    check.expect(pignistic(mass) == p_star, "pignistic transform for voter " + std::to_string(i));
    for (Candidate to = 0; to < scenario.candidates.size(); ++to) {
      if (to == from) continue;
      const std::string label = describe_move(scenario, i, from, to);
      auto u = [&](const ScoreVector& s) {
        return Rational(move_utility(voter.utility, voter.preference, from, to, s, scenario.tie));
      };
      const ExpectationBounds bounds = expectation_bounds(mass, u);
      const MoveEvaluation ev = evaluate_move(mass, voter.rule, voter.utility, voter.preference, from, to, scenario.tie);
      check.expect(ev.lower == bounds.lower && ev.upper == bounds.upper, label + ": evaluation bounds");
      check.expect(bounds.pignistic == p_star.expectation(u), label + ": pignistic expectation");
      if (caps) {
        check.expect(bounds.lower == diagnostics::oracle_lower_expectation(mass, u, *caps),
                     label + ": lower expectation");
        check.expect(bounds.upper == diagnostics::oracle_upper_expectation(mass, u, *caps),
                     label + ": upper expectation");
      } else {
        check.skip(label + ": selection oracle over budget");
      }
    }
  }

  const bool engine_eq = equilibrium_check(state, scenario.voters, scenario.tie).equilibrium;
  check.expect(engine_eq == diagnostics::oracle_equilibrium(state, scenario.voters, scenario.tie),
               "equilibrium verdict at the initial state");

  const RunOutcome outcome = run(state, scenario.voters, scenario.tie, scenario.max_steps);
  check.expect(replay_matches(state.profile, outcome.trace, scenario.tie), "trace replay");
  const auto records = parse_trace(emit_trace(outcome.trace, scenario.candidates));
  bool trace_round_trip = records.size() == outcome.trace.size();
  for (std::size_t k = 0; trace_round_trip && k < records.size(); ++k)
    trace_round_trip = from_trace_record(records[k], scenario.candidates) == outcome.trace[k];
  check.expect(trace_round_trip, "trace round trip");
  if (outcome.status == RunStatus::converged) {
    check.expect(diagnostics::oracle_equilibrium(outcome.final_state, scenario.voters, scenario.tie),
                 "final state is an equilibrium");
  }
  out << "run: " << to_string(outcome.status) << " after " << outcome.steps << " steps\n";
  return check.finish();
}

int cmd_campaign(const CampaignOptions& options, const std::string& csv_path, std::ostream& out, std::ostream& err) {
  const CampaignResult result = run_campaign(options);
  std::ostream& report = csv_path == "-" ? err : out;
  if (!csv_path.empty()) write_output(csv_path, campaign_csv(result), out);
  report << "family: " << to_string(options.family) << "\n"
         << "instances: " << result.rows.size() << "\n"
         << "converged: " << result.converged << "\n"
         << "cycles: " << result.cycles << "\n"
         << "step_limit: " << result.step_limits << "\n"
         << "convergence_rate: " << std::setprecision(6) << result.convergence_rate() << "\n"
         << "max_steps: " << result.max_steps_seen << "\n";
  if (options.family == Family::meir_r0) report << "off_target_moves: " << result.off_target_moves << "\n";
  report << "oracle_disagreements: " << result.oracle_disagreements << "\n";
  report << "cycle_seeds:";
  for (auto s : result.cycle_seeds) report << ' ' << s;
  report << "\n";

  bool failed = result.oracle_disagreements > 0;
  if (is_theorem_family(options.family)) failed = failed || result.converged != result.rows.size();
  if (options.family == Family::meir_r0) failed = failed || result.off_target_moves > 0;
  if (failed) err << "campaign assertion failed for family " << to_string(options.family) << "\n";
  return failed ? kExitAssertion : kExitOk;
}

}  // namespace

std::string resolve_scenario_path(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  for (const std::string& candidate : {std::string(BELIEFVOTE_FIXTURE_DIR) + "/" + arg,
                                      std::string(BELIEFVOTE_FIXTURE_DIR) + "/" + arg + ".json"}) {
    if (fs::exists(candidate)) return candidate;
  }
  throw ValidationFailure("no scenario file or fixture named '" + arg + "'");
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strategic plurality voting under belief-function uncertainty"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string trace_path;
  std::string summary_path = "-";
  std::optional<std::size_t> max_steps;
  auto* simulate = app.add_subcommand("simulate", "Run the dynamics and write a trace and a summary");
  simulate->add_option("scenario", scenario_arg, "Scenario file or fixture name")->required();
  simulate->add_option("--trace", trace_path, "Write the line-delimited trace here ('-' for stdout)");
  simulate->add_option("--summary", summary_path, "Write the summary here ('-' for stdout)");
  simulate->add_option("--max-steps", max_steps, "Override the scenario's step limit")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Check whether the initial profile is an equilibrium");
  check->add_option("scenario", scenario_arg, "Scenario file or fixture name")->required();

  auto* verify = app.add_subcommand("verify", "Cross-check the engine against the brute-force oracles");
  verify->add_option("scenario", scenario_arg, "Scenario file or fixture name")->required();

  CampaignOptions options;
  std::string family_name;
  std::string csv_path;
  auto* campaign = app.add_subcommand("campaign", "Run a batch of generated instances");
  campaign->add_option("--family", family_name, "Instance family")->required();
  campaign->add_option("--count", options.count, "Number of instances");
  campaign->add_option("--seed", options.seed, "First seed; instance i uses seed + i");
  campaign->add_option("--n-min", options.n_min, "Fewest voters");
  campaign->add_option("--n-max", options.n_max, "Most voters");
  campaign->add_option("--m-min", options.m_min, "Fewest candidates");
  campaign->add_option("--m-max", options.m_max, "Most candidates");
  campaign->add_option("--max-steps", options.max_steps, "Step limit per run")->check(CLI::PositiveNumber);
  campaign->add_flag("--random-start", options.random_start, "Start each run from random ballots");
  campaign->add_option("--threads", options.threads, "Worker threads (0 = hardware concurrency)");
  campaign->add_option("--csv", csv_path, "Write the per-instance table here ('-' for stdout)");

  std::uint64_t gen_seed = 0;
  std::size_t gen_n = 5;
  std::size_t gen_m = 3;
  std::string gen_family;
  auto* gen = app.add_subcommand("gen", "Emit a generated scenario");
  gen->add_option("--family", gen_family, "Instance family")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--n", gen_n, "Number of voters");
  gen->add_option("--m", gen_m, "Number of candidates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  auto family_of = [](const std::string& name) {
    auto f = parse_family(name);
    if (!f) throw ValidationFailure("unknown family '" + name + "'");
    return *f;
  };

  try {
    if (*simulate) return cmd_simulate(scenario_arg, trace_path, summary_path, max_steps, out);
    if (*check) return cmd_check(scenario_arg, out);
    if (*verify) return cmd_verify(scenario_arg, out);
    if (*campaign) {
      options.family = family_of(family_name);
      return cmd_campaign(options, csv_path, out, err);
    }
    if (*gen) {
      out << emit_scenario(generate_instance(gen_seed, gen_n, gen_m, family_of(gen_family)));
      return kExitOk;
    }
  } catch (const ScenarioError& e) {
    for (const auto& line : e.errors()) err << "error: " << line << "\n";
    return kExitValidation;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitValidation;
}

}  // namespace beliefvote
