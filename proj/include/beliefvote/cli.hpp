#pragma once

#include <ostream>
#include <string>

namespace beliefvote {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitAssertion = 2;

/// Resolves a scenario argument: an existing path, or the name of a shipped fixture.
std::string resolve_scenario_path(const std::string& arg);

/// Subcommands: simulate, check, verify, campaign, gen.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace beliefvote
