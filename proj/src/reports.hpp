#pragma once

#include <string>

#include "words.hpp"

namespace relttk {

// Outcome of one command: exit code 0 (success), 1 (a verification or
// convergence check failed) or 2 (bad input). Reports are emitted even for
// some failing runs, so output and message can both be set.
struct CommandResult {
  int code = 0;
  std::string output;
  std::string message;
};

CommandResult cmd_analyze(const std::string& spec_text,
                          const std::string& format);
CommandResult cmd_whitehead(const std::string& spec_text,
                            const std::string& format);
CommandResult cmd_lamination(const std::string& spec_text, int depth,
                             const std::string& format);
CommandResult cmd_currents(const std::string& spec_text,
                           const std::string& class_word, int power_max,
                           int depth, const std::string& format);
CommandResult cmd_trees(const std::string& spec_text,
                        const std::string& tree_text,
                        const std::string& sample, int power_max,
                        const std::string& tol);
CommandResult cmd_pairing(const std::string& tree_text,
                          const std::string& class_word, int depth);
CommandResult cmd_reproduce();

// Accepts fractions like 1/1000000, plain decimals like 0.000001 and
// scientific notation like 1e-6.
Rational parse_tolerance(const std::string& text);

}  // namespace relttk
