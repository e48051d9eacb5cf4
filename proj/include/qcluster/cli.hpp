#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcluster/expansion.hpp"
#include "qcluster/seed.hpp"

namespace qcluster::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

/// Seed from JSON text: {"n", "unfrozen" (1-based), "B", optional "Lambda",
/// optional "D"}. Lambda and D are synthesized when absent. Throws ParseError.
QuantumSeed parse_seed_json(const std::string& text, bool* synthesized = nullptr);
QuantumSeed load_seed_file(const std::string& path, bool* synthesized = nullptr);

/// JSON text of a seed in the input schema.
std::string seed_to_json(const QuantumSeed& s);

/// Comma-separated 1-based vertices, e.g. "2,1,2". Throws ParseError.
Word parse_word(const std::string& text, const QuantumSeed& s);

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcluster::cli
