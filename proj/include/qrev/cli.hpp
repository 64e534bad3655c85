#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qrev::cli {

enum ExitCode : int { kSuccess = 0, kFailVerdict = 1, kInputError = 2 };

struct Invocation {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<double> tol;
    bool json_out = false;
    // Output factorization for `tradeoff`.
    std::optional<std::pair<std::size_t, std::size_t>> split;
    // One invocation per non-empty line, each line listing that run's inputs.
    std::optional<std::string> batch;
};

const std::vector<std::string> &commands();

// Runs one invocation (or a batch) and writes its report(s) to `out`;
// diagnostics go to `err`.
int run(const Invocation &inv, std::ostream &out, std::ostream &err);

// argv front end used by the qrev executable.
int main_entry(int argc, char **argv);

}  // namespace qrev::cli
