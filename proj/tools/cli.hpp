#pragma once

// Command-line driver.  Exit codes: 0 pass, 1 verification failure,
// 2 input error, 3 hypothesis violation, 4 precision exhausted.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace frobext::cli {

enum ExitCode : int { Pass = 0, Failure = 1, Input = 2, Hypothesis = 3, Precision = 4 };

struct RunConfig {
    long precision = 0; // 0: library default
    std::uint64_t seed = 1;
    long cases = 0;
    long bound = 4096;
    bool json = false;
    unsigned threads = 0; // 0: hardware concurrency
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace frobext::cli
