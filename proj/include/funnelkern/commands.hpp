#pragma once

#include <cstdint>
#include <string>

namespace funnelkern {

// Shared option bag for the command line front end. Each command reads the
// fields it cares about. `input` may name a directory, in which case the
// command runs over every regular file inside (sorted by name, in parallel)
// and merges the outputs in order.
//
// Exit codes: 0 accept/success, 1 reject, 2 input error, 3 undecided. A
// batch returns the most severe code, ordered 2 > 3 > 1 > 0.
struct CmdOptions {
    std::string input;
    std::string solution;  // verify only
    std::string output;    // empty means stdout
    std::string engine = "bnb";
    std::string family = "random";
    bool optimize = false;
    bool audit = false;
    bool json = false;
    bool dot = false;
    std::uint64_t seed = 1;
    int n = 10;
    std::int64_t m = 20;
    std::int64_t k = 0;
    double fork_fraction = 0.5;
    std::uint64_t node_budget = 1'000'000;
};

int cmd_recognize(const CmdOptions& o);
int cmd_kernelize(const CmdOptions& o);
int cmd_solve(const CmdOptions& o);
int cmd_verify(const CmdOptions& o);
int cmd_gen(const CmdOptions& o);

}  // namespace funnelkern
