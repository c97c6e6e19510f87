#pragma once

// The claim-verification suite behind the CLI selftest subcommand: every
// documented construction and locus statement is recomputed exactly and
// compared against its asserted value, one pass/fail line per check.

#include <iosfwd>
#include <string>
#include <vector>

namespace p1dyn::selftest {

struct CheckResult {
    std::string id;
    std::string description;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    int jobs = 0;          // census parallelism; 0 = all threads
    bool verbose = false;
    std::string only;      // run a single check id
    std::string exclude;   // skip one check id
};

std::vector<CheckResult> run_all(std::ostream& log, const Options& opt = {});

// prints one line per check and a summary; returns the number of failures
int run_and_report(std::ostream& out, const Options& opt = {});

}  // namespace p1dyn::selftest
