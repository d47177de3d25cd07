#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zq/numbers.hpp"

namespace zq {

/// One batch invocation: an input manifold (graph text or Seifert data), a
/// command, a truncation order in exponent units of the *output* series, an
/// optional label selector and the output format.
struct JobSpec {
    enum class Command {
        Zhat,
        ZhatPrime,
        Z0,
        Z0Normalized,
        Splice,
        CassonWalker,
        SeifertReduce,
        Connections,
        Identify,
        Moves,
        SeedCorpus,
    };

    Command command = Command::Z0;
    std::optional<std::string> graph_text;    // contents of a graph file
    std::optional<std::string> seifert_text;  // "b; a1/b1 a2/b2 ..."
    Rat order = Rat(10);
    std::optional<long long> label;  // spin-c / H-element index; all when unset
    bool structured = false;         // JSON instead of the pretty printer
    bool compare = false;            // seifert-reduce: also run the lattice path
    std::vector<long long> fibers;   // connections
    long long max_p = 30;            // identify search bound
    std::string move_script;         // moves: one rewrite per line
    std::string corpus_dir;          // seed-corpus target directory
    int threads = 1;
};

struct JobResult {
    int exit_code = 0;       // 0 ok, 2 input, 3 precondition, 4 internal
    std::string output;      // the document (text or JSON)
};

/// Execute a job; never throws, all failures are reported as a
/// machine-readable error record with the matching exit code.
JobResult run_job(const JobSpec& job);

}  // namespace zq
