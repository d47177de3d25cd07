// Command-line frontend: batch computation of the q-series invariants of
// negative-definite plumbed 3-manifolds.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zq/jobs.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "{\"error\":\"invalid_input\",\"message\":\"cannot open " << path << "\"}\n";
        std::exit(2);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int env_threads() {
    const char* v = std::getenv("ZQ_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n > 0 ? n : 1;
}

zq::Rat parse_order(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return zq::make_rat(std::stoll(text));
        return zq::make_rat(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        std::cerr << "{\"error\":\"invalid_input\",\"message\":\"bad order '" << text << "'\"}\n";
        std::exit(2);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-series invariants of negative-definite plumbed 3-manifolds"};
    app.require_subcommand(1);

    std::string graph_path, seifert, order_text = "10", move_script_path, corpus_dir;
    long long label = -1, max_p = 30;
    bool structured = false, compare = false;
    std::vector<long long> fibers;

    auto add_input = [&](CLI::App* cmd, bool need_graph = true) {
        if (need_graph) cmd->add_option("--graph,-g", graph_path, "plumbing graph file");
        cmd->add_option("--seifert,-s", seifert, "Seifert data \"b; a1/b1 a2/b2 ...\"");
        cmd->add_option("--order,-o", order_text,
                        "truncation order of the output series (integer or n/d)");
        cmd->add_option("--label,-l", label, "restrict to one spin-c / H label index");
        cmd->add_flag("--json,-j", structured, "structured JSON output");
    };

    auto* zhat = app.add_subcommand("zhat", "per-spin-c series");
    add_input(zhat);
    auto* zhat_prime = app.add_subcommand("zhat-prime", "H-labeled coset series");
    add_input(zhat_prime);
    auto* z0 = app.add_subcommand("z0", "sum over all spin-c labels");
    add_input(z0);
    auto* z0n = app.add_subcommand("z0-normalized", "q^{-6 lambda} Z0(q^{|H|})");
    add_input(z0n);
    auto* splice = app.add_subcommand("splice", "splice diagram and adjugate identity check");
    add_input(splice);
    auto* casson = app.add_subcommand("casson-walker", "Casson-Walker invariant");
    add_input(casson);
    auto* reduce = app.add_subcommand("seifert-reduce", "one-variable fast path for Seifert data");
    add_input(reduce, false);
    reduce->add_flag("--compare", compare, "also run the lattice path and compare");
    auto* connections = app.add_subcommand("connections", "flat-connection census table");
    connections->add_option("fibers", fibers, "pairwise-coprime fiber multiplicities")->expected(-3);
    connections->add_flag("--json,-j", structured, "structured JSON output");
    auto* identify = app.add_subcommand("identify", "match the family against singlet characters");
    add_input(identify);
    identify->add_option("--max-p", max_p, "largest singlet parameter to try");
    auto* moves = app.add_subcommand("moves", "apply a blow-up/blow-down script");
    add_input(moves);
    moves->add_option("--script", move_script_path, "move script file")->required();
    auto* seed = app.add_subcommand("seed-corpus", "regenerate the golden corpus files");
    seed->add_option("--dir", corpus_dir, "target directory")->required();

    CLI11_PARSE(app, argc, argv);

    zq::JobSpec job;
    job.threads = env_threads();
    job.order = parse_order(order_text);
    job.structured = structured;
    job.compare = compare;
    job.fibers = fibers;
    job.max_p = max_p;
    job.corpus_dir = corpus_dir;
    if (label >= 0) job.label = label;
    if (!graph_path.empty()) job.graph_text = slurp(graph_path);
    if (!seifert.empty()) job.seifert_text = seifert;
    if (!move_script_path.empty()) job.move_script = slurp(move_script_path);

    if (app.got_subcommand(zhat)) job.command = zq::JobSpec::Command::Zhat;
    if (app.got_subcommand(zhat_prime)) job.command = zq::JobSpec::Command::ZhatPrime;
    if (app.got_subcommand(z0)) job.command = zq::JobSpec::Command::Z0;
    if (app.got_subcommand(z0n)) job.command = zq::JobSpec::Command::Z0Normalized;
    if (app.got_subcommand(splice)) job.command = zq::JobSpec::Command::Splice;
    if (app.got_subcommand(casson)) job.command = zq::JobSpec::Command::CassonWalker;
    if (app.got_subcommand(reduce)) job.command = zq::JobSpec::Command::SeifertReduce;
    if (app.got_subcommand(connections)) job.command = zq::JobSpec::Command::Connections;
    if (app.got_subcommand(identify)) job.command = zq::JobSpec::Command::Identify;
    if (app.got_subcommand(moves)) job.command = zq::JobSpec::Command::Moves;
    if (app.got_subcommand(seed)) job.command = zq::JobSpec::Command::SeedCorpus;

    zq::JobResult result = zq::run_job(job);
    std::cout << result.output;
    return result.exit_code;
}
