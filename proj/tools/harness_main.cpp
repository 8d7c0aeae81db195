// robin-harness: property-test and regression suite runner.
//
// Every inequality and identity the library is built around is bound to an
// executable check; failing random-polygon cases are shrunk and serialized
// for replay.

#include <iostream>

#include "CLI11.hpp"
#include "robin/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"property suite for the Robin eigenvalue library"};

    robin::harness::SuiteOptions options;
    app.add_option("--filter", options.filter,
                   "run only cases whose name contains this substring");
    app.add_option("--seed", options.seed, "corpus seed (default 2026)");
    app.add_option("--replay-dir", options.replay_dir,
                   "directory for counterexample files");
    app.add_option("--replay", options.replay_file,
                   "re-run the case recorded in a counterexample file");
    app.add_option("--threads", options.threads,
                   "worker threads (0 = hardware)");
    app.add_flag("--inject-fault", options.inject_fault,
                 "self-test: flip the sign of alpha inside one check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return robin::harness::run_suite(options, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
