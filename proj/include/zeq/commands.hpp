#ifndef ZEQ_COMMANDS_HPP
#define ZEQ_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <zeq/report.hpp>

namespace zeq
{

// Parsed command line. List-valued flags are kept as raw text: names are
// comma separated, expression lists semicolon separated.
struct RunOptions {
    std::string command;
    // Expressions; "@path" reads the expression from a file.
    std::vector<std::string> args;
    std::string vars;
    std::string params;
    std::string var;
    std::optional<int> order;
    std::uint64_t seed = 0;
    std::string f;
    std::string g;
    std::string ext;
    std::string minpoly;
    std::string system;
    std::string yvars;
    std::string family;
    std::string zvars;
    std::string witness;
    std::string target;
    std::string sigma;
    std::string tau;
    std::optional<int> k0;
    std::string tgrid;
    std::string candidates;
    // Inputs are order-N jets of unknown series rather than polynomials.
    bool truncated = false;
    bool timing = false;

    // Output handling; not part of the run itself.
    bool json = false;
    std::string report_path;
    // Directory that "@path" arguments are relative to.
    std::string base_dir;
    bool help = false;
    std::string help_text;
};

inline const std::vector<std::string> kCommands = {
    "prepare",      "divide",       "gendisc", "tower",       "check-family",
    "verify-family", "binomial",    "mero-analyze", "emit-system", "mero-deform",
};

// argv without the program name. Malformed lines raise usage errors.
RunOptions parse_arguments(const std::vector<std::string> &args);

// ZEQ_ORDER if set and valid, else kDefaultOrder.
int default_order();

struct RunResult {
    int exit_code = 0;
    std::string summary;
    Json report;
};

// Never throws: errors become a status, an exit code and a message.
RunResult run(const RunOptions &opts);

} // namespace zeq

#endif
