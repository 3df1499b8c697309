#ifndef SOFIC_CLI_HPP
#define SOFIC_CLI_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace sofic::cli {

// A parsed invocation: subcommand name, positional file inputs, and
// string-valued flags. Input counts are validated during parsing, before
// any computation runs.
struct command {
    std::string name;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> flags;
};

// Executes argv (without the program name). Exit code 0 on success,
// 1 on domain errors (e.g. reducible input), 2 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(const command& cmd, std::ostream& out, std::ostream& err);

} // namespace sofic::cli

#endif
