#include <iostream>
#include <string>
#include <vector>

#include "fps/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const fps::cli::CommandResult result = fps::cli::run(args);
    if (result.help) {
        std::cout << result.summary;
        return 0;
    }
    std::cout << result.report.dump(2) << "\n";
    if (!result.summary.empty())
        std::cerr << result.summary << "\n";
    return result.exit_code;
}
