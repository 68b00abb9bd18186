#include <cstdlib>
#include <iostream>

#include "abm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> env;
    if (const char* v = std::getenv("ABCALC_ORDER")) env = v;
    const abm::cli::RunResult r = abm::cli::run(args, env);
    (r.status == 0 ? std::cout : std::cerr) << r.output << '\n';
    return r.status;
}
