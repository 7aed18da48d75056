#include "poisson/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const auto result = poisson::cli::run_command(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << result.out;
    std::cerr << result.err;
    return result.code;
}
