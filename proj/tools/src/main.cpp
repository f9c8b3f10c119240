#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const auto outcome = grad3::cli::parse_config(args);
        if (outcome.help_shown) return 0;
        return grad3::cli::run(outcome.config);
    } catch (const grad3::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const grad3::cli::ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
}
