#include <vector>

#include "letterfit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return letterfit::cli::run(args);
}
