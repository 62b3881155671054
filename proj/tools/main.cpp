#include <string>
#include <vector>

#include "ncarea/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ncarea::cli::run(args);
}
