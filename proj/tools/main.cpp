#include <vector>

#include "fracdt/cli.hpp"

int main(int argc, char** argv) {
    return fracdt::cli::run(std::vector<std::string>(argv, argv + argc));
}
